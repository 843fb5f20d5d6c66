#include <doctest.h>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

namespace {

cd series(double a, double b, cd z, cd tau, int radius) {
  cd sum = 0.0;
  for (int n = -radius; n <= radius; ++n) {
    const double m = n + a;
    sum += std::exp(kI * kPi * tau * (m * m) + 2.0 * kPi * kI * m * (z + b));
  }
  return sum;
}

CMat genus2() {
  CMat om(2, 2);
  om << cd(0.3, 1.1), cd(0.2, 0.35), cd(0.2, 0.35), cd(-0.1, 0.9);
  return om;
}

}  // namespace

TEST_CASE("theta at the origin for tau = i") {
  const cd v = theta(CVec::Zero(1), RiemannMatrix::scalar(kI));
  CHECK(std::abs(v - 1.08643481121331) < 1e-12);
  CHECK(std::abs(v - series(0, 0, 0.0, kI, 40)) < 1e-14);
}

TEST_CASE("first theta function against the direct series") {
  const Characteristic c{RVec::Constant(1, 0.5), RVec::Constant(1, 0.5)};
  const cd v = theta_char(c, CVec::Constant(1, 0.1), RiemannMatrix::scalar(kI));
  CHECK(std::abs(v - series(0.5, 0.5, 0.1, kI, 40)) < 1e-12);
  CHECK(c.is_odd());
  CHECK_FALSE(Characteristic::zero(2).is_odd());
  CHECK(std::abs(theta_char(c, CVec::Zero(1), RiemannMatrix::scalar(kI))) < 1e-15);
}

TEST_CASE("gradient and Hessian against finite differences") {
  Gen gen(3);
  const RiemannMatrix M(genus2());
  const Characteristic c{RVec::Constant(2, 0.25), RVec::Constant(2, -0.1)};
  for (int k = 0; k < 20; ++k) {
    CVec z(2);
    z << gen.complex(0.4), gen.complex(0.4);
    const ThetaJet jet = theta_jet(c, z, M, {}, 2);
    const double h = 1e-5;
    for (int i = 0; i < 2; ++i) {
      CVec e = CVec::Zero(2);
      e(i) = h;
      const cd fd = (theta_char(c, z + e, M) - theta_char(c, z - e, M)) / (2.0 * h);
      CHECK(std::abs(jet.grad(i) - fd) < 1e-7 * std::max(1.0, std::abs(fd)));
      const ThetaJet up = theta_jet(c, z + e, M, {}, 1), down = theta_jet(c, z - e, M, {}, 1);
      CHECK((jet.hess.col(i) - (up.grad - down.grad) / (2.0 * h)).cwiseAbs().maxCoeff() < 1e-5);
    }
  }
}

TEST_CASE("quasi-periodicity property") {
  Gen gen(5);
  for (const RiemannMatrix& M : {RiemannMatrix::scalar({0.1, 0.8}), RiemannMatrix(genus2())}) {
    const int g = M.genus();
    for (int k = 0; k < 200; ++k) {
      Characteristic c{RVec(g), RVec(g)};
      CVec z(g);
      RVec m(g), n(g);
      for (int i = 0; i < g; ++i) {
        c.a(i) = gen.real(-0.5, 0.5);
        c.b(i) = gen.real(-0.5, 0.5);
        z(i) = gen.complex(0.4);
        m(i) = gen.integer(-2, 2);
        n(i) = gen.integer(-2, 2);
      }
      const CVec mc = m.cast<cd>();
      const cd expo = -kI * kPi * (mc.transpose() * M.omega * mc)(0, 0) - 2.0 * kPi * kI * (mc.transpose() * z)(0, 0) +
                      2.0 * kPi * kI * (c.a.dot(n) - c.b.dot(m));
      const cd lhs = theta_char(c, z + M.omega * mc + n.cast<cd>(), M);
      CHECK(scaled_residual(lhs, std::exp(expo) * theta_char(c, z, M)) < 1e-11);
    }
  }
}

TEST_CASE("genus-1 fast path equals the lattice sum") {
  Gen gen(9);
  for (int k = 0; k < 500; ++k) {
    const cd tau(gen.real(-0.5, 0.5), gen.real(0.5, 2.0));
    const cd z(gen.real(-0.5, 0.5), gen.real(-0.5, 0.5) * tau.imag());
    const double a = gen.real(-0.5, 0.5), b = gen.real(-0.5, 0.5);
    const ThetaJet fast = theta_jet_genus1(a, b, z, tau, {}, 2);
    const ThetaJet slow = theta_jet_lattice({RVec::Constant(1, a), RVec::Constant(1, b)}, CVec::Constant(1, z),
                                            RiemannMatrix::scalar(tau), {}, 2);
    CHECK(scaled_residual(fast.value, slow.value) < 1e-12);
    CHECK(scaled_residual(fast.grad(0), slow.grad(0)) < 1e-11);
    CHECK(scaled_residual(fast.hess(0, 0), slow.hess(0, 0)) < 1e-10);
  }
}

TEST_CASE("truncation radius grows as the tail bound shrinks") {
  const RiemannMatrix M = RiemannMatrix::scalar(kI);
  const CVec z = CVec::Zero(1);
  const double loose = truncation_radius(Characteristic::zero(1), z, M, {1e-6, 64});
  const double tight = truncation_radius(Characteristic::zero(1), z, M, {1e-14, 64});
  CHECK(loose < tight);
  CHECK(std::abs(theta(z, M, {1e-6, 64}) - theta(z, M)) < 1e-6);
}

TEST_CASE("theta rejects invalid matrices and zero logarithms") {
  CMat bad(1, 1);
  bad << cd(0.0, -1.0);
  CHECK_THROWS_AS(RiemannMatrix{bad}, InvariantError);
  CMat asym(2, 2);
  asym << kI, 0.3, 0.0, kI;
  CHECK_THROWS_AS(RiemannMatrix{asym}, InvariantError);
  const Characteristic odd = Characteristic::half(1);
  CHECK_THROWS_AS(theta_dlog_grad(odd, CVec::Zero(1), RiemannMatrix::scalar(kI)), DomainError);
}

TEST_CASE("batch evaluation is independent of the thread count") {
  Gen gen(13);
  const RiemannMatrix M(genus2());
  std::vector<CVec> zs(300, CVec(2));
  for (auto& z : zs) z << gen.complex(0.5), gen.complex(0.5);
  const auto one = theta_batch(Characteristic::zero(2), zs, M, {}, 1);
  const auto four = theta_batch(Characteristic::zero(2), zs, M, {}, 4);
  REQUIRE(one.size() == zs.size());
  for (std::size_t k = 0; k < zs.size(); ++k) {
    CHECK(one[k] == four[k]);
    CHECK(one[k] == theta(zs[k], M));
  }
  CHECK(theta_batch(Characteristic::zero(2), {}, M).empty());
}
