#include <doctest.h>

#include <Eigen/Eigenvalues>

#include "generators.hpp"

using namespace rkhs;
using namespace rkhs::testing;

TEST_CASE("genus-0 kernels in closed form") {
  const KernelConfig cfg(prime(plane()));
  const SurfacePoint i = SurfacePoint::scalar(kI);
  CHECK(std::abs(hardy_kernel(cfg, i, i) - 0.5) < 1e-15);
  Gen gen(1);
  for (int k = 0; k < 50; ++k) {
    const SurfacePoint z = gen.interior(cfg.surface()), w = gen.interior(cfg.surface());
    CHECK(std::abs(cauchy_kernel(cfg, z, w) - 1.0 / (z.head() - w.head())) < 1e-15);
    CHECK(scaled_residual(hardy_kernel(cfg, z, w), 1.0 / (-kI * (z.head() - std::conj(w.head())))) < 1e-15);
  }
  CHECK(cauchy_kernel(cfg, i, SurfacePoint::at_infinity()) == cd(0.0));
}

TEST_CASE("Cauchy kernel has a unit residue on the diagonal") {
  for (const auto& zeta : {Characteristic{RVec::Constant(1, 0.0), RVec::Constant(1, 0.5)}, Characteristic::zero(1)}) {
    const KernelConfig cfg(prime(torus()), zeta);
    const SurfacePoint u = SurfacePoint::scalar({0.3, 0.2});
    auto scaled = [&](double h) {
      return cauchy_kernel(cfg, u, SurfacePoint::scalar(u.head() + h)) * h;
    };
    CHECK(std::abs((4.0 * scaled(5e-4) - scaled(1e-3)) / 3.0 + 1.0) < 1e-8);
  }
}

TEST_CASE("Hardy Gram is Hermitian and positive semidefinite") {
  Gen gen(2);
  for (double t : {1.0, 0.5, 2.0}) {
    const KernelConfig cfg(prime(torus(t)));
    std::vector<SurfacePoint> pts;
    for (int k = 0; k < 6; ++k) pts.push_back(gen.plus(cfg.surface()));
    CMat G(6, 6);
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b) G(a, b) = hardy_kernel(cfg, pts[a], pts[b]);
    CHECK((G - G.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    Eigen::SelfAdjointEigenSolver<CMat> eig(0.5 * (G + G.adjoint()));
    CHECK(eig.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("collection formula") {
  Gen gen(3);
  SUBCASE("genus 0, y = 1/(z - a)") {
    const KernelConfig cfg(prime(plane()));
    const auto y = MeromorphicFunction::rational(0.0, 0.0, {cd(0.4, 0.0)}, {cd(1.0, 0.0)});
    for (int k = 0; k < 50; ++k)
      CHECK(collection_residual(cfg, y, gen.interior(cfg.surface()), gen.interior(cfg.surface())) < 1e-12);
  }
  SUBCASE("genus 0 with a linear part") {
    const KernelConfig cfg(prime(plane()));
    const auto y = MeromorphicFunction::rational(0.2, 1.5, {cd(0.3, 0.5), cd(0.3, -0.5)}, {cd(1, 0.2), cd(1, -0.2)});
    for (int k = 0; k < 50; ++k)
      CHECK(collection_residual(cfg, y, gen.interior(cfg.surface()), gen.interior(cfg.surface())) < 1e-12);
  }
  SUBCASE("torus, conjugate poles") {
    const KernelConfig cfg(prime(torus()));
    const auto y = MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.3, -0.2)}, {cd(0, 0.7), cd(0, -0.7)});
    for (int k = 0; k < 50; ++k)
      CHECK(collection_residual(cfg, y, gen.interior(cfg.surface()), gen.interior(cfg.surface())) < 1e-9);
  }
}

TEST_CASE("meromorphic function validation") {
  const auto E = prime(torus());
  CHECK_NOTHROW(MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.3, -0.2)}, {cd(0, 0.7), cd(0, -0.7)})
                    .validate(*E));
  CHECK_THROWS_AS(MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.3, -0.2)}, {cd(1, 0.5), cd(1, -0.5)})
                      .validate(*E),
                  InvariantError);
  CHECK_THROWS_AS(MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.6, 0.1)}, {cd(0, 0.7), cd(0, -0.7)})
                      .validate(*E),
                  InvariantError);
  CHECK_THROWS_AS(MeromorphicFunction::elliptic(cd(0.5, 1.0), {cd(0.2, 0), cd(0.7, 0)}, {0.3, -0.3}).validate(*E),
                  InvariantError);
  const auto P = prime(plane());
  CHECK_THROWS_AS(MeromorphicFunction::rational(0.0, 1.0, {cd(0.2, 0), cd(0.2, 0)}, {1.0, 1.0}).validate(*P),
                  InvariantError);
}

TEST_CASE("level sets have degree-many points") {
  const auto E = prime(torus());
  const auto y = MeromorphicFunction::elliptic(0.5, {cd(0.3, 0.2), cd(0.3, -0.2)}, {cd(0, 0.7), cd(0, -0.7)});
  Gen gen(4);
  for (int k = 0; k < 10; ++k) {
    const cd alpha = gen.nonreal();
    const auto pts = level_set(*E, y, alpha);
    REQUIRE(pts.size() == 2);
    for (const auto& u : pts) CHECK(std::abs(y(*E, u) - alpha) < 1e-10);
  }
  const auto P = prime(plane());
  const auto r = MeromorphicFunction::rational(0.0, 1.0, {cd(0.5, 0.0)}, {cd(2.0, 0.0)});
  const auto roots = level_set(*P, r, kI);
  REQUIRE(roots.size() == 2);
  for (const auto& u : roots) CHECK(std::abs(r(*P, u) - kI) < 1e-12);
}

TEST_CASE("model operator and resolvent in genus 0") {
  const KernelConfig cfg(prime(plane()));
  const auto y = MeromorphicFunction::rational(0.0, 1.0, {}, {});
  const cd w(0.4, 1.3);
  // F = 1/(z - conj w): M F = z F - lim z F = conj(w) / (z - conj w).
  const Section F{[&](const SurfacePoint& u) { return 1.0 / (u.head() - std::conj(w)); }, cd(1.0)};
  Gen gen(5);
  for (int k = 0; k < 20; ++k) {
    const SurfacePoint u = gen.interior(cfg.surface());
    CHECK(std::abs(model_op_pointwise(cfg, y, F, u) - std::conj(w) / (u.head() - std::conj(w))) < 1e-12);
    const cd alpha = gen.nonreal();
    // R_alpha F = F / (conj w - alpha).
    CHECK(std::abs(resolvent_pointwise(cfg, y, alpha, F, u) - F(u) / (std::conj(w) - alpha)) < 1e-12);
  }
}
