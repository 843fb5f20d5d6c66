#include "rkhs/theta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "rkhs/surface.hpp"

namespace rkhs {

bool Characteristic::is_odd() const {
  const RVec a2 = 2.0 * a;
  const RVec b2 = 2.0 * b;
  if ((a2.array() - a2.array().round()).abs().maxCoeff() > 1e-12) return false;
  if ((b2.array() - b2.array().round()).abs().maxCoeff() > 1e-12) return false;
  const long parity = std::lround(a2.dot(b2));
  return ((parity % 2) + 2) % 2 == 1;
}

RiemannMatrix::RiemannMatrix(CMat om, std::optional<CMat> z) : omega(std::move(om)), source_Z(std::move(z)) {
  if (omega.rows() != omega.cols()) throw DomainError("Riemann matrix must be square");
  if (omega.size() == 0) return;
  const double asym = (omega - omega.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-14) throw InvariantError("Riemann matrix is not symmetric", asym);
  Eigen::SelfAdjointEigenSolver<RMat> es(omega.imag());
  lambda_min_ = es.eigenvalues().minCoeff();
  if (!(lambda_min_ > 0.0)) throw InvariantError("Im of Riemann matrix is not positive definite", lambda_min_);
}

RiemannMatrix RiemannMatrix::from_surface(const RealSurfaceDescriptor& s) {
  return RiemannMatrix(s.omega_std(), s.Z());
}

RiemannMatrix RiemannMatrix::scalar(cd tau) { return RiemannMatrix(CMat::Constant(1, 1, tau)); }

namespace {

void check_args(const Characteristic& c, const CVec& z, const RiemannMatrix& M) {
  const int g = M.genus();
  if (g == 0) throw DomainError("theta functions need genus >= 1");
  if (c.a.size() != g || c.b.size() != g || z.size() != g)
    throw DomainError("theta argument dimensions do not match the Riemann matrix");
}

/// Center of the Gaussian in index space: the minimizer of the term modulus.
RVec dominant_index(const Characteristic& c, const CVec& z, const RiemannMatrix& M) {
  return -c.a - M.omega.imag().ldlt().solve(z.imag());
}

// Tail bound: g * C * exp(-pi * lambda_min * (R - r0)^2) < eps with the
// lattice-point count C = 4^g absorbed into the logarithm.
double radius_for(int g, double lambda_min, double r0, double eps) {
  const double logc = std::log(static_cast<double>(g)) + g * std::log(4.0);
  return r0 + std::sqrt(std::max(0.0, logc - std::log(eps)) / (kPi * lambda_min)) + 1.0;
}

void enumerate(int dim, int g, const RVec& center, double R2, IVec& n, double acc,
               const std::function<void(const IVec&)>& visit) {
  if (dim == g) {
    visit(n);
    return;
  }
  const double rem = std::sqrt(std::max(0.0, R2 - acc));
  const int lo = static_cast<int>(std::ceil(center(dim) - rem));
  const int hi = static_cast<int>(std::floor(center(dim) + rem));
  for (int k = lo; k <= hi; ++k) {
    n(dim) = k;
    const double d = k - center(dim);
    enumerate(dim + 1, g, center, R2, n, acc + d * d, visit);
  }
}

}  // namespace

double truncation_radius(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                         const TruncationPolicy& T) {
  check_args(c, z, M);
  const RVec center = dominant_index(c, z, M);
  const double r0 = (center.array() - center.array().round()).matrix().norm();
  return radius_for(M.genus(), M.min_im_eigenvalue(), r0, T.tail_bound);
}

ThetaJet theta_jet_lattice(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                           const TruncationPolicy& T, int order) {
  check_args(c, z, M);
  const int g = M.genus();
  const RVec center = dominant_index(c, z, M);
  const double r0 = (center.array() - center.array().round()).matrix().norm();
  const double R = radius_for(g, M.min_im_eigenvalue(), r0, T.tail_bound);
  if (R > T.max_radius) throw DomainError("theta truncation radius exceeds max_radius; Riemann matrix is ill-conditioned");

  ThetaJet jet{0.0, CVec::Zero(g), CMat::Zero(g, g)};
  const CVec zb = z + c.b.cast<cd>();
  IVec n(g);
  enumerate(0, g, center, R * R, n, 0.0, [&](const IVec& idx) {
    const RVec m = idx.cast<double>() + c.a;
    const CVec mc = m.cast<cd>();
    const cd quad = (mc.transpose() * M.omega * mc)(0, 0);
    const cd term = std::exp(kI * kPi * quad + 2.0 * kPi * kI * (mc.transpose() * zb)(0, 0));
    jet.value += term;
    if (order >= 1) jet.grad += (2.0 * kPi * kI * term) * mc;
    if (order >= 2) jet.hess += (-4.0 * kPi * kPi * term) * (mc * mc.transpose());
  });
  return jet;
}

ThetaJet theta_jet_genus1(double a, double b, cd z, cd tau, const TruncationPolicy& T, int order) {
  if (!(tau.imag() > 0.0)) throw InvariantError("Im tau must be positive", tau.imag());
  const cd zb = z + b;
  const double center = -a - z.imag() / tau.imag();
  const double cutoff = std::log(T.tail_bound) - std::log(4.0);
  auto exponent = [&](double m) { return kI * kPi * tau * (m * m) + 2.0 * kPi * kI * m * zb; };
  const long n0 = std::lround(center);
  const double peak = exponent(n0 + a).real();

  ThetaJet jet{0.0, CVec::Zero(1), CMat::Zero(1, 1)};
  cd d1 = 0.0, d2 = 0.0;
  auto add = [&](long n) {
    const double m = n + a;
    const cd e = exponent(m);
    const cd term = std::exp(e);
    jet.value += term;
    if (order >= 1) d1 += 2.0 * kPi * kI * m * term;
    if (order >= 2) d2 += -4.0 * kPi * kPi * m * m * term;
    return e.real() - peak;
  };
  add(n0);
  for (long step = 1;; ++step) {
    if (step > T.max_radius) throw DomainError("theta truncation radius exceeds max_radius; Riemann matrix is ill-conditioned");
    const double up = add(n0 + step);
    const double down = add(n0 - step);
    // Past the peak on both sides, every further term is smaller still.
    if (up < cutoff && down < cutoff && step >= 2) break;
  }
  jet.grad(0) = d1;
  jet.hess(0, 0) = d2;
  return jet;
}

ThetaJet theta_jet(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                   const TruncationPolicy& T, int order) {
  check_args(c, z, M);
  if (M.genus() == 1) return theta_jet_genus1(c.a(0), c.b(0), z(0), M.omega(0, 0), T, order);
  return theta_jet_lattice(c, z, M, T, order);
}

cd theta_char(const Characteristic& c, const CVec& z, const RiemannMatrix& M, const TruncationPolicy& T) {
  return theta_jet(c, z, M, T, 0).value;
}

cd theta(const CVec& z, const RiemannMatrix& M, const TruncationPolicy& T) {
  return theta_char(Characteristic::zero(M.genus()), z, M, T);
}

CVec theta_dlog_grad(const Characteristic& c, const CVec& z, const RiemannMatrix& M,
                     const TruncationPolicy& T) {
  const ThetaJet jet = theta_jet(c, z, M, T, 1);
  if (std::abs(jet.value) < kThetaZero) throw DomainError("log-derivative requested at a zero of theta");
  return jet.grad / jet.value;
}

std::vector<cd> theta_batch(const Characteristic& c, const std::vector<CVec>& zs,
                            const RiemannMatrix& M, const TruncationPolicy& T, unsigned threads) {
  std::vector<cd> out(zs.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, std::max<std::size_t>(1, zs.size()));
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex failure_mutex;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < zs.size(); i += threads) out[i] = theta_char(c, zs[i], M, T);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace rkhs
