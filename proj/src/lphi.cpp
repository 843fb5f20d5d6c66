#include "rkhs/lphi.hpp"

#include <cmath>

namespace rkhs {

LPhiSpace::LPhiSpace(KernelConfig cfg, CaratheodoryFunction phi) : cfg_(std::move(cfg)), phi_(std::move(phi)) {
  const auto& s1 = cfg_.surface();
  const auto& s2 = phi_.surface();
  if (&s1 != &s2 && (s1.genus() != s2.genus() || s1.ovals() != s2.ovals() || s1.Z() != s2.Z()))
    throw DomainError("kernel config and phi live on different surfaces");
  const auto& atoms = phi_.atoms();
  mu_.resize(static_cast<Eigen::Index>(atoms.size()));
  for (std::size_t i = 0; i < atoms.size(); ++i) mu_(static_cast<Eigen::Index>(i)) = 0.5 * atoms[i].weight;
  a_ = phi_.oval_mass_matrix();
}

cd LPhiSpace::kernel(const SurfacePoint& p, const SurfacePoint& q) const {
  return (phi_(p) + std::conj(phi_(q))) * hardy_kernel(cfg_, p, q);
}

cd LPhiSpace::l2_kernel(const SurfacePoint& p, const SurfacePoint& q) const {
  cd sum = 0.0;
  const auto& atoms = phi_.atoms();
  for (std::size_t i = 0; i < atoms.size(); ++i)
    sum += mu_(static_cast<Eigen::Index>(i)) * cauchy_kernel(cfg_, p, atoms[i].x.point) *
           std::conj(cauchy_kernel(cfg_, q, atoms[i].x.point));
  return sum;
}

cd LPhiSpace::element(const L2Section& f, const SurfacePoint& p) const {
  if (f.values.size() != size()) throw DomainError("L2 section length does not match the measure support");
  cd sum = 0.0;
  const auto& atoms = phi_.atoms();
  for (Eigen::Index i = 0; i < size(); ++i)
    if (f.values(i) != 0.0)
      sum += mu_(i) * cauchy_kernel(cfg_, p, atoms[static_cast<std::size_t>(i)].x.point) * f.values(i);
  return sum;
}

L2Section LPhiSpace::kernel_section(const SurfacePoint& q) const {
  L2Section f{CVec(size())};
  const auto& atoms = phi_.atoms();
  for (Eigen::Index i = 0; i < size(); ++i)
    f.values(i) = std::conj(cauchy_kernel(cfg_, q, atoms[static_cast<std::size_t>(i)].x.point));
  return f;
}

L2Section LPhiSpace::kernel_combination(const std::vector<SurfacePoint>& w, const CVec& c) const {
  if (static_cast<Eigen::Index>(w.size()) != c.size()) throw DomainError("points and coefficients differ in length");
  L2Section f{CVec::Zero(size())};
  for (std::size_t j = 0; j < w.size(); ++j) f.values += c(static_cast<Eigen::Index>(j)) * kernel_section(w[j]).values;
  return f;
}

cd LPhiSpace::inner(const L2Section& f, const L2Section& g) const {
  if (f.values.size() != size() || g.values.size() != size())
    throw DomainError("L2 section length does not match the measure support");
  return (mu_.cast<cd>().array() * f.values.array() * g.values.conjugate().array()).sum();
}

double LPhiSpace::norm(const L2Section& f) const { return std::sqrt(std::max(0.0, inner(f, f).real())); }

CMat LPhiSpace::gram(const std::vector<SurfacePoint>& pts) const {
  const auto n = static_cast<Eigen::Index>(pts.size());
  CMat G(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) G(i, j) = kernel(pts[static_cast<std::size_t>(i)], pts[static_cast<std::size_t>(j)]);
  return G;
}

CMat LPhiSpace::l2_gram(const std::vector<SurfacePoint>& pts) const {
  // K(p_i, x_k) once per pair, then G = A diag(mu) A^*.
  const auto n = static_cast<Eigen::Index>(pts.size());
  CMat A(n, size());
  const auto& atoms = phi_.atoms();
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index k = 0; k < size(); ++k)
      A(i, k) = cauchy_kernel(cfg_, pts[static_cast<std::size_t>(i)], atoms[static_cast<std::size_t>(k)].x.point);
  return A * mu_.cast<cd>().asDiagonal() * A.adjoint();
}

int LPhiSpace::dimension(double rel_tol) const {
  if (!phi_.measure().densities.empty()) throw DomainError("dimension is defined for atomic measures only");
  if (size() == 0) return 0;
  const CMat G = l2_gram(interior_points(surface(), 2 * static_cast<int>(size()) + 2));
  Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (G + G.adjoint()), Eigen::EigenvaluesOnly);
  const RVec ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  int rank = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) rank += ev(i) > rel_tol * top ? 1 : 0;
  return rank;
}

std::vector<SurfacePoint> interior_points(const RealSurfaceDescriptor& s, int count) {
  // Additive-recurrence sequence: deterministic and well spread.
  constexpr double a1 = 0.6180339887498949, a2 = 0.4142135623730950;
  std::vector<SurfacePoint> pts;
  for (int k = 1; k <= count; ++k) {
    const double u = std::fmod(k * a1, 1.0);
    const double v = std::fmod(k * a2, 1.0);
    if (s.genus() == 0) {
      pts.push_back(SurfacePoint::scalar(cd(4.0 * u - 2.0, 0.25 + 2.0 * v)));
    } else if (s.genus() == 1) {
      const double t = s.torus_t();
      const double height = s.dividing() ? t * (0.08 + 0.34 * v) : t * (0.08 + 0.84 * v);
      pts.push_back(SurfacePoint::scalar(cd(u, height)));
    } else {
      throw DomainError("interior sampling is implemented for genus 0 and 1");
    }
  }
  return pts;
}

double inner_product_identity_residual(const LPhiSpace& sp, const SurfacePoint& p, const SurfacePoint& q) {
  const KernelConfig& cfg = sp.kernel_config();
  const PrimeFormContext& E = cfg.prime();
  const auto& s = sp.surface();
  const SurfacePoint r = involution(s, q);
  const cd t0 = cfg.theta_zeta0();

  cd lhs = 0.0;
  for (const auto& a : sp.atoms()) {
    const SurfacePoint& x = a.x.point;
    const cd rho = E.tangent_factor(a.x.diff_values);
    lhs += a.weight * rho * cfg.theta_zeta(p.z - x.z) / (t0 * E.value(x, p)) * cfg.theta_zeta(x.z - r.z) /
           (t0 * E.value(x, r));
  }

  const cd P = cfg.theta_zeta(p.z - r.z) / (t0 * E.value(r, p));
  cd bracket = 2.0 * kI * (sp.phi()(p) + std::conj(sp.phi()(q)));
  if (s.genus() > 0) {
    const CVec a = sp.a_sum();
    const CVec dz = p.z - r.z;
    bracket += 2.0 * kPi * (a.transpose() * s.Y().cast<cd>() * dz)(0, 0);
    const CVec dl = cfg.theta_zeta_dlog(dz) - cfg.theta_zeta_dlog(CVec::Zero(s.genus()));
    bracket += (a.transpose() * dl)(0, 0);
  }
  const cd rhs = P * bracket;
  return scaled_residual(lhs, rhs);
}

double fay_residual(const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& r, const SurfacePoint& x) {
  const PrimeFormContext& E = cfg.prime();
  cd lhs = E.dlog_x(p, x) - E.dlog_x(r, x);
  if (cfg.genus() > 0) {
    const CVec dl = cfg.theta_zeta_dlog(p.z - r.z) - cfg.theta_zeta_dlog(CVec::Zero(cfg.genus()));
    lhs += (dl.transpose() * E.chart_direction())(0, 0);
  }
  const cd rhs = E.value(r, p) / (E.value(x, r) * E.value(x, p)) * cfg.theta_zeta(x.z - r.z) *
                 cfg.theta_zeta(p.z - x.z) / (cfg.theta_zeta(p.z - r.z) * cfg.theta_zeta0());
  return scaled_residual(lhs, rhs);
}

}  // namespace rkhs
