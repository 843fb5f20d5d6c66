#pragma once

#include <vector>

#include "rkhs/herglotz.hpp"
#include "rkhs/kernels.hpp"

namespace rkhs {

/// Coefficients of f in the discrete L^2 model: one entry per atom.
struct L2Section {
  CVec values;
};

/// Reproducing-kernel space L(phi) realized through its L^2 model.
///
/// Atoms x_i carry weights mu_i = w_i / 2. Elements are
/// F(u) = sum_i mu_i K(u, x_i) f_i and the norm of F is the weighted l^2 norm
/// of f. The kernel is (phi(p) + conj phi(q)) times the Hardy kernel, which
/// coincides with the model Gram when the mass vector vanishes.
class LPhiSpace {
 public:
  LPhiSpace(KernelConfig cfg, CaratheodoryFunction phi);

  const KernelConfig& kernel_config() const { return cfg_; }
  const CaratheodoryFunction& phi() const { return phi_; }
  const RealSurfaceDescriptor& surface() const { return cfg_.surface(); }
  const std::vector<Atom>& atoms() const { return phi_.atoms(); }
  const RVec& mu() const { return mu_; }
  Eigen::Index size() const { return mu_.size(); }

  const CMat& a_matrix() const { return a_; }
  CVec a_sum() const { return a_.colwise().sum().transpose(); }

  cd kernel(const SurfacePoint& p, const SurfacePoint& q) const;
  /// sum_i mu_i K(p, x_i) conj K(q, x_i).
  cd l2_kernel(const SurfacePoint& p, const SurfacePoint& q) const;

  cd element(const L2Section& f, const SurfacePoint& p) const;
  /// f_q(x) = conj K(q, x), so that element(f_q) = l2_kernel(., q).
  L2Section kernel_section(const SurfacePoint& q) const;
  /// f = sum_j c_j f_{w_j}.
  L2Section kernel_combination(const std::vector<SurfacePoint>& w, const CVec& c) const;

  cd inner(const L2Section& f, const L2Section& g) const;
  double norm(const L2Section& f) const;

  CMat gram(const std::vector<SurfacePoint>& pts) const;
  CMat l2_gram(const std::vector<SurfacePoint>& pts) const;

  /// Numerical rank of the model Gram on 2N + 2 interior points.
  int dimension(double rel_tol = 1e-10) const;

 private:
  KernelConfig cfg_;
  CaratheodoryFunction phi_;
  RVec mu_;
  CMat a_;
};

/// Deterministic interior points of X+ used for Gram and rank checks.
std::vector<SurfacePoint> interior_points(const RealSurfaceDescriptor& s, int count);

/// Left and right sides of the inner-product identity for L(phi) with its
/// correction terms; returns |lhs - rhs| / max(1, |rhs|).
double inner_product_identity_residual(const LPhiSpace& sp, const SurfacePoint& p, const SurfacePoint& q);

/// Fay trisecant-type identity for the log-derivative of the prime form;
/// scale-aware residual.
double fay_residual(const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& r, const SurfacePoint& x);

}  // namespace rkhs
