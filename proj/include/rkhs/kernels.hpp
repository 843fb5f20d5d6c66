#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "rkhs/prime_form.hpp"

namespace rkhs {

/// Cauchy-kernel data: the prime form and a characteristic zeta with
/// theta[zeta](0) != 0.
class KernelConfig {
 public:
  KernelConfig(std::shared_ptr<const PrimeFormContext> prime, std::optional<Characteristic> zeta = std::nullopt);

  /// Convenience: prime form with its default odd characteristic.
  static KernelConfig for_surface(SurfacePtr s, std::optional<Characteristic> zeta = std::nullopt,
                                  std::optional<Characteristic> odd = std::nullopt);

  const PrimeFormContext& prime() const { return *prime_; }
  const RealSurfaceDescriptor& surface() const { return prime_->surface(); }
  int genus() const { return prime_->genus(); }
  const Characteristic& zeta() const { return zeta_; }
  cd theta_zeta0() const { return theta0_; }

  cd theta_zeta(const CVec& z) const;
  /// Gradient of log theta[zeta] at z.
  CVec theta_zeta_dlog(const CVec& z) const;

 private:
  std::shared_ptr<const PrimeFormContext> prime_;
  Characteristic zeta_;
  cd theta0_ = 1.0;
};

/// K(u,v) = theta[zeta](v-u) / (theta[zeta](0) E(v,u)); 1/(u-v) at genus 0.
cd cauchy_kernel(const KernelConfig& cfg, const SurfacePoint& u, const SurfacePoint& v);

/// Hardy-space kernel i K(p, tau q).
cd hardy_kernel(const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& q);

/// Real meromorphic function with simple poles.
///
/// Rational (genus 0): constant + linear z + sum r_m / (z - p_m).
/// Elliptic (genus 1): constant + sum r_m f(z - p_m), f the log-derivative of
/// the odd theta, with sum r_m = 0.
struct MeromorphicFunction {
  enum class Kind { Rational, Elliptic, Tabulated };

  Kind kind = Kind::Rational;
  std::vector<SurfacePoint> poles;
  std::vector<cd> residues;
  cd constant = 0.0;
  cd linear = 0.0;

  static MeromorphicFunction rational(cd constant, cd linear, std::vector<cd> poles, std::vector<cd> residues);
  static MeromorphicFunction elliptic(cd constant, std::vector<cd> poles, std::vector<cd> residues);

  /// Number of preimages of a generic value.
  int degree() const;
  cd operator()(const PrimeFormContext& ctx, const SurfacePoint& u) const;
  cd derivative(const PrimeFormContext& ctx, const SurfacePoint& u) const;
  /// Coefficient of the model operator at pole m: minus the chart residue.
  cd model_coefficient(std::size_t m) const { return -residues[m]; }

  /// Throws InvariantError if the poles are not distinct, the residues of an
  /// elliptic function do not sum to zero, or the function is not real.
  void validate(const PrimeFormContext& ctx) const;
};

/// Section evaluable pointwise. At genus 0 `z_times_limit` is lim z F(z) at
/// infinity, needed when y has a linear part.
struct Section {
  std::function<cd(const SurfacePoint&)> f;
  std::optional<cd> z_times_limit;

  cd operator()(const SurfacePoint& u) const { return f(u); }
};

/// |(y(p)-y(q)) K(p,q) - sum_j Res_j K(p,p_j) K(p_j,q) - linear|.
double collection_residual(const KernelConfig& cfg, const MeromorphicFunction& y, const SurfacePoint& p,
                           const SurfacePoint& q);

/// (M^y F)(u) = y(u) F(u) + sum_m c_m F(p_m) K(u, p_m), c_m = -Res_m.
cd model_op_pointwise(const KernelConfig& cfg, const MeromorphicFunction& y, const Section& F, const SurfacePoint& u);

/// Solutions of y(u) = alpha: exactly degree(y) distinct points or DomainError.
std::vector<SurfacePoint> level_set(const PrimeFormContext& ctx, const MeromorphicFunction& y, cd alpha);

/// (R_alpha F)(u) = F(u)/(y(u)-alpha) - sum_j K(u,u_j) F(u_j) / y'(u_j).
cd resolvent_pointwise(const KernelConfig& cfg, const MeromorphicFunction& y, cd alpha, const Section& F,
                       const SurfacePoint& u, const std::vector<SurfacePoint>* preimages = nullptr);

}  // namespace rkhs
