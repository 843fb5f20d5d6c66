#pragma once

#include <optional>

#include "rkhs/surface.hpp"
#include "rkhs/theta.hpp"

namespace rkhs {

/// Prime form in the Jacobian chart. Values are plain scalars: the
/// half-order differential factors cancel in every ratio built from them.
///
/// Genus 0 uses E(p,q) = q - p. Genus >= 1 uses an odd characteristic delta
/// and E(p,q) = theta[delta](q - p) / c, where c is the derivative of
/// theta[delta] at 0 along the chart direction, so E(u,v)/(v-u) -> 1.
class PrimeFormContext {
 public:
  explicit PrimeFormContext(SurfacePtr surface, std::optional<Characteristic> odd = std::nullopt,
                            TruncationPolicy policy = {});

  const RealSurfaceDescriptor& surface() const { return *surface_; }
  const SurfacePtr& surface_ptr() const { return surface_; }
  int genus() const { return surface_->genus(); }
  const RiemannMatrix& riemann() const;
  const Characteristic& odd_char() const { return odd_; }
  const TruncationPolicy& policy() const { return policy_; }

  /// Unit tangent of the chart in Jacobian coordinates.
  const CVec& chart_direction() const { return dir_; }
  cd normalization() const { return norm_; }

  /// Derivative of theta[delta] at 0 along `dir`, relative to the chart
  /// direction. Equals 1 at genus 0 and omega itself at genus 1.
  cd tangent_factor(const CVec& dir) const;

  cd value(const SurfacePoint& p, const SurfacePoint& q) const;

  /// Gradient of log theta[delta] at x - p; the x-derivative of log E(p,x)
  /// along a tangent v is grad . v.
  CVec dlog_grad(const SurfacePoint& p, const SurfacePoint& x) const;

  /// d/dx log E(p, x) along the chart direction.
  cd dlog_x(const SurfacePoint& p, const SurfacePoint& x) const;

  /// d/dx log E(p, x) along the tangent `dir` (an oval's differential values).
  cd dlog_x_along(const SurfacePoint& p, const SurfacePoint& x, const CVec& dir) const;

 private:
  void check_distinct(const SurfacePoint& p, const SurfacePoint& x) const;

  SurfacePtr surface_;
  std::optional<RiemannMatrix> riemann_;
  Characteristic odd_;
  TruncationPolicy policy_;
  CVec dir_;
  CVec grad0_;
  cd norm_ = 1.0;
};

cd prime_form(const PrimeFormContext& ctx, const SurfacePoint& p, const SurfacePoint& q);
cd dlog_prime_form_x(const PrimeFormContext& ctx, const SurfacePoint& p, const SurfacePoint& x);

}  // namespace rkhs
