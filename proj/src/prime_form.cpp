#include "rkhs/prime_form.hpp"

namespace rkhs {

PrimeFormContext::PrimeFormContext(SurfacePtr surface, std::optional<Characteristic> odd,
                                   TruncationPolicy policy)
    : surface_(std::move(surface)), policy_(policy) {
  if (!surface_) throw DomainError("prime form needs a surface");
  const int g = surface_->genus();
  if (g == 0) {
    dir_ = CVec::Ones(1);
    return;
  }
  riemann_.emplace(RiemannMatrix::from_surface(*surface_));
  if (odd) {
    if (odd->genus() != g) throw DomainError("odd characteristic has the wrong length");
    if (!odd->is_odd()) throw InvariantError("characteristic supplied for the prime form is not odd", 0.0);
    odd_ = *odd;
  } else if (g == 1) {
    odd_ = Characteristic::half(1);
  } else if (const auto& carried = surface_->odd_characteristic()) {
    odd_ = Characteristic{carried->first, carried->second};
    if (!odd_.is_odd()) throw InvariantError("descriptor odd_characteristic is not odd", 0.0);
  } else {
    throw DomainError("genus >= 2 prime form needs an odd characteristic (descriptor field odd_characteristic)");
  }
  if (g == 1) {
    dir_ = CVec::Ones(1);
  } else {
    if (surface_->oval_samples().empty()) throw DomainError("chart direction needs an oval sample");
    dir_ = surface_->oval_samples().front().diff_values;
  }
  const ThetaJet jet = theta_jet(odd_, CVec::Zero(g), *riemann_, policy_, 1);
  grad0_ = jet.grad;
  norm_ = (grad0_.transpose() * dir_)(0, 0);
  if (std::abs(norm_) < kThetaZero)
    throw DomainError("odd characteristic has vanishing gradient along the chart; pick another");
}

const RiemannMatrix& PrimeFormContext::riemann() const {
  if (!riemann_) throw DomainError("genus 0 has no Riemann matrix");
  return *riemann_;
}

cd PrimeFormContext::tangent_factor(const CVec& dir) const {
  if (genus() == 0) return 1.0;
  return (grad0_.transpose() * dir)(0, 0) / norm_;
}

void PrimeFormContext::check_distinct(const SurfacePoint& p, const SurfacePoint& x) const {
  if (p.infinity || x.infinity) throw DomainError("prime form is not evaluated at infinity in this chart");
  if ((x.z - p.z).norm() <= 1e-10) throw DomainError("log-derivative of the prime form too close to the diagonal");
}

cd PrimeFormContext::value(const SurfacePoint& p, const SurfacePoint& q) const {
  if (p.infinity || q.infinity) throw DomainError("prime form is not evaluated at infinity in this chart");
  if (genus() == 0) return q.head() - p.head();
  const CVec d = q.z - p.z;
  // An odd theta vanishes exactly at the origin; the series only to round-off.
  if (d.isZero(0.0)) return 0.0;
  return theta_char(odd_, d, *riemann_, policy_) / norm_;
}

CVec PrimeFormContext::dlog_grad(const SurfacePoint& p, const SurfacePoint& x) const {
  check_distinct(p, x);
  if (genus() == 0) return CVec::Constant(1, 1.0 / (x.head() - p.head()));
  return theta_dlog_grad(odd_, x.z - p.z, *riemann_, policy_);
}

cd PrimeFormContext::dlog_x(const SurfacePoint& p, const SurfacePoint& x) const {
  return dlog_x_along(p, x, dir_);
}

cd PrimeFormContext::dlog_x_along(const SurfacePoint& p, const SurfacePoint& x, const CVec& dir) const {
  const CVec grad = dlog_grad(p, x);
  if (genus() == 0) return grad(0);
  return (grad.transpose() * dir)(0, 0);
}

cd prime_form(const PrimeFormContext& ctx, const SurfacePoint& p, const SurfacePoint& q) {
  return ctx.value(p, q);
}

cd dlog_prime_form_x(const PrimeFormContext& ctx, const SurfacePoint& p, const SurfacePoint& x) {
  return ctx.dlog_x(p, x);
}

}  // namespace rkhs
