#include "rkhs/operators.hpp"

#include <cmath>

namespace rkhs {

OperatorPair::OperatorPair(std::shared_ptr<const LPhiSpace> space, MeromorphicFunction y)
    : space_(std::move(space)), y_(std::move(y)) {
  if (!space_) throw DomainError("operator needs a space");
  const auto& s = space_->surface();
  const auto& atoms = space_->atoms();
  diag_.resize(space_->size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    for (const auto& p : y_.poles) {
      const double d = lattice_distance(s, p.z, atoms[i].x.point.z);
      if (d <= 1e-6) throw DomainError("a pole of y lies on the support of the measure");
    }
    diag_(static_cast<Eigen::Index>(i)) = y_(space_->kernel_config().prime(), atoms[i].x.point);
  }
}

L2Section model_op_l2(const OperatorPair& op, const L2Section& f) {
  return {op.M_diag().cwiseProduct(f.values)};
}

L2Section resolvent_l2(const OperatorPair& op, cd alpha, const L2Section& f) {
  const CVec shifted = op.M_diag().array() - alpha;
  if (shifted.size() > 0 && shifted.cwiseAbs().minCoeff() < 1e-10)
    throw DomainError("resolvent parameter lies on the spectrum");
  return {f.values.cwiseQuotient(shifted)};
}

Section as_section(const LPhiSpace& sp, const L2Section& f) {
  Section F;
  F.f = [&sp, f](const SurfacePoint& u) { return sp.element(f, u); };
  // K(z, x) = 1/(z - x) at genus 0, so lim z F(z) = sum mu_i f_i.
  if (sp.surface().genus() == 0) F.z_times_limit = (sp.mu().cast<cd>().array() * f.values.array()).sum();
  return F;
}

double structure_identity_residual(const OperatorPair& op, const L2Section& f, const L2Section& g, cd alpha, cd beta) {
  const LPhiSpace& sp = op.space();
  const L2Section ra = resolvent_l2(op, alpha, f);
  const L2Section rb = resolvent_l2(op, beta, g);
  return std::abs(sp.inner(ra, g) - sp.inner(f, rb) - (alpha - std::conj(beta)) * sp.inner(ra, rb));
}

double selfadjoint_residual(const OperatorPair& op, const L2Section& f, const L2Section& g) {
  const LPhiSpace& sp = op.space();
  const cd a = sp.inner(model_op_l2(op, f), g);
  return scaled_residual(a, sp.inner(f, model_op_l2(op, g)));
}

double representation_consistency_residual(const OperatorPair& op, const L2Section& f,
                                           const std::vector<SurfacePoint>& samples) {
  const LPhiSpace& sp = op.space();
  const Section F = as_section(sp, f);
  const L2Section mf = model_op_l2(op, f);
  double worst = 0.0;
  for (const auto& u : samples)
    worst = std::max(worst, scaled_residual(model_op_pointwise(sp.kernel_config(), op.y(), F, u), sp.element(mf, u)));
  return worst;
}

double resolvent_consistency_residual(const OperatorPair& op, cd alpha, const L2Section& f,
                                      const std::vector<SurfacePoint>& samples) {
  const LPhiSpace& sp = op.space();
  const Section F = as_section(sp, f);
  const L2Section rf = resolvent_l2(op, alpha, f);
  const auto pre = level_set(sp.kernel_config().prime(), op.y(), alpha);
  double worst = 0.0;
  for (const auto& u : samples)
    worst = std::max(worst, scaled_residual(resolvent_pointwise(sp.kernel_config(), op.y(), alpha, F, u, &pre),
                                            sp.element(rf, u)));
  return worst;
}

double eigenvector_residual(const KernelConfig& cfg, const MeromorphicFunction& y, cd alpha, const SurfacePoint& w,
                            const std::vector<SurfacePoint>& samples) {
  const SurfacePoint tw = involution(cfg.surface(), w);
  Section F;
  F.f = [&cfg, tw](const SurfacePoint& u) { return cauchy_kernel(cfg, u, tw); };
  const cd eig = 1.0 / (std::conj(y(cfg.prime(), w)) - alpha);
  const auto pre = level_set(cfg.prime(), y, alpha);
  double worst = 0.0;
  for (const auto& u : samples)
    worst = std::max(worst, scaled_residual(resolvent_pointwise(cfg, y, alpha, F, u, &pre), eig * F(u)));
  return worst;
}

}  // namespace rkhs
