#pragma once

#include <memory>
#include <vector>

#include "rkhs/lphi.hpp"

namespace rkhs {

/// Model operator of a real meromorphic y on a finite atomic L(phi). In the
/// atom basis M^y is diagonal with entries y(x_i).
class OperatorPair {
 public:
  OperatorPair(std::shared_ptr<const LPhiSpace> space, MeromorphicFunction y);

  const LPhiSpace& space() const { return *space_; }
  const std::shared_ptr<const LPhiSpace>& space_ptr() const { return space_; }
  const MeromorphicFunction& y() const { return y_; }
  const CVec& M_diag() const { return diag_; }
  /// No pole of y lies within 1e-6 of an atom (checked at construction).
  bool pole_check() const { return true; }

 private:
  std::shared_ptr<const LPhiSpace> space_;
  MeromorphicFunction y_;
  CVec diag_;
};

L2Section model_op_l2(const OperatorPair& op, const L2Section& f);
L2Section resolvent_l2(const OperatorPair& op, cd alpha, const L2Section& f);

/// Element of L(phi) as a pointwise section, including lim z F(z) at genus 0.
Section as_section(const LPhiSpace& sp, const L2Section& f);

/// |<R_a f, g> - <f, R_b g> - (a - conj b) <R_a f, R_b g>|.
double structure_identity_residual(const OperatorPair& op, const L2Section& f, const L2Section& g, cd alpha, cd beta);

/// |<M f, g> - <f, M g>| / max(1, |<M f, g>|).
double selfadjoint_residual(const OperatorPair& op, const L2Section& f, const L2Section& g);

/// max over samples of the scale-aware gap between the pointwise model
/// operator applied to F and the element of the diagonal action on f.
double representation_consistency_residual(const OperatorPair& op, const L2Section& f,
                                           const std::vector<SurfacePoint>& samples);

/// Same comparison for the resolvent.
double resolvent_consistency_residual(const OperatorPair& op, cd alpha, const L2Section& f,
                                      const std::vector<SurfacePoint>& samples);

/// Pointwise resolvent on K(., tau w) against K(., tau w)/(conj y(w) - alpha).
double eigenvector_residual(const KernelConfig& cfg, const MeromorphicFunction& y, cd alpha, const SurfacePoint& w,
                            const std::vector<SurfacePoint>& samples);

}  // namespace rkhs
