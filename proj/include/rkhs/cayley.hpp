#pragma once

#include <vector>

#include "rkhs/operators.hpp"

namespace rkhs {

/// Cayley image s = (1 - phi)/(1 + phi) of a single-valued phi.
class SchurFunction {
 public:
  explicit SchurFunction(CaratheodoryFunction phi);

  const CaratheodoryFunction& phi() const { return phi_; }
  /// phi is a constant iM and s is a unimodular constant.
  bool unimodular_constant() const { return constant_; }

  cd operator()(const SurfacePoint& p, bool allow_boundary = false) const;
  /// Inverse transform applied to s(p), compared with phi(p).
  double round_trip_residual(const SurfacePoint& p) const;
  /// max | |s(x)| - 1 | over oval samples away from the atoms.
  double boundary_modulus_residual(int per_oval = 16) const;

 private:
  CaratheodoryFunction phi_;
  bool constant_ = false;
};

SchurFunction cayley(const CaratheodoryFunction& phi);

/// (1 - s(p) conj s(q)) times the Hardy kernel.
cd hs_kernel(const SchurFunction& s, const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& q);

/// Image under Lambda of sum_j c_j hs(., q_j): the L^2 section
/// sum_j c_j sqrt(2)/(1 + conj phi(q_j)) f_{q_j}.
L2Section lambda_map(const LPhiSpace& sp, const std::vector<SurfacePoint>& q, const CVec& c);

/// max |hs Gram - Gram of Lambda images| / max(1, |entry|).
double unitarity_residual(const SchurFunction& s, const LPhiSpace& sp, const std::vector<SurfacePoint>& pts);

/// Pole data of y for the conjugated model operator: the evaluation map
/// Phi f = (F(p_j)/(1 + phi(p_j)))_j and the coupling matrix S with
/// S(l, pi(l)) = Res_{pi(l)} y (1 + conj phi(p_l)), pi the involution
/// permutation of the poles. A genus-0 linear part enters as a pole at
/// infinity with residue -B.
class PoleCoupling {
 public:
  explicit PoleCoupling(const OperatorPair& op);

  Eigen::Index poles() const { return phi_at_pole_.size(); }
  const CVec& phi_at_poles() const { return phi_at_pole_; }
  const CMat& Phi() const { return Phi_; }
  const CMat& Phi_adjoint() const { return PhiStar_; }
  const CMat& S() const { return S_; }
  /// Diagonal of S when every pole is its own mirror image.
  CVec sigma() const { return S_.diagonal(); }
  bool diagonal() const { return diagonal_; }

 private:
  CVec phi_at_pole_;
  CMat Phi_;
  CMat PhiStar_;
  CMat S_;
  bool diagonal_ = true;
};

/// y f + i Phi* S Phi f.
L2Section conjugated_model_op(const OperatorPair& op, const PoleCoupling& pc, const L2Section& f);

/// max over samples of | element(conjugated_model_op f)(p) - (1+phi(p))/sqrt2 (M^y u)(p) |
/// with u = sqrt2 F/(1+phi), scale-aware.
double lambda_conjugated_residual(const OperatorPair& op, const L2Section& f, const std::vector<SurfacePoint>& samples);

/// |<Phi f, d> - <f, Phi* d>_{L2}|.
double phi_adjoint_residual(const OperatorPair& op, const L2Section& f, const CVec& d);

/// | (Lambda (Re M^y) Lambda* f) - y f |_inf / max(1, |y f|_inf).
double real_part_residual(const OperatorPair& op, const L2Section& f);

/// Same quantity compared with the predicted -Phi* diag(Im sigma) Phi f.
double real_part_formula_residual(const OperatorPair& op, const L2Section& f);

}  // namespace rkhs
