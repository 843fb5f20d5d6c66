#include "rkhs/cayley.hpp"

#include <cmath>

namespace rkhs {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;

cd one_plus(cd phi) {
  const cd v = 1.0 + phi;
  if (std::abs(v) < 1e-10) throw DomainError("1 + phi vanishes; the Cayley transform is singular here");
  return v;
}

}  // namespace

SchurFunction::SchurFunction(CaratheodoryFunction phi) : phi_(std::move(phi)) {
  const CVec per = phi_periods(phi_);
  if (per.size() > 0 && per.cwiseAbs().maxCoeff() > 1e-10)
    throw InvariantError("phi is not single-valued", per.cwiseAbs().maxCoeff());
  constant_ = phi_.atoms().empty();
}

SchurFunction cayley(const CaratheodoryFunction& phi) { return SchurFunction(phi); }

cd SchurFunction::operator()(const SurfacePoint& p, bool allow_boundary) const {
  const cd f = phi_eval(phi_, p, allow_boundary);
  return (1.0 - f) / one_plus(f);
}

double SchurFunction::round_trip_residual(const SurfacePoint& p) const {
  const cd s = (*this)(p);
  return scaled_residual((1.0 - s) / (1.0 + s), phi_(p));
}

double SchurFunction::boundary_modulus_residual(int per_oval) const {
  const auto& surf = phi_.surface();
  double worst = 0.0;
  for (int j = 0; j < surf.ovals(); ++j)
    for (const auto& node : surf.oval_quadrature(j, per_oval)) {
      bool near_atom = false;
      for (const auto& a : phi_.atoms()) near_atom |= lattice_distance(surf, a.x.point.z, node.x.point.z) < 1e-6;
      if (near_atom) continue;
      worst = std::max(worst, std::abs(std::abs((*this)(node.x.point, true)) - 1.0));
    }
  return worst;
}

cd hs_kernel(const SchurFunction& s, const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& q) {
  return (1.0 - s(p) * std::conj(s(q))) * hardy_kernel(cfg, p, q);
}

L2Section lambda_map(const LPhiSpace& sp, const std::vector<SurfacePoint>& q, const CVec& c) {
  if (static_cast<Eigen::Index>(q.size()) != c.size()) throw DomainError("points and coefficients differ in length");
  L2Section out{CVec::Zero(sp.size())};
  for (std::size_t j = 0; j < q.size(); ++j) {
    const cd scale = kSqrt2 / std::conj(one_plus(sp.phi()(q[j])));
    out.values += c(static_cast<Eigen::Index>(j)) * scale * sp.kernel_section(q[j]).values;
  }
  return out;
}

double unitarity_residual(const SchurFunction& s, const LPhiSpace& sp, const std::vector<SurfacePoint>& pts) {
  std::vector<L2Section> images;
  for (const auto& q : pts) images.push_back(lambda_map(sp, {q}, CVec::Ones(1)));
  double worst = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a)
    for (std::size_t b = 0; b < pts.size(); ++b) {
      const cd h = hs_kernel(s, sp.kernel_config(), pts[a], pts[b]);
      worst = std::max(worst, scaled_residual(sp.inner(images[b], images[a]), h));
    }
  return worst;
}

PoleCoupling::PoleCoupling(const OperatorPair& op) {
  const LPhiSpace& sp = op.space();
  const auto& surf = sp.surface();
  const auto& y = op.y();
  const auto& atoms = sp.atoms();
  const bool infinity = surf.genus() == 0 && y.kind == MeromorphicFunction::Kind::Rational && y.linear != 0.0;
  const auto n = static_cast<Eigen::Index>(y.poles.size()) + (infinity ? 1 : 0);
  const Eigen::Index N = sp.size();

  CMat k(n, N);  // k(j, i) = conj K(p_j, x_i)
  CVec res(n);
  std::vector<Eigen::Index> partner(static_cast<std::size_t>(n));
  phi_at_pole_.resize(n);
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(y.poles.size()); ++j) {
    const SurfacePoint& p = y.poles[static_cast<std::size_t>(j)];
    phi_at_pole_(j) = phi_eval(sp.phi(), p, true);
    for (Eigen::Index i = 0; i < N; ++i)
      k(j, i) = std::conj(cauchy_kernel(sp.kernel_config(), p, atoms[static_cast<std::size_t>(i)].x.point));
    res(j) = y.residues[static_cast<std::size_t>(j)];
    const SurfacePoint mirror = involution(surf, p);
    partner[static_cast<std::size_t>(j)] = -1;
    for (Eigen::Index l = 0; l < static_cast<Eigen::Index>(y.poles.size()); ++l)
      if (lattice_distance(surf, mirror.z, y.poles[static_cast<std::size_t>(l)].z) <= 1e-8)
        partner[static_cast<std::size_t>(j)] = l;
    if (partner[static_cast<std::size_t>(j)] < 0) throw InvariantError("pole set is not closed under the involution", 1.0);
  }
  if (infinity) {
    // Local coordinate -1/z at infinity: Res y = -B, kernel value 1, phi = iM.
    const Eigen::Index j = n - 1;
    phi_at_pole_(j) = kI * sp.phi().M();
    k.row(j).setOnes();
    res(j) = -y.linear;
    partner[static_cast<std::size_t>(j)] = j;
  }

  Phi_.resize(n, N);
  PhiStar_.resize(N, n);
  S_ = CMat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const cd d = one_plus(phi_at_pole_(j));
    for (Eigen::Index i = 0; i < N; ++i) {
      Phi_(j, i) = sp.mu()(i) * std::conj(k(j, i)) / d;
      PhiStar_(i, j) = k(j, i) / std::conj(d);
    }
    const Eigen::Index pj = partner[static_cast<std::size_t>(j)];
    S_(j, pj) = res(pj) * std::conj(d);
    diagonal_ = diagonal_ && pj == j;
  }
}

L2Section conjugated_model_op(const OperatorPair& op, const PoleCoupling& pc, const L2Section& f) {
  return {op.M_diag().cwiseProduct(f.values) + kI * (pc.Phi_adjoint() * (pc.S() * (pc.Phi() * f.values)))};
}

double lambda_conjugated_residual(const OperatorPair& op, const L2Section& f, const std::vector<SurfacePoint>& samples) {
  const LPhiSpace& sp = op.space();
  const PoleCoupling pc(op);
  const L2Section g = conjugated_model_op(op, pc, f);
  const Section F = as_section(sp, f);
  Section U;
  U.f = [&sp, &F](const SurfacePoint& p) { return kSqrt2 * F(p) / one_plus(phi_eval(sp.phi(), p, true)); };
  if (F.z_times_limit) U.z_times_limit = kSqrt2 * *F.z_times_limit / one_plus(kI * sp.phi().M());
  double worst = 0.0;
  for (const auto& p : samples) {
    const cd lhs = sp.element(g, p);
    const cd rhs = one_plus(sp.phi()(p)) / kSqrt2 * model_op_pointwise(sp.kernel_config(), op.y(), U, p);
    worst = std::max(worst, scaled_residual(lhs, rhs));
  }
  return worst;
}

double phi_adjoint_residual(const OperatorPair& op, const L2Section& f, const CVec& d) {
  const PoleCoupling pc(op);
  // Eigen's dot conjugates its first argument: d.dot(v) = sum conj(d_j) v_j.
  const cd lhs = d.dot(pc.Phi() * f.values);
  const L2Section star{pc.Phi_adjoint() * d};
  return scaled_residual(lhs, op.space().inner(f, star));
}

namespace {

// Matrix of Lambda M^y Lambda* in the atom basis and its real part with
// respect to the weighted inner product.
CMat real_part_matrix(const OperatorPair& op, const PoleCoupling& pc) {
  const CMat T = CMat(op.M_diag().asDiagonal()) + kI * pc.Phi_adjoint() * pc.S() * pc.Phi();
  const CVec mu = op.space().mu().cast<cd>();
  const CMat Tadj = mu.cwiseInverse().asDiagonal() * T.adjoint() * mu.asDiagonal();
  return 0.5 * (T + Tadj);
}

}  // namespace

double real_part_residual(const OperatorPair& op, const L2Section& f) {
  const PoleCoupling pc(op);
  const CVec yf = op.M_diag().cwiseProduct(f.values);
  const CVec gap = real_part_matrix(op, pc) * f.values - yf;
  return gap.cwiseAbs().maxCoeff() / std::max(1.0, yf.cwiseAbs().maxCoeff());
}

double real_part_formula_residual(const OperatorPair& op, const L2Section& f) {
  const PoleCoupling pc(op);
  if (!pc.diagonal()) throw DomainError("real-part formula needs every pole on an oval");
  const CVec yf = op.M_diag().cwiseProduct(f.values);
  const CVec im_sigma = pc.sigma().imag().cast<cd>();
  const CVec predicted = yf - pc.Phi_adjoint() * (im_sigma.asDiagonal() * (pc.Phi() * f.values));
  const CVec gap = real_part_matrix(op, pc) * f.values - predicted;
  return gap.cwiseAbs().maxCoeff() / std::max(1.0, predicted.cwiseAbs().maxCoeff());
}

}  // namespace rkhs
