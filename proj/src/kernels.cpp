#include "rkhs/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace rkhs {

KernelConfig::KernelConfig(std::shared_ptr<const PrimeFormContext> prime, std::optional<Characteristic> zeta)
    : prime_(std::move(prime)) {
  if (!prime_) throw DomainError("kernel config needs a prime form");
  const int g = genus();
  if (g == 0) return;
  zeta_ = zeta ? *zeta : Characteristic::zero(g);
  if (zeta_.genus() != g) throw DomainError("zeta characteristic has the wrong length");
  theta0_ = theta_char(zeta_, CVec::Zero(g), prime_->riemann(), prime_->policy());
  if (std::abs(theta0_) < kThetaZero) throw DomainError("theta[zeta](0) vanishes; choose another zeta");
}

KernelConfig KernelConfig::for_surface(SurfacePtr s, std::optional<Characteristic> zeta,
                                       std::optional<Characteristic> odd) {
  return KernelConfig(std::make_shared<const PrimeFormContext>(std::move(s), std::move(odd)), std::move(zeta));
}

cd KernelConfig::theta_zeta(const CVec& z) const {
  if (genus() == 0) return 1.0;
  return theta_char(zeta_, z, prime_->riemann(), prime_->policy());
}

CVec KernelConfig::theta_zeta_dlog(const CVec& z) const {
  if (genus() == 0) return CVec::Zero(1);
  return theta_dlog_grad(zeta_, z, prime_->riemann(), prime_->policy());
}

cd cauchy_kernel(const KernelConfig& cfg, const SurfacePoint& u, const SurfacePoint& v) {
  if (cfg.genus() == 0) {
    if (u.infinity || v.infinity) {
      if (u.infinity && v.infinity) throw DomainError("Cauchy kernel at coincident points");
      return 0.0;
    }
    const cd d = u.head() - v.head();
    if (std::abs(d) <= 1e-14) throw DomainError("Cauchy kernel at coincident points");
    return 1.0 / d;
  }
  const cd e = cfg.prime().value(v, u);
  if (std::abs(e) < kThetaZero) throw DomainError("Cauchy kernel at coincident points (prime form vanishes)");
  return cfg.theta_zeta(v.z - u.z) / (cfg.theta_zeta0() * e);
}

cd hardy_kernel(const KernelConfig& cfg, const SurfacePoint& p, const SurfacePoint& q) {
  return kI * cauchy_kernel(cfg, p, involution(cfg.surface(), q));
}

MeromorphicFunction MeromorphicFunction::rational(cd constant, cd linear, std::vector<cd> poles,
                                                  std::vector<cd> residues) {
  if (poles.size() != residues.size()) throw DomainError("poles and residues differ in length");
  MeromorphicFunction y;
  y.kind = Kind::Rational;
  y.constant = constant;
  y.linear = linear;
  for (cd p : poles) y.poles.push_back(SurfacePoint::scalar(p));
  y.residues = std::move(residues);
  return y;
}

MeromorphicFunction MeromorphicFunction::elliptic(cd constant, std::vector<cd> poles, std::vector<cd> residues) {
  if (poles.size() != residues.size()) throw DomainError("poles and residues differ in length");
  MeromorphicFunction y;
  y.kind = Kind::Elliptic;
  y.constant = constant;
  for (cd p : poles) y.poles.push_back(SurfacePoint::scalar(p));
  y.residues = std::move(residues);
  return y;
}

int MeromorphicFunction::degree() const {
  return static_cast<int>(poles.size()) + (kind == Kind::Rational && linear != 0.0 ? 1 : 0);
}

namespace {

// Log-derivative f of the odd genus-1 theta and its derivative f'.
std::pair<cd, cd> odd_dlog(const PrimeFormContext& ctx, cd w) {
  const Characteristic& c = ctx.odd_char();
  const ThetaJet jet = theta_jet_genus1(c.a(0), c.b(0), w, ctx.riemann().omega(0, 0), ctx.policy(), 2);
  if (std::abs(jet.value) < kThetaZero) throw DomainError("meromorphic function evaluated at a pole");
  const cd f = jet.grad(0) / jet.value;
  return {f, jet.hess(0, 0) / jet.value - f * f};
}

void require_kind(const PrimeFormContext& ctx, const MeromorphicFunction& y) {
  using K = MeromorphicFunction::Kind;
  if (y.kind == K::Tabulated) throw DomainError("tabulated meromorphic functions cannot be evaluated pointwise");
  if ((y.kind == K::Rational) != (ctx.genus() == 0))
    throw DomainError("meromorphic function kind does not match the surface genus");
}

}  // namespace

cd MeromorphicFunction::operator()(const PrimeFormContext& ctx, const SurfacePoint& u) const {
  require_kind(ctx, *this);
  if (u.infinity) throw DomainError("meromorphic function evaluated at infinity");
  cd val = constant;
  if (kind == Kind::Rational) {
    val += linear * u.head();
    for (std::size_t m = 0; m < poles.size(); ++m) {
      const cd d = u.head() - poles[m].head();
      if (std::abs(d) < 1e-14) throw DomainError("meromorphic function evaluated at a pole");
      val += residues[m] / d;
    }
    return val;
  }
  for (std::size_t m = 0; m < poles.size(); ++m) val += residues[m] * odd_dlog(ctx, u.head() - poles[m].head()).first;
  return val;
}

cd MeromorphicFunction::derivative(const PrimeFormContext& ctx, const SurfacePoint& u) const {
  require_kind(ctx, *this);
  cd val = 0.0;
  if (kind == Kind::Rational) {
    val = linear;
    for (std::size_t m = 0; m < poles.size(); ++m) {
      const cd d = u.head() - poles[m].head();
      val -= residues[m] / (d * d);
    }
    return val;
  }
  for (std::size_t m = 0; m < poles.size(); ++m) val += residues[m] * odd_dlog(ctx, u.head() - poles[m].head()).second;
  return val;
}

void MeromorphicFunction::validate(const PrimeFormContext& ctx) const {
  require_kind(ctx, *this);
  const auto& s = ctx.surface();
  for (std::size_t i = 0; i < poles.size(); ++i)
    for (std::size_t j = i + 1; j < poles.size(); ++j) {
      const double d = lattice_distance(s, poles[i].z, poles[j].z);
      if (d <= 1e-8) throw InvariantError("poles are not distinct", d);
    }
  if (kind == Kind::Elliptic) {
    cd sum = 0.0;
    for (cd r : residues) sum += r;
    if (std::abs(sum) > 1e-12) throw InvariantError("elliptic residues must sum to zero", std::abs(sum));
  }
  if (std::abs(constant.imag()) > 1e-12 || std::abs(linear.imag()) > 1e-12)
    throw InvariantError("real function needs real constant and linear part",
                         std::max(std::abs(constant.imag()), std::abs(linear.imag())));
  for (std::size_t i = 0; i < poles.size(); ++i) {
    const SurfacePoint mirror = involution(s, poles[i]);
    bool found = false;
    for (std::size_t j = 0; j < poles.size() && !found; ++j)
      found = lattice_distance(s, mirror.z, poles[j].z) <= 1e-8 &&
              std::abs(residues[j] - std::conj(residues[i])) <= 1e-10;
    if (!found) throw InvariantError("pole set is not closed under the involution with conjugate residues", 1.0);
  }
  double worst = 0.0;
  for (int j = 0; j < s.ovals(); ++j)
    for (int k = 0; k < 16; ++k) {
      const double param = s.genus() == 0 ? std::tan(kPi * ((k + 0.5) / 16.0 - 0.5)) : (k + 0.37) / 16.0;
      const SurfacePoint x = s.oval_point(j, param).point;
      bool near_pole = false;
      for (const auto& p : poles) near_pole |= lattice_distance(s, x.z, p.z) < 1e-6;
      if (near_pole) continue;
      const cd v = (*this)(ctx, x);
      worst = std::max(worst, std::abs(v.imag()) / std::max(1.0, std::abs(v)));
    }
  if (worst > 1e-10) throw InvariantError("function is not real on the ovals", worst);
}

double collection_residual(const KernelConfig& cfg, const MeromorphicFunction& y, const SurfacePoint& p,
                           const SurfacePoint& q) {
  const PrimeFormContext& ctx = cfg.prime();
  const cd lhs = (y(ctx, p) - y(ctx, q)) * cauchy_kernel(cfg, p, q);
  cd rhs = y.kind == MeromorphicFunction::Kind::Rational ? y.linear : cd(0.0);
  for (std::size_t j = 0; j < y.poles.size(); ++j)
    rhs += y.residues[j] * cauchy_kernel(cfg, p, y.poles[j]) * cauchy_kernel(cfg, y.poles[j], q);
  return std::abs(lhs - rhs);
}

cd model_op_pointwise(const KernelConfig& cfg, const MeromorphicFunction& y, const Section& F, const SurfacePoint& u) {
  cd val = y(cfg.prime(), u) * F(u);
  for (std::size_t m = 0; m < y.poles.size(); ++m)
    val += y.model_coefficient(m) * F(y.poles[m]) * cauchy_kernel(cfg, u, y.poles[m]);
  if (y.kind == MeromorphicFunction::Kind::Rational && y.linear != 0.0) {
    if (!F.z_times_limit) throw DomainError("linear part of y needs lim z F(z) at infinity");
    val -= y.linear * *F.z_times_limit;
  }
  return val;
}

namespace {

using Poly = std::vector<cd>;  // ascending coefficients

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_add(Poly a, const Poly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<cd> level_set_rational(const MeromorphicFunction& y, cd alpha) {
  // (C - alpha + B z) prod (z - p_m) + sum_m r_m prod_{l != m} (z - p_l) = 0
  Poly lead{y.constant - alpha, y.linear};
  Poly num = lead;
  for (const auto& p : y.poles) num = poly_mul(num, {-p.head(), 1.0});
  for (std::size_t m = 0; m < y.poles.size(); ++m) {
    Poly term{y.residues[m]};
    for (std::size_t l = 0; l < y.poles.size(); ++l)
      if (l != m) term = poly_mul(term, {-y.poles[l].head(), 1.0});
    num = poly_add(num, term);
  }
  while (!num.empty() && std::abs(num.back()) < 1e-14) num.pop_back();
  const int deg = static_cast<int>(num.size()) - 1;
  if (deg != y.degree()) throw DomainError("level set is degenerate: value attained at infinity");
  if (deg <= 0) return {};
  CMat comp = CMat::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -num[static_cast<std::size_t>(i)] / num.back();
  Eigen::ComplexEigenSolver<CMat> es(comp, false);
  std::vector<cd> roots(es.eigenvalues().data(), es.eigenvalues().data() + deg);
  return roots;
}

}  // namespace

std::vector<SurfacePoint> level_set(const PrimeFormContext& ctx, const MeromorphicFunction& y, cd alpha) {
  require_kind(ctx, y);
  const auto& s = ctx.surface();
  const int deg = y.degree();
  auto newton = [&](cd z, int iters) -> std::optional<cd> {
    for (int k = 0; k < iters; ++k) {
      const SurfacePoint u = SurfacePoint::scalar(z);
      cd step;
      try {
        const cd d = y.derivative(ctx, u);
        if (std::abs(d) < 1e-300) return std::nullopt;
        step = (y(ctx, u) - alpha) / d;
      } catch (const DomainError&) {
        return std::nullopt;
      }
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return std::nullopt;
      z -= step;
      if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    try {
      const SurfacePoint u = SurfacePoint::scalar(z);
      if (std::abs(y(ctx, u) - alpha) > 1e-9 * std::max(1.0, std::abs(alpha))) return std::nullopt;
    } catch (const DomainError&) {
      return std::nullopt;
    }
    return z;
  };

  std::vector<cd> roots;
  auto add_root = [&](cd z) {
    if (s.genus() == 1) z = reduce(s, CVec::Constant(1, z))(0);
    for (cd r : roots) {
      const double d = s.genus() == 1 ? lattice_distance(s, CVec::Constant(1, r), CVec::Constant(1, z)) : std::abs(r - z);
      if (d <= 1e-8) return;
    }
    roots.push_back(z);
  };

  if (s.genus() == 0) {
    for (cd r : level_set_rational(y, alpha)) {
      auto polished = newton(r, 8);
      add_root(polished ? *polished : r);
    }
  } else {
    constexpr int kGrid = 32;
    const cd omega = ctx.riemann().omega(0, 0);
    for (int i = 0; i < kGrid && static_cast<int>(roots.size()) < deg; ++i)
      for (int j = 0; j < kGrid && static_cast<int>(roots.size()) < deg; ++j) {
        const cd start = (i + 0.5) / kGrid + omega * ((j + 0.5) / kGrid);
        if (auto r = newton(start, 60)) add_root(*r);
      }
  }
  if (static_cast<int>(roots.size()) != deg)
    throw DomainError("level set is degenerate: found " + std::to_string(roots.size()) + " of " +
                      std::to_string(deg) + " preimages");
  std::sort(roots.begin(), roots.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::vector<SurfacePoint> out;
  for (cd r : roots) {
    const SurfacePoint u = SurfacePoint::scalar(r);
    if (std::abs(y.derivative(ctx, u)) < 1e-10) throw DomainError("level set is degenerate: critical point of y");
    out.push_back(u);
  }
  return out;
}

cd resolvent_pointwise(const KernelConfig& cfg, const MeromorphicFunction& y, cd alpha, const Section& F,
                       const SurfacePoint& u, const std::vector<SurfacePoint>* preimages) {
  std::vector<SurfacePoint> solved;
  if (!preimages) {
    solved = level_set(cfg.prime(), y, alpha);
    preimages = &solved;
  }
  const cd denom = y(cfg.prime(), u) - alpha;
  if (std::abs(denom) < 1e-14) throw DomainError("resolvent evaluated on the level set");
  cd val = F(u) / denom;
  for (const auto& uj : *preimages)
    val -= cauchy_kernel(cfg, u, uj) * F(uj) / y.derivative(cfg.prime(), uj);
  return val;
}

}  // namespace rkhs
