#include "rkhs/herglotz.hpp"

#include <cmath>

namespace rkhs {

OvalSample oval_sample_at(const RealSurfaceDescriptor& s, int oval, const CVec& coords) {
  if (!s.parametrized()) {
    for (const auto& x : s.oval_samples())
      if (x.oval == oval && lattice_distance(s, x.point.z, coords) <= 1e-10) return x;
    throw DomainError("genus >= 2 atoms must sit on a supplied oval sample");
  }
  const SurfacePoint p(coords);
  const Classification c = classify(s, p);
  if (c.region != Region::Oval || c.oval != oval)
    throw InvariantError("atom does not lie on oval " + std::to_string(oval), 1.0);
  if (s.genus() == 0) return s.oval_point(oval, coords(0).real());
  return s.oval_point(oval, reduce(s, coords)(0).real());
}

std::vector<Atom> RealMeasure::discretized(const RealSurfaceDescriptor& s) const {
  std::vector<Atom> out = atoms;
  for (const auto& block : densities) {
    const auto nodes = s.oval_quadrature(block.oval, static_cast<int>(block.values.size()));
    for (std::size_t k = 0; k < nodes.size(); ++k) out.push_back({nodes[k].x, block.values[k] * nodes[k].dt});
  }
  return out;
}

double RealMeasure::total_weight(const RealSurfaceDescriptor& s) const {
  double sum = 0.0;
  for (const auto& a : discretized(s)) sum += a.weight;
  return sum;
}

RealMeasure RealMeasure::scaled(double factor) const {
  RealMeasure m = *this;
  for (auto& a : m.atoms) a.weight *= factor;
  for (auto& b : m.densities)
    for (auto& v : b.values) v *= factor;
  return m;
}

void RealMeasure::validate(const RealSurfaceDescriptor& s) const {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.weight)) throw InvariantError("measure weight is not finite", a.weight);
    if (!signed_ok && a.weight < 0.0) throw InvariantError("measure has a negative atom", a.weight);
    const Classification c = classify(s, a.x.point);
    if (c.region != Region::Oval || c.oval != a.x.oval) throw InvariantError("atom is not on its oval", 1.0);
  }
  for (const auto& b : densities) {
    if (b.oval < 0 || b.oval >= s.ovals()) throw SchemaError("density block oval out of range");
    if (b.values.empty()) throw SchemaError("density block is empty");
    for (double v : b.values) {
      if (!std::isfinite(v)) throw InvariantError("density value is not finite", v);
      if (!signed_ok && v < 0.0) throw InvariantError("measure has a negative density value", v);
    }
  }
}

RealMeasure load_measure(const RealSurfaceDescriptor& s, const nlohmann::json& doc, double* M) {
  if (!doc.is_object()) throw SchemaError("measure must be a JSON object");
  RealMeasure m;
  m.signed_ok = doc.value("signed_ok", false);
  if (M) *M = doc.value("M", 0.0);
  const int dim = std::max(s.genus(), 1);
  for (const auto& e : doc.value("atoms", nlohmann::json::array())) {
    if (!e.contains("oval") || !e.contains("coords") || !e.contains("weight"))
      throw SchemaError("atom needs oval, coords and weight");
    const auto& arr = e["coords"];
    CVec z(dim);
    if (arr.is_array() && static_cast<int>(arr.size()) == dim && arr[0].is_array()) {
      for (int i = 0; i < dim; ++i) {
        if (arr[i].size() != 2) throw SchemaError("atom coords must be [re, im] pairs");
        z(i) = cd(arr[i][0].get<double>(), arr[i][1].get<double>());
      }
    } else if (arr.is_array() && static_cast<int>(arr.size()) == 2 * dim) {
      for (int i = 0; i < dim; ++i) z(i) = cd(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
    } else {
      throw SchemaError("atom coords must be [re, im] x g");
    }
    m.atoms.push_back({oval_sample_at(s, e["oval"].get<int>(), z), e["weight"].get<double>()});
  }
  for (const auto& e : doc.value("densities", nlohmann::json::array()))
    m.densities.push_back({e.at("oval").get<int>(), e.at("values").get<std::vector<double>>()});
  m.validate(s);
  return m;
}

CaratheodoryFunction::CaratheodoryFunction(std::shared_ptr<const PrimeFormContext> prime, RealMeasure measure,
                                           double M)
    : prime_(std::move(prime)), measure_(std::move(measure)), M_(M) {
  if (!prime_) throw DomainError("Caratheodory function needs a prime form");
  measure_.validate(surface());
  atoms_ = measure_.discretized(surface());
}

cd CaratheodoryFunction::operator()(const SurfacePoint& p) const { return phi_eval(*this, p); }

CMat CaratheodoryFunction::oval_mass_matrix() const {
  const int g = surface().genus();
  CMat a = CMat::Zero(surface().ovals(), g);
  for (const auto& at : atoms_)
    if (g > 0) a.row(at.x.oval) += at.weight * at.x.diff_values.transpose();
  return a;
}

CVec CaratheodoryFunction::mass_vector() const { return oval_mass_matrix().colwise().sum().transpose(); }

cd green_differential(const PrimeFormContext& ctx, const SurfacePoint& p, const OvalSample& x) {
  const auto& s = ctx.surface();
  if (s.genus() == 0) return -0.5 * kI * ctx.dlog_x(p, x.point);
  const CVec& w = x.diff_values;
  const CVec lin = 0.5 * x.n_vec.cast<double>().cast<cd>() + kI * (s.Y().cast<cd>() * p.z);
  const cd period_part = kPi * (w.transpose() * lin)(0, 0);
  return period_part - 0.5 * kI * ctx.dlog_x_along(p, x.point, w);
}

double harmonic_eval(const PrimeFormContext& ctx, const std::function<double(const OvalSample&)>& psi,
                     const SurfacePoint& p, int n) {
  const auto& s = ctx.surface();
  const Region region = classify(s, p).region;
  if (region == Region::Oval) throw DomainError("harmonic extension evaluated on an oval");
  if (s.genus() > 0 && !s.dividing()) throw DomainError("harmonic measure is defined here for dividing surfaces only");
  // G describes the plus side; the minus side is its mirror image.
  const double side = region == Region::InteriorMinus ? -1.0 : 1.0;
  double sum = 0.0;
  for (int j = 0; j < s.ovals(); ++j)
    for (const auto& node : s.oval_quadrature(j, n))
      sum += side * psi(node.x) * (2.0 / kPi) * green_differential(ctx, p, node.x).real() * node.dt;
  return sum;
}

double harmonic_mass(const PrimeFormContext& ctx, const SurfacePoint& p, int n) {
  return harmonic_eval(ctx, [](const OvalSample&) { return 1.0; }, p, n);
}

cd phi_eval(const CaratheodoryFunction& phi, const SurfacePoint& p, bool allow_boundary) {
  if (!allow_boundary && classify(phi.surface(), p).region == Region::Oval) throw DomainError("phi evaluated on an oval");
  cd sum = kI * phi.M();
  for (const auto& a : phi.atoms()) sum += a.weight * green_differential(phi.prime(), p, a.x);
  return sum;
}

CVec phi_periods(const CaratheodoryFunction& phi) {
  const auto& s = phi.surface();
  if (s.genus() == 0) return CVec(0);
  if (s.genus() != 1) throw DomainError("periods are tabulated for genus 1 only");
  const SurfacePoint p0 = SurfacePoint::scalar(cd(0.31, 0.19 * s.torus_t()));
  const cd base = phi(p0);
  CVec out(2);
  out(0) = phi(SurfacePoint::scalar(p0.head() + 1.0)) - base;
  out(1) = phi(SurfacePoint::scalar(p0.head() + s.omega_std()(0, 0))) - base;
  return out;
}

RealMeasure balance_measure(const RealSurfaceDescriptor& s, const RealMeasure& m) {
  if (s.genus() != 1 || !s.dividing()) throw DomainError("balancing is implemented for the dividing torus");
  double m0 = 0.0, m1 = 0.0;
  for (const auto& a : m.discretized(s)) (a.x.oval == 0 ? m0 : m1) += a.weight;
  if (m1 == 0.0) throw DomainError("cannot balance: no mass on the second oval");
  const double f = m0 / m1;
  RealMeasure out = m;
  for (auto& a : out.atoms)
    if (a.x.oval == 1) a.weight *= f;
  for (auto& b : out.densities)
    if (b.oval == 1)
      for (auto& v : b.values) v *= f;
  return out;
}

CaratheodoryFunction genus0_dictionary(double A, double B, const std::vector<Genus0Atom>& atoms) {
  if (B < 0.0) throw DomainError("linear coefficient B must be non-negative");
  if (B > 0.0) throw DomainError("B > 0 needs an atom at infinity, which this surface model excludes");
  auto s = std::make_shared<const RealSurfaceDescriptor>(build_genus0());
  RealMeasure m;
  double M = A;
  for (const auto& a : atoms) {
    if (!(a.c > 0.0)) throw DomainError("genus-0 atoms need positive mass");
    m.atoms.push_back({s->oval_point(0, a.t), 2.0 * a.c});
    M += a.c * a.t / (a.t * a.t + 1.0);
  }
  return CaratheodoryFunction(std::make_shared<const PrimeFormContext>(s), std::move(m), M);
}

cd genus0_classical(double A, double B, const std::vector<Genus0Atom>& atoms, cd z) {
  cd val = kI * A - kI * B * z;
  for (const auto& a : atoms) val -= kI * a.c * (1.0 / (a.t - z) - a.t / (a.t * a.t + 1.0));
  return val;
}

std::vector<double> extract_atoms_genus0(const std::function<cd(cd)>& phi, const std::vector<double>& poles,
                                         double radius, int n) {
  std::vector<double> out;
  for (double t : poles) {
    // Res = (1/2 pi i) contour integral; midpoints avoid the real axis.
    cd res = 0.0;
    for (int k = 0; k < n; ++k) {
      const cd e = std::polar(1.0, 2.0 * kPi * (k + 0.5) / n);
      res += phi(t + radius * e) * radius * e;
    }
    res /= static_cast<double>(n);
    out.push_back((-2.0 * kI * res).real());
  }
  return out;
}

}  // namespace rkhs
