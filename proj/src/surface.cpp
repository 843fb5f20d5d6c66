#include "rkhs/surface.hpp"

#include <cmath>
#include <sstream>

namespace rkhs {

namespace {

constexpr double kStructTol = 1e-14;

double max_abs(const CMat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

CMat period_matrix(const IMat& H, const RMat& Y) {
  const auto g = Y.rows();
  if (g == 0) return CMat(0, 0);
  return 0.5 * H.cast<double>().cast<cd>() + kI * Y.inverse().cast<cd>();
}

std::vector<OvalSample> default_samples(const RealSurfaceDescriptor& s) {
  std::vector<OvalSample> out;
  if (s.genus() == 0) {
    for (double x : {-2.0, -0.5, 0.0, 1.0, 3.0}) out.push_back(s.oval_point(0, x));
    return out;
  }
  for (int j = 0; j < s.ovals(); ++j)
    for (int k = 0; k < 8; ++k) out.push_back(s.oval_point(j, (k + 0.25) / 8.0));
  return out;
}

IVec expected_n_vec(int genus, int ovals, int oval) {
  IVec n = IVec::Zero(genus);
  if (oval > 0) n(genus - ovals + oval) = 1;
  return n;
}

}  // namespace

std::string to_string(const Classification& c) {
  switch (c.region) {
    case Region::InteriorPlus: return "Interior+";
    case Region::InteriorMinus: return "Interior-";
    case Region::Oval: return "Oval(" + std::to_string(c.oval) + ")";
  }
  return "?";
}

OvalSample RealSurfaceDescriptor::oval_point(int oval, double s) const {
  if (oval < 0 || oval >= ovals_) throw DomainError("oval index out of range");
  if (!parametrized())
    throw DomainError("ovals of genus >= 2 surfaces are only known through their samples");
  OvalSample x;
  x.oval = oval;
  if (genus_ == 0) {
    x.point = SurfacePoint::scalar(s);
    x.n_vec = IVec(0);
    x.diff_values = CVec(0);
    return x;
  }
  const double t = torus_t();
  const double im = oval == 0 ? 0.0 : 0.5 * t;
  x.point = SurfacePoint::scalar(cd(s, im));
  x.n_vec = expected_n_vec(1, ovals_, oval);
  x.diff_values = CVec::Constant(1, oval == 0 ? 1.0 : -1.0);
  return x;
}

std::vector<QuadNode> RealSurfaceDescriptor::oval_quadrature(int oval, int n) const {
  if (n <= 0) throw DomainError("quadrature needs at least one node");
  std::vector<QuadNode> nodes;
  nodes.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    if (genus_ == 0) {
      // x = tan(theta/2) maps the circle onto the extended real line.
      const double theta = -kPi + 2.0 * kPi * (k + 0.5) / n;
      const double sec = 1.0 / std::cos(0.5 * theta);
      nodes.push_back({oval_point(oval, std::tan(0.5 * theta)), kPi / n * sec * sec});
    } else {
      nodes.push_back({oval_point(oval, (k + 0.5) / n), 1.0 / n});
    }
  }
  return nodes;
}

void RealSurfaceDescriptor::validate() const {
  const int g = genus_;
  if (g < 0) throw SchemaError("genus must be non-negative");
  if (ovals_ < 1 || ovals_ > g + 1) throw SchemaError("ovals must lie in [1, g+1]");
  if (H_.rows() != g || H_.cols() != g || Y_.rows() != g || Y_.cols() != g)
    throw SchemaError("H and Y must be g x g");
  if (g == 0) return;

  const double ysym = (Y_ - Y_.transpose()).cwiseAbs().maxCoeff();
  if (ysym > kStructTol) throw InvariantError("Y is not symmetric", ysym);
  Eigen::SelfAdjointEigenSolver<RMat> es(Y_);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw InvariantError("Y is not positive definite", es.eigenvalues().minCoeff());
  if ((H_ - H_.transpose()).cwiseAbs().maxCoeff() != 0)
    throw InvariantError("H is not symmetric", 1.0);

  const double zres = max_abs(Z_ - period_matrix(H_, Y_));
  if (zres > kStructTol) throw InvariantError("period matrix violates Z = H/2 + i Y^-1", zres);
  const double zsym = max_abs(Z_ - Z_.transpose());
  if (zsym > kStructTol) throw InvariantError("Z is not symmetric", zsym);
  const double zstar = max_abs(Z_.adjoint() - (H_.cast<double>().cast<cd>() - Z_));
  if (zstar > kStructTol) throw InvariantError("Z* = H - Z fails", zstar);

  Eigen::FullPivLU<RMat> lu(H_.cast<double>());
  const int rank = static_cast<int>(lu.rank());
  if (rank != g + 1 - ovals_)
    throw InvariantError("homology: rank(H) must equal g + 1 - k",
                         std::abs(rank - (g + 1 - ovals_)));
  const bool zero_diag = H_.diagonal().cwiseAbs().sum() == 0;
  if (dividing_ != zero_diag)
    throw InvariantError("homology: H diagonal inconsistent with dividing flag", 1.0);
  if (g == 1 && H_(0, 0) != (dividing_ ? 0 : 1))
    throw InvariantError("homology: genus-1 H must be [0] (dividing) or [1]", 1.0);

  for (const auto& x : samples_) {
    if (x.oval < 0 || x.oval >= ovals_) throw SchemaError("oval sample index out of range");
    if (x.point.dim() != g || x.diff_values.size() != g || x.n_vec.size() != g)
      throw SchemaError("oval sample vectors must have length g");
    const double fix = lattice_distance(*this, x.point.z, x.point.z.conjugate());
    if (fix > 1e-12) throw InvariantError("oval sample is not fixed by the involution", fix);
    const IVec expect = expected_n_vec(g, ovals_, x.oval);
    if (x.n_vec != expect)
      throw InvariantError("oval sample n_vec does not match its oval", (x.n_vec - expect).cwiseAbs().sum());
  }
}

RealSurfaceDescriptor build_genus0() {
  RealSurfaceDescriptor s;
  s.genus_ = 0;
  s.ovals_ = 1;
  s.dividing_ = true;
  s.H_ = IMat(0, 0);
  s.Y_ = RMat(0, 0);
  s.Z_ = CMat(0, 0);
  s.omega_ = CMat(0, 0);
  s.samples_ = default_samples(s);
  return s;
}

RealSurfaceDescriptor build_genus1(double t, bool dividing) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("torus parameter t must be positive");
  RealSurfaceDescriptor s;
  s.genus_ = 1;
  s.ovals_ = dividing ? 2 : 1;
  s.dividing_ = dividing;
  s.H_ = IMat::Constant(1, 1, dividing ? 0 : 1);
  s.Y_ = RMat::Constant(1, 1, 1.0 / t);
  s.Z_ = period_matrix(s.H_, s.Y_);
  s.omega_ = s.Z_;
  s.samples_ = default_samples(s);
  s.validate();
  return s;
}

namespace {

RMat read_real_matrix(const nlohmann::json& arr, int g, const char* name) {
  if (!arr.is_array() || static_cast<int>(arr.size()) != g * g)
    throw SchemaError(std::string(name) + " must be a row-major array of g*g numbers");
  RMat m(g, g);
  for (int i = 0; i < g; ++i)
    for (int j = 0; j < g; ++j) {
      const auto& v = arr[static_cast<std::size_t>(i * g + j)];
      if (!v.is_number()) throw SchemaError(std::string(name) + " entries must be numbers");
      m(i, j) = v.get<double>();
    }
  return m;
}

/// Accepts a flat [re, im, re, im, ...] array or an array of [re, im] pairs.
CVec read_complex_vector(const nlohmann::json& arr, int g, const char* name) {
  const std::string what(name);
  if (!arr.is_array()) throw SchemaError(what + " must be an array");
  CVec v(g);
  if (static_cast<int>(arr.size()) == g && (g == 0 || arr[0].is_array())) {
    for (int i = 0; i < g; ++i) {
      const auto& pair = arr[static_cast<std::size_t>(i)];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number())
        throw SchemaError(what + " entries must be [re, im] number pairs");
      v(i) = cd(pair[0].get<double>(), pair[1].get<double>());
    }
    return v;
  }
  if (static_cast<int>(arr.size()) != 2 * g) throw SchemaError(what + " must hold g complex numbers as [re, im]");
  for (int i = 0; i < g; ++i) {
    const auto& re = arr[static_cast<std::size_t>(2 * i)];
    const auto& im = arr[static_cast<std::size_t>(2 * i + 1)];
    if (!re.is_number() || !im.is_number()) throw SchemaError(what + " entries must be numbers");
    v(i) = cd(re.get<double>(), im.get<double>());
  }
  return v;
}

nlohmann::json write_complex_vector(const CVec& v) {
  auto arr = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    arr.push_back(v(i).real());
    arr.push_back(v(i).imag());
  }
  return arr;
}

template <class T>
T required(const nlohmann::json& doc, const char* key) {
  if (!doc.contains(key)) throw SchemaError(std::string("missing field '") + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw SchemaError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

RealSurfaceDescriptor load_surface(const nlohmann::json& doc) {
  if (!doc.is_object()) throw SchemaError("surface descriptor must be a JSON object");
  RealSurfaceDescriptor s;
  s.genus_ = required<int>(doc, "genus");
  s.ovals_ = required<int>(doc, "ovals");
  s.dividing_ = required<bool>(doc, "dividing");
  const int g = s.genus_;
  if (g < 0) throw SchemaError("genus must be non-negative");
  if (!doc.contains("H") || !doc.contains("Y")) throw SchemaError("missing field 'H' or 'Y'");
  const RMat hd = read_real_matrix(doc["H"], g, "H");
  if ((hd.array() != hd.array().round()).any()) throw SchemaError("H must be an integer matrix");
  s.H_ = hd.cast<int>();
  s.Y_ = read_real_matrix(doc["Y"], g, "Y");
  if (g > 0) {
    Eigen::SelfAdjointEigenSolver<RMat> es(s.Y_);
    if (es.eigenvalues().minCoeff() <= 0.0)
      throw InvariantError("Y is not positive definite", es.eigenvalues().minCoeff());
  }
  s.Z_ = period_matrix(s.H_, s.Y_);
  if (doc.contains("Z")) {
    const auto& arr = doc["Z"];
    if (!arr.is_array() || static_cast<int>(arr.size()) != 2 * g * g)
      throw SchemaError("Z must be a flat [re, im] array of g*g entries");
    CMat given(g, g);
    for (int i = 0; i < g * g; ++i)
      given(i / g, i % g) = cd(arr[static_cast<std::size_t>(2 * i)].get<double>(),
                               arr[static_cast<std::size_t>(2 * i + 1)].get<double>());
    const double res = max_abs(given - s.Z_);
    if (res > kStructTol) throw InvariantError("period matrix violates Z = H/2 + i Y^-1", res);
  }
  s.omega_ = s.Z_;

  if (doc.contains("oval_samples")) {
    const auto& arr = doc["oval_samples"];
    if (!arr.is_array()) throw SchemaError("oval_samples must be an array");
    for (const auto& e : arr) {
      OvalSample x;
      x.oval = required<int>(e, "oval");
      if (g == 0) {
        x.point = SurfacePoint::scalar(cd(e.at("coords").at(0).get<double>(), e.at("coords").at(1).get<double>()));
        x.n_vec = IVec(0);
        x.diff_values = CVec(0);
      } else {
        x.point = SurfacePoint(read_complex_vector(e.at("coords"), g, "coords"));
        const auto nv = required<std::vector<int>>(e, "n_vec");
        if (static_cast<int>(nv.size()) != g) throw SchemaError("n_vec must have length g");
        x.n_vec = Eigen::Map<const IVec>(nv.data(), g);
        x.diff_values = read_complex_vector(e.at("diff_values"), g, "diff_values");
      }
      s.samples_.push_back(std::move(x));
    }
  } else if (g <= 1) {
    s.samples_ = default_samples(s);
  }
  if (doc.contains("odd_characteristic")) {
    const auto& oc = doc["odd_characteristic"];
    const auto a = required<std::vector<double>>(oc, "a");
    const auto b = required<std::vector<double>>(oc, "b");
    if (static_cast<int>(a.size()) != g || static_cast<int>(b.size()) != g)
      throw SchemaError("odd_characteristic a and b must have length g");
    s.odd_ = std::pair<RVec, RVec>(Eigen::Map<const RVec>(a.data(), g), Eigen::Map<const RVec>(b.data(), g));
  }
  if (g >= 2 && s.samples_.empty()) throw SchemaError("genus >= 2 descriptors must carry oval_samples");
  if (g == 0 && (s.ovals_ != 1 || !s.dividing_)) throw InvariantError("genus 0 has one dividing oval", 1.0);
  s.validate();
  return s;
}

nlohmann::json to_json(const RealSurfaceDescriptor& s) {
  nlohmann::json doc;
  doc["genus"] = s.genus();
  doc["ovals"] = s.ovals();
  doc["dividing"] = s.dividing();
  auto h = nlohmann::json::array();
  auto y = nlohmann::json::array();
  for (int i = 0; i < s.genus(); ++i)
    for (int j = 0; j < s.genus(); ++j) {
      h.push_back(s.H()(i, j));
      y.push_back(s.Y()(i, j));
    }
  doc["H"] = h;
  doc["Y"] = y;
  auto samples = nlohmann::json::array();
  for (const auto& x : s.oval_samples()) {
    nlohmann::json e;
    e["oval"] = x.oval;
    e["coords"] = write_complex_vector(x.point.z.head(std::max<Eigen::Index>(s.genus(), 1)));
    e["n_vec"] = std::vector<int>(x.n_vec.data(), x.n_vec.data() + x.n_vec.size());
    e["diff_values"] = write_complex_vector(x.diff_values);
    samples.push_back(e);
  }
  doc["oval_samples"] = samples;
  if (s.odd_characteristic()) {
    const auto& [a, b] = *s.odd_characteristic();
    doc["odd_characteristic"] = {{"a", std::vector<double>(a.data(), a.data() + a.size())},
                                 {"b", std::vector<double>(b.data(), b.data() + b.size())}};
  }
  return doc;
}

RealSurfaceDescriptor builtin_surface(const std::string& selector) {
  if (selector == "genus0") return build_genus0();
  const std::string prefix = "torus:";
  if (selector.rfind(prefix, 0) != 0) throw DomainError("unknown builtin surface '" + selector + "'");
  double t = 1.0;
  bool dividing = true;
  std::stringstream ss(selector.substr(prefix.size()));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw DomainError("malformed builtin option '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string val = item.substr(eq + 1);
    if (key == "t") {
      try {
        t = std::stod(val);
      } catch (const std::exception&) {
        throw DomainError("torus parameter t must be a number");
      }
    } else if (key == "dividing") {
      dividing = (val == "true" || val == "1");
    } else {
      throw DomainError("unknown builtin option '" + key + "'");
    }
  }
  return build_genus1(t, dividing);
}

SurfacePoint involution(const RealSurfaceDescriptor&, const SurfacePoint& p) {
  SurfacePoint q = p;
  q.z = p.z.conjugate();
  return q;
}

std::pair<RVec, RVec> lattice_coordinates(const RealSurfaceDescriptor& s, const CVec& z) {
  const RVec v = s.Y() * z.imag();
  const RVec u = z.real() - 0.5 * s.H().cast<double>() * v;
  return {u, v};
}

CVec reduce(const RealSurfaceDescriptor& s, const CVec& z) {
  if (s.genus() == 0) return z;
  auto [u, v] = lattice_coordinates(s, z);
  const RVec fu = u.array() - u.array().floor();
  const RVec fv = v.array() - v.array().floor();
  return fu.cast<cd>() + s.omega_std() * fv.cast<cd>();
}

double lattice_distance(const RealSurfaceDescriptor& s, const CVec& a, const CVec& b) {
  if (s.genus() == 0) return std::abs(a(0) - b(0));
  auto [u, v] = lattice_coordinates(s, a - b);
  const double du = (u.array() - u.array().round()).abs().maxCoeff();
  const double dv = (v.array() - v.array().round()).abs().maxCoeff();
  return std::max(du, dv);
}

bool lattice_equivalent(const RealSurfaceDescriptor& s, const SurfacePoint& a,
                        const SurfacePoint& b, double tol) {
  if (s.genus() == 0) {
    if (a.infinity || b.infinity) return a.infinity == b.infinity;
    return std::abs(a.head() - b.head()) <= tol;
  }
  return lattice_distance(s, a.z, b.z) <= tol;
}

Classification classify(const RealSurfaceDescriptor& s, const SurfacePoint& p, double tol) {
  if (s.genus() == 0) {
    if (p.infinity || std::abs(p.head().imag()) <= tol) return {Region::Oval, 0};
    return {p.head().imag() > 0 ? Region::InteriorPlus : Region::InteriorMinus, -1};
  }
  const int g = s.genus();
  if (lattice_distance(s, p.z, p.z.conjugate()) <= tol) {
    // z - conj(z) = Omega m + n with m = 2 Y Im z; m mod 2 names the oval.
    const RVec m = 2.0 * s.Y() * p.z.imag();
    IVec parity(g);
    for (int i = 0; i < g; ++i) {
      const long r = std::lround(m(i));
      parity(i) = static_cast<int>(((r % 2) + 2) % 2);
    }
    for (int j = 0; j < s.ovals(); ++j)
      if (expected_n_vec(g, s.ovals(), j) == parity) return {Region::Oval, j};
    // A fixed point of the Jacobian that is not on the curve's ovals.
    return {Region::Oval, -1};
  }
  if (!s.dividing()) return {Region::InteriorPlus, -1};
  const RVec v = 2.0 * s.Y() * p.z.imag();
  const double frac = v(0) - 2.0 * std::floor(0.5 * v(0));
  return {frac < 1.0 ? Region::InteriorPlus : Region::InteriorMinus, -1};
}

}  // namespace rkhs
