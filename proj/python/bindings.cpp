// Python bindings for genus 0 and genus 1 work: points are plain complex
// numbers, surfaces are shared handles.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rkhs/verify.hpp"

namespace py = pybind11;
using namespace rkhs;

namespace {

struct Surface {
  SurfacePtr ptr;
  std::shared_ptr<const PrimeFormContext> prime;

  explicit Surface(RealSurfaceDescriptor s)
      : ptr(std::make_shared<const RealSurfaceDescriptor>(std::move(s))), prime(std::make_shared<const PrimeFormContext>(ptr)) {}

  SurfacePoint point(cd z) const {
    if (ptr->genus() > 1) throw DomainError("the Python layer takes scalar points (genus 0 or 1)");
    return SurfacePoint::scalar(z);
  }
};

/// Atoms given as (oval, parameter, weight); parameter as in oval_point.
RealMeasure measure_from(const Surface& s, const std::vector<std::tuple<int, double, double>>& atoms, bool signed_ok) {
  RealMeasure m;
  m.signed_ok = signed_ok;
  for (const auto& [oval, t, w] : atoms) m.atoms.push_back({s.ptr->oval_point(oval, t), w});
  return m;
}

struct Phi {
  Surface surface;
  CaratheodoryFunction f;
};

py::object to_python(const nlohmann::json& doc) { return py::module_::import("json").attr("loads")(doc.dump()); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reproducing kernel spaces on real compact Riemann surfaces";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_ValueError);
  py::register_exception<SchemaError>(m, "SchemaError", PyExc_ValueError);

  py::class_<Surface>(m, "Surface")
      .def_static("genus0", [] { return Surface(build_genus0()); })
      .def_static("torus", [](double t, bool dividing) { return Surface(build_genus1(t, dividing)); }, py::arg("t"),
                  py::arg("dividing") = true)
      .def_static("builtin", [](const std::string& sel) { return Surface(builtin_surface(sel)); })
      .def_static("from_json", [](const std::string& text) { return Surface(load_surface(nlohmann::json::parse(text))); })
      .def_property_readonly("genus", [](const Surface& s) { return s.ptr->genus(); })
      .def_property_readonly("ovals", [](const Surface& s) { return s.ptr->ovals(); })
      .def_property_readonly("dividing", [](const Surface& s) { return s.ptr->dividing(); })
      .def_property_readonly("period", [](const Surface& s) { return s.ptr->genus() ? s.ptr->Z()(0, 0) : cd(0.0); })
      .def("to_json", [](const Surface& s) { return to_json(*s.ptr).dump(); })
      .def("classify", [](const Surface& s, cd z) { return to_string(classify(*s.ptr, s.point(z))); })
      .def("involution", [](const Surface& s, cd z) { return involution(*s.ptr, s.point(z)).head(); })
      .def("prime_form", [](const Surface& s, cd p, cd q) { return s.prime->value(s.point(p), s.point(q)); })
      .def("cauchy_kernel",
           [](const Surface& s, cd u, cd v) { return cauchy_kernel(KernelConfig(s.prime), s.point(u), s.point(v)); })
      .def("hardy_kernel",
           [](const Surface& s, cd p, cd q) { return hardy_kernel(KernelConfig(s.prime), s.point(p), s.point(q)); })
      .def("harmonic_mass", [](const Surface& s, cd p, int n) { return harmonic_mass(*s.prime, s.point(p), n); },
           py::arg("p"), py::arg("n") = 512);

  m.def("theta", [](cd z, cd tau) { return theta(CVec::Constant(1, z), RiemannMatrix::scalar(tau)); }, py::arg("z"),
        py::arg("tau"));
  m.def("theta_char",
        [](double a, double b, cd z, cd tau) {
          return theta_char({RVec::Constant(1, a), RVec::Constant(1, b)}, CVec::Constant(1, z), RiemannMatrix::scalar(tau));
        },
        py::arg("a"), py::arg("b"), py::arg("z"), py::arg("tau"));

  py::class_<Phi>(m, "Phi")
      .def(py::init([](const Surface& s, const std::vector<std::tuple<int, double, double>>& atoms, double M,
                       bool signed_ok) { return Phi{s, CaratheodoryFunction(s.prime, measure_from(s, atoms, signed_ok), M)}; }),
           py::arg("surface"), py::arg("atoms"), py::arg("M") = 0.0, py::arg("signed_ok") = false)
      .def_static("genus0",
                  [](double A, const std::vector<std::pair<double, double>>& atoms) {
                    std::vector<Genus0Atom> a;
                    for (auto [t, c] : atoms) a.push_back({t, c});
                    CaratheodoryFunction f = genus0_dictionary(A, 0.0, a);
                    return Phi{Surface(build_genus0()), std::move(f)};
                  },
                  py::arg("A"), py::arg("atoms"))
      .def("__call__", [](const Phi& p, cd z) { return p.f(p.surface.point(z)); })
      .def("periods", [](const Phi& p) {
        const CVec v = phi_periods(p.f);
        return std::vector<cd>(v.data(), v.data() + v.size());
      })
      .def("schur", [](const Phi& p, cd z) { return SchurFunction(p.f)(p.surface.point(z)); })
      .def("kernel", [](const Phi& p, cd z, cd w) {
        return LPhiSpace(KernelConfig(p.f.prime_ptr()), p.f).kernel(p.surface.point(z), p.surface.point(w));
      })
      .def("l2_kernel", [](const Phi& p, cd z, cd w) {
        return LPhiSpace(KernelConfig(p.f.prime_ptr()), p.f).l2_kernel(p.surface.point(z), p.surface.point(w));
      })
      .def("dimension", [](const Phi& p) { return LPhiSpace(KernelConfig(p.f.prime_ptr()), p.f).dimension(); })
      .def("identity_residual", [](const Phi& p, cd z, cd w) {
        return inner_product_identity_residual(LPhiSpace(KernelConfig(p.f.prime_ptr()), p.f), p.surface.point(z), p.surface.point(w));
      });

  m.def("verify",
        [](const std::string& suite, const Surface& s, std::uint64_t seed, bool signed_measure) {
          VerifyOptions opts;
          opts.seed = seed;
          opts.signed_measure = signed_measure;
          return to_python(run_suite(suite, SuiteInput{s.ptr, std::nullopt, 0.0}, opts).to_json());
        },
        py::arg("suite"), py::arg("surface"), py::arg("seed") = 42, py::arg("signed_measure") = false);
  m.def("comparison_table_csv", [](std::uint64_t seed, const std::string& example) {
    return table_csv(comparison_table(seed, example));
  }, py::arg("seed") = 42, py::arg("example") = "default");
}
