#include "rkhs/verify.hpp"

#include <cstdio>
#include <random>
#include <sstream>

namespace rkhs {

namespace {

struct TableSetup {
  double torus_t;
  double A;
  std::vector<Genus0Atom> atoms;
};

TableSetup table_setup(const std::string& example) {
  if (example == "default") return {1.0, 0.4, {{-1.0, 1.0}, {0.5, 0.3}, {2.0, 0.7}}};
  if (example == "wide") return {2.0, -0.2, {{-2.5, 0.4}, {-0.3, 1.1}, {0.8, 0.6}, {3.0, 0.2}}};
  throw DomainError("unknown table example '" + example + "' (expected default or wide)");
}

/// Values of every row on one surface.
std::vector<cd> column(const std::shared_ptr<const LPhiSpace>& sp, const MeromorphicFunction& y, const L2Section& f,
                       const SurfacePoint& z, const SurfacePoint& w, cd alpha) {
  const KernelConfig& cfg = sp->kernel_config();
  const Section F = as_section(*sp, f);
  return {cauchy_kernel(cfg, z, w),
          hardy_kernel(cfg, z, w),
          sp->kernel(z, w),
          sp->l2_kernel(z, w),
          sp->element(f, z),
          sp->phi()(z),
          model_op_pointwise(cfg, y, F, z),
          resolvent_pointwise(cfg, y, alpha, F, z)};
}

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::vector<TableRow> comparison_table(std::uint64_t seed, const std::string& example) {
  const TableSetup setup = table_setup(example);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto g0 = std::make_shared<const RealSurfaceDescriptor>(build_genus0());
  auto g1 = std::make_shared<const RealSurfaceDescriptor>(build_genus1(setup.torus_t, true));
  const auto E0 = std::make_shared<const PrimeFormContext>(g0);
  const auto E1 = std::make_shared<const PrimeFormContext>(g1);

  const auto sp0 = std::make_shared<const LPhiSpace>(KernelConfig(E0), genus0_dictionary(setup.A, 0.0, setup.atoms));
  const auto sp1 = std::make_shared<const LPhiSpace>(
      KernelConfig(E1), CaratheodoryFunction(E1, balance_measure(*g1, example_measure(*g1)), example_M(*g1)));

  const cd z0(-2.0 + 4.0 * unit(rng), 0.5 + unit(rng));
  const cd w0(-2.0 + 4.0 * unit(rng), 0.5 + unit(rng));
  const cd z1(unit(rng), setup.torus_t * (0.1 + 0.3 * unit(rng)));
  const cd w1(unit(rng), setup.torus_t * (0.1 + 0.3 * unit(rng)));
  const cd alpha(-1.0 + 2.0 * unit(rng), 0.5 + unit(rng));

  auto coefficients = [&](Eigen::Index n) {
    L2Section f{CVec(n)};
    for (Eigen::Index i = 0; i < n; ++i) f.values(i) = cd(unit(rng) - 0.5, unit(rng) - 0.5);
    return f;
  };
  const L2Section f0 = coefficients(sp0->size());
  const L2Section f1 = coefficients(sp1->size());

  const MeromorphicFunction y0 = MeromorphicFunction::rational(0.0, 1.0, {}, {});
  const cd pole(0.3, 0.2 * setup.torus_t);
  const MeromorphicFunction y1 =
      MeromorphicFunction::elliptic(0.5, {pole, std::conj(pole)}, {cd(0.0, 0.7), cd(0.0, -0.7)});

  const SurfacePoint Z0 = SurfacePoint::scalar(z0), W0 = SurfacePoint::scalar(w0);
  const std::vector<cd> c0 = column(sp0, y0, f0, Z0, W0, alpha);
  const std::vector<cd> c1 = column(sp1, y1, f1, SurfacePoint::scalar(z1), SurfacePoint::scalar(w1), alpha);

  // Classical half-plane formulas; the atoms carry mu_i = c_i.
  cd reproducing = 0.0, element = 0.0, model = 0.0, resolvent = 0.0;
  for (std::size_t i = 0; i < setup.atoms.size(); ++i) {
    const auto& [t, c] = setup.atoms[i];
    const cd fi = f0.values(static_cast<Eigen::Index>(i));
    reproducing += c / ((t - z0) * (t - std::conj(w0)));
    element += c * fi / (z0 - t);
    model += c * t * fi / (z0 - t);
    resolvent += c * fi / ((z0 - t) * (t - alpha));
  }
  const std::vector<cd> closed{1.0 / (z0 - w0),
                               1.0 / (-kI * (z0 - std::conj(w0))),
                               reproducing,
                               reproducing,
                               element,
                               genus0_classical(setup.A, 0.0, setup.atoms, z0),
                               model,
                               resolvent};
  const char* names[] = {"cauchy_kernel", "hardy_kernel", "lphi_kernel", "l2_reproducing_kernel",
                         "element",       "herglotz",     "model_operator", "resolvent"};
  std::vector<TableRow> rows;
  for (std::size_t k = 0; k < closed.size(); ++k) rows.push_back({names[k], c0[k], closed[k], c1[k]});
  return rows;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "quantity,genus0_re,genus0_im,genus0_closed_re,genus0_closed_im,genus0_residual,genus1_re,genus1_im\r\n";
  for (const auto& r : rows) {
    os << r.quantity << ',' << number(r.genus0.real()) << ',' << number(r.genus0.imag()) << ','
       << number(r.genus0_closed.real()) << ',' << number(r.genus0_closed.imag()) << ','
       << number(scaled_residual(r.genus0, r.genus0_closed)) << ',' << number(r.genus1.real()) << ','
       << number(r.genus1.imag()) << "\r\n";
  }
  return os.str();
}

std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-22s %-34s %-10s %-34s\n", "quantity", "g = 0 (half-plane)", "residual",
                "g = 1 (dividing torus)");
  os << buf;
  auto fmt = [](cd v) {
    char b[64];
    std::snprintf(b, sizeof b, "%+.12f %+.12fi", v.real(), v.imag());
    return std::string(b);
  };
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%-22s %-34s %-10.1e %-34s\n", r.quantity.c_str(), fmt(r.genus0).c_str(),
                  scaled_residual(r.genus0, r.genus0_closed), fmt(r.genus1).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace rkhs
