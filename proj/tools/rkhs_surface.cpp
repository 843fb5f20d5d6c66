#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "rkhs/verify.hpp"

using namespace rkhs;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitInput = 2;

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
}

struct SurfaceArgs {
  std::string builtin;
  std::string file;
  std::string measure;

  void attach(CLI::App* cmd) {
    auto* b = cmd->add_option("--builtin", builtin, "builtin surface: genus0 or torus:t=<t>,dividing=<0|1>");
    auto* f = cmd->add_option("--surface", file, "surface descriptor JSON");
    b->excludes(f);
    cmd->add_option("--measure", measure, "measure JSON {atoms, densities, M, signed_ok}");
  }
  SurfacePtr surface() const {
    if (!file.empty()) return std::make_shared<const RealSurfaceDescriptor>(load_surface(read_json(file)));
    return std::make_shared<const RealSurfaceDescriptor>(builtin_surface(builtin.empty() ? "torus:t=1" : builtin));
  }
};

cd parse_point(const std::string& text) {
  double re = 0.0, im = 0.0;
  if (std::sscanf(text.c_str(), "%lf,%lf", &re, &im) != 2) throw DomainError("point '" + text + "' is not re,im");
  return {re, im};
}

json complex_json(cd v) { return json{v.real(), v.imag()}; }

int run_verify(const SurfaceArgs& sa, const std::string& suite, bool signed_measure, const std::string& out,
               VerifyOptions opts) {
  opts.signed_measure = signed_measure;
  SuiteInput input{sa.surface(), std::nullopt, 0.0};
  if (!sa.measure.empty()) {
    double M = 0.0;
    input.measure = load_measure(*input.surface, read_json(sa.measure), &M);
    input.M = M;
  }
  const VerificationReport report = run_suite(suite, input, opts);
  write_output(out, report.to_json().dump(2) + "\n");
  for (const auto& c : report.checks)
    std::fprintf(stderr, "%-8s %-44s residual=%-10.3e tol=%.1e\n", c.skipped ? "SKIP" : (c.pass ? "PASS" : "FAIL"),
                 c.id.c_str(), c.residual, c.tol);
  return report.passed() ? 0 : kExitFail;
}

int run_table(const std::string& example, const std::string& format, const std::string& out, std::uint64_t seed) {
  const auto rows = comparison_table(seed, example);
  write_output(out, format == "csv" ? table_csv(rows) : table_text(rows));
  return 0;
}

int run_bench(const std::vector<int>& sizes, unsigned threads, std::uint64_t seed) {
  const TruncationPolicy T{1e-12, 64};
  CMat om2(2, 2);
  om2 << cd(0.3, 1.1), cd(0.2, 0.35), cd(0.2, 0.35), cd(-0.1, 0.9);
  const std::vector<std::pair<int, RiemannMatrix>> cases{{1, RiemannMatrix::scalar(kI)}, {2, RiemannMatrix(om2)}};
  json report = json::array();
  for (int n : sizes) {
    if (n <= 0) continue;
    for (const auto& [g, M] : cases) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> u(-0.5, 0.5);
      std::vector<CVec> zs(static_cast<std::size_t>(n), CVec(g));
      for (auto& z : zs)
        for (int i = 0; i < g; ++i) z(i) = cd(u(rng), 0.5 * u(rng));
      const Characteristic c = Characteristic::zero(g);
      const auto t0 = std::chrono::steady_clock::now();
      const auto many = theta_batch(c, zs, M, T, threads);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      const auto single = theta_batch(c, zs, M, T, 1);
      double spread = 0.0;
      for (std::size_t k = 0; k < many.size(); ++k) spread = std::max(spread, std::abs(many[k] - single[k]));
      report.push_back({{"genus", g},
                        {"points", n},
                        {"threads", threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads},
                        {"seconds", secs},
                        {"points_per_second", secs > 0 ? n / secs : 0.0},
                        {"thread_count_deviation", spread}});
    }
  }
  std::cout << report.dump(2) << "\n";
  return 0;
}

int run_eval(const SurfaceArgs& sa, const std::string& what, const std::string& zt, const std::string& wt,
             const VerifyOptions& opts) {
  const SurfacePtr s = sa.surface();
  const TruncationPolicy T{opts.eps, 64};
  const auto E = std::make_shared<const PrimeFormContext>(s, std::nullopt, T);
  auto point = [&](const std::string& text) {
    if (s->genus() <= 1) return SurfacePoint::scalar(parse_point(text));
    throw DomainError("eval takes scalar points; genus >= 2 surfaces are not supported here");
  };
  const SurfacePoint z = point(zt);
  json out{{"quantity", what}, {"z", complex_json(z.head())}};
  RealMeasure m = example_measure(*s);
  double M = example_M(*s);
  if (!sa.measure.empty()) m = load_measure(*s, read_json(sa.measure), &M);
  if (what == "phi") {
    out["value"] = complex_json(CaratheodoryFunction(E, m, M)(z));
  } else if (what == "theta") {
    out["value"] = complex_json(theta(z.z, RiemannMatrix::from_surface(*s), T));
  } else {
    const SurfacePoint w = point(wt);
    out["w"] = complex_json(w.head());
    const KernelConfig cfg(E);
    if (what == "prime") out["value"] = complex_json(E->value(z, w));
    else if (what == "cauchy") out["value"] = complex_json(cauchy_kernel(cfg, z, w));
    else if (what == "hardy") out["value"] = complex_json(hardy_kernel(cfg, z, w));
    else if (what == "lphi") out["value"] = complex_json(LPhiSpace(cfg, CaratheodoryFunction(E, m, M)).kernel(z, w));
    else throw DomainError("unknown quantity '" + what + "'");
  }
  out["classification"] = to_string(classify(*s, z));
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reproducing kernel spaces on real compact Riemann surfaces"};
  app.require_subcommand(1);
  VerifyOptions opts;
  app.add_option("--eps", opts.eps, "theta tail bound")->capture_default_str();
  app.add_option("--quad-n", opts.quad_n, "quadrature nodes per oval")->capture_default_str();
  app.add_option("--tol-theta", opts.tol_theta, "tolerance for theta-routed residuals")->capture_default_str();
  app.add_option("--tol-exact", opts.tol_exact, "tolerance for exact algebraic residuals")->capture_default_str();
  app.add_option("--seed", opts.seed, "random seed")->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run verification suites and emit a JSON report");
  SurfaceArgs vsurf;
  vsurf.attach(verify);
  std::string suite = "all", vout;
  bool signed_measure = false;
  verify->add_option("--suite", suite, "suite name or all")->capture_default_str();
  verify->add_flag("--signed", signed_measure, "add the signed zero-cycle measure checks");
  verify->add_option("--out", vout, "report path (default stdout)");

  auto* table = app.add_subcommand("table", "genus-0 / genus-1 comparison table");
  std::string example = "default", format = "text", tout;
  table->add_option("--example", example, "default or wide")->capture_default_str();
  table->add_option("--format", format, "text or csv")->check(CLI::IsMember({"text", "csv"}))->capture_default_str();
  table->add_option("--out", tout, "output path (default stdout)");

  auto* bench = app.add_subcommand("bench", "batch theta throughput at genus 1 and 2");
  std::vector<int> sizes{1000, 100000};
  unsigned threads = 0;
  bench->add_option("--sizes", sizes, "batch sizes")->delimiter(',');
  bench->add_option("--threads", threads, "worker threads (0 = hardware)");

  auto* eval = app.add_subcommand("eval", "evaluate one quantity at a point");
  SurfaceArgs esurf;
  esurf.attach(eval);
  std::string what = "phi", zt = "0.3,0.2", wt = "0.6,0.1";
  eval->add_option("quantity", what, "phi, theta, prime, cauchy, hardy or lphi")->capture_default_str();
  eval->add_option("--z", zt, "point as re,im")->capture_default_str();
  eval->add_option("--w", wt, "second point as re,im")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  try {
    if (*verify) return run_verify(vsurf, suite, signed_measure, vout, opts);
    if (*table) return run_table(example, format, tout, opts.seed);
    if (*bench) return run_bench(sizes, threads, opts.seed);
    if (*eval) return run_eval(esurf, what, zt, wt, opts);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "rkhs-surface: %s\n", e.what());
    return kExitInput;
  }
  return 0;
}
