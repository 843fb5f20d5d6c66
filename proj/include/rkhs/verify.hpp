#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkhs/cayley.hpp"

namespace rkhs {

struct VerifyOptions {
  double eps = 1e-14;
  int quad_n = 512;
  double tol_theta = 1e-9;
  double tol_exact = 1e-12;
  std::uint64_t seed = 42;
  bool signed_measure = false;
  int theta_trials = 10000;
  int fay_pairs = 500;
  int random_pairs = 100;
};

struct CheckRecord {
  std::string id;
  std::string anchor;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool skipped = false;
};

struct VerificationReport {
  std::string suite;
  VerifyOptions env;
  std::vector<CheckRecord> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Surface plus an optional user measure. Without a measure every suite uses
/// its built-in example measure; an empty measure skips measure checks.
struct SuiteInput {
  SurfacePtr surface;
  std::optional<RealMeasure> measure;
  double M = 0.0;
};

std::vector<std::string> suite_names();

/// Runs one suite ("theta", "prime_form", "fay", "herglotz", "inner_product",
/// "operators", "cayley", "genus0") or "all".
VerificationReport run_suite(const std::string& suite, const SuiteInput& input, const VerifyOptions& opts);

/// One row of the genus-0 / genus-1 comparison table.
struct TableRow {
  std::string quantity;
  cd genus0;
  cd genus0_closed;
  cd genus1;
};

std::vector<TableRow> comparison_table(std::uint64_t seed, const std::string& example = "default");
std::string table_csv(const std::vector<TableRow>& rows);
std::string table_text(const std::vector<TableRow>& rows);

/// Example measures used when the caller supplies none.
RealMeasure example_measure(const RealSurfaceDescriptor& s);
double example_M(const RealSurfaceDescriptor& s);

}  // namespace rkhs
