#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "cpn/cli.hpp"
#include "cpn/numeric/backend.hpp"
#include "json.hpp"

namespace cpn::cli {

using nlohmann::ordered_json;

enum class Mode { Exact, Float };

struct RunConfig {
  std::string command;
  Mode mode = Mode::Exact;
  bool mode_forced = false;
  std::size_t n = 0;
  std::string f;
  bool veronese = false;
  std::vector<std::size_t> k;
  std::string grid = "-1:1:5,-1:1:5";
  double tol = 1e-10;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
  std::string format = "json";
  bool allow_last = false;
  std::vector<std::string> lambdas;
  bool su_basis = false;
  std::string negative_control;

  /// Surface indices to process: --k or every admissible surface.
  std::vector<std::size_t> surfaces() const;
  ordered_json to_json() const;
};

/// A failure that maps directly onto an exit code.
struct CliFailure {
  int code;
  std::string message;
};

/// One named residual with its outcome.
struct CheckRow {
  std::string name;
  std::string subject;
  bool passed = true;
  double magnitude = 0.0;
  std::string detail;
  /// Reported but not counted toward the exit code.
  bool advisory = false;
};

inline ordered_json row_json(const CheckRow& r) {
  ordered_json j;
  j["name"] = r.name;
  j["subject"] = r.subject;
  j["passed"] = r.passed;
  j["magnitude"] = r.magnitude;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (r.advisory) j["advisory"] = true;
  return j;
}

/// Holomorphic or general input vector in the requested ring.
template <Coefficient C>
std::vector<BiPoly<C>> input_vector(const RunConfig& cfg);

/// Spectral parameters from --lambda, or the default set.
template <Coefficient C>
std::vector<C> spectral_values(const RunConfig& cfg);

/// Writes `text` to --out or to `out`; throws CliFailure(kExitIo).
void emit(const RunConfig& cfg, const std::string& text, std::ostream& out);

/// Shortest round-trip decimal form.
std::string format_double(double v);

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_dump(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cpn::cli
