#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kiss3/bounds.hpp"
#include "kiss3/certificate.hpp"
#include "kiss3/theorem.hpp"

namespace kiss3 {

enum class OutputFormat { Text, Json };

// Suite names in execution order.
const std::vector<std::string>& all_suites();

struct RunConfig {
  double tolerance = 1e-7;
  int grid_density = 256;
  std::uint64_t seed = 42;
  std::set<std::string> suites;  // empty means all
  OutputFormat format = OutputFormat::Text;
  std::optional<std::string> output_path;
  // (power, delta) pairs added to the certificate before the run; negative controls.
  std::vector<std::pair<int, Rational>> perturbations;
  bool parallel = false;
  int lemma12_sets = 1000;
  int lemma3_sets = 500;
  int residual_samples = 1000;

  bool enabled(const std::string& suite) const { return suites.empty() || suites.count(suite) > 0; }
};

// Throws ConfigError.
void validate(const RunConfig& config);

// "POWER:DELTA", e.g. "9:1/100". Throws ConfigError.
std::pair<int, Rational> parse_perturbation(const std::string& text);

struct SuiteResult {
  std::string name;
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  nlohmann::json counterexamples = nlohmann::json::array();  // first few failures
  nlohmann::json details = nlohmann::json::object();
  std::string error;  // set when the suite aborted

  bool ok() const { return failed == 0 && error.empty(); }
};

struct VerificationReport {
  RunConfig config;
  std::optional<Certificate> certificate;
  std::optional<BoundTable> bounds;
  nlohmann::json energy_spot_checks = nlohmann::json::object();
  std::vector<SuiteResult> suites;
  std::optional<RefinedEstimates> refined;
  std::optional<TheoremReport> theorem;
  std::optional<int> conclusion;  // present iff every enabled suite passed and the theorem suite ran
  std::vector<std::string> notes;

  bool all_passed() const;
};

// Runs the enabled suites in dependency order. Errors inside a suite are
// recorded in the report, never thrown.
VerificationReport run(const RunConfig& config);

// 0 iff conclusion = 12, otherwise 1. Configuration errors (2) never reach a report.
int exit_code(const VerificationReport& report);

nlohmann::json to_json(const VerificationReport& report);

// Text: reference value, computed enclosure and margin to 13 per constant;
// only the header when nothing was computed. Json: the report schema.
std::string emit_table(const VerificationReport& report, OutputFormat format);

// Full text rendering: the table, suite tallies, notes and the conclusion.
std::string render_text(const VerificationReport& report);

// CSV rows "profile,psi_deg,lo,hi" for F1 and F2 at `points` grid points.
std::string profile_csv(const Certificate& c, double tol, int points);

}  // namespace kiss3
