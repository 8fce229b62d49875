#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "kiss3/errors.hpp"
#include "kiss3/harness.hpp"

using namespace kiss3;

namespace {

// Smaller randomized suites keep the unit tests quick; the acceptance binary
// runs the full sizes.
RunConfig small_config() {
  RunConfig cfg;
  cfg.lemma12_sets = 100;
  cfg.lemma3_sets = 50;
  cfg.residual_samples = 100;
  cfg.grid_density = 64;
  return cfg;
}

const SuiteResult* find_suite(const VerificationReport& r, const std::string& name) {
  for (const auto& s : r.suites)
    if (s.name == name) return &s;
  return nullptr;
}

int count_lines(const std::string& s) {
  int n = 0;
  for (char ch : s) n += ch == '\n';
  return n;
}

}  // namespace

TEST_CASE("config validation") {
  RunConfig cfg;
  CHECK_NOTHROW(validate(cfg));
  cfg.tolerance = 0.0;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = RunConfig();
  cfg.grid_density = 63;
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = RunConfig();
  cfg.suites = {"lemma4"};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
  cfg = RunConfig();
  cfg.perturbations = {{13, Rational(1)}};
  CHECK_THROWS_AS(validate(cfg), ConfigError);
}

TEST_CASE("perturbation parsing") {
  const auto p = parse_perturbation("9:1/100");
  CHECK(p.first == 9);
  CHECK(p.second == make_rational(1, 100));
  CHECK(parse_perturbation("0:-0.01").second == make_rational(-1, 100));
  CHECK_THROWS_AS(parse_perturbation("9"), ConfigError);
  CHECK_THROWS_AS(parse_perturbation("x:1"), ConfigError);
  CHECK_THROWS_AS(parse_perturbation("9:1/0"), ConfigError);
  CHECK_THROWS_AS(parse_perturbation("9x:1"), ConfigError);
}

TEST_CASE("partial run has no conclusion") {
  RunConfig cfg = small_config();
  cfg.suites = {"lemma1"};
  const VerificationReport r = run(cfg);
  REQUIRE(r.suites.size() == 1);
  CHECK(r.suites[0].name == "lemma1");
  CHECK(r.suites[0].ok());
  CHECK(r.suites[0].passed == cfg.lemma12_sets + 2 * cfg.residual_samples);
  CHECK_FALSE(r.conclusion.has_value());
  CHECK(exit_code(r) == 1);
  CHECK_FALSE(to_json(r).contains("conclusion"));
}

TEST_CASE("full run concludes 12 and is reproducible") {
  const RunConfig cfg = small_config();
  const VerificationReport a = run(cfg);
  for (const auto& s : a.suites) {
    CAPTURE(s.name);
    CHECK(s.ok());
  }
  REQUIRE(a.conclusion.has_value());
  CHECK(*a.conclusion == 12);
  CHECK(exit_code(a) == 0);
  REQUIRE(a.bounds.has_value());
  for (const auto& h : a.bounds->h) CHECK(h.hi < 13.0);
  REQUIRE(a.theorem.has_value());
  CHECK(a.theorem->witness_ok);

  const std::string ja = to_json(a).dump();
  CHECK(ja == to_json(run(cfg)).dump());

  RunConfig par = cfg;
  par.parallel = true;
  auto jp = to_json(run(par));
  auto jb = to_json(a);
  jp.erase("config");
  jb.erase("config");
  CHECK(jp.dump() == jb.dump());

  const auto j = to_json(a);
  CHECK(j["schema_version"] == 1);
  CHECK(j["conclusion"] == 12);
  CHECK(j["refined"]["rigorous"] == false);
  bool noted = false;
  for (const auto& n : j["notes"]) noted = noted || n.get<std::string>().find("f(1)") != std::string::npos;
  CHECK(noted);
}

TEST_CASE("every single-coefficient perturbation of 1/100 is caught") {
  for (int power = 0; power <= 9; ++power) {
    for (int sign : {-1, 1}) {
      CAPTURE(power);
      CAPTURE(sign);
      RunConfig cfg = small_config();
      cfg.suites = {"certificate"};
      cfg.perturbations = {{power, make_rational(sign, 100)}};
      const VerificationReport r = run(cfg);
      const SuiteResult* s = find_suite(r, "certificate");
      REQUIRE(s != nullptr);
      CHECK_FALSE(s->ok());
      CHECK(exit_code(r) == 1);
    }
  }
}

TEST_CASE("negative control on the full pipeline") {
  RunConfig cfg = small_config();
  cfg.perturbations = {{9, make_rational(1, 100)}};
  const VerificationReport r = run(cfg);
  CHECK_FALSE(r.all_passed());
  CHECK_FALSE(r.conclusion.has_value());
  CHECK(exit_code(r) == 1);
  const SuiteResult* cert = find_suite(r, "certificate");
  REQUIRE(cert != nullptr);
  CHECK(cert->failed > 0);
  CHECK_FALSE(cert->counterexamples.empty());
}

TEST_CASE("an unusable certificate is reported, not thrown") {
  RunConfig cfg = small_config();
  cfg.perturbations = {{0, Rational(100)}};  // f > 0 everywhere on [-1, 1/2]
  VerificationReport r;
  CHECK_NOTHROW(r = run(cfg));
  CHECK_FALSE(r.certificate.has_value());
  for (const auto& s : r.suites) {
    CAPTURE(s.name);
    if (s.name == "lemma1") {
      CHECK(s.ok());
    } else {
      CHECK_FALSE(s.ok());
      CHECK_FALSE(s.error.empty());
    }
  }
  CHECK(exit_code(r) == 1);
}

TEST_CASE("emit_table") {
  VerificationReport empty;
  const std::string header = emit_table(empty, OutputFormat::Text);
  CHECK(count_lines(header) == 1);
  CHECK(header.find("reference") != std::string::npos);

  RunConfig cfg = small_config();
  cfg.suites = {"refine"};
  const VerificationReport r = run(cfg);
  const std::string text = emit_table(r, OutputFormat::Text);
  std::istringstream in(text);
  std::string line;
  bool h2 = false, mu_angle = false;
  while (std::getline(in, line)) {
    if (line.rfind("h2 ", 0) == 0) h2 = line.find("12.8749") != std::string::npos;
    if (line.rfind("mu-angle", 0) == 0) mu_angle = line.find("76.582") != std::string::npos;
  }
  CHECK(h2);
  CHECK(mu_angle);
  const auto j = nlohmann::json::parse(emit_table(r, OutputFormat::Json));
  CHECK(j["schema_version"] == 1);
  CHECK(j["bounds"]["mu"] == 4);
  CHECK(render_text(r).find("conclusion: none") != std::string::npos);
}

TEST_CASE("profile CSV") {
  const std::string csv = profile_csv(build_certificate(), 1e-7, 8);
  CHECK(count_lines(csv) == 1 + 16);
  CHECK(csv.rfind("profile,psi_deg,lo,hi\nF1,60", 0) == 0);
  CHECK_THROWS_AS(profile_csv(build_certificate(), 1e-7, 1), ConfigError);
}
