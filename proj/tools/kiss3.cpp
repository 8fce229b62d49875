// kiss3: verification CLI for the twelve-point kissing bound in three dimensions.
#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kiss3/energy.hpp"
#include "kiss3/errors.hpp"
#include "kiss3/harness.hpp"
#include "kiss3/sphere.hpp"

namespace {

constexpr int kConfigExit = 2;

using kiss3::OutputFormat;

OutputFormat parse_format(const std::string& s) { return s == "json" ? OutputFormat::Json : OutputFormat::Text; }

void write_or_print(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw kiss3::ConfigError("cannot write " + path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kiss3: checks the kissing number bound k(3) = 12"};
  app.require_subcommand(1);

  kiss3::RunConfig cfg;
  std::vector<std::string> suites;
  std::vector<std::string> perturb;
  std::string format = "text";
  std::string out_path;

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", suites, "suite to run (repeatable); default all")
      ->check(CLI::IsMember(kiss3::all_suites()));
  verify->add_option("--tol", cfg.tolerance, "enclosure tolerance")->capture_default_str();
  verify->add_option("--grid", cfg.grid_density, "grid density for refined estimates")->capture_default_str();
  verify->add_option("--seed", cfg.seed, "RNG seed")->capture_default_str();
  verify->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_option("--out", out_path, "write the report here instead of stdout");
  verify->add_option("--perturb", perturb, "add DELTA to the coefficient of t^POWER, as POWER:DELTA (repeatable)");
  verify->add_flag("--parallel", cfg.parallel, "shard randomized suites across threads");
  verify->add_option("--lemma12-sets", cfg.lemma12_sets, "random point sets for the lemma1 and lemma2 suites")
      ->capture_default_str();
  verify->add_option("--lemma3-sets", cfg.lemma3_sets, "separated point sets for the lemma3 suite")
      ->capture_default_str();

  std::string csv_path;
  auto* table = app.add_subcommand("table", "print the bound table");
  table->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  table->add_option("--csv", csv_path, "also write F1/F2 grid evaluations as CSV");
  table->add_option("--tol", cfg.tolerance, "enclosure tolerance")->capture_default_str();
  table->add_option("--grid", cfg.grid_density, "grid density for refined estimates")->capture_default_str();

  std::size_t sample_n = 12;
  double min_sep_deg = 60.0;
  std::uint64_t sample_seed = 42;
  std::size_t max_tries = 10000;
  auto* sample = app.add_subcommand("sample", "draw a random separated point set");
  sample->add_option("--n", sample_n, "number of points")->required();
  sample->add_option("--min-sep", min_sep_deg, "minimum separation in degrees")->capture_default_str();
  sample->add_option("--seed", sample_seed, "RNG seed")->capture_default_str();
  sample->add_option("--max-tries", max_tries, "consecutive rejections before giving up")->capture_default_str();

  std::string points_path;
  auto* energy = app.add_subcommand("energy", "energy summary of a point set file");
  energy->add_option("--points", points_path, "file with one 'theta_deg phi_deg' per line")->required();

  app.add_subcommand("certificate", "print the certificate as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigExit;
  }

  try {
    if (*verify) {
      cfg.suites.insert(suites.begin(), suites.end());
      cfg.format = parse_format(format);
      if (!out_path.empty()) cfg.output_path = out_path;
      for (const auto& p : perturb) cfg.perturbations.push_back(kiss3::parse_perturbation(p));
      kiss3::validate(cfg);
      const auto report = kiss3::run(cfg);
      const std::string text = cfg.format == OutputFormat::Json ? kiss3::to_json(report).dump(2) + "\n"
                                                                : kiss3::render_text(report);
      write_or_print(text, out_path);
      if (!out_path.empty())
        std::cout << "conclusion: " << (report.conclusion ? std::to_string(*report.conclusion) : "none") << "\n";
      return kiss3::exit_code(report);
    }
    if (*table) {
      cfg.suites = {"refine"};
      kiss3::validate(cfg);
      const auto report = kiss3::run(cfg);
      std::cout << kiss3::emit_table(report, parse_format(format));
      if (!csv_path.empty()) {
        if (!report.certificate) throw kiss3::ConfigError("certificate unavailable");
        write_or_print(kiss3::profile_csv(*report.certificate, cfg.tolerance, 64), csv_path);
      }
      return report.bounds && report.bounds->verdict ? 0 : 1;
    }
    if (*sample) {
      if (!(min_sep_deg > 0.0 && min_sep_deg < 180.0)) throw kiss3::ConfigError("--min-sep must be in (0, 180)");
      try {
        const auto ps = kiss3::random_separated_set(sample_n, kiss3::deg2rad(min_sep_deg), sample_seed, max_tries);
        kiss3::write_point_set(std::cout, ps);
      } catch (const kiss3::SaturationError& e) {
        std::cerr << "saturated: " << e.what() << "\n";
        return 1;
      }
      return 0;
    }
    if (*energy) {
      std::ifstream in(points_path);
      if (!in) throw kiss3::ConfigError("cannot read " + points_path);
      const auto ps = kiss3::read_point_set(in);
      std::cout << kiss3::to_json(kiss3::energy(ps, kiss3::build_certificate())).dump(2) << "\n";
      return 0;
    }
    std::cout << kiss3::to_json(kiss3::build_certificate()).dump(2) << "\n";
    return 0;
  } catch (const kiss3::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const kiss3::DomainError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kConfigExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
