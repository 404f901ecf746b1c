// Batch front door: run experiments from spec files, list fixtures, or
// reproduce the whole suite.  Exit codes: 0 pass, 1 check failure,
// 2 usage/config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "cliffmc/experiments.hpp"
#include "cliffmc/fields.hpp"
#include "cliffmc/fixtures.hpp"
#include "cliffmc/rng.hpp"

namespace {

using nlohmann::json;

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + path.string());
  os << content;
}

std::string sanitize(const std::string& kind) {
  std::string s = kind;
  for (char& c : s)
    if (c == '-') c = '_';
  return s;
}

// Writes the report (and CSV when present) for one experiment result.
void emit(const cliffmc::ExperimentResult& res, const std::filesystem::path& out,
          const std::string& format) {
  std::filesystem::create_directories(out);
  write_file(out / (sanitize(res.kind) + "_report.json"), res.report_json);
  if (format == "csv" && res.csv.empty())
    throw std::invalid_argument("experiment kind '" + res.kind + "' defines no CSV output");
  if (!res.csv.empty()) write_file(out / res.csv_name, res.csv);
}

int cmd_run(const std::string& spec_file, const std::string& kind_flag, std::uint64_t seed,
            bool seed_set, const std::string& out, int threads, const std::string& format) {
  cliffmc::ExperimentSpec spec;
  if (!spec_file.empty()) {
    std::ifstream is(spec_file);
    if (!is) throw std::invalid_argument("cannot read spec file: " + spec_file);
    json j = json::parse(is);
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("params"))
      for (const auto& [k, v] : j.at("params").items())
        spec.params[k] = v.is_string() ? v.get<std::string>() : v.dump();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) spec.threads = j.at("threads").get<int>();
  } else if (!kind_flag.empty()) {
    spec.kind = kind_flag;
  } else {
    throw std::invalid_argument("run: need --spec <file> or --kind <name>");
  }
  if (seed_set) spec.seed = seed;
  if (threads > 0) spec.threads = threads;

  const cliffmc::ExperimentResult res = cliffmc::run_experiment(spec);
  emit(res, out, format);
  std::cout << res.kind << ": " << (res.pass ? "PASS" : "FAIL") << "\n";
  for (const std::string& f : res.failures) std::cout << "  failed: " << f << "\n";
  return res.pass ? 0 : 1;
}

int cmd_list_fixtures() {
  for (const cliffmc::Fixture& fx : cliffmc::fixture_registry()) {
    // Re-measure rather than trusting the declared flag.
    auto eng = cliffmc::make_engine(cliffmc::substream_seed(7, fx.dim));
    std::vector<cliffmc::ParaVector> pts;
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int p = 0; p < 20; ++p) {
      cliffmc::ParaVector x(fx.dim);
      for (int i = 0; i <= fx.dim; ++i) x[i] = u(eng);
      pts.push_back(x);
    }
    const auto rep = cliffmc::monogenicity_check(fx.field, pts, 1e-3, 1e-5);
    std::cout << fx.name << "  dim=" << fx.dim << "  "
              << (rep.pass ? "monogenic-verified" : "non-monogenic") << "  (" << fx.note
              << ")\n";
  }
  return 0;
}

int cmd_reproduce_all(std::uint64_t seed, const std::string& out, int threads,
                      const std::string& corrupt) {
  std::filesystem::create_directories(out);
  bool all_pass = true;
  json summary = json::array();
  std::string table = "kind                 status\n";

  const auto registry_failures = cliffmc::validate_fixture_registry(seed, corrupt);
  const bool registry_ok = registry_failures.empty();
  all_pass = all_pass && registry_ok;
  summary.push_back({{"kind", "fixture-registry"},
                     {"pass", registry_ok},
                     {"failures", registry_failures}});
  table += "fixture-registry     " + std::string(registry_ok ? "PASS" : "FAIL") + "\n";
  std::cout << "fixture-registry: " << (registry_ok ? "PASS" : "FAIL") << "\n";
  for (const std::string& f : registry_failures) std::cout << "  failed: " << f << "\n";

  for (const cliffmc::ExperimentSpec& spec :
       cliffmc::reproduce_all_specs(seed, threads > 0 ? threads : 1)) {
    const cliffmc::ExperimentResult res = cliffmc::run_experiment(spec);
    emit(res, out, "json");
    all_pass = all_pass && res.pass;
    summary.push_back({{"kind", res.kind}, {"pass", res.pass}, {"failures", res.failures}});
    table += res.kind + std::string(res.kind.size() < 21 ? 21 - res.kind.size() : 1, ' ') +
             (res.pass ? "PASS" : "FAIL") + "\n";
    std::cout << res.kind << ": " << (res.pass ? "PASS" : "FAIL") << "\n";
    for (const std::string& f : res.failures) std::cout << "  failed: " << f << "\n";
  }

  write_file(std::filesystem::path(out) / "summary.json",
             json{{"seed", seed}, {"pass", all_pass}, {"experiments", summary}}.dump(2) + "\n");
  write_file(std::filesystem::path(out) / "summary.txt", table);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Clifford-algebra stochastic calculus experiment runner"};
  app.require_subcommand(1);

  std::string spec_file, kind_flag, out = ".", format = "json", corrupt;
  std::uint64_t seed = 42;
  int threads = 0;

  auto* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--spec", spec_file, "JSON spec file (kind/params/seed/threads)")
      ->envname("CLIFFMC_SPEC");
  run->add_option("--kind", kind_flag, "Experiment kind (defaults for all params)")
      ->envname("CLIFFMC_KIND");
  auto* seed_opt =
      run->add_option("--seed", seed, "Master seed")->envname("CLIFFMC_SEED");
  run->add_option("--out", out, "Output directory")->envname("CLIFFMC_OUT");
  run->add_option("--threads", threads, "Worker threads")->envname("CLIFFMC_THREADS");
  run->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->envname("CLIFFMC_FORMAT");

  app.add_subcommand("list-fixtures", "Print the fixture catalog with measured status");

  auto* repro = app.add_subcommand("reproduce-all", "Run the full suite");
  repro->add_option("--seed", seed, "Master seed")->envname("CLIFFMC_SEED");
  repro->add_option("--out", out, "Output directory")->envname("CLIFFMC_OUT");
  repro->add_option("--threads", threads, "Worker threads")->envname("CLIFFMC_THREADS");
  repro->add_option("--corrupt-fixture", corrupt, "Flip a fixture's declared status")
      ->group("");  // fault-injection hook, hidden from --help

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand("run"))
      return cmd_run(spec_file, kind_flag, seed, seed_opt->count() > 0, out, threads, format);
    if (app.got_subcommand("list-fixtures")) return cmd_list_fixtures();
    return cmd_reproduce_all(seed, out, threads, corrupt);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
