#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "../src/cli/commands.hpp"

// kobalt: numerical experiments in Kobayashi-metric geometry.
//
// Every experiment reads an optional JSON input document, fills defaults,
// and emits a JSON report (plus CSV tables) whose bytes depend only on the
// configuration and seed.  Exit code 0 means every recorded check passed,
// 1 a numerical failure or failed check, 2 a usage or schema error.

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"kobalt: Kobayashi-metric geometry experiments"};
  app.require_subcommand(1);

  kobalt::cli::ExperimentConfig config;
  std::string input_path;

  for (const std::string& name : kobalt::cli::experiment_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--input", input_path, "JSON input document");
    sub->add_option("--out", config.out_dir, "output directory for report and CSV files");
    sub->add_option("--seed", config.seed, "seed for randomized batteries");
    sub->add_option("--grid", config.grid, "grid point count override");
    sub->add_flag("--json", config.json_stdout, "print the report JSON to stdout");
    sub->callback([&config, name] { config.subcommand = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    config.input = kobalt::Json::object();
    if (!input_path.empty()) {
      std::ifstream in(input_path);
      if (!in) throw kobalt::cli::UsageError("cannot open input file '" + input_path + "'");
      try {
        config.input = kobalt::Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw kobalt::cli::UsageError(std::string("input is not valid JSON: ") + e.what());
      }
    }

    const kobalt::cli::ReportDocument report = kobalt::cli::run(config);
    if (config.json_stdout) std::cout << report.to_json().dump(2) << "\n";
    if (!report.all_pass()) {
      std::cerr << report.experiment << ": " << [&] {
        int failed = 0;
        for (const auto& c : report.checks)
          if (!c.passed()) ++failed;
        return failed;
      }() << " check(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const kobalt::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const kobalt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
