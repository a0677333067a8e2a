#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "undistort/errors.hpp"
#include "undistort/report.hpp"
#include "undistort/scenario.hpp"

namespace {

constexpr int kExitPrecondition = 2;
constexpr int kExitParse = 3;

int run(const std::string& file, const std::string& out_dir,
        const std::optional<std::uint64_t>& seed, const std::optional<std::int64_t>& budget) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "error: cannot read " << file << '\n';
    return kExitParse;
  }
  std::stringstream text;
  text << in.rdbuf();

  try {
    const undistort::Scenario scenario = undistort::load_scenario(text.str());
    undistort::RunOptions options;
    options.seed = seed;
    options.budget = budget;
    options.scenario_name = std::filesystem::path(file).filename().string();
    const undistort::Report report = undistort::run_scenario(scenario, options);
    std::cout << report.text;
    if (!out_dir.empty()) {
      const std::filesystem::path dir(out_dir);
      std::filesystem::create_directories(dir);
      std::ofstream(dir / "report.txt") << report.text;
      for (const auto& t : report.tables) std::ofstream(dir / t.file) << t.csv;
    }
  } catch (const undistort::ParseError& e) {
    std::cerr << file << ": parse error: " << e.what() << '\n';
    return kExitParse;
  } catch (const undistort::Error& e) {
    std::cerr << file << ": precondition error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Undistortion certificates for surface homeomorphisms"};
  app.require_subcommand(1);

  std::string file;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file and print the report");
  run_cmd->add_option("file", file, "Scenario file")->required();
  run_cmd->add_option("--out", out_dir, "Directory for report.txt and CSV tables");
  run_cmd->add_option("--seed", seed, "Seed for sampled analyses (default 1)");
  run_cmd->add_option("--budget", budget, "Default orbit budget")->check(CLI::PositiveNumber);

  auto* list_cmd = app.add_subcommand("list-families", "Print the built-in spaces, families and analyses");

  CLI11_PARSE(app, argc, argv);

  if (*list_cmd) {
    std::cout << undistort::list_families();
    return 0;
  }
  return run(file, out_dir, seed, budget);
}
