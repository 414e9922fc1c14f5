// eyeball-jedi: country-level eyeball connectivity analysis.
//
//   eyeball-jedi coverage|plan|analyze|render|fetch [--country CC|--all]
//                [--config PATH] [--out DIR] [--cap 0.95] [--floor 0.01]

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "eyeball/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Eyeball network coverage and connectivity analysis"};
  app.require_subcommand(1);

  std::string configPath;
  std::string country;
  bool all = false;
  std::string out;
  std::optional<double> cap;
  std::optional<double> floor;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", configPath, "key = value configuration file");
    auto* cc = cmd->add_option("--country", country, "two-letter country code");
    cmd->add_flag("--all", all, "process every country in the population data")->excludes(cc);
    cmd->add_option("--out", out, "output directory");
    cmd->add_option("--cap", cap, "cumulative user share at which selection stops");
    cmd->add_option("--floor", floor, "minimum user share of a selected network");
  };

  auto* coverage = app.add_subcommand("coverage", "select eyeball networks and report probe coverage");
  auto* plan = app.add_subcommand("plan", "emit the probe-to-probe traceroute plan");
  auto* analyze = app.add_subcommand("analyze", "classify traceroutes and compute the AS-to-AS matrix");
  auto* render = app.add_subcommand("render", "render matrix_<CC>.json files as SVG");
  auto* fetch = app.add_subcommand("fetch", "download probe inventory and measurement results");
  for (auto* cmd : {coverage, plan, analyze, render, fetch}) add_common(cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : eyeball::kExitInputError;
  }

  eyeball::RunConfig config;
  try {
    if (!configPath.empty()) config = eyeball::load_config(configPath);
  } catch (const eyeball::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return eyeball::kExitInputError;
  }
  if (!country.empty()) {
    config.country = country;
    config.allCountries = false;
  }
  if (all) config.allCountries = true;
  if (!out.empty()) config.outputDirectory = out;
  if (cap) config.thresholds.cumulativeCap = *cap;
  if (floor) config.thresholds.perAsFloor = *floor;

  if (coverage->parsed()) return eyeball::cmd_coverage(config, std::cerr);
  if (plan->parsed()) return eyeball::cmd_plan(config, std::cerr);
  if (analyze->parsed()) return eyeball::cmd_analyze(config, std::cerr);
  if (render->parsed()) return eyeball::cmd_render(config, std::cerr);
  return eyeball::cmd_fetch(config, std::cerr);
}
