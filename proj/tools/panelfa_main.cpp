#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "panelfa/cli.hpp"
#include "panelfa/errors.hpp"

namespace {

struct RawOptions {
  std::string start, end, penalty = "g1", format = "csv";
  long long r = -1;
};

void add_panel_options(CLI::App* cmd, panelfa::RunConfig& cfg,
                       RawOptions& raw) {
  cmd->add_option("--input", cfg.input, "panel CSV file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--meta", cfg.meta, "sidecar metadata CSV")
      ->check(CLI::ExistingFile);
  cmd->add_option("--start", raw.start, "window start (YYYY-MM)");
  cmd->add_option("--end", raw.end, "window end (YYYY-MM)");
  cmd->add_option("--drop", cfg.drop,
                  "comma-separated mnemonics to exclude")
      ->delimiter(',');
}

void add_output_options(CLI::App* cmd, panelfa::RunConfig& cfg,
                        RawOptions& raw) {
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--format", raw.format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

void finalize(panelfa::RunConfig& cfg, const RawOptions& raw) {
  if (!raw.start.empty()) cfg.start = panelfa::Month::parse_iso(raw.start);
  if (!raw.end.empty()) cfg.end = panelfa::Month::parse_iso(raw.end);
  cfg.penalty = panelfa::penalty_from_name(raw.penalty);
  cfg.format = raw.format == "json" ? panelfa::OutputFormat::json
                                    : panelfa::OutputFormat::csv;
  if (raw.r >= 0) cfg.r_override = static_cast<std::size_t>(raw.r);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "panelfa: approximate-factor analysis of monthly macro panels"};
  app.require_subcommand(1);

  panelfa::RunConfig cfg;
  RawOptions raw;

  CLI::App* validate =
      app.add_subcommand("validate", "parse a panel and report its shape");
  add_panel_options(validate, cfg, raw);

  CLI::App* analyze = app.add_subcommand(
      "analyze", "run the transform/PCA/IC pipeline and write reports");
  add_panel_options(analyze, cfg, raw);
  add_output_options(analyze, cfg, raw);
  analyze->add_option("--rmax", cfg.rmax, "largest factor count scanned");
  analyze->add_option("--penalty", raw.penalty,
                      "penalty choosing r-hat: g1, g2 or g3")
      ->check(CLI::IsMember({"g1", "g2", "g3"}));
  analyze->add_option("--r", raw.r, "fix the factor count, skipping IC");
  analyze->add_flag("--unit-variance-factors", cfg.unit_variance_factors,
                    "rescale factors to unit variance post hoc");

  CLI::App* simulate = app.add_subcommand(
      "simulate", "recovery study on synthetic factor panels");
  add_output_options(simulate, cfg, raw);
  simulate->add_option("--seed", cfg.seed, "base seed for the sweep");
  simulate->add_option("--reps", cfg.sim_reps, "number of seeds");
  simulate->add_option("--q", cfg.sim_q, "series count");
  simulate->add_option("--t", cfg.sim_T, "period count");
  simulate->add_option("--r-true", cfg.sim_r, "planted factor count");
  simulate->add_option("--noise", cfg.sim_noise,
                       "idiosyncratic noise standard deviation");
  simulate->add_option("--rmax", cfg.rmax, "largest factor count scanned");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help exits clean, bad usage exits 2
  }

  try {
    finalize(cfg, raw);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (validate->parsed())
    return panelfa::run_validate(cfg, std::cout, std::cerr);
  if (analyze->parsed())
    return panelfa::run_analyze(cfg, std::cout, std::cerr);
  return panelfa::run_simulate(cfg, std::cout, std::cerr);
}
