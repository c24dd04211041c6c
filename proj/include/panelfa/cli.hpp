#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "panelfa/ic.hpp"
#include "panelfa/month.hpp"

namespace panelfa {

enum class OutputFormat { csv, json };

// Effective configuration for one command run. Defaults reproduce the
// reference configuration: window 2009-09..2024-12, the eight incomplete
// series dropped, rmax 15, r chosen by the g1 penalty.
struct RunConfig {
  std::filesystem::path input;
  std::optional<std::filesystem::path> meta;
  std::filesystem::path out_dir = "out";
  Month start{2009, 9};
  Month end{2024, 12};
  std::vector<std::string> drop = {
      "HOUST", "HOUSTNE", "HOUSTMW", "HOUSTS",
      "HOUSTW", "RETAILx", "TOTRESNS", "EXCAUSx"};
  std::size_t rmax = 15;
  std::optional<std::size_t> r_override;  // --r skips IC selection
  Penalty penalty = Penalty::g1;          // which minimizer becomes r-hat
  OutputFormat format = OutputFormat::csv;
  bool unit_variance_factors = false;

  // simulate only
  std::uint64_t seed = 0;
  std::size_t sim_q = 80;
  std::size_t sim_T = 184;
  std::size_t sim_r = 4;
  double sim_noise = 1.0;
  std::size_t sim_reps = 100;
};

// Exit codes: 0 success, 2 any parse/config/numeric failure. Each command
// writes a one-line-per-fact summary to `out` and, on failure, a single
// consolidated message to `err`.
int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace panelfa
