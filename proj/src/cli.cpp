#include "panelfa/cli.hpp"

#include <array>
#include <fstream>
#include <ostream>

#include "panelfa/analysis.hpp"
#include "panelfa/csv.hpp"
#include "panelfa/errors.hpp"
#include "panelfa/report.hpp"
#include "panelfa/synth.hpp"
#include "panelfa/transform.hpp"

namespace panelfa {
namespace {

constexpr int kExitFailure = 2;

const char* format_name(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

void write_report_file(const TableReport& t, const std::filesystem::path& dir,
                       const std::string& stem, OutputFormat format,
                       std::vector<std::string>& written) {
  const std::filesystem::path path =
      dir / (stem + "." + format_name(format));
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  if (format == OutputFormat::csv)
    write_table_csv(t, out);
  else
    write_table_json(t, out);
  written.push_back(path.string());
}

// Manifest values are emitted in insertion order; raw entries are already
// valid JSON (numbers, arrays, null), others are quoted strings.
class Manifest {
 public:
  void add_string(const std::string& k, const std::string& v) {
    items_.emplace_back(k, '"' + json_escape(v) + '"');
  }
  void add_raw(const std::string& k, const std::string& v) {
    items_.emplace_back(k, v);
  }
  void add_number(const std::string& k, double v) {
    items_.emplace_back(k, json_number(v));
  }
  void add_count(const std::string& k, std::size_t v) {
    items_.emplace_back(k, std::to_string(v));
  }

  void write(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << "{\n";
    for (std::size_t i = 0; i < items_.size(); ++i)
      out << "  \"" << json_escape(items_[i].first)
          << "\": " << items_[i].second
          << (i + 1 < items_.size() ? ",\n" : "\n");
    out << "}\n";
  }

 private:
  std::vector<std::pair<std::string, std::string>> items_;
};

std::string json_string_array(std::span<const std::string> v) {
  std::string out = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += '"' + json_escape(v[i]) + '"';
  }
  return out + "]";
}

void add_common_config(Manifest& m, const RunConfig& cfg) {
  m.add_string("input", cfg.input.string());
  if (cfg.meta)
    m.add_string("meta", cfg.meta->string());
  else
    m.add_raw("meta", "null");
  m.add_string("out_dir", cfg.out_dir.string());
  m.add_string("start", cfg.start.to_string());
  m.add_string("end", cfg.end.to_string());
  m.add_raw("drop", json_string_array(cfg.drop));
  m.add_count("rmax", cfg.rmax);
  m.add_string("penalty", penalty_name(cfg.penalty));
  if (cfg.r_override)
    m.add_count("r_override", *cfg.r_override);
  else
    m.add_raw("r_override", "null");
  m.add_string("format", format_name(cfg.format));
  m.add_raw("unit_variance_factors",
            cfg.unit_variance_factors ? "true" : "false");
}

Panel load_input(const RunConfig& cfg) {
  Panel p = load_panel_csv(cfg.input);
  if (cfg.meta) load_metadata_csv(p, *cfg.meta);
  return p;
}

}  // namespace

int run_validate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Panel p = load_input(cfg);
    out << "panel: " << p.n_series() << " series, " << p.n_periods()
        << " periods (" << p.dates.front().to_string() << ".."
        << p.dates.back().to_string() << ")\n";

    std::array<std::size_t, 8> hist{};
    for (const auto& s : p.series)
      ++hist[static_cast<std::size_t>(to_int(s.tcode))];
    out << "tcodes:";
    for (int c = 1; c <= 7; ++c)
      out << ' ' << c << ':' << hist[static_cast<std::size_t>(c)];
    out << '\n';

    std::size_t n_incomplete = 0;
    for (std::size_t i = 0; i < p.n_series(); ++i)
      if (p.missing_count(i) > 0) ++n_incomplete;
    out << "series with missing values: " << n_incomplete << '\n';
    for (std::size_t i = 0; i < p.n_series(); ++i) {
      const std::size_t miss = p.missing_count(i);
      if (miss > 0)
        out << "  " << p.series[i].mnemonic << " tcode "
            << to_int(p.series[i].tcode) << " missing " << miss << '\n';
    }
    out << "ok\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Panel raw = load_input(cfg);
    const Panel transformed = transform_panel(raw);
    const Panel balanced =
        extract_balanced(transformed, cfg.start, cfg.end, cfg.drop);
    const StandardizedPanel z = standardize(balanced);
    const std::size_t q = z.panel.n_series();
    const std::size_t T = z.panel.n_periods();

    const EigenDecomposition eig = sym_eigen(covariance(z));
    const IcReport ic = select_num_factors(z, cfg.rmax, eig);

    std::size_t r = cfg.r_override ? *cfg.r_override : ic.rhat(cfg.penalty);
    if (r < 1 || r > std::min(q, T))
      throw ConfigError("requested r = " + std::to_string(r) +
                        " is outside 1..min(q, T)");

    FactorModel model = estimate_factors(z, r, eig);
    if (cfg.unit_variance_factors)
      model = with_unit_variance_factors(std::move(model));

    const Mr2Table table = mr2_table(z, model);
    const R2Ranking ranking = r2_ranking(table);
    const auto scree = scree_data(model.eigenvalues);
    const DiffusionIndexSet diffusion = diffusion_indexes(model);
    const VarianceExplained ve = variance_explained(model.eigenvalues);

    std::filesystem::create_directories(cfg.out_dir);
    std::vector<std::string> written;
    std::vector<std::string> mnemonics;
    for (const auto& s : z.panel.series) mnemonics.push_back(s.mnemonic);

    write_report_file(factors_report(z.panel.dates, model), cfg.out_dir,
                      "factors", cfg.format, written);
    write_report_file(loadings_report(mnemonics, model), cfg.out_dir,
                      "loadings", cfg.format, written);
    write_report_file(scree_report(scree), cfg.out_dir, "scree", cfg.format,
                      written);
    write_report_file(ic_report_table(ic), cfg.out_dir, "ic_report",
                      cfg.format, written);
    write_report_file(mr2_report(table), cfg.out_dir, "mr2_table", cfg.format,
                      written);
    write_report_file(r2_ranking_report(ranking), cfg.out_dir, "r2_ranking",
                      cfg.format, written);
    write_report_file(diffusion_report(z.panel.dates, diffusion), cfg.out_dir,
                      "diffusion", cfg.format, written);

    Manifest manifest;
    manifest.add_string("command", "analyze");
    add_common_config(manifest, cfg);
    manifest.add_count("q", q);
    manifest.add_count("T", T);
    manifest.add_count("rhat_g1", ic.rhat_g1);
    manifest.add_count("rhat_g2", ic.rhat_g2);
    manifest.add_count("rhat_g3", ic.rhat_g3);
    manifest.add_count("selected_r", r);
    manifest.add_number("cumulative_variance_selected",
                        ve.cumulative[r - 1]);
    manifest.add_count("count_r2_above_half", ranking.count_above_half);
    const std::filesystem::path manifest_path = cfg.out_dir / "manifest.json";
    manifest.write(manifest_path);
    written.push_back(manifest_path.string());

    out << "q: " << q << "\nT: " << T << '\n';
    out << "rhat_g1: " << ic.rhat_g1 << "\nrhat_g2: " << ic.rhat_g2
        << "\nrhat_g3: " << ic.rhat_g3 << '\n';
    out << "selected_r: " << r << '\n';
    out << "cumulative_variance: " << format_number(ve.cumulative[r - 1])
        << '\n';
    out << "count_r2_above_half: " << ranking.count_above_half << '\n';
    for (const auto& w : written) out << "wrote: " << w << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

int run_simulate(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.sim_reps == 0) throw ConfigError("simulate needs at least 1 rep");
    const std::size_t rmax =
        std::min(cfg.rmax, std::min(cfg.sim_q, cfg.sim_T) - 1);

    TableReport rep;
    rep.columns = {"seed", "rhat_g1", "rhat_g2", "rhat_g3", "fit"};
    rep.numeric_column = {true, true, true, true, true};

    std::size_t hits_g1 = 0, hits_g2 = 0, hits_g3 = 0;
    double fit_sum = 0.0;
    for (std::size_t k = 0; k < cfg.sim_reps; ++k) {
      SynthSpec spec;
      spec.q = cfg.sim_q;
      spec.T = cfg.sim_T;
      spec.r = cfg.sim_r;
      spec.noise_sd = cfg.sim_noise;
      spec.seed = cfg.seed + k;
      const SynthPanel truth = generate(spec);
      const StandardizedPanel z = standardize(truth.panel);
      const EigenDecomposition eig = sym_eigen(covariance(z));
      const IcReport ic = select_num_factors(z, rmax, eig);
      const FactorModel model = estimate_factors(z, spec.r, eig);
      const double fit =
          subspace_fit(model.factors, center_rows(truth.factors));

      hits_g1 += ic.rhat_g1 == spec.r;
      hits_g2 += ic.rhat_g2 == spec.r;
      hits_g3 += ic.rhat_g3 == spec.r;
      fit_sum += fit;
      rep.rows.push_back({std::to_string(spec.seed),
                          std::to_string(ic.rhat_g1),
                          std::to_string(ic.rhat_g2),
                          std::to_string(ic.rhat_g3), format_number(fit)});
    }
    const double mean_fit = fit_sum / static_cast<double>(cfg.sim_reps);

    std::filesystem::create_directories(cfg.out_dir);
    std::vector<std::string> written;
    write_report_file(rep, cfg.out_dir, "recovery_report", cfg.format,
                      written);

    Manifest manifest;
    manifest.add_string("command", "simulate");
    add_common_config(manifest, cfg);
    manifest.add_count("seed", cfg.seed);
    manifest.add_count("reps", cfg.sim_reps);
    manifest.add_count("sim_q", cfg.sim_q);
    manifest.add_count("sim_T", cfg.sim_T);
    manifest.add_count("sim_r", cfg.sim_r);
    manifest.add_number("sim_noise", cfg.sim_noise);
    manifest.add_count("recovered_g1", hits_g1);
    manifest.add_count("recovered_g2", hits_g2);
    manifest.add_count("recovered_g3", hits_g3);
    manifest.add_number("mean_fit", mean_fit);
    const std::filesystem::path manifest_path = cfg.out_dir / "manifest.json";
    manifest.write(manifest_path);
    written.push_back(manifest_path.string());

    out << "reps: " << cfg.sim_reps << '\n';
    out << "recovered_g1: " << hits_g1 << '/' << cfg.sim_reps << '\n';
    out << "recovered_g2: " << hits_g2 << '/' << cfg.sim_reps << '\n';
    out << "recovered_g3: " << hits_g3 << '/' << cfg.sim_reps << '\n';
    out << "mean_fit: " << format_number(mean_fit) << '\n';
    for (const auto& w : written) out << "wrote: " << w << '\n';
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace panelfa
