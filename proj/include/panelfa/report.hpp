#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "panelfa/analysis.hpp"
#include "panelfa/ic.hpp"

namespace panelfa {

// All emitted numbers use 12 significant digits so reruns and golden files
// compare byte for byte. Infinities become "-inf"/"inf" in CSV and null in
// JSON; the writers below never emit NaN from well-formed inputs.
std::string format_number(double v);

// Minimal JSON emission helpers (strings escaped, numbers via
// format_number). Enough for flat reports; not a general serializer.
std::string json_escape(const std::string& s);
std::string json_number(double v);

struct TableReport {
  std::vector<std::string> columns;
  // Cells are preformatted strings; is_numeric marks columns whose cells
  // should be written unquoted in JSON.
  std::vector<std::vector<std::string>> rows;
  std::vector<bool> numeric_column;
};

void write_table_csv(const TableReport& t, std::ostream& out);
void write_table_json(const TableReport& t, std::ostream& out);

// Report builders for the analyze outputs.
TableReport factors_report(std::span<const Month> dates, const FactorModel& m);
TableReport loadings_report(std::span<const std::string> mnemonics,
                            const FactorModel& m);
TableReport scree_report(std::span<const ScreeRow> rows);
TableReport ic_report_table(const IcReport& ic);
TableReport mr2_report(const Mr2Table& t);
TableReport r2_ranking_report(const R2Ranking& r);
TableReport diffusion_report(std::span<const Month> dates,
                             const DiffusionIndexSet& d);

}  // namespace panelfa
