#include "panelfa/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "panelfa/errors.hpp"

namespace panelfa {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v < 0 ? "-inf" : "inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";  // JSON has no infinities
  return format_number(v);
}

void write_table_csv(const TableReport& t, std::ostream& out) {
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? "," : "") << t.columns[c];
  out << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c)
      out << (c ? "," : "") << row[c];
    out << '\n';
  }
}

void write_table_json(const TableReport& t, std::ostream& out) {
  out << "{\n  \"columns\": [";
  for (std::size_t c = 0; c < t.columns.size(); ++c)
    out << (c ? ", " : "") << '"' << json_escape(t.columns[c]) << '"';
  out << "],\n  \"data\": [\n";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out << "    [";
    for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
      if (c) out << ", ";
      const std::string& cell = t.rows[r][c];
      const bool numeric = c < t.numeric_column.size() && t.numeric_column[c];
      if (!numeric) {
        out << '"' << json_escape(cell) << '"';
      } else if (cell == "inf" || cell == "-inf" || cell == "nan") {
        out << "null";
      } else {
        out << cell;
      }
    }
    out << (r + 1 < t.rows.size() ? "],\n" : "]\n");
  }
  out << "  ]\n}\n";
}

namespace {

std::vector<std::string> numbered(const char* prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t j = 1; j <= n; ++j)
    out.push_back(prefix + std::to_string(j));
  return out;
}

}  // namespace

TableReport factors_report(std::span<const Month> dates,
                           const FactorModel& m) {
  if (dates.size() != m.factors.cols())
    throw Error("factors_report: date axis mismatch");
  TableReport t;
  t.columns = {"date"};
  for (auto& c : numbered("F", m.num_factors)) t.columns.push_back(c);
  t.numeric_column.assign(t.columns.size(), true);
  t.numeric_column[0] = false;
  for (std::size_t ti = 0; ti < dates.size(); ++ti) {
    std::vector<std::string> row = {dates[ti].to_string()};
    for (std::size_t j = 0; j < m.num_factors; ++j)
      row.push_back(format_number(m.factors(j, ti)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableReport loadings_report(std::span<const std::string> mnemonics,
                            const FactorModel& m) {
  if (mnemonics.size() != m.loadings.rows())
    throw Error("loadings_report: series axis mismatch");
  TableReport t;
  t.columns = {"mnemonic"};
  for (auto& c : numbered("L", m.num_factors)) t.columns.push_back(c);
  t.numeric_column.assign(t.columns.size(), true);
  t.numeric_column[0] = false;
  for (std::size_t i = 0; i < mnemonics.size(); ++i) {
    std::vector<std::string> row = {mnemonics[i]};
    for (std::size_t j = 0; j < m.num_factors; ++j)
      row.push_back(format_number(m.loadings(i, j)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableReport scree_report(std::span<const ScreeRow> rows) {
  TableReport t;
  t.columns = {"component", "eigenvalue", "share", "cumulative"};
  t.numeric_column = {true, true, true, true};
  for (const auto& r : rows)
    t.rows.push_back({std::to_string(r.component),
                      format_number(r.eigenvalue), format_number(r.share),
                      format_number(r.cumulative)});
  return t;
}

TableReport ic_report_table(const IcReport& ic) {
  TableReport t;
  t.columns = {"r", "ic_g1", "ic_g2", "ic_g3"};
  t.numeric_column = {true, true, true, true};
  for (std::size_t r = 1; r <= ic.rmax; ++r)
    t.rows.push_back({std::to_string(r), format_number(ic.ic_g1[r - 1]),
                      format_number(ic.ic_g2[r - 1]),
                      format_number(ic.ic_g3[r - 1])});
  return t;
}

TableReport mr2_report(const Mr2Table& table) {
  TableReport t;
  const std::size_t r = table.mr2.cols();
  t.columns = {"mnemonic", "group"};
  for (auto& c : numbered("mr2_", r)) t.columns.push_back(c);
  for (auto& c : numbered("r2_", r)) t.columns.push_back(c);
  t.numeric_column.assign(t.columns.size(), true);
  t.numeric_column[0] = false;
  for (std::size_t i = 0; i < table.mnemonic.size(); ++i) {
    std::vector<std::string> row = {table.mnemonic[i],
                                    std::to_string(table.group[i])};
    for (std::size_t k = 0; k < r; ++k)
      row.push_back(format_number(table.mr2(i, k)));
    for (std::size_t k = 0; k < r; ++k)
      row.push_back(format_number(table.r2(i, k)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableReport r2_ranking_report(const R2Ranking& ranking) {
  TableReport t;
  t.columns = {"rank", "mnemonic", "r2"};
  t.numeric_column = {true, false, true};
  for (std::size_t i = 0; i < ranking.ranked.size(); ++i)
    t.rows.push_back({std::to_string(i + 1), ranking.ranked[i].mnemonic,
                      format_number(ranking.ranked[i].value)});
  return t;
}

TableReport diffusion_report(std::span<const Month> dates,
                             const DiffusionIndexSet& d) {
  if (dates.size() != d.n_periods())
    throw Error("diffusion_report: date axis mismatch");
  TableReport t;
  t.columns = {"date"};
  for (auto& c : numbered("D", d.num_factors())) t.columns.push_back(c);
  t.numeric_column.assign(t.columns.size(), true);
  t.numeric_column[0] = false;
  for (std::size_t ti = 0; ti < dates.size(); ++ti) {
    std::vector<std::string> row = {dates[ti].to_string()};
    for (std::size_t j = 0; j < d.num_factors(); ++j)
      row.push_back(format_number(d.levels()(j, ti)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

}  // namespace panelfa
