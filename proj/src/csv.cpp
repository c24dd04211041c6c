#include "panelfa/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "panelfa/errors.hpp"

namespace panelfa {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t pos = 0;
  while (true) {
    std::size_t comma = line.find(',', pos);
    if (comma == std::string::npos) {
      cells.push_back(trim(line.substr(pos)));
      break;
    }
    cells.push_back(trim(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return cells;
}

bool is_missing_cell(const std::string& cell) {
  return cell.empty() || cell == "NA";
}

double parse_value(const std::string& cell, int row, int col) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end != begin + cell.size() || cell.empty())
    throw ParseError("invalid numeric value '" + cell + "'", row, col);
  return v;
}

int parse_int_cell(const std::string& cell, int row, int col,
                   const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(cell, &used);
    if (used != cell.size()) throw std::invalid_argument(cell);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("invalid ") + what + " '" + cell + "'", row,
                     col);
  }
}

}  // namespace

Panel parse_panel_csv(std::istream& in) {
  std::string line;
  int row = 0;

  if (!std::getline(in, line)) throw ParseError("empty input", 1);
  ++row;
  auto header = split_csv(line);
  if (header.size() < 2)
    throw ParseError("header row needs a date column and at least one series",
                     row);

  Panel p;
  const std::size_t q = header.size() - 1;
  p.series.resize(q);
  for (std::size_t i = 0; i < q; ++i) {
    if (header[i + 1].empty())
      throw ParseError("empty mnemonic", row, static_cast<int>(i + 2));
    p.series[i].mnemonic = header[i + 1];
  }

  if (!std::getline(in, line))
    throw ParseError("missing transform row", row + 1);
  ++row;
  auto tr = split_csv(line);
  if (tr.empty() || tr[0].rfind("Transform", 0) != 0)
    throw ParseError("expected a 'Transform:' row", row, 1);
  if (tr.size() != header.size())
    throw ParseError("transform row has " + std::to_string(tr.size() - 1) +
                         " codes for " + std::to_string(q) + " series",
                     row);
  for (std::size_t i = 0; i < q; ++i) {
    int code = parse_int_cell(tr[i + 1], row, static_cast<int>(i + 2),
                              "transform code");
    try {
      p.series[i].tcode = transform_code_from_int(code);
    } catch (const Error& e) {
      throw ParseError(e.what(), row, static_cast<int>(i + 2));
    }
  }

  std::vector<std::vector<double>> cols;  // one vector per data row
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw ParseError("blank line inside data section", row);
    }
    auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw ParseError("row has " + std::to_string(cells.size()) +
                           " cells, expected " +
                           std::to_string(header.size()),
                       row);
    Month m;
    try {
      m = Month::parse_us(cells[0]);
    } catch (const Error& e) {
      throw ParseError(e.what(), row, 1);
    }
    if (!p.dates.empty() && m.index() != p.dates.back().index() + 1)
      throw ParseError("date " + m.to_string() + " does not follow " +
                           p.dates.back().to_string(),
                       row, 1);
    p.dates.push_back(m);
    std::vector<double> vals(q);
    for (std::size_t i = 0; i < q; ++i) {
      const auto& cell = cells[i + 1];
      vals[i] = is_missing_cell(cell)
                    ? missing_value()
                    : parse_value(cell, row, static_cast<int>(i + 2));
    }
    cols.push_back(std::move(vals));
  }
  if (cols.empty()) throw ParseError("no data rows", row + 1);

  p.values = Matrix(q, cols.size());
  for (std::size_t t = 0; t < cols.size(); ++t)
    for (std::size_t i = 0; i < q; ++i) p.values(i, t) = cols[t][i];

  try {
    p.check_invariants();
  } catch (const Error& e) {
    throw ParseError(e.what(), 1);
  }
  return p;
}

Panel load_panel_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open panel file " + path.string());
  try {
    return parse_panel_csv(in);
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void apply_metadata_csv(Panel& panel, std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty metadata file", 1);
  auto header = split_csv(line);
  const std::vector<std::string> expect = {"id", "mnemonic", "tcode", "group",
                                           "description"};
  if (header.size() != expect.size())
    throw ParseError("metadata header must be id,mnemonic,tcode,group,"
                     "description",
                     1);
  for (std::size_t i = 0; i < expect.size(); ++i)
    if (header[i] != expect[i])
      throw ParseError("unexpected metadata column '" + header[i] + "'", 1,
                       static_cast<int>(i + 1));

  int row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) continue;
    // description is the remainder of the line and may contain commas
    std::vector<std::string> f;
    std::size_t pos = 0;
    for (int k = 0; k < 4; ++k) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string::npos)
        throw ParseError("metadata row has fewer than 5 fields", row);
      f.push_back(trim(line.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    f.push_back(trim(line.substr(pos)));

    auto idx = panel.find(f[1]);
    if (!idx) continue;  // sidecar may describe series absent from this panel
    SeriesMeta& meta = panel.series[*idx];
    meta.id = parse_int_cell(f[0], row, 1, "id");
    int tcode = parse_int_cell(f[2], row, 3, "transform code");
    if (tcode != to_int(meta.tcode))
      throw ParseError("metadata tcode " + f[2] + " for '" + f[1] +
                           "' disagrees with the panel's transform row (" +
                           std::to_string(to_int(meta.tcode)) + ")",
                       row, 3);
    meta.group = parse_int_cell(f[3], row, 4, "group");
    meta.description = f[4];
  }
}

void load_metadata_csv(Panel& panel, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metadata file " + path.string());
  try {
    apply_metadata_csv(panel, in);
  } catch (const ParseError& e) {
    throw Error(path.string() + ": " + e.what());
  }
}

void write_panel_csv(const Panel& panel, std::ostream& out) {
  out << "sasdate";
  for (const auto& s : panel.series) out << ',' << s.mnemonic;
  out << '\n';
  out << "Transform:";
  for (const auto& s : panel.series) out << ',' << to_int(s.tcode);
  out << '\n';
  char buf[32];
  for (std::size_t t = 0; t < panel.n_periods(); ++t) {
    const Month& m = panel.dates[t];
    out << m.month << "/1/" << m.year;
    for (std::size_t i = 0; i < panel.n_series(); ++i) {
      double v = panel.values(i, t);
      if (is_missing(v)) {
        out << ",NA";
      } else {
        std::snprintf(buf, sizeof buf, "%.12g", v);
        out << ',' << buf;
      }
    }
    out << '\n';
  }
}

}  // namespace panelfa
