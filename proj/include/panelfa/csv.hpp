#pragma once

#include <filesystem>
#include <iosfwd>

#include "panelfa/panel.hpp"

namespace panelfa {

// Reads a FRED-MD-format panel:
//   row 1: sasdate,<mnemonic>,...
//   row 2: Transform:,<tcode>,...
//   rows 3+: M/D/YYYY,<value>,...   (empty cell or NA = missing)
// Throws ParseError with 1-based row/column coordinates on malformed input.
Panel parse_panel_csv(std::istream& in);
Panel load_panel_csv(const std::filesystem::path& path);

// Attaches sidecar metadata (id,mnemonic,tcode,group,description) to a
// parsed panel, matching rows by mnemonic. Rows naming series absent from
// the panel are ignored; a tcode disagreeing with the panel's transform row
// is an error. The description column is the rest of the line, so it may
// contain commas.
void apply_metadata_csv(Panel& panel, std::istream& in);
void load_metadata_csv(Panel& panel, const std::filesystem::path& path);

// Writes the same layout parse_panel_csv reads (missing cells as NA).
// Values are formatted with enough digits to round-trip within 1e-10.
void write_panel_csv(const Panel& panel, std::ostream& out);

}  // namespace panelfa
