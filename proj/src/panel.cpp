#include "panelfa/panel.hpp"

#include <unordered_set>

#include "panelfa/errors.hpp"

namespace panelfa {

void Panel::check_invariants() const {
  if (values.rows() != series.size() || values.cols() != dates.size())
    throw Error("panel shape mismatch: values " +
                std::to_string(values.rows()) + "x" +
                std::to_string(values.cols()) + " vs " +
                std::to_string(series.size()) + " series, " +
                std::to_string(dates.size()) + " periods");
  for (std::size_t t = 1; t < dates.size(); ++t)
    if (dates[t].index() != dates[t - 1].index() + 1)
      throw Error("panel dates not consecutive at position " +
                  std::to_string(t) + " (" + dates[t - 1].to_string() +
                  " -> " + dates[t].to_string() + ")");
  std::unordered_set<std::string> seen;
  for (const auto& s : series) {
    if (s.mnemonic.empty()) throw Error("panel contains an unnamed series");
    if (!seen.insert(s.mnemonic).second)
      throw Error("duplicate mnemonic '" + s.mnemonic + "'");
  }
}

}  // namespace panelfa
