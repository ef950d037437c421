#include <algorithm>
#include <map>

#include "docstruct/semantics.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

std::vector<std::pair<std::string, int>> discover_classes_count_based(const std::vector<std::string>& headers) {
  std::map<std::string, int> counts;
  for (const auto& h : headers) {
    auto key = text::normalize_header(h);
    if (!key.empty()) ++counts[key];
  }
  std::vector<std::pair<std::string, int>> ranked(counts.begin(), counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

}  // namespace docstruct
