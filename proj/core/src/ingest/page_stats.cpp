#include <algorithm>
#include <map>

#include "docstruct/ingest.hpp"

namespace docstruct {

void compute_page_statistics(Document& doc) {
  std::map<int, std::vector<const LineRecord*>> by_page;
  for (const auto& line : doc.lines) by_page[line.page_number].push_back(&line);

  doc.pages.clear();
  for (const auto& [number, lines] : by_page) {
    PageStats stats;
    stats.page_number = number;
    std::vector<double> baselines;
    for (const LineRecord* line : lines) {
      stats.avg_font_size += line->font_size;
      stats.avg_font_weight += line->font_weight;
      stats.avg_indentation += line->x_left;
      baselines.push_back(line->baseline());
    }
    const double n = static_cast<double>(lines.size());
    stats.avg_font_size /= n;
    stats.avg_font_weight /= n;
    stats.avg_indentation /= n;
    if (baselines.size() > 1) {
      std::sort(baselines.begin(), baselines.end());
      // mean of consecutive gaps telescopes to (last - first) / (n - 1)
      stats.avg_line_spacing = (baselines.back() - baselines.front()) / (n - 1.0);
    }
    doc.pages.push_back(stats);
  }
}

}  // namespace docstruct
