#include <algorithm>
#include <tuple>

#include "docstruct/corpus.hpp"
#include "docstruct/errors.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct {

BookmarkMapping map_bookmarks_to_labels(const Document& doc, double similarity_threshold) {
  if (!(similarity_threshold > 0.0 && similarity_threshold <= 1.0))
    throw ContractError("similarity threshold must lie in (0, 1]");

  BookmarkMapping result;
  result.document = doc;
  for (auto& line : result.document.lines) line.label = 0;
  const std::vector<BookmarkEntry> toc = doc.toc.value_or(std::vector<BookmarkEntry>{});
  if (toc.empty()) return result;

  std::vector<std::string> line_keys;
  line_keys.reserve(doc.lines.size());
  for (const auto& line : doc.lines) line_keys.push_back(text::normalize_header(line.text));

  struct Candidate {
    double score;
    std::size_t entry;
    std::size_t line;
  };
  std::vector<Candidate> candidates;
  for (std::size_t e = 0; e < toc.size(); ++e) {
    const std::string key = text::normalize_header(toc[e].title);
    if (key.empty()) continue;
    for (std::size_t l = 0; l < line_keys.size(); ++l) {
      const auto& other = line_keys[l];
      if (other.empty()) continue;
      // similarity can never exceed the length ratio
      const double bound = static_cast<double>(std::min(key.size(), other.size())) /
                           static_cast<double>(std::max(key.size(), other.size()));
      if (bound < similarity_threshold) continue;
      const double score = text::string_similarity(key, other);
      if (score >= similarity_threshold) candidates.push_back({score, e, l});
    }
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.entry, a.line) < std::tie(b.entry, b.line);
  });

  std::vector<bool> entry_used(toc.size(), false), line_used(doc.lines.size(), false);
  for (const auto& c : candidates) {
    if (entry_used[c.entry] || line_used[c.line]) continue;
    entry_used[c.entry] = true;
    line_used[c.line] = true;
    result.document.lines[c.line].label = toc[c.entry].depth;
    ++result.matched;
  }
  for (std::size_t e = 0; e < toc.size(); ++e) {
    if (!entry_used[e]) result.unmatched.push_back(toc[e]);
  }
  return result;
}

std::string bookmark_diagnostics_json(const BookmarkMapping& mapping) {
  nlohmann::json unmatched = nlohmann::json::array();
  for (const auto& e : mapping.unmatched)
    unmatched.push_back({{"depth", e.depth}, {"order", e.order}, {"title", e.title}});
  nlohmann::json j = {{"doc_id", mapping.document.doc_id},
                      {"matched", mapping.matched},
                      {"unmatched", unmatched}};
  return j.dump(2) + "\n";
}

}  // namespace docstruct
