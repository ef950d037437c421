#include <algorithm>
#include <cctype>
#include <set>

#include "docstruct/errors.hpp"
#include "docstruct/text.hpp"
#include "docstruct/topics.hpp"

namespace docstruct {

TokenMode parse_token_mode(std::string_view name) {
  if (name == "word") return TokenMode::word;
  if (name == "bigram") return TokenMode::bigram;
  if (name == "phrase") return TokenMode::phrase;
  throw ContractError("unknown token mode '" + std::string(name) + "' (expected word, bigram or phrase)");
}

namespace {

bool is_number(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

std::vector<std::string> topic_tokens(std::string_view text, TokenMode mode) {
  const auto& stop = text::default_stoplist();
  std::vector<std::string> words;
  for (auto& w : text::word_tokens(text)) {
    if (w.size() < 2 || is_number(w) || stop.count(w)) continue;
    words.push_back(std::move(w));
  }
  if (mode == TokenMode::word) return words;

  std::vector<std::string> out;
  auto add_ngrams = [&](std::size_t n) {
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::string g = words[i];
      for (std::size_t j = 1; j < n; ++j) g += "_" + words[i + j];
      out.push_back(std::move(g));
    }
  };
  if (mode == TokenMode::bigram) {
    add_ngrams(2);
  } else {
    for (std::size_t n = 1; n <= 3; ++n) add_ngrams(n);
  }
  return out;
}

std::optional<std::uint32_t> TopicDictionary::find(std::string_view term) const {
  auto it = ids.find(std::string(term));
  if (it == ids.end()) return std::nullopt;
  return it->second;
}

std::vector<std::uint32_t> TopicDictionary::encode(const std::vector<std::string>& tokens) const {
  std::vector<std::uint32_t> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens)
    if (auto id = find(t)) out.push_back(*id);
  return out;
}

TopicDictionary build_dictionary(const std::vector<std::vector<std::string>>& sections,
                                 const DictionaryOptions& options) {
  if (!(options.max_fraction > 0 && options.max_fraction <= 1))
    throw ContractError("max_fraction must lie in (0, 1]");
  std::map<std::string, int> df;
  for (const auto& s : sections) {
    std::set<std::string_view> seen(s.begin(), s.end());
    for (auto t : seen) ++df[std::string(t)];
  }
  const double upper = options.max_fraction * static_cast<double>(sections.size());
  std::vector<std::pair<std::string, int>> kept;
  for (auto& [term, n] : df)
    if (n >= options.min_sections && static_cast<double>(n) <= upper + 1e-9) kept.emplace_back(term, n);
  if (kept.size() > options.cap) {
    std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    kept.resize(options.cap);
    std::sort(kept.begin(), kept.end());
  }

  TopicDictionary d;
  d.section_count = static_cast<int>(sections.size());
  for (auto& [term, n] : kept) {
    d.ids.emplace(term, static_cast<std::uint32_t>(d.terms.size()));
    d.terms.push_back(term);
    d.section_frequency.push_back(n);
  }
  return d;
}

}  // namespace docstruct
