#include <array>
#include <cctype>

#include "docstruct/summarize.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

namespace {

constexpr std::array<std::string_view, 24> kAbbreviations = {
    "e.g.", "i.e.", "al.", "fig.", "figs.", "eq.", "eqs.", "sec.", "ref.", "refs.", "dr.", "mr.",
    "mrs.", "ms.", "prof.", "vs.", "cf.", "no.", "vol.", "pp.", "approx.", "resp.", "tab.", "st."};

bool is_abbreviation(std::string_view word) {
  // Trim leading brackets or quotes so "(e.g." is recognized.
  while (!word.empty() && (word.front() == '(' || word.front() == '"' || word.front() == '[')) word.remove_prefix(1);
  const std::string lower = text::to_lower(word);
  for (auto a : kAbbreviations)
    if (lower == a) return true;
  return word.size() == 2 && std::isupper(static_cast<unsigned char>(word[0])) && word[1] == '.';
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view raw) {
  const std::string s = text::collapse_whitespace(raw);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c != '.' && c != '?' && c != '!') continue;
    std::size_t end = i + 1;
    while (end < s.size() && (s[end] == ')' || s[end] == '"' || s[end] == '\'')) ++end;
    if (end + 1 >= s.size() || s[end] != ' ' || !std::isupper(static_cast<unsigned char>(s[end + 1]))) continue;
    if (c == '.') {
      const std::size_t word_start = s.rfind(' ', i) == std::string::npos ? 0 : s.rfind(' ', i) + 1;
      if (is_abbreviation(std::string_view(s).substr(word_start, i + 1 - word_start))) continue;
    }
    auto piece = text::trim(std::string_view(s).substr(start, end - start));
    if (!piece.empty()) out.emplace_back(piece);
    start = end + 1;
    i = end;
  }
  auto tail = text::trim(std::string_view(s).substr(std::min(start, s.size())));
  if (!tail.empty()) out.emplace_back(tail);
  return out;
}

}  // namespace docstruct
