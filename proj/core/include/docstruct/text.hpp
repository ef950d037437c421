#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

// Small ASCII-oriented text helpers shared by every module.
namespace docstruct::text {

std::string to_lower(std::string_view s);
std::string_view trim(std::string_view s);
std::string collapse_whitespace(std::string_view s);

// Whitespace-separated tokens, punctuation kept.
std::vector<std::string> split_whitespace(std::string_view s);

// Lowercased alphanumeric runs; everything else separates tokens.
std::vector<std::string> word_tokens(std::string_view s);

// Alphabetic words with their original case (punctuation and digits dropped).
std::vector<std::string> alpha_tokens(std::string_view s);

// Removes a leading section-numbering prefix such as "1.", "2.3.1", "IV.",
// "A.2" or "(b)" together with the whitespace that follows it.
std::string_view strip_leading_numbering(std::string_view s);

// Numbering-stripped, lowercased, punctuation removed, whitespace collapsed.
// Idempotent.
std::string normalize_header(std::string_view s);

std::size_t levenshtein(std::string_view a, std::string_view b);

// 1 - levenshtein / max(len); two empty strings have similarity 1.
double string_similarity(std::string_view a, std::string_view b);

bool is_roman_numeral(std::string_view s);

const std::set<std::string>& default_stoplist();
std::set<std::string> load_stoplist(const std::string& path);

// Fixed-point rendering used by every report ("%.4f" by default).
std::string fixed(double value, int decimals = 4);

// Shortest representation that parses back to the identical double.
std::string shortest(double value);

// Strict full-string parse; nullopt on any trailing garbage.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace docstruct::text
