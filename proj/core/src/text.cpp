#include "docstruct/text.hpp"

#include <algorithm>
#include <regex>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "docstruct/errors.hpp"

namespace docstruct::text {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

constexpr const char* kStopwords[] = {
    "a", "about", "above", "after", "again", "against", "all", "am", "an", "and", "any", "are",
    "as", "at", "be", "because", "been", "before", "being", "below", "between", "both", "but",
    "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few", "for",
    "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers", "herself",
    "him", "himself", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just",
    "me", "more", "most", "my", "myself", "no", "nor", "not", "now", "of", "off", "on", "once",
    "only", "or", "other", "our", "ours", "ourselves", "out", "over", "own", "same", "she",
    "should", "so", "some", "such", "than", "that", "the", "their", "theirs", "them",
    "themselves", "then", "there", "these", "they", "this", "those", "through", "to", "too",
    "under", "until", "up", "very", "was", "we", "were", "what", "when", "where", "which",
    "while", "who", "whom", "why", "will", "with", "would", "you", "your", "yours", "yourself",
    "yourselves", "also", "may", "might", "must", "shall", "us", "via", "using", "use", "used",
    "one", "two", "new", "its", "per", "et", "al"};

}  // namespace

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::string collapse_whitespace(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  bool pending = false;
  for (char c : trim(s)) {
    if (is_space(c)) {
      pending = true;
      continue;
    }
    if (pending) out.push_back(' ');
    pending = false;
    out.push_back(c);
  }
  return out;
}

std::vector<std::string> split_whitespace(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && is_space(s[i])) ++i;
    std::size_t j = i;
    while (j < s.size() && !is_space(s[j])) ++j;
    if (j > i) out.emplace_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

std::vector<std::string> word_tokens(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (is_alnum(c)) {
      cur.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::vector<std::string> alpha_tokens(std::string_view s) {
  std::vector<std::string> out;
  for (const auto& raw : split_whitespace(s)) {
    std::string word;
    for (char c : raw) {
      if (is_alpha(c)) word.push_back(c);
    }
    // Tokens mixing letters and digits ("2D", "x1") are not words.
    bool has_digit = std::any_of(raw.begin(), raw.end(), is_digit);
    if (!word.empty() && !has_digit) out.push_back(std::move(word));
  }
  return out;
}

bool is_roman_numeral(std::string_view s) {
  if (s.empty() || s.size() > 9) return false;
  const bool upper = std::isupper(static_cast<unsigned char>(s.front())) != 0;
  for (char c : s)
    if ((std::isupper(static_cast<unsigned char>(c)) != 0) != upper) return false;
  // Canonical numerals 1..399.
  static const std::regex canonical("C{0,3}(XC|XL|L?X{0,3})(IX|IV|V?I{0,3})", std::regex::icase);
  return std::regex_match(s.begin(), s.end(), canonical);
}

std::string_view strip_leading_numbering(std::string_view s) {
  s = trim(s);
  std::string_view rest = s;
  bool paren = false;
  if (!rest.empty() && rest.front() == '(') {
    paren = true;
    rest.remove_prefix(1);
  }
  // first component: digits, roman numeral or a single letter
  std::size_t i = 0;
  bool numeric = false;
  while (i < rest.size() && is_digit(rest[i])) ++i;
  if (i > 0) {
    numeric = true;
  } else {
    while (i < rest.size() && is_alpha(rest[i])) ++i;
    std::string_view word = rest.substr(0, i);
    if (word.empty() || !(word.size() == 1 || is_roman_numeral(word))) return s;
  }
  // further ".digits" components
  bool dotted = false;
  while (i + 1 < rest.size() && rest[i] == '.' && is_digit(rest[i + 1])) {
    ++i;
    while (i < rest.size() && is_digit(rest[i])) ++i;
    dotted = true;
  }
  bool terminated = false;
  if (i < rest.size() && (rest[i] == '.' || rest[i] == ')' || rest[i] == ':')) {
    ++i;
    terminated = true;
  }
  if (paren && !terminated) return s;
  // Letters and roman numerals need explicit punctuation to count as numbering.
  if (!numeric && !dotted && !terminated) return s;
  if (i < rest.size() && !is_space(rest[i])) return s;
  return trim(rest.substr(i));
}

std::string normalize_header(std::string_view s) {
  // Numbering is stripped again after punctuation removal would be wrong,
  // so strip first and then clean.
  std::string_view stripped = strip_leading_numbering(s);
  std::string cleaned;
  cleaned.reserve(stripped.size());
  for (char c : stripped) {
    if (is_alnum(c)) {
      cleaned.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    } else {
      cleaned.push_back(' ');
    }
  }
  std::string out = collapse_whitespace(cleaned);
  // A purely numeric residue ("1 2") carries no header text.
  while (true) {
    std::string_view again = strip_leading_numbering(out);
    if (again.size() == out.size()) break;
    out = std::string(again);
  }
  return out;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
  if (a.size() < b.size()) std::swap(a, b);
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

double string_similarity(std::string_view a, std::string_view b) {
  std::size_t longest = std::max(a.size(), b.size());
  if (longest == 0) return 1.0;
  return 1.0 - static_cast<double>(levenshtein(a, b)) / static_cast<double>(longest);
}

const std::set<std::string>& default_stoplist() {
  static const std::set<std::string> words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

std::set<std::string> load_stoplist(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open stoplist: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = trim(line);
    if (!word.empty() && word.front() != '#') words.insert(to_lower(word));
  }
  return words;
}

std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string shortest(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<long long> parse_int(std::string_view s) {
  s = trim(s);
  if (s.empty()) return std::nullopt;
  long long value = 0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

}  // namespace docstruct::text
