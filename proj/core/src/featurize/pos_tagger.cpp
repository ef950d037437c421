#include <cctype>
#include <set>

#include "docstruct/featurize.hpp"

namespace docstruct {

namespace {

const std::set<std::string>& verb_words() {
  static const std::set<std::string> words = {
      "is",     "are",   "was",   "were",  "be",     "been",    "being",  "am",     "has",
      "have",   "had",   "do",    "does",  "did",    "will",    "would",  "shall",  "should",
      "can",    "could", "may",   "might", "must",   "show",    "shows",  "shown",  "use",
      "uses",   "make",  "makes", "made",  "give",   "gives",   "given",  "take",   "takes",
      "find",   "finds", "found", "see",   "seems",  "obtain",  "obtains", "yield", "yields",
      "follow", "follows", "allow", "allows", "provide", "provides", "consider", "considers",
      "propose", "proposes", "present", "presents", "describe", "describes", "report",
      "reports", "compare", "compares", "apply", "applies", "achieve", "achieves"};
  return words;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

std::vector<PosTag> HeuristicPosTagger::tag(const std::vector<std::string>& tokens) const {
  std::vector<PosTag> tags;
  tags.reserve(tokens.size());
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const std::string& tok = tokens[i];
    const std::string lower = text::to_lower(tok);
    const bool is_lower = !tok.empty() && std::islower(static_cast<unsigned char>(tok.front()));
    const bool is_cap = !tok.empty() && std::isupper(static_cast<unsigned char>(tok.front()));
    if (verb_words().count(lower) ||
        (is_lower && lower.size() > 4 && (ends_with(lower, "ing") || ends_with(lower, "ed")))) {
      tags.push_back(PosTag::verb);
    } else if ((is_cap && i > 0) || ends_with(lower, "tion") || ends_with(lower, "ment") ||
               ends_with(lower, "ness") || ends_with(lower, "ity") ||
               (vocab_ && vocab_->contains(lower))) {
      tags.push_back(PosTag::noun);
    } else {
      tags.push_back(PosTag::other);
    }
  }
  return tags;
}

}  // namespace docstruct
