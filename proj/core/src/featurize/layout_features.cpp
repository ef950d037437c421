#include <algorithm>
#include <cctype>

#include "docstruct/errors.hpp"
#include "docstruct/featurize.hpp"

namespace docstruct {

namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)) != 0; }
bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// ^\d+(\.\d+)*\.?\s
bool matches_number_dot(std::string_view s) {
  std::size_t i = 0;
  if (i >= s.size() || !is_digit(s[i])) return false;
  while (i < s.size() && is_digit(s[i])) ++i;
  while (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
  }
  if (i < s.size() && s[i] == '.') ++i;
  return i < s.size() && is_space(s[i]);
}

std::string_view strip_token_punct(std::string_view t) {
  while (!t.empty() && (t.front() == '(' || t.front() == '[')) t.remove_prefix(1);
  while (!t.empty() && (t.back() == '.' || t.back() == ')' || t.back() == ':' || t.back() == ']'))
    t.remove_suffix(1);
  return t;
}

// digits | roman numerals | single letter
bool starts_with_sequence_marker(std::string_view s) {
  if (s.empty()) return false;
  if (is_digit(s.front())) return true;
  std::size_t end = 0;
  while (end < s.size() && !is_space(s[end])) ++end;
  std::string_view token = strip_token_punct(s.substr(0, end));
  if (token.empty()) return false;
  if (token.size() == 1 && is_alpha(token.front())) return true;
  // A dotted roman prefix such as "IV." or "ii)" counts; a bare word does not
  // unless it is upper-case ("II Results").
  if (text::is_roman_numeral(token)) {
    std::string_view raw = s.substr(0, end);
    bool punct = raw.size() > token.size();
    return punct || is_upper(token.front());
  }
  return false;
}

// Length buckets: <= 40 chars, 41-90, > 90.
double text_len_bucket(std::size_t n) { return n <= 40 ? 0.0 : (n <= 90 ? 0.5 : 1.0); }

}  // namespace

const std::array<std::string_view, kLayoutFeatureCount>& layout_feature_names() {
  static const std::array<std::string_view, kLayoutFeatureCount> names = {
      "pos_nnp",   "without_verb_higher_line_space", "font_weight", "bold_italic",
      "at_least_3_lines_upper", "higher_line_space", "number_dot", "text_len_group",
      "seq_number", "colon", "header_0", "header_1", "header_2", "title_case", "all_upper", "voc"};
  return names;
}

int numbering_depth(std::string_view s) {
  s = text::trim(s);
  std::size_t i = 0;
  int depth = 0;
  if (i < s.size() && is_digit(s[i])) {
    while (i < s.size() && is_digit(s[i])) ++i;
    depth = 1;
  } else {
    // "A.1" appendix-style or a dotted roman / letter prefix ("IV.", "B.")
    std::size_t j = 0;
    while (j < s.size() && is_alpha(s[j])) ++j;
    std::string_view word = s.substr(0, j);
    if (word.empty() || !(word.size() == 1 || text::is_roman_numeral(word)) || !is_upper(word.front()))
      return 0;
    if (j >= s.size() || s[j] != '.') return 0;
    i = j;
    depth = 1;
  }
  while (i + 1 < s.size() && s[i] == '.' && is_digit(s[i + 1])) {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i;
    ++depth;
  }
  if (i < s.size() && s[i] == '.') ++i;
  if (i < s.size() && !is_space(s[i])) return 0;
  return depth;
}

VectorMode parse_vector_mode(std::string_view name) {
  if (name == "layout") return VectorMode::layout;
  if (name == "text") return VectorMode::text;
  if (name == "combined") return VectorMode::combined;
  throw ContractError("unknown vector mode: " + std::string(name));
}

std::string_view to_string(VectorMode mode) {
  switch (mode) {
    case VectorMode::layout: return "layout";
    case VectorMode::text: return "text";
    case VectorMode::combined: return "combined";
  }
  return "?";
}

SparseVector model_input(const FeatureVector& fv, VectorMode mode) {
  SparseVector out;
  if (mode != VectorMode::text) {
    for (std::size_t i = 0; i < kLayoutFeatureCount; ++i) {
      if (fv.layout[i] != 0.0) out.push(static_cast<std::uint32_t>(i), fv.layout[i]);
    }
  }
  if (mode != VectorMode::layout) {
    const std::uint32_t offset = mode == VectorMode::combined ? kLayoutFeatureCount : 0;
    for (const auto& [i, v] : fv.text.entries) out.push(offset + i, v);
  }
  return out;
}

std::size_t model_dimension(VectorMode mode, std::size_t text_dimension) {
  switch (mode) {
    case VectorMode::layout: return kLayoutFeatureCount;
    case VectorMode::text: return text_dimension;
    case VectorMode::combined: return kLayoutFeatureCount + text_dimension;
  }
  return 0;
}

FeatureVector extract_layout_features(const LineRecord& line, const LineContext& context,
                                      const PageStats& stats, const HeaderVocabulary& vocab,
                                      const PosTagger* tagger) {
  FeatureVector fv;
  auto set = [&fv](LayoutFeature f, double v) { fv.layout[static_cast<std::size_t>(f)] = v; };

  const std::string_view body = text::trim(line.text);
  const std::vector<std::string> alpha = text::alpha_tokens(body);
  const std::vector<std::string> words = text::word_tokens(body);

  HeuristicPosTagger fallback(&vocab);
  const PosTagger& pos = tagger ? *tagger : fallback;
  const std::vector<PosTag> tags = pos.tag(alpha);

  // Spacing: a missing neighbour (page boundary) counts as a large gap.
  const double limit = kHigherSpacingRatio * stats.avg_line_spacing;
  const bool space_above = !context.previous || (line.baseline() - context.previous->baseline()) > limit;
  const bool space_below = !context.next || (context.next->baseline() - line.baseline()) > limit;

  if (!alpha.empty()) {
    auto nouns = std::count(tags.begin(), tags.end(), PosTag::noun);
    set(LayoutFeature::pos_nnp, static_cast<double>(nouns) / static_cast<double>(alpha.size()) > 0.5);
    bool verb = std::find(tags.begin(), tags.end(), PosTag::verb) != tags.end();
    set(LayoutFeature::without_verb_higher_line_space, !verb && space_below);
  }

  set(LayoutFeature::font_weight, line.font_weight > stats.avg_font_weight);
  {
    std::string family = text::to_lower(line.font_family);
    bool marker = false;
    for (const char* m : {"bold", "italic", "oblique", "black", "heavy"})
      marker = marker || family.find(m) != std::string::npos;
    set(LayoutFeature::bold_italic, marker || line.font_weight >= 600.0);
  }

  if (body.empty()) return fv;

  {
    auto rest = text::alpha_tokens(text::strip_leading_numbering(body));
    bool upper3 = rest.size() >= 3 &&
                  std::all_of(rest.begin(), rest.begin() + 3,
                              [](const std::string& t) { return is_upper(t.front()); });
    set(LayoutFeature::at_least_3_lines_upper, upper3);
  }
  set(LayoutFeature::higher_line_space, space_above && space_below);
  set(LayoutFeature::number_dot, matches_number_dot(body));
  set(LayoutFeature::text_len_group, text_len_bucket(body.size()));
  set(LayoutFeature::seq_number, starts_with_sequence_marker(body));
  set(LayoutFeature::colon, body.back() == ':');
  const int depth = numbering_depth(body);
  set(LayoutFeature::header_0, depth == 1);
  set(LayoutFeature::header_1, depth == 2);
  set(LayoutFeature::header_2, depth == 3);
  if (!alpha.empty()) {
    auto caps = std::count_if(alpha.begin(), alpha.end(),
                              [](const std::string& t) { return is_upper(t.front()); });
    set(LayoutFeature::title_case, static_cast<double>(caps) >= 0.75 * static_cast<double>(alpha.size()));
  }
  {
    bool any_alpha = false, all_upper = true;
    for (char c : body) {
      if (is_alpha(c)) {
        any_alpha = true;
        all_upper = all_upper && is_upper(c);
      }
    }
    set(LayoutFeature::all_upper, any_alpha && all_upper);
  }
  set(LayoutFeature::voc, std::any_of(words.begin(), words.end(),
                                      [&](const std::string& w) { return vocab.contains(w); }));
  return fv;
}

std::vector<LineContext> line_contexts(const Document& doc) {
  std::vector<LineContext> ctx(doc.lines.size());
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    if (i > 0 && doc.lines[i - 1].page_number == doc.lines[i].page_number)
      ctx[i].previous = &doc.lines[i - 1];
    if (i + 1 < doc.lines.size() && doc.lines[i + 1].page_number == doc.lines[i].page_number)
      ctx[i].next = &doc.lines[i + 1];
  }
  return ctx;
}

std::vector<FeatureVector> extract_document_features(const Document& doc,
                                                     const HeaderVocabulary& vocab,
                                                     const PosTagger* tagger) {
  const auto ctx = line_contexts(doc);
  std::vector<FeatureVector> out;
  out.reserve(doc.lines.size());
  for (std::size_t i = 0; i < doc.lines.size(); ++i) {
    const PageStats* stats = doc.page(doc.lines[i].page_number);
    if (!stats) throw ContractError("document lacks page statistics for page " +
                                    std::to_string(doc.lines[i].page_number));
    out.push_back(extract_layout_features(doc.lines[i], ctx[i], *stats, vocab, tagger));
  }
  return out;
}

FeatureVector combine(const FeatureVector& layout, SparseVector text, std::size_t text_dimension) {
  FeatureVector out;
  out.layout = layout.layout;
  out.text = std::move(text);
  out.text_dimension = text_dimension;
  return out;
}

}  // namespace docstruct

namespace docstruct {

std::vector<FeatureVector> FeatureExtractor::operator()(const Document& doc) const {
  auto features = extract_document_features(doc, vocab);
  for (std::size_t i = 0; i < features.size(); ++i) {
    features[i] = combine(features[i], vectorizer.transform(doc.lines[i].text), vectorizer.size());
  }
  return features;
}

}  // namespace docstruct
