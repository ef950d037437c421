#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/ingest.hpp"
#include "docstruct/sparse.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

inline constexpr std::size_t kLayoutFeatureCount = 16;

// Declared order of the layout block.
enum class LayoutFeature : std::size_t {
  pos_nnp,
  without_verb_higher_line_space,
  font_weight,
  bold_italic,
  at_least_3_lines_upper,
  higher_line_space,
  number_dot,
  text_len_group,
  seq_number,
  colon,
  header_0,
  header_1,
  header_2,
  title_case,
  all_upper,
  voc,
};

const std::array<std::string_view, kLayoutFeatureCount>& layout_feature_names();

// Gap ratio above which spacing counts as "higher" than the page average.
inline constexpr double kHigherSpacingRatio = 1.2;

struct FeatureVector {
  std::array<double, kLayoutFeatureCount> layout{};
  SparseVector text;               // tf-idf block, term ids relative to the vectorizer
  std::size_t text_dimension = 0;  // vocabulary size of the text block

  double operator[](LayoutFeature f) const { return layout[static_cast<std::size_t>(f)]; }
  std::size_t dimension() const { return kLayoutFeatureCount + text_dimension; }
};

// Which blocks a model consumes.
enum class VectorMode { layout, text, combined };

VectorMode parse_vector_mode(std::string_view name);
std::string_view to_string(VectorMode mode);

// Flattens a FeatureVector for a classifier: layout at [0,16), text block at
// [16, 16+V) in combined mode and at [0, V) in text mode.
SparseVector model_input(const FeatureVector& fv, VectorMode mode);
std::size_t model_dimension(VectorMode mode, std::size_t text_dimension);

struct HeaderVocabulary {
  std::set<std::string> terms;
  std::map<std::string, int> frequencies;  // counts for kept terms
  int min_frequency = 1;
  std::set<std::string> stoplist;

  bool contains(std::string_view lowered) const { return terms.count(std::string(lowered)) > 0; }
  // Kept terms by descending frequency, ties lexicographic.
  std::vector<std::pair<std::string, int>> ranked() const;

  std::string to_json() const;
  static HeaderVocabulary from_json(std::string_view json);
};

HeaderVocabulary build_header_vocabulary(const std::vector<std::string>& headers, int min_frequency,
                                         const std::set<std::string>& stoplist = text::default_stoplist());

enum class PosTag { noun, verb, other };

// Part-of-speech tagging interface; the default is a rule-based tagger.
class PosTagger {
 public:
  virtual ~PosTagger() = default;
  virtual std::vector<PosTag> tag(const std::vector<std::string>& tokens) const = 0;
};

// Nouns: capitalized non-initial words, -tion/-ment/-ness/-ity suffixes, or
// header-vocabulary members. Verbs: auxiliaries and common verbs, plus
// lowercase -ing/-ed words.
class HeuristicPosTagger : public PosTagger {
 public:
  explicit HeuristicPosTagger(const HeaderVocabulary* vocab = nullptr) : vocab_(vocab) {}
  std::vector<PosTag> tag(const std::vector<std::string>& tokens) const override;

 private:
  const HeaderVocabulary* vocab_;
};

// Same-page neighbours in reading order; null at page boundaries.
struct LineContext {
  const LineRecord* previous = nullptr;
  const LineRecord* next = nullptr;
};

FeatureVector extract_layout_features(const LineRecord& line, const LineContext& context,
                                      const PageStats& stats, const HeaderVocabulary& vocab,
                                      const PosTagger* tagger = nullptr);

std::vector<LineContext> line_contexts(const Document& doc);

// Layout features for every line of a page-stats-populated document.
std::vector<FeatureVector> extract_document_features(const Document& doc,
                                                     const HeaderVocabulary& vocab,
                                                     const PosTagger* tagger = nullptr);

// Numbering depth of a header prefix: "2" -> 1, "2.3" -> 2, "2.3.1" -> 3; 0 if none.
int numbering_depth(std::string_view text);

class NgramVectorizer {
 public:
  NgramVectorizer() = default;

  static NgramVectorizer fit(const std::vector<std::string>& texts, int n_min = 1, int n_max = 3,
                             int min_df = 1);

  // tf * (1 + ln(N / (1 + df))), L2-normalized; unknown terms dropped.
  SparseVector transform(std::string_view text) const;

  std::size_t size() const { return terms_.size(); }
  const std::map<std::string, std::uint32_t>& vocabulary() const { return vocabulary_; }
  const std::vector<std::string>& terms() const { return terms_; }
  int document_frequency(std::string_view term) const;
  int corpus_size() const { return corpus_size_; }
  int n_min() const { return n_min_; }
  int n_max() const { return n_max_; }

  // n-grams of a text joined by single spaces, in occurrence order.
  static std::vector<std::string> ngrams(std::string_view text, int n_min, int n_max);

  std::string to_json() const;
  static NgramVectorizer from_json(std::string_view json);

 private:
  std::map<std::string, std::uint32_t> vocabulary_;
  std::vector<std::string> terms_;
  std::vector<int> df_;
  int corpus_size_ = 0;
  int n_min_ = 1;
  int n_max_ = 3;
};

inline constexpr int kDefaultMinDf = 3;

// Layout block copied bit-exactly, text block attached.
FeatureVector combine(const FeatureVector& layout, SparseVector text, std::size_t text_dimension);

}  // namespace docstruct

namespace docstruct {

// Fitted header vocabulary plus n-gram vectorizer; turns a document into one
// FeatureVector per line with both blocks populated.
struct FeatureExtractor {
  HeaderVocabulary vocab;
  NgramVectorizer vectorizer;

  std::vector<FeatureVector> operator()(const Document& doc) const;
};

}  // namespace docstruct
