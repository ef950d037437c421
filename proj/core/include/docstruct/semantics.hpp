#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/featurize.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/structure.hpp"

// Ontology classes for sections: alias mapping, a learned text classifier,
// a first-order section-sequence model and triple emission.
namespace docstruct {

struct OntologyClassSet {
  std::vector<std::string> classes;
  // normalized header phrase -> class name
  std::map<std::string, std::string> alias_map;

  // The 20 scholarly-article classes with the bundled alias table.
  static OntologyClassSet scholarly();
  // Request-for-proposal documents.
  static OntologyClassSet rfp();

  std::optional<std::size_t> index_of(std::string_view cls) const;
  // Throws SchemaError on duplicate classes or aliases naming unknown classes.
  void validate() const;

  std::string to_json() const;
  static OntologyClassSet from_json(std::string_view json);
};

inline constexpr const char* kUnknownSection = "UnknownSection";

// Normalized headers with counts, descending by count then lexicographic.
std::vector<std::pair<std::string, int>> discover_classes_count_based(const std::vector<std::string>& headers);

// Exact alias, then longest whole-word alias substring, then best token
// overlap (|A ∩ H| / max(|A|, |H|) >= 0.5, stopwords ignored).
std::optional<std::string> map_header_to_class(std::string_view header, const OntologyClassSet& ont);

inline constexpr int kDefaultTruncationWords = 200;

std::string first_words(std::string_view text, int n);

// Text classifier over word n-grams of the first `truncation` words of a section.
struct SectionClassifier {
  NgramVectorizer vectorizer;
  Model model;  // labels index into class_names
  std::vector<std::string> class_names;
  int truncation = kDefaultTruncationWords;

  std::string to_json() const;
  static SectionClassifier from_json(std::string_view json);
};

SectionClassifier train_section_classifier(const std::vector<std::string>& texts,
                                           const std::vector<std::string>& classes,
                                           const OntologyClassSet& ont, ModelKind kind = ModelKind::naive_bayes,
                                           const Hyperparams& hp = {}, std::uint64_t seed = 0,
                                           int truncation = kDefaultTruncationWords, int min_df = 2);

struct SemanticLabel {
  std::string ontology_class;
  double score = 0;
  std::vector<double> scores;  // per class_names entry; empty for alias labels
  bool from_alias = false;
};

// Classifier when given and the section has text; otherwise the alias map.
// Returns nullopt (with a diagnostic) when neither path yields a class.
std::optional<SemanticLabel> classify_section_semantic(const SectionNode& section, const SectionClassifier* clf,
                                                       const OntologyClassSet& ont,
                                                       std::string* diagnostic = nullptr);

inline constexpr int kDefaultSequenceLength = 15;

class SequenceModel {
 public:
  static constexpr const char* kStart = "<start>";
  static constexpr const char* kEnd = "<end>";
  static constexpr const char* kPad = "<pad>";

  // First-order transitions with add-one smoothing; sequences truncated to
  // max_length. Unknown labels throw ContractError.
  static SequenceModel fit(const std::vector<std::vector<std::string>>& corpus,
                           const std::vector<std::string>& classes, int max_length = kDefaultSequenceLength);

  // log P(s1 | start) + sum log P(s_i+1 | s_i) + log P(end | s_n)
  double score(const std::vector<std::string>& seq) const;
  // P(to | from); from may be kStart, to may be kEnd.
  double probability(std::string_view from, std::string_view to) const;
  double log_probability(std::string_view from, std::string_view to) const;

  // Highest-scoring permutation of the multiset: exhaustive up to 8 labels,
  // greedy insertion beyond. Ties go to the lexicographically first
  // permutation of class indices.
  std::vector<std::string> canonical_order(const std::vector<std::string>& labels) const;

  const std::vector<std::string>& classes() const { return classes_; }
  // Label alphabet: classes then start/end/pad markers.
  std::vector<std::string> alphabet() const;
  int max_length() const { return max_length_; }
  // rows: start then classes; columns: classes then end.
  const std::vector<std::vector<double>>& transition_counts() const { return counts_; }

  std::string to_json() const;
  static SequenceModel from_json(std::string_view json);

 private:
  std::size_t index(std::string_view label) const;
  double score_indices(const std::vector<std::size_t>& seq) const;

  std::vector<std::string> classes_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::vector<std::vector<double>> counts_;
  std::vector<std::vector<double>> log_prob_;
  int max_length_ = kDefaultSequenceLength;
};

struct Triple {
  std::string subject;
  std::string predicate;
  std::string object;
  bool literal = false;  // object is a quoted literal

  bool operator==(const Triple&) const = default;
};

// Document node, then per section (pre-order): hasSection, rdf:type,
// hasConcept per concept, followedBy to the next section.
std::vector<Triple> emit_ontology_annotation(const TocTree& tree, const OntologyClassSet& ont);
std::string to_ntriples(const std::vector<Triple>& triples);

}  // namespace docstruct
