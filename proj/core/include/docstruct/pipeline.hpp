#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/featurize.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/semantics.hpp"
#include "docstruct/structure.hpp"
#include "docstruct/topics.hpp"

// End-to-end configuration, model bundle training and per-document runs.
namespace docstruct {

struct PipelineConfig {
  std::string input_format = "auto";  // auto | tetml | line_csv
  std::string model_dir = "models";
  std::string out_dir = "out";
  VectorMode mode = VectorMode::combined;
  ModelKind classifier = ModelKind::linear_svm;
  std::string ontology = "scholarly";  // scholarly | rfp | path to a JSON class set
  std::uint64_t seed = 42;
  int threads = 1;
  bool oracle = false;   // use ground-truth line labels instead of the classifiers
  bool balance = true;   // downsample training classes to the minority count
  bool four_class = false;  // one body/level-1/2/3 model instead of line then level
  double similarity_threshold = kDefaultSimilarityThreshold;

  int ngram_min = 1;
  int ngram_max = 3;
  int min_df = kDefaultMinDf;
  int vocab_min_frequency = 3;
  Hyperparams hp;

  ModelKind semantic_classifier = ModelKind::naive_bayes;
  int semantic_truncation = kDefaultTruncationWords;
  int semantic_min_df = 2;
  int sequence_max_length = kDefaultSequenceLength;

  int lda_topics = 10;
  double lda_alpha = -1;  // -1 selects 50 / lda_topics
  double lda_beta = 0.01;
  int lda_iterations = 500;
  TokenMode lda_token_mode = TokenMode::word;
  DictionaryOptions dictionary;
  int concept_terms = 3;
  int inference_iterations = kDefaultInferenceIterations;

  double summary_ratio = 0.2;
  double textrank_damping = 0.85;
  double textrank_tol = 1e-6;
  int textrank_max_iter = 100;

  // Throws ContractError naming the key for unknown keys or bad values.
  void set(std::string_view key, std::string_view value);
  // Flat "key = value" lines in a fixed order; '#' starts a comment.
  std::string to_text() const;
  static PipelineConfig from_text(std::string_view text);
  OntologyClassSet load_ontology() const;
};

// Everything `train` produces and `pipeline` consumes.
struct ModelBundle {
  VectorMode mode = VectorMode::combined;
  FeatureExtractor extractor;
  Model line_model;
  Model level_model;
  std::optional<Model> four_class_model;  // trained when PipelineConfig::four_class is set
  OntologyClassSet ontology;
  std::optional<SectionClassifier> semantic;
  std::optional<SequenceModel> sequence;
  std::optional<TopicModel> topics;

  void save(const std::string& dir) const;
  // Throws IoError when a required file is missing.
  static ModelBundle load(const std::string& dir);
};

// Documents must carry ground-truth line labels (0 body, k header depth).
ModelBundle train_bundle(const std::vector<Document>& docs, const PipelineConfig& config);

// Sections of a labeled document grouped by alias-mapped class of the
// top-level header; sections whose header maps to no class are left out.
struct ClassifiedSection {
  std::string text;
  std::string ontology_class;
};
std::vector<ClassifiedSection> alias_labeled_sections(const Document& doc, const OntologyClassSet& ont);

struct PipelineResult {
  TocTree tree;
  std::vector<TocEntry> toc;
  std::vector<Triple> triples;
  std::vector<std::string> diagnostics;
};

PipelineResult run_pipeline(const Document& doc, const ModelBundle& bundle, const PipelineConfig& config);

// Runs documents on `config.threads` workers; results keep input order.
std::vector<PipelineResult> run_pipeline_batch(const std::vector<Document>& docs, const ModelBundle& bundle,
                                               const PipelineConfig& config);

// Writes <doc_id>.structure.json, <doc_id>.toc.txt, <doc_id>.nt and, when
// there are diagnostics, <doc_id>.diagnostics.json into `dir`.
void write_pipeline_outputs(const PipelineResult& result, const std::string& dir);

// Reads any supported input file; line_csv may hold several documents.
std::vector<Document> load_documents(const std::string& path, std::string_view format = "auto");

}  // namespace docstruct
