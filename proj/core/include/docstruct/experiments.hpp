#pragma once

#include <cstdint>
#include <vector>

#include "docstruct/featurize.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/synthgen.hpp"

// Cross-validated classification experiments over labeled documents.
namespace docstruct {

struct CvOptions {
  int folds = 5;
  std::uint64_t seed = 1;
  Hyperparams hp;
  int ngram_min = 1;
  int ngram_max = 3;
  int min_df = kDefaultMinDf;
  int vocab_min_frequency = 3;
};

struct CvResult {
  ModelKind kind = ModelKind::naive_bayes;
  VectorMode mode = VectorMode::combined;
  EvalReport report;  // pooled over the test folds
};

// Header vs body lines, classes balanced, k-fold stratified. Feature
// vocabularies are refit on each training fold.
std::vector<CvResult> line_classification_cv(const std::vector<Document>& docs, const std::vector<ModelKind>& kinds,
                                             const std::vector<VectorMode>& modes, const CvOptions& options);

// Header-level (1/2/3) classification over header lines, classes balanced.
std::vector<CvResult> header_level_cv(const std::vector<Document>& docs, const std::vector<ModelKind>& kinds,
                                      const std::vector<VectorMode>& modes, const CvOptions& options);

// Both evaluated on the same balanced 4-class folds (body, level 1..3): a
// header/body model followed by a level model against one 4-class model.
struct PipelineComparison {
  EvalReport pipeline;
  EvalReport single_model;
};
PipelineComparison pipeline_vs_single_cv(const std::vector<Document>& docs, ModelKind kind, VectorMode mode,
                                         const CvOptions& options);

// Section texts generated per class, k-fold CV of the section classifier.
EvalReport semantic_classification_cv(const std::vector<LabeledSection>& sections,
                                      const std::vector<std::string>& classes, ModelKind kind,
                                      const CvOptions& options, int truncation = 200);

// Fixed seeded corpus used by the desk-scale experiments.
CorpusSpec experiment_corpus_spec();

}  // namespace docstruct
