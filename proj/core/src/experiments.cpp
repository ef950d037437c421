#include <algorithm>
#include <map>

#include "docstruct/corpus.hpp"
#include "docstruct/errors.hpp"
#include "docstruct/experiments.hpp"
#include "docstruct/semantics.hpp"

namespace docstruct {

namespace {

struct Sample {
  std::size_t doc = 0;
  std::size_t line = 0;
  int label = 0;
};

// Balanced, fold-assigned copy of the samples.
std::pair<std::vector<Sample>, std::vector<int>> balanced_folds(const std::vector<Sample>& samples,
                                                                const CvOptions& options) {
  LabeledDataset ds;
  for (std::size_t i = 0; i < samples.size(); ++i) ds.add(SparseVector{}, samples[i].label, i);
  ds.refresh_alphabet();
  if (ds.class_alphabet.size() < 2) throw DataError("cross-validation needs at least two classes");
  LabeledDataset folded = make_stratified_folds(balance_classes(ds, options.seed), options.folds, options.seed);
  std::vector<Sample> kept;
  for (std::size_t id : folded.ids) kept.push_back(samples[id]);
  return {std::move(kept), *folded.folds};
}

// Feature vectors for every sample; the header vocabulary and the n-gram
// vectorizer only see training samples.
std::vector<FeatureVector> fold_features(const std::vector<Document>& docs, const std::vector<Sample>& samples,
                                         const std::vector<int>& folds, int test_fold, const CvOptions& options) {
  std::vector<std::string> headers, texts;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (folds[i] == test_fold) continue;
    const auto& line = docs[samples[i].doc].lines[samples[i].line];
    texts.push_back(line.text);
    if (line.label.value_or(0) > 0) headers.push_back(line.text);
  }
  const HeaderVocabulary vocab = build_header_vocabulary(headers, options.vocab_min_frequency);
  const NgramVectorizer vec = NgramVectorizer::fit(texts, options.ngram_min, options.ngram_max, options.min_df);

  std::map<std::size_t, std::vector<FeatureVector>> layout;
  std::vector<FeatureVector> out;
  out.reserve(samples.size());
  for (const auto& s : samples) {
    auto it = layout.find(s.doc);
    if (it == layout.end()) it = layout.emplace(s.doc, extract_document_features(docs[s.doc], vocab)).first;
    out.push_back(combine(it->second[s.line], vec.transform(docs[s.doc].lines[s.line].text), vec.size()));
  }
  return out;
}

LabeledDataset make_dataset(const std::vector<FeatureVector>& fv, const std::vector<Sample>& samples,
                            const std::vector<std::size_t>& indices, VectorMode mode,
                            int (*relabel)(int) = nullptr) {
  LabeledDataset ds;
  ds.dimension = fv.empty() ? 0 : model_dimension(mode, fv.front().text_dimension);
  for (auto i : indices) ds.add(model_input(fv[i], mode), relabel ? relabel(samples[i].label) : samples[i].label, i);
  ds.refresh_alphabet();
  return ds;
}

std::vector<int> sorted_labels(const std::vector<Sample>& samples) {
  std::vector<int> labels;
  for (const auto& s : samples) labels.push_back(s.label);
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  return labels;
}

std::vector<CvResult> run_cv(const std::vector<Document>& docs, const std::vector<Sample>& all,
                             const std::vector<ModelKind>& kinds, const std::vector<VectorMode>& modes,
                             const CvOptions& options) {
  auto [samples, folds] = balanced_folds(all, options);
  const auto alphabet = sorted_labels(samples);
  const std::size_t runs = kinds.size() * modes.size();
  std::vector<std::vector<int>> truth(runs), predicted(runs);

  for (int f = 0; f < options.folds; ++f) {
    const auto fv = fold_features(docs, samples, folds, f, options);
    std::vector<std::size_t> train_idx, test_idx;
    for (std::size_t i = 0; i < samples.size(); ++i) (folds[i] == f ? test_idx : train_idx).push_back(i);
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const LabeledDataset train_ds = make_dataset(fv, samples, train_idx, modes[m]);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        const Model model = train(kinds[k], train_ds, options.hp, options.seed);
        const std::size_t r = k * modes.size() + m;
        for (auto i : test_idx) {
          truth[r].push_back(samples[i].label);
          predicted[r].push_back(model.predict(model_input(fv[i], modes[m])).label);
        }
      }
    }
  }

  std::vector<CvResult> out;
  for (std::size_t k = 0; k < kinds.size(); ++k)
    for (std::size_t m = 0; m < modes.size(); ++m) {
      const std::size_t r = k * modes.size() + m;
      out.push_back({kinds[k], modes[m], evaluate_predictions(alphabet, truth[r], predicted[r])});
    }
  return out;
}

}  // namespace

std::vector<CvResult> line_classification_cv(const std::vector<Document>& docs, const std::vector<ModelKind>& kinds,
                                             const std::vector<VectorMode>& modes, const CvOptions& options) {
  std::vector<Sample> samples;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (std::size_t l = 0; l < docs[d].lines.size(); ++l) {
      const auto& label = docs[d].lines[l].label;
      if (!label) throw DataError("document '" + docs[d].doc_id + "' line " + std::to_string(l) + " has no label");
      samples.push_back({d, l, *label > 0 ? 1 : 0});
    }
  return run_cv(docs, samples, kinds, modes, options);
}

std::vector<CvResult> header_level_cv(const std::vector<Document>& docs, const std::vector<ModelKind>& kinds,
                                      const std::vector<VectorMode>& modes, const CvOptions& options) {
  std::vector<Sample> samples;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (std::size_t l = 0; l < docs[d].lines.size(); ++l) {
      const int label = docs[d].lines[l].label.value_or(0);
      if (label > 0) samples.push_back({d, l, std::min(label, 3)});
    }
  return run_cv(docs, samples, kinds, modes, options);
}

PipelineComparison pipeline_vs_single_cv(const std::vector<Document>& docs, ModelKind kind, VectorMode mode,
                                         const CvOptions& options) {
  std::vector<Sample> all;
  for (std::size_t d = 0; d < docs.size(); ++d)
    for (std::size_t l = 0; l < docs[d].lines.size(); ++l)
      all.push_back({d, l, std::min(docs[d].lines[l].label.value_or(0), 3)});
  auto [samples, folds] = balanced_folds(all, options);
  const auto alphabet = sorted_labels(samples);

  std::vector<int> truth, single_pred, pipe_pred;
  for (int f = 0; f < options.folds; ++f) {
    const auto fv = fold_features(docs, samples, folds, f, options);
    std::vector<std::size_t> train_idx, header_idx, test_idx;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      if (folds[i] == f) {
        test_idx.push_back(i);
      } else {
        train_idx.push_back(i);
        if (samples[i].label > 0) header_idx.push_back(i);
      }
    }
    const Model single = train(kind, make_dataset(fv, samples, train_idx, mode), options.hp, options.seed);
    const LabeledDataset binary =
        balance_classes(make_dataset(fv, samples, train_idx, mode, [](int l) { return l > 0 ? 1 : 0; }), options.seed);
    const Model line_model = train(kind, binary, options.hp, options.seed);
    const Model level_model = train(kind, make_dataset(fv, samples, header_idx, mode), options.hp, options.seed);

    for (auto i : test_idx) {
      const SparseVector x = model_input(fv[i], mode);
      truth.push_back(samples[i].label);
      single_pred.push_back(single.predict(x).label);
      pipe_pred.push_back(line_model.predict(x).label == 1 ? level_model.predict(x).label : 0);
    }
  }
  return {evaluate_predictions(alphabet, truth, pipe_pred), evaluate_predictions(alphabet, truth, single_pred)};
}

EvalReport semantic_classification_cv(const std::vector<LabeledSection>& sections,
                                      const std::vector<std::string>& classes, ModelKind kind,
                                      const CvOptions& options, int truncation) {
  OntologyClassSet ont;
  ont.classes = classes;
  LabeledDataset ds;
  for (std::size_t i = 0; i < sections.size(); ++i) {
    auto idx = ont.index_of(sections[i].ontology_class);
    if (!idx) throw DataError("section " + std::to_string(i) + " has unknown class '" + sections[i].ontology_class + "'");
    ds.add(SparseVector{}, static_cast<int>(*idx), i);
  }
  ds.refresh_alphabet();
  const LabeledDataset folded = make_stratified_folds(ds, options.folds, options.seed);

  std::vector<int> truth, predicted;
  for (int f = 0; f < options.folds; ++f) {
    std::vector<std::string> texts, labels;
    std::vector<std::size_t> test;
    for (std::size_t r = 0; r < folded.size(); ++r) {
      const auto& s = sections[folded.ids[r]];
      if ((*folded.folds)[r] == f) {
        test.push_back(folded.ids[r]);
      } else {
        texts.push_back(s.text);
        labels.push_back(s.ontology_class);
      }
    }
    const SectionClassifier clf =
        train_section_classifier(texts, labels, ont, kind, options.hp, options.seed, truncation);
    for (auto id : test) {
      truth.push_back(static_cast<int>(*ont.index_of(sections[id].ontology_class)));
      predicted.push_back(clf.model.predict(clf.vectorizer.transform(first_words(sections[id].text, truncation))).label);
    }
  }
  return evaluate_predictions(ds.class_alphabet, truth, predicted);
}

CorpusSpec experiment_corpus_spec() {
  CorpusSpec spec = CorpusSpec::noisy();
  spec.n_docs = 120;
  spec.seed = 2024;
  return spec;
}

}  // namespace docstruct
