#include <benchmark/benchmark.h>

#include "docstruct/featurize.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/rng.hpp"
#include "docstruct/summarize.hpp"
#include "docstruct/synthgen.hpp"
#include "docstruct/topics.hpp"

namespace {

using namespace docstruct;

const std::vector<GeneratedDocument>& corpus() {
  static const auto docs = [] {
    CorpusSpec spec = CorpusSpec::noisy();
    spec.n_docs = 20;
    return generate_corpus(spec);
  }();
  return docs;
}

void BM_LayoutFeatures(benchmark::State& state) {
  const auto& docs = corpus();
  std::vector<std::string> headers;
  for (const auto& g : docs)
    for (const auto& l : g.document.lines)
      if (l.label.value_or(0) > 0) headers.push_back(l.text);
  const auto vocab = build_header_vocabulary(headers, 3);
  std::size_t lines = 0;
  for (auto _ : state) {
    for (const auto& g : docs) {
      auto fv = extract_document_features(g.document, vocab);
      lines += fv.size();
      benchmark::DoNotOptimize(fv.data());
    }
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(lines));
}
BENCHMARK(BM_LayoutFeatures);

void BM_DecisionTreeTrain(benchmark::State& state) {
  Rng rng(3);
  LabeledDataset ds;
  ds.dimension = 16;
  for (int i = 0; i < state.range(0); ++i) {
    std::vector<double> x(16);
    for (auto& v : x) v = rng.below(2) ? 1.0 : 0.0;
    ds.add(SparseVector::from_dense(x), (x[0] + x[3] + x[7] > 1.5) ? 1 : 0);
  }
  ds.refresh_alphabet();
  for (auto _ : state) benchmark::DoNotOptimize(train(ModelKind::decision_tree, ds));
}
BENCHMARK(BM_DecisionTreeTrain)->Arg(500)->Arg(4000);

void BM_TextRank(benchmark::State& state) {
  const auto sections = generate_sections(CorpusSpec::standard(), 1, 5);
  std::string text;
  for (const auto& s : sections) text += s.text + " ";
  for (auto _ : state) benchmark::DoNotOptimize(summarize_section(text, 0.2));
}
BENCHMARK(BM_TextRank);

void BM_LdaSweeps(benchmark::State& state) {
  std::vector<std::vector<std::string>> sections;
  for (const auto& s : generate_sections(CorpusSpec::standard(), 10, 9)) sections.push_back(topic_tokens(s.text));
  DictionaryOptions opts;
  opts.min_sections = 3;
  opts.max_fraction = 0.2;
  const auto dict = build_dictionary(sections, opts);
  LdaOptions lda;
  lda.topics = 10;
  lda.iterations = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(train_lda(sections, dict, lda));
}
BENCHMARK(BM_LdaSweeps)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
