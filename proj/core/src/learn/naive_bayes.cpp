#include <cmath>

#include "internal.hpp"

namespace docstruct::detail {

NaiveBayesParams train_naive_bayes(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                   double alpha) {
  const std::size_t k = ds.class_alphabet.size();
  const std::size_t d = ds.dimension;
  NaiveBayesParams p;
  p.alpha = alpha;
  std::vector<std::vector<double>> counts(k, std::vector<double>(d, 0.0));
  std::vector<double> docs(k, 0.0);
  for (std::size_t i = 0; i < ds.size(); ++i) {
    docs[y[i]] += 1.0;
    for (const auto& [j, v] : ds.features[i].entries) counts[y[i]][j] += v;
  }
  const double n = static_cast<double>(ds.size());
  p.log_prior.resize(k);
  p.log_likelihood.assign(k, std::vector<double>(d, 0.0));
  for (std::size_t c = 0; c < k; ++c) {
    p.log_prior[c] = std::log(docs[c] / n);
    double total = 0;
    for (double v : counts[c]) total += v;
    const double denom = std::log(total + alpha * static_cast<double>(d));
    for (std::size_t j = 0; j < d; ++j) p.log_likelihood[c][j] = std::log(counts[c][j] + alpha) - denom;
  }
  return p;
}

std::vector<double> naive_bayes_scores(const NaiveBayesParams& p, const SparseVector& x) {
  std::vector<double> scores = p.log_prior;
  for (std::size_t c = 0; c < scores.size(); ++c) {
    for (const auto& [j, v] : x.entries) scores[c] += v * p.log_likelihood[c][j];
  }
  return scores;
}

}  // namespace docstruct::detail
