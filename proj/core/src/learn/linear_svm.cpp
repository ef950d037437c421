#include <numeric>

#include "docstruct/rng.hpp"
#include "internal.hpp"

namespace docstruct::detail {

namespace {

// Pegasos subgradient descent on the L2-regularized hinge loss for one
// binary problem. The bias is an extra always-one feature at index d.
// w is stored as scale * v so the shrink step is O(1).
std::vector<double> pegasos(const LabeledDataset& ds, const std::vector<double>& target, double lambda,
                            int epochs, Rng& rng) {
  const std::size_t d = ds.dimension;
  std::vector<double> v(d + 1, 0.0);
  double scale = 1.0;
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t t = 0;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    for (std::size_t i : order) {
      ++t;
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const SparseVector& x = ds.features[i];
      double margin = v[d];
      for (const auto& [j, value] : x.entries) margin += v[j] * value;
      margin *= scale * target[i];

      const double shrink = 1.0 - eta * lambda;
      if (shrink <= 0.0) {
        std::fill(v.begin(), v.end(), 0.0);
        scale = 1.0;
      } else {
        scale *= shrink;
      }
      if (margin < 1.0) {
        const double step = eta * target[i] / scale;
        for (const auto& [j, value] : x.entries) v[j] += step * value;
        v[d] += step;
      }
      if (scale < 1e-9) {
        for (double& w : v) w *= scale;
        scale = 1.0;
      }
    }
  }
  for (double& w : v) w *= scale;
  return v;
}

}  // namespace

LinearSvmParams train_linear_svm(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                 double c, int epochs, std::uint64_t seed) {
  const std::size_t k = ds.class_alphabet.size();
  const double lambda = 1.0 / (c * static_cast<double>(ds.size()));
  Rng rng(seed);
  LinearSvmParams p;
  std::vector<double> target(ds.size());
  for (std::size_t cls = 0; cls < k; ++cls) {
    for (std::size_t i = 0; i < ds.size(); ++i) target[i] = y[i] == cls ? 1.0 : -1.0;
    auto w = pegasos(ds, target, lambda, epochs, rng);
    p.bias.push_back(w.back());
    w.pop_back();
    p.weights.push_back(std::move(w));
  }
  return p;
}

std::vector<double> svm_scores(const LinearSvmParams& p, const SparseVector& x) {
  std::vector<double> scores(p.weights.size());
  for (std::size_t c = 0; c < scores.size(); ++c) scores[c] = x.dot(p.weights[c]) + p.bias[c];
  return scores;
}

}  // namespace docstruct::detail
