#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "docstruct/errors.hpp"
#include "docstruct/summarize.hpp"
#include "docstruct/text.hpp"

namespace docstruct {

double sentence_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.size() < 2 || b.size() < 2) return 0;
  std::set<std::string_view> sa(a.begin(), a.end());
  std::size_t overlap = 0;
  for (std::string_view t : std::set<std::string_view>(b.begin(), b.end())) overlap += sa.count(t);
  if (overlap == 0) return 0;
  return static_cast<double>(overlap) /
         (std::log(static_cast<double>(a.size())) + std::log(static_cast<double>(b.size())));
}

TextRankResult textrank_scores(const std::vector<std::vector<double>>& weights, double damping, double tol,
                               int max_iter) {
  const std::size_t n = weights.size();
  if (n == 0) throw ContractError("textrank needs at least one sentence");
  if (!(damping >= 0 && damping <= 1)) throw ContractError("damping must lie in [0, 1]");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i].size() != n) throw ContractError("weight matrix is not square");
    for (std::size_t j = 0; j < n; ++j) {
      const double w = weights[i][j];
      if (!(w >= 0) || !std::isfinite(w)) throw ContractError("weights must be finite and non-negative");
      if (w != weights[j][i]) throw ContractError("weight matrix is not symmetric");
    }
  }

  std::vector<double> out_sum(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) out_sum[i] += weights[i][j];

  const double dn = static_cast<double>(n);
  TextRankResult r;
  r.scores.assign(n, 1.0 / dn);
  std::vector<double> next(n);
  for (int it = 0; it < max_iter; ++it) {
    double dangling = 0;
    for (std::size_t j = 0; j < n; ++j)
      if (out_sum[j] == 0) dangling += r.scores[j];
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i && out_sum[j] > 0) s += weights[j][i] / out_sum[j] * r.scores[j];
      next[i] = (1 - damping) / dn + damping * (s + dangling / dn);
    }
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(next[i] - r.scores[i]));
    r.scores.swap(next);
    r.iterations = it + 1;
    if (delta < tol) {
      r.converged = true;
      break;
    }
  }
  return r;
}

SentenceGraph SentenceGraph::build(std::vector<std::string> sentences, double damping) {
  SentenceGraph g;
  g.sentences = std::move(sentences);
  g.damping = damping;
  std::vector<std::vector<std::string>> tokens;
  for (const auto& s : g.sentences) tokens.push_back(text::word_tokens(s));
  const std::size_t n = g.sentences.size();
  g.weights.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.weights[i][j] = g.weights[j][i] = sentence_similarity(tokens[i], tokens[j]);
  return g;
}

void SentenceGraph::rank(double tol, int max_iter) {
  auto r = textrank_scores(weights, damping, tol, max_iter);
  scores = std::move(r.scores);
  converged = r.converged;
}

std::vector<std::size_t> select_summary(const std::vector<double>& scores, double ratio) {
  if (!(ratio > 0 && ratio <= 1)) throw ContractError("summary ratio must lie in (0, 1]");
  if (scores.empty()) return {};
  const double want = std::ceil(ratio * static_cast<double>(scores.size()) - 1e-9);
  const auto count = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, scores.size());
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return scores[a] > scores[b]; });
  order.resize(count);
  std::sort(order.begin(), order.end());
  return order;
}

std::string summarize_section(std::string_view text, double ratio, double damping, double tol, int max_iter) {
  if (!(ratio > 0 && ratio <= 1)) throw ContractError("summary ratio must lie in (0, 1]");
  auto sentences = split_sentences(text);
  if (sentences.empty()) return {};
  auto g = SentenceGraph::build(sentences, damping);
  g.rank(tol, max_iter);
  std::vector<std::string> picked;
  for (auto i : select_summary(g.scores, ratio)) picked.push_back(g.sentences[i]);
  return text::join(picked, " ");
}

}  // namespace docstruct
