#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Extractive summaries: TextRank over a sentence-overlap graph.
namespace docstruct {

inline constexpr double kDefaultDamping = 0.85;
inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr int kDefaultMaxIterations = 100;
inline constexpr double kDefaultSummaryRatio = 0.2;

// |distinct shared tokens| / (ln|a| + ln|b|); 0 when either side has fewer
// than two tokens.
double sentence_similarity(const std::vector<std::string>& a, const std::vector<std::string>& b);

struct TextRankResult {
  std::vector<double> scores;  // sums to 1
  bool converged = false;
  int iterations = 0;
};

// Weighted PageRank. Rows are normalized by their sum; sentences without
// edges spread their rank uniformly. Throws ContractError on an empty,
// non-square, asymmetric or negative weight matrix.
TextRankResult textrank_scores(const std::vector<std::vector<double>>& weights, double damping = kDefaultDamping,
                               double tol = kDefaultTolerance, int max_iter = kDefaultMaxIterations);

struct SentenceGraph {
  std::vector<std::string> sentences;
  std::vector<std::vector<double>> weights;
  double damping = kDefaultDamping;
  std::vector<double> scores;
  bool converged = false;

  static SentenceGraph build(std::vector<std::string> sentences, double damping = kDefaultDamping);
  void rank(double tol = kDefaultTolerance, int max_iter = kDefaultMaxIterations);
};

// Splits after . ? ! when whitespace and an uppercase letter follow, except
// after common abbreviations and single-letter initials.
std::vector<std::string> split_sentences(std::string_view text);

// Indices of the top ceil(ratio * n) scores (ties to the earlier sentence),
// returned in ascending order.
std::vector<std::size_t> select_summary(const std::vector<double>& scores, double ratio);

// Empty input gives an empty summary; ratio must lie in (0, 1].
std::string summarize_section(std::string_view text, double ratio = kDefaultSummaryRatio,
                              double damping = kDefaultDamping, double tol = kDefaultTolerance,
                              int max_iter = kDefaultMaxIterations);

}  // namespace docstruct
