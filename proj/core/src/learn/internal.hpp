#pragma once

#include "docstruct/learn.hpp"

namespace docstruct::detail {

// Dense class index per record, aligned with ds.class_alphabet.
std::vector<std::size_t> class_indices(const LabeledDataset& ds);

NaiveBayesParams train_naive_bayes(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                   double alpha);
DecisionTreeParams train_decision_tree(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                       int max_depth, int min_samples_leaf);
LinearSvmParams train_linear_svm(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                 double c, int epochs, std::uint64_t seed);

std::vector<double> naive_bayes_scores(const NaiveBayesParams& p, const SparseVector& x);
std::vector<double> tree_scores(const DecisionTreeParams& p, const SparseVector& x);
std::vector<double> svm_scores(const LinearSvmParams& p, const SparseVector& x);

}  // namespace docstruct::detail
