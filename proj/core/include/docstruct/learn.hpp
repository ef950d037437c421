#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "docstruct/corpus.hpp"
#include "docstruct/sparse.hpp"

// From-scratch classical classifiers: multinomial naive Bayes, a gini-purity
// decision tree and a one-vs-rest linear SVM.
namespace docstruct {

enum class ModelKind { naive_bayes, decision_tree, linear_svm };

ModelKind parse_model_kind(std::string_view name);  // "nb" | "dt" | "svm" or full names
std::string_view to_string(ModelKind kind);

struct Hyperparams {
  double nb_alpha = 1.0;     // additive smoothing
  int max_depth = 12;
  int min_samples_leaf = 5;
  double svm_c = 1.0;        // lambda = 1 / (C * n)
  int svm_epochs = 50;
};

// Sum of squared class fractions: 1 for a pure node, 1/K at the uniform point.
// Throws ContractError unless the fractions are non-negative and sum to 1 (+-1e-9).
double gini_index(std::span<const double> class_fractions);

// Conventional impurity, 1 - gini_index.
double gini_impurity(std::span<const double> class_fractions);

struct NaiveBayesParams {
  double alpha = 1.0;
  std::vector<double> log_prior;                     // per class
  std::vector<std::vector<double>> log_likelihood;  // [class][feature]
};

struct TreeNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0;
  int left = -1;     // x[feature] <= threshold
  int right = -1;
  std::vector<double> distribution;  // class fractions of the training samples reaching the node
  std::size_t samples = 0;

  bool is_leaf() const { return feature < 0; }
};

struct DecisionTreeParams {
  std::vector<TreeNode> nodes;  // nodes[0] is the root
};

struct LinearSvmParams {
  std::vector<std::vector<double>> weights;  // per class
  std::vector<double> bias;
};

struct Prediction {
  int label = 0;
  std::size_t class_index = 0;
  // NB: joint log-probabilities; DT: leaf distribution; SVM: margins.
  std::vector<double> scores;
};

class Model {
 public:
  ModelKind kind = ModelKind::naive_bayes;
  std::vector<int> class_alphabet;
  std::size_t feature_dimension = 0;
  std::variant<NaiveBayesParams, DecisionTreeParams, LinearSvmParams> params;

  // Argmax of scores, ties toward the lower class index. Throws ContractError
  // when x has entries at or beyond feature_dimension.
  Prediction predict(const SparseVector& x) const;

  // Normalized class posteriors (NB: softmax of the joint log-probabilities;
  // DT: leaf distribution; SVM: not available, throws ContractError).
  std::vector<double> posterior(const SparseVector& x) const;
};

// Throws DataError for a single-class or empty dataset, NaN features, or
// negative features for naive Bayes.
Model train(ModelKind kind, const LabeledDataset& ds, const Hyperparams& hp = {}, std::uint64_t seed = 0);

struct ClassMetrics {
  int label = 0;
  double precision = 0, recall = 0, f1 = 0;
  std::size_t support = 0;
  bool never_predicted = false;  // precision defined as 0
};

struct EvalReport {
  std::vector<int> class_alphabet;
  std::vector<ClassMetrics> per_class;
  double macro_precision = 0, macro_recall = 0, macro_f1 = 0;
  double accuracy = 0;
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]

  std::string to_json() const;
  // Aligned table with 4-decimal metrics; class_names parallel to class_alphabet.
  std::string to_table(const std::vector<std::string>& class_names = {}) const;
};

EvalReport evaluate(const Model& m, const LabeledDataset& ds);
EvalReport evaluate_predictions(const std::vector<int>& class_alphabet, const std::vector<int>& truth,
                                const std::vector<int>& predicted);

// Binary layout: "DSMD" magic, format version digits, newline, JSON body.
inline constexpr int kModelFormatVersion = 1;
void save_model(const Model& m, std::ostream& out);
Model load_model(std::istream& in);
void save_model_file(const Model& m, const std::string& path);
Model load_model_file(const std::string& path);

}  // namespace docstruct
