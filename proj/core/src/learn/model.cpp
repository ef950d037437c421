#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/text.hpp"
#include "internal.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

ModelKind parse_model_kind(std::string_view name) {
  if (name == "nb" || name == "naive_bayes") return ModelKind::naive_bayes;
  if (name == "dt" || name == "decision_tree") return ModelKind::decision_tree;
  if (name == "svm" || name == "linear_svm") return ModelKind::linear_svm;
  throw ContractError("unknown classifier kind: " + std::string(name));
}

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::naive_bayes: return "naive_bayes";
    case ModelKind::decision_tree: return "decision_tree";
    case ModelKind::linear_svm: return "linear_svm";
  }
  return "?";
}

namespace detail {

std::vector<std::size_t> class_indices(const LabeledDataset& ds) {
  std::vector<std::size_t> y(ds.size());
  for (std::size_t i = 0; i < ds.size(); ++i) {
    auto it = std::lower_bound(ds.class_alphabet.begin(), ds.class_alphabet.end(), ds.labels[i]);
    y[i] = static_cast<std::size_t>(it - ds.class_alphabet.begin());
  }
  return y;
}

}  // namespace detail

Model train(ModelKind kind, const LabeledDataset& input, const Hyperparams& hp, std::uint64_t seed) {
  if (input.size() == 0) throw DataError("cannot train on an empty dataset");
  LabeledDataset ds = input;
  if (ds.class_alphabet.empty()) ds.refresh_alphabet();
  if (!std::is_sorted(ds.class_alphabet.begin(), ds.class_alphabet.end()))
    throw ContractError("class alphabet must be sorted");
  ds.validate();
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (!ds.features[i].is_sorted())
      throw ContractError("record " + std::to_string(i) + " has unsorted sparse indices");
    for (const auto& [j, v] : ds.features[i].entries) {
      if (std::isnan(v) || std::isinf(v))
        throw DataError("record " + std::to_string(i) + " has a non-finite value at feature " +
                        std::to_string(j));
      if (kind == ModelKind::naive_bayes && v < 0)
        throw DataError("record " + std::to_string(i) + " has a negative count at feature " +
                        std::to_string(j) + " (multinomial naive Bayes)");
    }
  }
  const auto y = detail::class_indices(ds);
  {
    std::vector<bool> seen(ds.class_alphabet.size(), false);
    for (std::size_t c : y) seen[c] = true;
    if (std::count(seen.begin(), seen.end(), true) < 2)
      throw DataError("training data contains a single class");
  }

  Model m;
  m.kind = kind;
  m.class_alphabet = ds.class_alphabet;
  m.feature_dimension = ds.dimension;
  switch (kind) {
    case ModelKind::naive_bayes:
      if (!(hp.nb_alpha > 0)) throw ContractError("naive Bayes smoothing must be > 0");
      m.params = detail::train_naive_bayes(ds, y, hp.nb_alpha);
      break;
    case ModelKind::decision_tree:
      m.params = detail::train_decision_tree(ds, y, hp.max_depth, hp.min_samples_leaf);
      break;
    case ModelKind::linear_svm:
      if (!(hp.svm_c > 0) || hp.svm_epochs < 1) throw ContractError("invalid SVM hyperparameters");
      m.params = detail::train_linear_svm(ds, y, hp.svm_c, hp.svm_epochs, seed);
      break;
  }
  return m;
}

Prediction Model::predict(const SparseVector& x) const {
  if (x.extent() > feature_dimension)
    throw ContractError("feature vector dimension " + std::to_string(x.extent()) +
                        " exceeds model dimension " + std::to_string(feature_dimension));
  Prediction p;
  switch (kind) {
    case ModelKind::naive_bayes: p.scores = detail::naive_bayes_scores(std::get<NaiveBayesParams>(params), x); break;
    case ModelKind::decision_tree: p.scores = detail::tree_scores(std::get<DecisionTreeParams>(params), x); break;
    case ModelKind::linear_svm: p.scores = detail::svm_scores(std::get<LinearSvmParams>(params), x); break;
  }
  std::size_t best = 0;
  for (std::size_t c = 1; c < p.scores.size(); ++c) {
    if (p.scores[c] > p.scores[best]) best = c;
  }
  p.class_index = best;
  p.label = class_alphabet[best];
  return p;
}

std::vector<double> Model::posterior(const SparseVector& x) const {
  if (kind == ModelKind::linear_svm) throw ContractError("linear SVM does not produce posteriors");
  auto scores = predict(x).scores;
  if (kind == ModelKind::decision_tree) return scores;
  const double top = *std::max_element(scores.begin(), scores.end());
  double total = 0;
  for (double& s : scores) {
    s = std::exp(s - top);
    total += s;
  }
  for (double& s : scores) s /= total;
  return scores;
}

namespace {

constexpr std::string_view kMagic = "DSMD";

json to_json(const Model& m) {
  json j;
  j["kind"] = std::string(to_string(m.kind));
  j["class_alphabet"] = m.class_alphabet;
  j["feature_dimension"] = m.feature_dimension;
  switch (m.kind) {
    case ModelKind::naive_bayes: {
      const auto& p = std::get<NaiveBayesParams>(m.params);
      j["alpha"] = p.alpha;
      j["log_prior"] = p.log_prior;
      j["log_likelihood"] = p.log_likelihood;
      break;
    }
    case ModelKind::decision_tree: {
      json nodes = json::array();
      for (const auto& n : std::get<DecisionTreeParams>(m.params).nodes) {
        nodes.push_back({{"feature", n.feature},
                         {"threshold", n.threshold},
                         {"left", n.left},
                         {"right", n.right},
                         {"samples", n.samples},
                         {"distribution", n.distribution}});
      }
      j["nodes"] = std::move(nodes);
      break;
    }
    case ModelKind::linear_svm: {
      const auto& p = std::get<LinearSvmParams>(m.params);
      j["weights"] = p.weights;
      j["bias"] = p.bias;
      break;
    }
  }
  return j;
}

Model from_json(const json& j) {
  Model m;
  m.kind = parse_model_kind(j.at("kind").get<std::string>());
  m.class_alphabet = j.at("class_alphabet").get<std::vector<int>>();
  m.feature_dimension = j.at("feature_dimension").get<std::size_t>();
  const std::size_t k = m.class_alphabet.size();
  auto check = [](bool ok, const char* what) {
    if (!ok) throw SchemaError(std::string("model file: inconsistent ") + what);
  };
  switch (m.kind) {
    case ModelKind::naive_bayes: {
      NaiveBayesParams p;
      p.alpha = j.at("alpha").get<double>();
      p.log_prior = j.at("log_prior").get<std::vector<double>>();
      p.log_likelihood = j.at("log_likelihood").get<std::vector<std::vector<double>>>();
      check(p.log_prior.size() == k && p.log_likelihood.size() == k, "class count");
      for (const auto& row : p.log_likelihood) check(row.size() == m.feature_dimension, "feature dimension");
      m.params = std::move(p);
      break;
    }
    case ModelKind::decision_tree: {
      DecisionTreeParams p;
      for (const auto& n : j.at("nodes")) {
        TreeNode node;
        node.feature = n.at("feature").get<int>();
        node.threshold = n.at("threshold").get<double>();
        node.left = n.at("left").get<int>();
        node.right = n.at("right").get<int>();
        node.samples = n.at("samples").get<std::size_t>();
        node.distribution = n.at("distribution").get<std::vector<double>>();
        check(node.distribution.size() == k, "leaf distribution");
        p.nodes.push_back(std::move(node));
      }
      check(!p.nodes.empty(), "tree");
      const int count = static_cast<int>(p.nodes.size());
      for (const auto& n : p.nodes) {
        if (!n.is_leaf())
          check(n.left > 0 && n.left < count && n.right > 0 && n.right < count &&
                    static_cast<std::size_t>(n.feature) < m.feature_dimension,
                "tree links");
      }
      m.params = std::move(p);
      break;
    }
    case ModelKind::linear_svm: {
      LinearSvmParams p;
      p.weights = j.at("weights").get<std::vector<std::vector<double>>>();
      p.bias = j.at("bias").get<std::vector<double>>();
      check(p.weights.size() == k && p.bias.size() == k, "class count");
      for (const auto& row : p.weights) check(row.size() == m.feature_dimension, "feature dimension");
      m.params = std::move(p);
      break;
    }
  }
  return m;
}

}  // namespace

void save_model(const Model& m, std::ostream& out) {
  out << kMagic << kModelFormatVersion << '\n' << to_json(m).dump() << '\n';
  if (!out) throw IoError("failed writing model");
}

Model load_model(std::istream& in) {
  std::string header;
  if (!std::getline(in, header) || header.compare(0, kMagic.size(), kMagic) != 0)
    throw SchemaError("not a docstruct model file (bad magic)");
  auto version = text::parse_int(std::string_view(header).substr(kMagic.size()));
  if (!version) throw SchemaError("model file: unreadable format version");
  if (*version != kModelFormatVersion)
    throw VersionError("model format version " + std::to_string(*version) + " is not supported (expected " +
                       std::to_string(kModelFormatVersion) + ")");
  std::ostringstream body;
  body << in.rdbuf();
  try {
    return from_json(json::parse(body.str()));
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model file body: ") + e.what(), 2, e.byte);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("model file: ") + e.what());
  }
}

void save_model_file(const Model& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  save_model(m, out);
}

Model load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return load_model(in);
  } catch (const VersionError& e) {
    throw VersionError(path + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

}  // namespace docstruct
