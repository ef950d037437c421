#include <cmath>
#include <limits>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/learn.hpp"
#include "docstruct/rng.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace docstruct;

namespace {

LabeledDataset separable_2d(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  LabeledDataset ds;
  ds.dimension = 2;
  for (std::size_t i = 0; i < n; ++i) {
    const int label = static_cast<int>(i % 2);
    // Non-negative so the same data also suits naive Bayes.
    const double cx = label ? 7.0 : 1.0;
    ds.add(SparseVector::from_dense(std::vector<double>{cx + rng.uniform() - 0.5, rng.uniform() * 4}), label);
  }
  ds.refresh_alphabet();
  return ds;
}

// Twelve layout-style rows where only number_dot (index 6) separates the classes.
LabeledDataset number_dot_rows() {
  LabeledDataset ds;
  ds.dimension = 16;
  for (int i = 0; i < 12; ++i) {
    std::vector<double> x(16, 0.0);
    const int label = i < 6 ? 1 : 0;
    x[6] = label;
    x[7] = (i % 3) * 0.5;
    x[13] = i % 2;
    ds.add(SparseVector::from_dense(x), label);
  }
  ds.refresh_alphabet();
  return ds;
}

}  // namespace

TEST_SUITE("learn") {
  TEST_CASE("gini index values") {
    CHECK(gini_index(std::vector<double>{0.5, 0.5}) == doctest::Approx(0.5));
    CHECK(gini_index(std::vector<double>{1.0, 0.0}) == 1.0);
    CHECK(gini_index(std::vector<double>{0.8, 0.2}) == doctest::Approx(0.68));
    CHECK(gini_impurity(std::vector<double>{0.8, 0.2}) == doctest::Approx(0.32));
    CHECK_THROWS_AS(gini_index(std::vector<double>{0.5, 0.4}), ContractError);
    CHECK_THROWS_AS(gini_index(std::vector<double>{1.2, -0.2}), ContractError);
  }

  TEST_CASE("naive Bayes on the hand corpus") {
    const Model m = train(ModelKind::naive_bayes, fixture::nb_hand_corpus());
    const auto x = SparseVector::from_dense(std::vector<double>{0, 0, 1, 0, 0, 0});
    const auto p = m.predict(x);
    CHECK(p.label == 1);
    CHECK(p.scores[1] == doctest::Approx(std::log(0.5) + std::log(1.0 / 3.0)).epsilon(1e-12));
    CHECK(p.scores[0] == doctest::Approx(std::log(0.5) + std::log(1.0 / 11.0)).epsilon(1e-12));
    CHECK(m.posterior(x)[1] == doctest::Approx(11.0 / 14.0).epsilon(1e-12));
  }

  TEST_CASE("naive Bayes ties go to the lower class index") {
    LabeledDataset ds;
    ds.dimension = 2;
    ds.add(SparseVector::from_dense(std::vector<double>{1, 1}), 0);
    ds.add(SparseVector::from_dense(std::vector<double>{1, 1}), 1);
    ds.refresh_alphabet();
    const Model m = train(ModelKind::naive_bayes, ds);
    CHECK(m.predict(SparseVector::from_dense(std::vector<double>{1, 0})).label == 0);
  }

  TEST_CASE("decision tree splits on number_dot and memorizes") {
    const auto ds = number_dot_rows();
    Hyperparams hp;
    hp.min_samples_leaf = 1;
    const Model m = train(ModelKind::decision_tree, ds, hp);
    const auto& root = std::get<DecisionTreeParams>(m.params).nodes[0];
    CHECK(root.feature == 6);
    CHECK(evaluate(m, ds).accuracy == 1.0);
    for (std::size_t i = 0; i < ds.size(); ++i) CHECK(m.predict(ds.features[i]).label == ds.labels[i]);
  }

  TEST_CASE("linear SVM on separable data") {
    const auto ds = separable_2d(80, 5);
    const Model m = train(ModelKind::linear_svm, ds, {}, 3);
    const auto r = evaluate(m, ds);
    CHECK(r.macro_f1 == 1.0);
    CHECK_THROWS_AS(m.posterior(ds.features[0]), ContractError);
  }

  TEST_CASE("training is deterministic in the seed") {
    const auto ds = separable_2d(60, 9);
    for (auto kind : {ModelKind::naive_bayes, ModelKind::decision_tree, ModelKind::linear_svm}) {
      std::ostringstream a, b;
      save_model(train(kind, ds, {}, 4), a);
      save_model(train(kind, ds, {}, 4), b);
      CHECK(a.str() == b.str());
    }
  }

  TEST_CASE("invalid training data") {
    LabeledDataset one;
    one.dimension = 1;
    one.add(SparseVector::from_dense(std::vector<double>{1}), 0);
    one.add(SparseVector::from_dense(std::vector<double>{2}), 0);
    one.refresh_alphabet();
    CHECK_THROWS_AS(train(ModelKind::decision_tree, one), DataError);

    auto nan = separable_2d(10, 1);
    nan.features[3] = SparseVector::from_dense(std::vector<double>{std::numeric_limits<double>::quiet_NaN(), 1});
    try {
      train(ModelKind::linear_svm, nan);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("3") != std::string::npos);
    }
    auto negative = fixture::nb_hand_corpus();
    negative.features[0] = SparseVector::from_dense(std::vector<double>{-1, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(train(ModelKind::naive_bayes, negative), DataError);
  }

  TEST_CASE("prediction rejects vectors wider than the model") {
    const Model m = train(ModelKind::naive_bayes, fixture::nb_hand_corpus());
    CHECK_THROWS_AS(m.predict(SparseVector::from_dense(std::vector<double>(7, 1.0))), ContractError);
  }

  TEST_CASE("metrics from a confusion matrix") {
    // TP 9, FP 1, FN 3, TN 7 with class 1 as positive.
    std::vector<int> truth, pred;
    auto add = [&](int t, int p, int n) {
      for (int i = 0; i < n; ++i) {
        truth.push_back(t);
        pred.push_back(p);
      }
    };
    add(1, 1, 9);
    add(0, 1, 1);
    add(1, 0, 3);
    add(0, 0, 7);
    const auto r = evaluate_predictions({0, 1}, truth, pred);
    CHECK(r.per_class[1].precision == doctest::Approx(0.9));
    CHECK(r.per_class[1].recall == doctest::Approx(0.75));
    CHECK(r.per_class[1].f1 == doctest::Approx(0.8181818181));
    CHECK(r.confusion[1][0] == 3);
    CHECK(r.accuracy == doctest::Approx(0.8));
  }

  TEST_CASE("degenerate predictors") {
    const std::vector<int> truth = {0, 0, 1, 1};
    const auto perfect = evaluate_predictions({0, 1}, truth, truth);
    CHECK(perfect.macro_f1 == 1.0);
    CHECK(perfect.accuracy == 1.0);
    const auto constant = evaluate_predictions({0, 1}, truth, {0, 0, 0, 0});
    CHECK(constant.accuracy == 0.5);
    CHECK(constant.per_class[1].recall == 0);
    CHECK(constant.per_class[1].never_predicted);
    CHECK(constant.per_class[1].precision == 0);
    const auto table = perfect.to_table({"body", "header"});
    CHECK(table.find("1.0000") != std::string::npos);
    CHECK(table.find("header") != std::string::npos);
  }

  TEST_CASE("model files round trip and reject damage") {
    const auto ds = separable_2d(40, 2);
    for (auto kind : {ModelKind::naive_bayes, ModelKind::decision_tree, ModelKind::linear_svm}) {
      const Model m = train(kind, ds, {}, 1);
      std::stringstream io;
      save_model(m, io);
      const std::string bytes = io.str();
      const Model back = load_model(io);
      for (const auto& x : ds.features) CHECK(back.predict(x).scores == m.predict(x).scores);

      std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
      CHECK_THROWS_AS(load_model(truncated), ParseError);
      std::string bumped = bytes;
      bumped[4] = '9';
      std::istringstream future(bumped);
      CHECK_THROWS_AS(load_model(future), VersionError);
      std::istringstream garbage("not a model");
      CHECK_THROWS(load_model(garbage));
    }
  }

  TEST_CASE("model kinds parse") {
    CHECK(parse_model_kind("nb") == ModelKind::naive_bayes);
    CHECK(parse_model_kind("dt") == ModelKind::decision_tree);
    CHECK(parse_model_kind("svm") == ModelKind::linear_svm);
    CHECK_THROWS_AS(parse_model_kind("cnn"), ContractError);
  }
}
