#include <cmath>
#include <numeric>

#include "docstruct/errors.hpp"
#include "docstruct/summarize.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace docstruct;

TEST_SUITE("summarize") {
  TEST_CASE("sentence similarity") {
    const std::vector<std::string> s = {"graph", "based", "ranking", "model"};
    CHECK(sentence_similarity(s, s) == doctest::Approx(4.0 / (2.0 * std::log(4.0))));
    CHECK(sentence_similarity(s, s) == doctest::Approx(1.4427).epsilon(1e-4));
    CHECK(sentence_similarity(s, {"other", "words", "entirely"}) == 0);
    CHECK(sentence_similarity({"graph"}, s) == 0);
    // Repeated tokens count once in the overlap.
    CHECK(sentence_similarity({"a", "a", "b"}, {"a", "c"}) == doctest::Approx(1.0 / (std::log(3.0) + std::log(2.0))));
  }

  TEST_CASE("degenerate graphs") {
    const auto one = textrank_scores({{0.0}});
    CHECK(one.scores == std::vector<double>{1.0});
    CHECK(one.converged);

    const std::vector<std::vector<double>> cycle = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
    const auto r = textrank_scores(cycle);
    CHECK(r.scores[0] == doctest::Approx(1.0 / 3));
    CHECK(r.scores[1] == doctest::Approx(r.scores[2]));

    const std::vector<std::vector<double>> isolated(4, std::vector<double>(4, 0.0));
    for (double v : textrank_scores(isolated).scores) CHECK(v == doctest::Approx(0.25));
  }

  TEST_CASE("scores agree with a dense oracle and are scale invariant") {
    const std::vector<std::vector<double>> w = {{0, 2, 0, 1}, {2, 0, 3, 0}, {0, 3, 0, 0.5}, {1, 0, 0.5, 0}};
    const auto r = textrank_scores(w, 0.85, 1e-12, 1000);
    const auto expect = oracle::dense_pagerank(w, 0.85);
    for (std::size_t i = 0; i < 4; ++i) CHECK(r.scores[i] == doctest::Approx(expect[i]).epsilon(1e-10));
    CHECK(std::accumulate(r.scores.begin(), r.scores.end(), 0.0) == doctest::Approx(1.0));

    auto scaled = w;
    for (auto& row : scaled)
      for (auto& v : row) v *= 7.5;
    const auto s = textrank_scores(scaled, 0.85, 1e-12, 1000);
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.scores[i] == doctest::Approx(r.scores[i]).epsilon(1e-12));
  }

  TEST_CASE("iteration budget exhaustion is reported") {
    const std::vector<std::vector<double>> w = {{0, 1, 0}, {1, 0, 5}, {0, 5, 0}};
    const auto r = textrank_scores(w, 0.85, 1e-15, 2);
    CHECK_FALSE(r.converged);
    CHECK(r.iterations == 2);
  }

  TEST_CASE("invalid weight matrices") {
    CHECK_THROWS_AS(textrank_scores({}), ContractError);
    CHECK_THROWS_AS(textrank_scores({{0, 1}}), ContractError);
    CHECK_THROWS_AS(textrank_scores({{0, 1}, {2, 0}}), ContractError);
    CHECK_THROWS_AS(textrank_scores({{0, -1}, {-1, 0}}), ContractError);
  }

  TEST_CASE("sentence splitting") {
    const auto s = split_sentences("We propose a model. It works well! Does it scale? Yes, see Fig. 2 and Dr. Smith.");
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "We propose a model.");
    CHECK(s[3] == "Yes, see Fig. 2 and Dr. Smith.");
    CHECK(split_sentences("J. R. Tolkien wrote books. They sold.").size() == 2);
    CHECK(split_sentences("lower case. continues here").size() == 1);
    CHECK(split_sentences("He said \"stop.\" Then left.").size() == 2);
    CHECK(split_sentences("   ").empty());
  }

  TEST_CASE("summary length") {
    CHECK(select_summary(std::vector<double>(10, 0.1), 0.2).size() == 2);
    CHECK(select_summary(std::vector<double>(3, 0.1), 0.2).size() == 1);
    CHECK(select_summary(std::vector<double>(5, 0.1), 1.0) == std::vector<std::size_t>{0, 1, 2, 3, 4});
    CHECK(select_summary({}, 0.2).empty());
    CHECK(select_summary({0.1, 0.5, 0.5, 0.2}, 0.5) == std::vector<std::size_t>{1, 2});
    CHECK(select_summary({0.3, 0.1, 0.3, 0.3}, 0.5) == std::vector<std::size_t>{0, 2});
    CHECK_THROWS_AS(select_summary({0.5}, 0.0), ContractError);
    CHECK_THROWS_AS(select_summary({0.5}, 1.5), ContractError);
  }

  TEST_CASE("summarize a section") {
    const std::string text =
        "Topic models describe documents as mixtures. Gibbs sampling estimates topic models. "
        "The weather was pleasant yesterday. Topic models and Gibbs sampling are common in documents. "
        "Birds sing.";
    const auto summary = summarize_section(text, 0.2);
    CHECK(summary == "Topic models and Gibbs sampling are common in documents.");
    CHECK(summarize_section(text, 1.0).size() == text.size());
    CHECK(summarize_section("", 0.2).empty());
    CHECK_THROWS_AS(summarize_section(text, 0), ContractError);
  }
}
