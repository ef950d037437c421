#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/topics.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace docstruct;

namespace {

const TopicModel& two_topic_model() {
  static const TopicModel m = [] {
    const auto sections = fixture::two_topic_sections(100, 30, 41);
    LdaOptions o;
    o.topics = 2;
    o.iterations = 200;
    o.seed = 3;
    return train_lda(sections, fixture::permissive_dictionary(sections), o);
  }();
  return m;
}

std::size_t topic_of_vocabulary_a(const TopicModel& m) {
  const std::set<std::string> a(fixture::vocabulary_a().begin(), fixture::vocabulary_a().end());
  const auto top = m.top_terms(0, 5);
  return a.count(top[0]) ? 0 : 1;
}

}  // namespace

TEST_SUITE("topics") {
  TEST_CASE("topic tokens") {
    CHECK(topic_tokens("The 3 quarks and a gluon, 2019.") == std::vector<std::string>{"quarks", "gluon"});
    CHECK(topic_tokens("dark matter halo", TokenMode::bigram) ==
          std::vector<std::string>{"dark_matter", "matter_halo"});
    const auto phrases = topic_tokens("dark matter halo", TokenMode::phrase);
    CHECK(phrases.size() == 6);
    CHECK(std::count(phrases.begin(), phrases.end(), "dark_matter_halo") == 1);
    CHECK(parse_token_mode("phrase") == TokenMode::phrase);
    CHECK_THROWS_AS(parse_token_mode("sentence"), ContractError);
  }

  TEST_CASE("dictionary defaults") {
    const DictionaryOptions d;
    CHECK(d.min_sections == 20);
    CHECK(d.max_fraction == doctest::Approx(0.10));
    CHECK(d.cap == 100000);
  }

  TEST_CASE("dictionary filters by section frequency") {
    std::vector<std::vector<std::string>> sections(10, std::vector<std::string>{"common"});
    for (int i = 0; i < 3; ++i) sections[static_cast<std::size_t>(i)].push_back("rare");
    sections[9].push_back("once");
    DictionaryOptions o;
    o.min_sections = 3;
    o.max_fraction = 0.5;
    const auto dict = build_dictionary(sections, o);
    CHECK(dict.terms == std::vector<std::string>{"rare"});
    CHECK(dict.section_frequency == std::vector<int>{3});
    CHECK(dict.section_count == 10);
    CHECK(dict.find("common") == std::nullopt);
    CHECK(dict.encode({"rare", "common", "rare"}) == std::vector<std::uint32_t>{0, 0});
  }

  TEST_CASE("dictionary cap keeps the most frequent terms, ids lexicographic") {
    const std::vector<std::vector<std::string>> sections = {{"b", "c", "a"}, {"b", "c"}, {"b", "d"}, {"e"}};
    DictionaryOptions o;
    o.min_sections = 1;
    o.max_fraction = 1.0;
    o.cap = 2;
    const auto dict = build_dictionary(sections, o);
    CHECK(dict.terms == std::vector<std::string>{"b", "c"});
    o.cap = 100;
    const auto all = build_dictionary(sections, o);
    CHECK(all.terms == std::vector<std::string>{"a", "b", "c", "d", "e"});
    CHECK(all.ids.at("d") == 3);
  }

  TEST_CASE("single topic closed form") {
    const std::vector<std::vector<std::string>> sections = {{"x", "y", "x"}, {"x", "z"}, {"y"}};
    const auto dict = fixture::permissive_dictionary(sections);
    LdaOptions o;
    o.topics = 1;
    o.iterations = 20;
    o.beta = 0.5;
    const TopicModel m = train_lda(sections, dict, o);
    CHECK(m.topic_totals == std::vector<int>{6});
    // (n_w + beta) / (N + V beta) with counts x 3, y 2, z 1.
    const std::vector<double> expect = {3.5 / 7.5, 2.5 / 7.5, 1.5 / 7.5};
    const auto phi = m.topic_word_distribution(0);
    for (std::size_t w = 0; w < 3; ++w) CHECK(phi[w] == doctest::Approx(expect[w]).epsilon(1e-12));
    for (const auto& dt : m.doc_topic) CHECK(dt.size() == 1);
    const double lp = log_perplexity(m, sections);
    const double manual = (3 * std::log(expect[0]) + 2 * std::log(expect[1]) + std::log(expect[2])) / 6.0;
    CHECK(lp == doctest::Approx(manual).epsilon(1e-12));

    const std::vector<std::vector<std::string>> one_word = {{"w", "w"}, {"w"}};
    const TopicModel single = train_lda(one_word, fixture::permissive_dictionary(one_word), o);
    CHECK(log_perplexity(single, one_word) == doctest::Approx(0.0));
  }

  TEST_CASE("alpha defaults to 50 / K") {
    const TopicModel& m = two_topic_model();
    CHECK(m.alpha == doctest::Approx(25.0));
    CHECK(m.beta == doctest::Approx(0.01));
    CHECK(m.log_likelihood.size() == 200);
  }

  TEST_CASE("disjoint vocabularies separate into topics") {
    const TopicModel& m = two_topic_model();
    const std::set<std::string> a(fixture::vocabulary_a().begin(), fixture::vocabulary_a().end());
    for (std::size_t k = 0; k < 2; ++k) {
      const auto top = m.top_terms(k, 10);
      const auto in_a = std::count_if(top.begin(), top.end(), [&](auto& t) { return a.count(t) > 0; });
      CHECK((in_a >= 9 || in_a <= 1));
    }
    // Later sweeps fit better than the first.
    CHECK(m.log_likelihood.back() > m.log_likelihood.front());
    CHECK(m.corpus_log_likelihood() == doctest::Approx(m.log_likelihood.back()));
  }

  TEST_CASE("fold-in inference") {
    const TopicModel& m = two_topic_model();
    const std::size_t a_topic = topic_of_vocabulary_a(m);
    // With alpha = 50/K the prior outweighs short sections, so the probe has to be long.
    std::vector<std::string> pure_a;
    for (int i = 0; i < 400; ++i) pure_a.push_back(fixture::vocabulary_a()[i % fixture::vocabulary_a().size()]);
    const auto theta = infer_topics(m, pure_a, 50, 1);
    CHECK(theta[a_topic] >= 0.9);
    CHECK(std::accumulate(theta.begin(), theta.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));

    std::string diag;
    const auto empty = infer_topics(m, {}, 50, 1, &diag);
    CHECK(empty == std::vector<double>{0.5, 0.5});
    CHECK_FALSE(diag.empty());
    CHECK(infer_topics(m, {"unknownword"}, 50, 1) == std::vector<double>{0.5, 0.5});
  }

  TEST_CASE("semantic concepts") {
    const TopicModel& m = two_topic_model();
    const std::vector<std::string> b_tokens(fixture::vocabulary_b().begin(), fixture::vocabulary_b().end());
    const auto concepts = semantic_concepts(m, b_tokens, 3);
    REQUIRE(concepts.size() == 3);
    const std::set<std::string> b(b_tokens.begin(), b_tokens.end());
    for (const auto& c : concepts) CHECK(b.count(c) == 1);
    CHECK(semantic_concepts(m, b_tokens, 0).empty());
    const auto all = semantic_concepts(m, b_tokens, 1000);
    CHECK(all.size() == m.dictionary.size());
    CHECK(all == m.top_terms(topic_of_vocabulary_a(m) == 0 ? 1 : 0, 1000));
  }

  TEST_CASE("cosine and half-split evaluation") {
    CHECK(cosine_similarity({0.2, 0.8}, {0.2, 0.8}) == doctest::Approx(1.0));
    CHECK(cosine_similarity({1, 0}, {0, 1}) == doctest::Approx(0.0));

    const std::vector<std::vector<std::string>> sections = {{"x", "y", "x", "y"}, {"y", "x", "y", "x"}, {"x"}};
    const auto dict = fixture::permissive_dictionary(sections);
    LdaOptions o;
    o.topics = 1;
    o.iterations = 5;
    const TopicModel one = train_lda(sections, dict, o);
    const auto chunks = half_split_similarity_eval(one, sections, 1, 5);
    REQUIRE(chunks.size() == 1);
    CHECK(chunks[0].intra == doctest::Approx(1.0));
    CHECK(chunks[0].sections == 2);
    CHECK(chunks[0].skipped == 1);

    const TopicModel& m = two_topic_model();
    const auto test_sections = fixture::two_topic_sections(40, 30, 77);
    for (const auto& c : half_split_similarity_eval(m, test_sections, 4, 9)) CHECK(c.intra > c.inter);
    CHECK_THROWS_AS(half_split_similarity_eval(m, test_sections, 0, 9), ContractError);
    CHECK_THROWS_AS(half_split_similarity_eval(m, test_sections, 41, 9), ContractError);
  }

  TEST_CASE("perplexity beats the uniform-topic baseline") {
    const TopicModel& m = two_topic_model();
    const auto sections = fixture::two_topic_sections(100, 30, 41);
    CHECK(log_perplexity(m, sections) >= log_perplexity_uniform(m, sections));
    CHECK_THROWS_AS(log_perplexity(m, {}), DataError);
    CHECK_THROWS_AS(log_perplexity(m, {{"unknownword"}}), DataError);
  }

  TEST_CASE("training preconditions") {
    const auto sections = fixture::two_topic_sections(4, 5, 1);
    const auto dict = fixture::permissive_dictionary(sections);
    LdaOptions o;
    o.topics = 0;
    CHECK_THROWS_AS(train_lda(sections, dict, o), ContractError);
    o.topics = 2;
    CHECK_THROWS_AS(train_lda({{}, {"nothing"}}, dict, o), DataError);
  }

  TEST_CASE("topic model files") {
    const TopicModel& m = two_topic_model();
    std::stringstream io;
    save_topic_model(m, io);
    const std::string bytes = io.str();
    const TopicModel back = load_topic_model(io);
    CHECK(back.topic_word == m.topic_word);
    CHECK(back.dictionary.terms == m.dictionary.terms);
    CHECK(top_terms_table(back, 3) == top_terms_table(m, 3));
    CHECK(top_terms_table(m, 2).rfind("Topic 0: ", 0) == 0);

    std::string bumped = bytes;
    bumped[4] = '7';
    std::istringstream future(bumped);
    CHECK_THROWS_AS(load_topic_model(future), VersionError);
    std::istringstream truncated(bytes.substr(0, bytes.size() / 3));
    CHECK_THROWS(load_topic_model(truncated));
  }
}
