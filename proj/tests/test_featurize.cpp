#include <cmath>

#include "docstruct/errors.hpp"
#include "docstruct/featurize.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace docstruct;

namespace {

double weight_of(const SparseVector& v, const NgramVectorizer& vec, const std::string& term) {
  auto it = vec.vocabulary().find(term);
  return it == vec.vocabulary().end() ? 0.0 : v.at(it->second);
}

}  // namespace

TEST_SUITE("featurize") {
  TEST_CASE("header vocabulary counts and thresholds") {
    const std::vector<std::string> headers = {"1. Introduction", "Introduction", "2 Results", "Results and Discussion",
                                              "Introduction", "References"};
    const auto vocab = build_header_vocabulary(headers, 2);
    CHECK(vocab.contains("introduction"));
    CHECK(vocab.contains("results"));
    CHECK_FALSE(vocab.contains("references"));  // one occurrence, min_frequency 2
    CHECK_FALSE(vocab.contains("and"));          // stopword
    const auto ranked = vocab.ranked();
    REQUIRE(ranked.size() == 2);
    CHECK(ranked[0] == std::pair<std::string, int>{"introduction", 3});
    CHECK(ranked[1] == std::pair<std::string, int>{"results", 2});
    CHECK(build_header_vocabulary({}, 1).terms.empty());
    CHECK(HeaderVocabulary::from_json(vocab.to_json()).terms == vocab.terms);
  }

  TEST_CASE("numbered bold header line") {
    Document doc;
    doc.lines = {fixture::line("Plain body text line here.", 100), fixture::line("1. Introduction", 120, 14, 700),
                 fixture::line("More body text on the page.", 132), fixture::line("And another one.", 144)};
    compute_page_statistics(doc);
    const auto vocab = build_header_vocabulary({"Introduction"}, 1);
    const auto fv = extract_document_features(doc, vocab)[1];
    CHECK(fv[LayoutFeature::number_dot] == 1);
    CHECK(fv[LayoutFeature::seq_number] == 1);
    CHECK(fv[LayoutFeature::voc] == 1);
    CHECK(fv[LayoutFeature::title_case] == 1);
    CHECK(fv[LayoutFeature::font_weight] == 1);
    CHECK(fv[LayoutFeature::bold_italic] == 1);
    CHECK(fv[LayoutFeature::header_0] == 1);
    CHECK(fv[LayoutFeature::header_1] == 0);
  }

  TEST_CASE("ordinary sentence line") {
    Document doc;
    doc.lines = {fixture::line("Some text before.", 100), fixture::line("the cat sat on the mat.", 112),
                 fixture::line("Some text after.", 124)};
    compute_page_statistics(doc);
    const auto fv = extract_document_features(doc, HeaderVocabulary{})[1];
    CHECK(fv[LayoutFeature::higher_line_space] == 0);
    CHECK(fv[LayoutFeature::all_upper] == 0);
    CHECK(fv[LayoutFeature::colon] == 0);
    CHECK(fv[LayoutFeature::pos_nnp] == 0);
    CHECK(fv[LayoutFeature::number_dot] == 0);
  }

  TEST_CASE("empty text line has no text-derived features") {
    Document doc;
    doc.lines = {fixture::line("", 100)};
    compute_page_statistics(doc);
    const auto fv = extract_document_features(doc, HeaderVocabulary{})[0];
    for (auto f : {LayoutFeature::pos_nnp, LayoutFeature::at_least_3_lines_upper, LayoutFeature::number_dot,
                   LayoutFeature::text_len_group, LayoutFeature::seq_number, LayoutFeature::colon,
                   LayoutFeature::header_0, LayoutFeature::title_case, LayoutFeature::all_upper, LayoutFeature::voc})
      CHECK(fv[f] == 0);
  }

  TEST_CASE("numbering depth") {
    CHECK(numbering_depth("2 Approach") == 1);
    CHECK(numbering_depth("2.1 Features") == 2);
    CHECK(numbering_depth("2.1.1 Details") == 3);
    CHECK(numbering_depth("IV. Results") == 1);
    CHECK(numbering_depth("A.2 Proofs") == 2);
    CHECK(numbering_depth("Introduction") == 0);
    CHECK(numbering_depth("2021was") == 0);
  }

  TEST_CASE("feature names follow the declared order") {
    const auto& names = layout_feature_names();
    CHECK(names.size() == 16);
    CHECK(names[static_cast<std::size_t>(LayoutFeature::pos_nnp)] == "pos_nnp");
    CHECK(names[static_cast<std::size_t>(LayoutFeature::number_dot)] == "number_dot");
    CHECK(names[static_cast<std::size_t>(LayoutFeature::voc)] == "voc");
  }

  TEST_CASE("heuristic tagger") {
    HeuristicPosTagger t;
    const auto tags = t.tag({"The", "Model", "is", "running", "quickly", "evaluation"});
    CHECK(tags[1] == PosTag::noun);
    CHECK(tags[2] == PosTag::verb);
    CHECK(tags[3] == PosTag::verb);
    CHECK(tags[5] == PosTag::noun);
  }

  TEST_CASE("vectorizer vocabulary on a tiny corpus") {
    const auto v = NgramVectorizer::fit({"a b", "a b"}, 1, 3, 1);
    CHECK(v.terms() == std::vector<std::string>{"a", "a b", "b"});
    CHECK(NgramVectorizer::fit({"a b", "a b"}, 1, 3, 3).size() == 0);
    const auto intro = NgramVectorizer::fit({"introduction", "introduction results", "the introduction", "cat"}, 1, 1, 1);
    CHECK(intro.document_frequency("introduction") == 3);
    CHECK(intro.document_frequency("zebra") == 0);
  }

  TEST_CASE("tf-idf weights by hand") {
    const auto v = NgramVectorizer::fit({"a b", "a b"}, 1, 3, 1);
    CHECK(v.transform("zebra").empty());
    CHECK(v.transform("b").l2_norm() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v.transform("b").at(v.vocabulary().at("b")) == doctest::Approx(1.0));

    // "a b a": a twice, b once, "a b" once, same df everywhere.
    const auto x = v.transform("a b a");
    CHECK(weight_of(x, v, "a") == doctest::Approx(2 / std::sqrt(6.0)));
    CHECK(weight_of(x, v, "b") == doctest::Approx(1 / std::sqrt(6.0)));
    CHECK(weight_of(x, v, "a b") == doctest::Approx(1 / std::sqrt(6.0)));

    const auto u = NgramVectorizer::fit({"a b", "a c", "a"}, 1, 1, 1);
    const auto y = u.transform("a b");
    const double wa = 1 + std::log(3.0 / 4.0), wb = 1 + std::log(3.0 / 2.0);
    const double norm = std::sqrt(wa * wa + wb * wb);
    CHECK(weight_of(y, u, "a") == doctest::Approx(wa / norm).epsilon(1e-12));
    CHECK(weight_of(y, u, "b") == doctest::Approx(wb / norm).epsilon(1e-12));
  }

  TEST_CASE("vectorizer serialization round trip") {
    const auto v = NgramVectorizer::fit({"section header text", "header text", "other words"}, 1, 2, 1);
    const auto back = NgramVectorizer::from_json(v.to_json());
    CHECK(back.terms() == v.terms());
    CHECK(back.transform("header text") == v.transform("header text"));
  }

  TEST_CASE("combine keeps the layout block and appends text") {
    FeatureVector layout;
    layout.layout[3] = 1;
    layout.layout[7] = 0.5;
    const auto same = combine(layout, SparseVector{}, 0);
    CHECK(same.layout == layout.layout);
    CHECK(same.text.empty());

    const auto v = NgramVectorizer::fit({"a b", "a b"}, 1, 3, 1);
    const auto c = combine(layout, v.transform("a"), v.size());
    CHECK(c.dimension() == 19);
    const auto flat = model_input(c, VectorMode::combined);
    CHECK(flat.at(3) == 1);
    CHECK(flat.at(16 + v.vocabulary().at("a")) == doctest::Approx(1.0));
    CHECK(model_input(c, VectorMode::layout).extent() <= 16);
    CHECK(model_input(c, VectorMode::text).at(v.vocabulary().at("a")) == doctest::Approx(1.0));
    CHECK(model_dimension(VectorMode::combined, 3) == 19);
  }

  TEST_CASE("vector modes parse") {
    CHECK(parse_vector_mode("layout") == VectorMode::layout);
    CHECK(to_string(VectorMode::combined) == "combined");
    CHECK_THROWS_AS(parse_vector_mode("both"), ContractError);
  }
}
