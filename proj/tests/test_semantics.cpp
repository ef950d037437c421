#include <algorithm>
#include <cmath>
#include <set>

#include "docstruct/errors.hpp"
#include "docstruct/semantics.hpp"
#include "docstruct/synthgen.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace docstruct;

namespace {

TocTree two_sections(std::string first_class, std::string second_class) {
  Document d;
  d.doc_id = "paper";
  d.lines = {fixture::line("1 Introduction", 100, 12, 700), fixture::line("text", 112),
             fixture::line("References", 130, 12, 700), fixture::line("[1] A. Author.", 142)};
  compute_page_statistics(d);
  const std::vector<HeaderAssignment> h = {{0, 1}, {2, 1}};
  auto tree = detect_section_boundaries(d, h);
  tree.roots[0].ontology_class = std::move(first_class);
  tree.roots[1].ontology_class = std::move(second_class);
  return tree;
}

std::size_t count_predicate(const std::vector<Triple>& t, const std::string& suffix) {
  return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), [&](const Triple& x) {
    return x.predicate.size() >= suffix.size() && x.predicate.compare(x.predicate.size() - suffix.size(), suffix.size(), suffix) == 0;
  }));
}

}  // namespace

TEST_SUITE("semantics") {
  TEST_CASE("scholarly class set") {
    const auto ont = OntologyClassSet::scholarly();
    CHECK(ont.classes.size() == 20);
    CHECK(ont.classes.front() == "Introduction");
    CHECK_NOTHROW(ont.validate());
    std::set<std::string> covered;
    for (const auto& [alias, cls] : ont.alias_map) covered.insert(cls);
    CHECK(covered.size() == 20);
    const auto back = OntologyClassSet::from_json(ont.to_json());
    CHECK(back.classes == ont.classes);
    CHECK(back.alias_map == ont.alias_map);
    CHECK_NOTHROW(OntologyClassSet::rfp().validate());
  }

  TEST_CASE("invalid class sets") {
    OntologyClassSet dup;
    dup.classes = {"A", "A"};
    CHECK_THROWS_AS(dup.validate(), SchemaError);
    OntologyClassSet stray;
    stray.classes = {"A"};
    stray.alias_map["b"] = "B";
    CHECK_THROWS_AS(stray.validate(), SchemaError);
  }

  TEST_CASE("count-based discovery") {
    const auto d = discover_classes_count_based({"1. Introduction", "Introduction", "2 Results"});
    CHECK(d == std::vector<std::pair<std::string, int>>{{"introduction", 2}, {"results", 1}});
    CHECK(discover_classes_count_based({}).empty());
  }

  TEST_CASE("header to class mapping") {
    const auto ont = OntologyClassSet::scholarly();
    CHECK(map_header_to_class("Related Work", ont) == "RelatedWork");
    CHECK(map_header_to_class("Acknowledgments", ont) == "Acknowledgments");
    CHECK(map_header_to_class("3.2 Proof of Theorem 1", ont) == "ProofOfTheorem");
    CHECK(map_header_to_class("4 Experimental Results", ont).has_value());
    CHECK_FALSE(map_header_to_class("Zebra Stripes", ont).has_value());
  }

  TEST_CASE("first_words truncates") {
    CHECK(first_words("a b c d", 2) == "a b");
    CHECK(first_words("a b", 5) == "a b");
    CHECK(first_words("", 3).empty());
  }

  TEST_CASE("section classifier with class-distinctive text") {
    const auto spec = CorpusSpec::standard();
    const auto sections = generate_sections(spec, 12, 4);
    std::vector<std::string> texts, classes;
    for (const auto& s : sections) {
      texts.push_back(s.text);
      classes.push_back(s.ontology_class);
    }
    const auto ont = OntologyClassSet::scholarly();
    const auto clf = train_section_classifier(texts, classes, ont);
    const auto back = SectionClassifier::from_json(clf.to_json());
    CHECK(back.class_names == clf.class_names);

    // A fresh citation-dense body.
    const auto probe = generate_sections(spec, 1, 99);
    const auto related = std::find_if(probe.begin(), probe.end(), [](auto& s) { return s.ontology_class == "RelatedWork"; });
    REQUIRE(related != probe.end());
    SectionNode node;
    node.header.text = "2 Prior Art";
    node.body_text = related->text;
    std::string diag;
    const auto label = classify_section_semantic(node, &clf, ont, &diag);
    REQUIRE(label.has_value());
    CHECK(label->ontology_class == "RelatedWork");
    CHECK_FALSE(label->from_alias);
    CHECK(label->scores.size() == clf.class_names.size());
    CHECK(classify_section_semantic(node, &back, ont)->ontology_class == "RelatedWork");
  }

  TEST_CASE("alias fallback and unclassifiable sections") {
    const auto ont = OntologyClassSet::scholarly();
    SectionNode refs;
    refs.header.text = "References";
    const auto label = classify_section_semantic(refs, nullptr, ont);
    REQUIRE(label.has_value());
    CHECK(label->ontology_class == "References");
    CHECK(label->from_alias);

    SectionNode unknown;
    unknown.header.text = "Zebra Stripes";
    std::string diag;
    CHECK_FALSE(classify_section_semantic(unknown, nullptr, ont, &diag).has_value());
    CHECK_FALSE(diag.empty());
  }

  TEST_CASE("sequence model transitions") {
    const std::vector<std::string> classes = {"Abstract", "Introduction", "Conclusion"};
    const std::vector<std::vector<std::string>> corpus(5, {"Abstract", "Introduction", "Conclusion"});
    const auto m = SequenceModel::fit(corpus, classes);
    const double best = m.probability("Abstract", "Introduction");
    CHECK(best > m.probability("Abstract", "Conclusion"));
    CHECK(best > m.probability("Abstract", "Abstract"));
    CHECK(best > m.probability("Abstract", SequenceModel::kEnd));
    // Four successors (three classes plus end), add-one smoothing: (5 + 1) / (5 + 4).
    CHECK(best == doctest::Approx(6.0 / 9.0));

    const auto empty = SequenceModel::fit({}, classes);
    CHECK(empty.probability(SequenceModel::kStart, "Abstract") == doctest::Approx(0.25));
    CHECK(empty.probability("Conclusion", SequenceModel::kEnd) == doctest::Approx(0.25));

    const double single = m.score({"Introduction"});
    CHECK(single == doctest::Approx(m.log_probability(SequenceModel::kStart, "Introduction") +
                                    m.log_probability("Introduction", SequenceModel::kEnd)));
    CHECK_THROWS_AS(m.score({"Zebra"}), ContractError);
    CHECK_THROWS_AS(SequenceModel::fit({{"Zebra"}}, classes), ContractError);
    CHECK(m.alphabet().size() == 6);
  }

  TEST_CASE("sequence truncation at max_length") {
    const std::vector<std::string> classes = {"A", "B"};
    std::vector<std::string> long_seq(20, "A");
    long_seq[16] = "B";  // beyond position 15, never counted
    const auto m = SequenceModel::fit({long_seq}, classes, 15);
    const auto& counts = m.transition_counts();
    double total = 0;
    for (const auto& row : counts)
      for (double c : row) total += c;
    CHECK(total == 16);  // start->A, 14 A->A, A->end
    CHECK(m.max_length() == 15);
    const auto back = SequenceModel::from_json(m.to_json());
    CHECK(back.transition_counts() == counts);
  }

  TEST_CASE("canonical order recovers the corpus order") {
    const std::vector<std::string> classes = {"Abstract", "Introduction", "Results", "Conclusion"};
    const std::vector<std::vector<std::string>> corpus(4, {"Abstract", "Introduction", "Results", "Conclusion"});
    const auto m = SequenceModel::fit(corpus, classes);
    CHECK(m.canonical_order({"Conclusion", "Abstract", "Results", "Introduction"}) == corpus[0]);
    CHECK(m.canonical_order({}).empty());
  }

  TEST_CASE("annotation triples") {
    const auto ont = OntologyClassSet::scholarly();
    auto tree = two_sections("Introduction", "References");
    const auto triples = emit_ontology_annotation(tree, ont);
    CHECK(triples.size() == 6);
    CHECK(count_predicate(triples, "#type") == 3);
    CHECK(count_predicate(triples, "hasSection") == 2);
    CHECK(count_predicate(triples, "followedBy") == 1);

    tree.roots[0].concepts = {"quark", "momentum"};
    const auto with_concepts = emit_ontology_annotation(tree, ont);
    CHECK(count_predicate(with_concepts, "hasConcept") == 2);
    const auto nt = to_ntriples(with_concepts);
    CHECK(nt.find("\"quark\"") != std::string::npos);
    CHECK(std::count(nt.begin(), nt.end(), '\n') == 8);

    TocTree empty;
    empty.doc_id = "e";
    CHECK(emit_ontology_annotation(empty, ont).size() == 1);

    tree.roots[1].ontology_class = "NotAClass";
    const auto unknown = to_ntriples(emit_ontology_annotation(tree, ont));
    CHECK(unknown.find(kUnknownSection) != std::string::npos);
  }
}
