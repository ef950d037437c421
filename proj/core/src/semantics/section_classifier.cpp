#include <sstream>

#include "docstruct/errors.hpp"
#include "docstruct/semantics.hpp"
#include "docstruct/text.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

std::string first_words(std::string_view text, int n) {
  auto words = text::split_whitespace(text);
  if (n >= 0 && words.size() > static_cast<std::size_t>(n)) words.resize(static_cast<std::size_t>(n));
  return text::join(words, " ");
}

SectionClassifier train_section_classifier(const std::vector<std::string>& texts,
                                           const std::vector<std::string>& classes, const OntologyClassSet& ont,
                                           ModelKind kind, const Hyperparams& hp, std::uint64_t seed, int truncation,
                                           int min_df) {
  if (texts.size() != classes.size()) throw ContractError("texts/classes size mismatch");
  SectionClassifier clf;
  clf.class_names = ont.classes;
  clf.truncation = truncation;
  std::vector<std::string> truncated;
  truncated.reserve(texts.size());
  for (const auto& t : texts) truncated.push_back(first_words(t, truncation));
  clf.vectorizer = NgramVectorizer::fit(truncated, 1, 1, min_df);

  LabeledDataset ds;
  ds.dimension = clf.vectorizer.size();
  for (std::size_t i = 0; i < truncated.size(); ++i) {
    auto idx = ont.index_of(classes[i]);
    if (!idx) throw DataError("section " + std::to_string(i) + " has unknown class '" + classes[i] + "'");
    ds.add(clf.vectorizer.transform(truncated[i]), static_cast<int>(*idx), i);
  }
  ds.dimension = clf.vectorizer.size();
  ds.refresh_alphabet();
  clf.model = train(kind, ds, hp, seed);
  return clf;
}

std::optional<SemanticLabel> classify_section_semantic(const SectionNode& section, const SectionClassifier* clf,
                                                       const OntologyClassSet& ont, std::string* diagnostic) {
  if (clf) {
    const std::string text = first_words(section.text(), clf->truncation);
    SparseVector x = clf->vectorizer.transform(text);
    if (!section.body_text.empty() && !x.empty()) {
      auto p = clf->model.predict(x);
      SemanticLabel label;
      label.ontology_class = clf->class_names.at(static_cast<std::size_t>(p.label));
      label.score = p.scores[p.class_index];
      label.scores.assign(clf->class_names.size(), 0.0);
      for (std::size_t c = 0; c < clf->model.class_alphabet.size(); ++c)
        label.scores[static_cast<std::size_t>(clf->model.class_alphabet[c])] = p.scores[c];
      return label;
    }
  }
  if (auto cls = map_header_to_class(section.header.text, ont)) {
    SemanticLabel label;
    label.ontology_class = *cls;
    label.score = 1.0;
    label.from_alias = true;
    return label;
  }
  if (diagnostic)
    *diagnostic = "section '" + section.header.text + "' has no classifiable text and no alias match";
  return std::nullopt;
}

std::string SectionClassifier::to_json() const {
  std::ostringstream model_bytes;
  save_model(model, model_bytes);
  json j = {{"format", "docstruct.section_classifier"},
            {"version", 1},
            {"class_names", class_names},
            {"truncation", truncation},
            {"vectorizer", json::parse(vectorizer.to_json())},
            {"model", model_bytes.str()}};
  return j.dump() + "\n";
}

SectionClassifier SectionClassifier::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("section classifier: ") + e.what(), 1, e.byte);
  }
  if (j.value("format", "") != "docstruct.section_classifier") throw SchemaError("not a section classifier file");
  if (j.value("version", 0) != 1) throw VersionError("unsupported section classifier version");
  SectionClassifier clf;
  try {
    clf.class_names = j.at("class_names").get<std::vector<std::string>>();
    clf.truncation = j.at("truncation").get<int>();
    clf.vectorizer = NgramVectorizer::from_json(j.at("vectorizer").dump());
    std::istringstream model_bytes(j.at("model").get<std::string>());
    clf.model = load_model(model_bytes);
  } catch (const json::exception& e) {
    throw SchemaError(std::string("section classifier: ") + e.what());
  }
  return clf;
}

}  // namespace docstruct
