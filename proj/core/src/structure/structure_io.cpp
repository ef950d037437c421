#include "docstruct/errors.hpp"
#include "docstruct/structure.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

namespace {

json section_json(const SectionNode& s) {
  json children = json::array();
  for (const auto& c : s.children) children.push_back(section_json(c));
  json j = {{"header", s.header.text},
            {"header_line_id", s.header_id},
            {"level", s.level},
            {"page", s.header.page_number},
            {"body_line_ids", s.body},
            {"body_text", s.body_text},
            {"concepts", s.concepts},
            {"children", std::move(children)}};
  j["ontology_class"] = s.ontology_class ? json(*s.ontology_class) : json(nullptr);
  j["summary"] = s.summary ? json(*s.summary) : json(nullptr);
  return j;
}

SectionNode section_from(const json& j) {
  SectionNode s;
  s.header.text = j.at("header").get<std::string>();
  s.header_id = j.at("header_line_id").get<std::size_t>();
  s.level = j.at("level").get<int>();
  s.header.page_number = j.at("page").get<int>();
  s.body = j.at("body_line_ids").get<std::vector<std::size_t>>();
  s.body_text = j.value("body_text", "");
  s.concepts = j.value("concepts", std::vector<std::string>{});
  if (j.contains("ontology_class") && j["ontology_class"].is_string())
    s.ontology_class = j["ontology_class"].get<std::string>();
  if (j.contains("summary") && j["summary"].is_string()) s.summary = j["summary"].get<std::string>();
  for (const auto& c : j.at("children")) s.children.push_back(section_from(c));
  return s;
}

}  // namespace

std::string structure_to_json(const TocTree& tree) {
  json sections = json::array();
  for (const auto& r : tree.roots) sections.push_back(section_json(r));
  json j = {{"doc_id", tree.doc_id},
            {"line_count", tree.line_count},
            {"preamble", tree.preamble},
            {"sections", std::move(sections)}};
  return j.dump(2) + "\n";
}

TocTree structure_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("structure JSON: ") + e.what(), 1, e.byte);
  }
  TocTree tree;
  try {
    tree.doc_id = j.at("doc_id").get<std::string>();
    tree.preamble = j.at("preamble").get<std::vector<std::size_t>>();
    tree.line_count = j.value("line_count", std::size_t{0});
    for (const auto& s : j.at("sections")) tree.roots.push_back(section_from(s));
  } catch (const json::exception& e) {
    throw SchemaError(std::string("structure JSON: ") + e.what());
  }
  return tree;
}

}  // namespace docstruct
