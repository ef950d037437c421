#include "docstruct/semantics.hpp"

namespace docstruct {

namespace {

constexpr const char* kRdfType = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
constexpr const char* kOntology = "urn:docstruct:ontology#";

std::string escape_literal(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

std::string iri_safe(std::string_view s) {
  std::string out;
  for (char c : s) {
    const bool bad = c == ' ' || c == '<' || c == '>' || c == '"' || c == '{' || c == '}' || c == '|' ||
                     c == '\\' || c == '^' || c == '`' || static_cast<unsigned char>(c) < 0x21;
    out.push_back(bad ? '_' : c);
  }
  return out;
}

}  // namespace

std::vector<Triple> emit_ontology_annotation(const TocTree& tree, const OntologyClassSet& ont) {
  std::vector<Triple> out;
  const std::string doc = "urn:docstruct:doc:" + iri_safe(tree.doc_id);
  const std::string ns = kOntology;
  out.push_back({doc, kRdfType, ns + "Document", false});
  const auto sections = flatten_sections(tree);
  for (std::size_t i = 0; i < sections.size(); ++i) {
    const SectionNode& s = *sections[i];
    const std::string id = doc + "#s" + std::to_string(i + 1);
    std::string cls = kUnknownSection;
    if (s.ontology_class && ont.index_of(*s.ontology_class)) cls = *s.ontology_class;
    out.push_back({doc, ns + "hasSection", id, false});
    out.push_back({id, kRdfType, ns + cls, false});
    for (const auto& concept_term : s.concepts) out.push_back({id, ns + "hasConcept", concept_term, true});
    if (i + 1 < sections.size()) out.push_back({id, ns + "followedBy", doc + "#s" + std::to_string(i + 2), false});
  }
  return out;
}

std::string to_ntriples(const std::vector<Triple>& triples) {
  std::string out;
  for (const auto& t : triples) {
    out += "<" + t.subject + "> <" + t.predicate + "> ";
    out += t.literal ? "\"" + escape_literal(t.object) + "\"" : "<" + t.object + ">";
    out += " .\n";
  }
  return out;
}

}  // namespace docstruct
