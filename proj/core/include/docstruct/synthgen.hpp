#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/ingest.hpp"
#include "docstruct/structure.hpp"

// Synthetic scholarly-style documents with planted structure and labels.
namespace docstruct {

struct ClassVocabulary {
  std::vector<std::string> headers;  // level-1 header titles
  std::vector<std::string> words;    // distinctive body vocabulary
  double inclusion = 0.5;            // probability a document contains the class
  bool numbered = true;              // level-1 header carries a number
  bool subsections = true;           // may hold level-2/3 headers
};

struct CorpusSpec {
  int n_docs = 50;
  std::uint64_t seed = 7;
  int min_sections = 4;  // level-1 sections per document
  int max_sections = 9;
  // Header-depth distribution. After each header a depth is drawn: 1 closes
  // the top-level section, deeper values open a subsection (clamped to one
  // below the previous header).
  std::array<double, 3> depth_distribution = {0.55, 0.30, 0.15};
  int min_paragraphs = 1;
  int max_paragraphs = 3;
  int min_sentences = 2;
  int max_sentences = 5;
  double class_word_rate = 0.35;  // share of body words drawn from the class table

  double font_jitter = 0.0;        // std-dev (pt) added to every font size
  double spacing_jitter = 0.0;     // std-dev (pt) added to every line gap
  double non_bold_header_rate = 0.0;
  double header_corruption_rate = 0.0;  // per-character edit rate in bookmark titles
  double hard_negative_rate = 0.0;      // per-paragraph chance of a list item or caption

  // Ontology class order used for section sequences; each entry names a key
  // of `classes`.
  std::vector<std::string> class_order;
  std::map<std::string, ClassVocabulary> classes;
  std::vector<std::string> general_words;

  // Throws SchemaError describing the first invalid field.
  void validate() const;

  std::string to_json() const;
  static CorpusSpec from_json(std::string_view json);

  // Built-in tables for the 20 scholarly classes, no noise.
  static CorpusSpec standard();
  // standard() with the layout and header noise used by the experiments.
  static CorpusSpec noisy();
};

struct GeneratedDocument {
  Document document;                        // lines carry ground-truth labels; toc holds the bookmarks
  std::vector<TocEntry> planted_toc;        // headers in order, exact text
  std::vector<std::string> section_classes; // ontology class per level-1 section
  std::vector<std::string> section_texts;   // body text per level-1 section, subsections included
};

std::vector<GeneratedDocument> generate_corpus(const CorpusSpec& spec);

// Stand-alone section bodies for the semantic classifier: `per_class`
// sections for every class, in class order.
struct LabeledSection {
  std::string text;
  std::string ontology_class;
};
std::vector<LabeledSection> generate_sections(const CorpusSpec& spec, int per_class, std::uint64_t seed);

void write_tetml(const Document& doc, std::ostream& out);

}  // namespace docstruct
