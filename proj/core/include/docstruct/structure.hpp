#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "docstruct/featurize.hpp"
#include "docstruct/ingest.hpp"
#include "docstruct/learn.hpp"

// Line classification, header levels, section boundaries and the TOC tree.
namespace docstruct {

struct SectionNode {
  std::size_t header_id = 0;  // index into Document::lines
  LineRecord header;
  int level = 1;
  std::vector<std::size_t> body;  // line ids in reading order
  std::string body_text;          // body lines joined, end-of-line hyphens merged
  std::vector<SectionNode> children;
  std::optional<std::string> ontology_class;
  std::vector<std::string> concepts;
  std::optional<std::string> summary;

  std::string text() const;  // header text followed by body text
};

struct TocTree {
  std::string doc_id;
  std::vector<std::size_t> preamble;
  std::vector<SectionNode> roots;
  std::size_t line_count = 0;
};

struct TocEntry {
  std::string title;
  int level = 1;
  int page = 1;

  bool operator==(const TocEntry&) const = default;
};

struct HeaderAssignment {
  std::size_t line = 0;
  int level = 1;
};

struct LineClassification {
  std::vector<int> labels;                  // 0 regular text, 1 section header
  std::vector<std::vector<double>> scores;  // per line, per model class
};

// Requires a model over the {0, 1} alphabet; throws ContractError otherwise
// or when a vector exceeds the model dimension.
LineClassification classify_lines(std::span<const FeatureVector> features, const Model& m, VectorMode mode);

// Requires a model whose alphabet is a subset of {1, 2, 3} with at least two levels.
std::vector<int> classify_header_levels(std::span<const FeatureVector> header_features, const Model& m,
                                        VectorMode mode);

// Stack construction: a level-k header closes every open section of level >= k
// and opens under the nearest open section of lower level; other lines join
// the innermost open section or, before the first header, the preamble.
TocTree detect_section_boundaries(const Document& doc, std::span<const HeaderAssignment> headers);

// Headers from a document whose labels are ground truth (label > 0); depths
// beyond 3 are treated as level 3.
std::vector<HeaderAssignment> headers_from_labels(const Document& doc);

// Pre-order listing; titles verbatim.
std::vector<TocEntry> build_toc(const TocTree& tree);
std::vector<TocEntry> toc_from_bookmarks(const std::vector<BookmarkEntry>& toc);
std::string toc_to_text(const std::vector<TocEntry>& toc);

// Every section, pre-order.
std::vector<const SectionNode*> flatten_sections(const TocTree& tree);
std::vector<SectionNode*> flatten_sections(TocTree& tree);

// Line ids in tree order: preamble, then each section's header and body
// followed by its children.
std::vector<std::size_t> flatten_lines(const TocTree& tree);

// Every line appears exactly once and in document order.
bool conserves_lines(const TocTree& tree);

std::string structure_to_json(const TocTree& tree);
TocTree structure_from_json(std::string_view json);

}  // namespace docstruct
