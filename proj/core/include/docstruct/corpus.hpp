#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "docstruct/ingest.hpp"
#include "docstruct/sparse.hpp"

// Bookmark-to-label mapping and dataset splitting.
namespace docstruct {

inline constexpr double kDefaultSimilarityThreshold = 0.85;

struct BookmarkMapping {
  Document document;                     // labels populated
  std::vector<BookmarkEntry> unmatched;  // TOC entries with no line above threshold
  std::size_t matched = 0;
};

// Labels each line with the depth of the TOC entry it matches (normalized
// Levenshtein similarity >= threshold) and 0 otherwise. Assignment is global
// greedy by descending score; ties go to the earlier TOC entry, then the
// earlier line. Every entry and line is used at most once.
BookmarkMapping map_bookmarks_to_labels(const Document& doc, double similarity_threshold =
                                                                 kDefaultSimilarityThreshold);

// Diagnostics report as JSON: {doc_id, matched, unmatched:[{title,depth,order}]}.
std::string bookmark_diagnostics_json(const BookmarkMapping& mapping);

struct LabeledDataset {
  std::vector<SparseVector> features;
  std::vector<int> labels;
  std::vector<int> class_alphabet;  // sorted ascending
  std::size_t dimension = 0;
  // Caller-defined provenance per record (e.g. corpus line index).
  std::vector<std::size_t> ids;
  std::optional<std::vector<int>> folds;

  std::size_t size() const { return labels.size(); }
  void add(SparseVector x, int label, std::size_t id = 0);
  // Sets class_alphabet to the sorted distinct labels.
  void refresh_alphabet();
  std::vector<std::size_t> class_counts() const;  // aligned with class_alphabet
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;
  // Train/test views of fold `fold`; requires folds.
  std::pair<LabeledDataset, LabeledDataset> split_fold(int fold) const;
  // Throws ContractError on inconsistent sizes, unknown labels or out-of-range indices.
  void validate() const;
};

// Per-class counts differ by at most one across folds. Deterministic in seed.
LabeledDataset make_stratified_folds(const LabeledDataset& ds, int k, std::uint64_t seed);

// Downsamples every class to the minority-class count, without replacement.
// Kept records stay in their original relative order.
LabeledDataset balance_classes(const LabeledDataset& ds, std::uint64_t seed);

}  // namespace docstruct
