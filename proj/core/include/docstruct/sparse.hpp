#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace docstruct {

// Sparse feature vector: (index, value) pairs sorted by strictly increasing
// index. Zero-valued entries may be omitted.
struct SparseVector {
  std::vector<std::pair<std::uint32_t, double>> entries;

  static SparseVector from_dense(std::span<const double> dense);

  void push(std::uint32_t index, double value) { entries.emplace_back(index, value); }
  std::size_t size() const { return entries.size(); }
  bool empty() const { return entries.empty(); }
  double l2_norm() const;
  double dot(std::span<const double> dense) const;
  // Value at index (0 when absent); O(log n).
  double at(std::uint32_t index) const;
  // One past the largest stored index.
  std::uint32_t extent() const { return entries.empty() ? 0 : entries.back().first + 1; }
  bool is_sorted() const;

  bool operator==(const SparseVector&) const = default;
};

}  // namespace docstruct
