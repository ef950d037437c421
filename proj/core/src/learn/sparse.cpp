#include <algorithm>
#include <cmath>

#include "docstruct/sparse.hpp"

namespace docstruct {

SparseVector SparseVector::from_dense(std::span<const double> dense) {
  SparseVector v;
  for (std::size_t i = 0; i < dense.size(); ++i) {
    if (dense[i] != 0.0) v.push(static_cast<std::uint32_t>(i), dense[i]);
  }
  return v;
}

double SparseVector::l2_norm() const {
  double sum = 0;
  for (const auto& [_, v] : entries) sum += v * v;
  return std::sqrt(sum);
}

double SparseVector::dot(std::span<const double> dense) const {
  double sum = 0;
  for (const auto& [i, v] : entries) {
    if (i < dense.size()) sum += v * dense[i];
  }
  return sum;
}

double SparseVector::at(std::uint32_t index) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), index,
                             [](const auto& e, std::uint32_t i) { return e.first < i; });
  return (it != entries.end() && it->first == index) ? it->second : 0.0;
}

bool SparseVector::is_sorted() const {
  for (std::size_t i = 1; i < entries.size(); ++i) {
    if (entries[i - 1].first >= entries[i].first) return false;
  }
  return true;
}

}  // namespace docstruct
