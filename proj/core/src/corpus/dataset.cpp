#include <algorithm>
#include <map>
#include <numeric>

#include "docstruct/corpus.hpp"
#include "docstruct/errors.hpp"
#include "docstruct/rng.hpp"

namespace docstruct {

void LabeledDataset::add(SparseVector x, int label, std::size_t id) {
  dimension = std::max<std::size_t>(dimension, x.extent());
  features.push_back(std::move(x));
  labels.push_back(label);
  ids.push_back(id);
}

void LabeledDataset::refresh_alphabet() {
  class_alphabet = labels;
  std::sort(class_alphabet.begin(), class_alphabet.end());
  class_alphabet.erase(std::unique(class_alphabet.begin(), class_alphabet.end()),
                       class_alphabet.end());
}

std::vector<std::size_t> LabeledDataset::class_counts() const {
  std::vector<std::size_t> counts(class_alphabet.size(), 0);
  for (int label : labels) {
    auto it = std::lower_bound(class_alphabet.begin(), class_alphabet.end(), label);
    if (it != class_alphabet.end() && *it == label) ++counts[static_cast<std::size_t>(it - class_alphabet.begin())];
  }
  return counts;
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  LabeledDataset out;
  out.class_alphabet = class_alphabet;
  out.dimension = dimension;
  out.features.reserve(indices.size());
  std::vector<int> sub_folds;
  for (std::size_t i : indices) {
    if (i >= size()) throw ContractError("subset index out of range");
    out.features.push_back(features[i]);
    out.labels.push_back(labels[i]);
    out.ids.push_back(i < ids.size() ? ids[i] : i);
    if (folds) sub_folds.push_back((*folds)[i]);
  }
  if (folds) out.folds = std::move(sub_folds);
  return out;
}

std::pair<LabeledDataset, LabeledDataset> LabeledDataset::split_fold(int fold) const {
  if (!folds) throw ContractError("dataset has no fold assignments");
  std::vector<std::size_t> train, test;
  for (std::size_t i = 0; i < size(); ++i) ((*folds)[i] == fold ? test : train).push_back(i);
  auto a = subset(train), b = subset(test);
  a.folds.reset();
  b.folds.reset();
  return {std::move(a), std::move(b)};
}

void LabeledDataset::validate() const {
  if (features.size() != labels.size()) throw ContractError("features/labels size mismatch");
  if (!ids.empty() && ids.size() != labels.size()) throw ContractError("ids/labels size mismatch");
  if (folds && folds->size() != labels.size()) throw ContractError("folds/labels size mismatch");
  for (std::size_t i = 0; i < size(); ++i) {
    if (!std::binary_search(class_alphabet.begin(), class_alphabet.end(), labels[i]))
      throw ContractError("record " + std::to_string(i) + " has label " +
                          std::to_string(labels[i]) + " outside the class alphabet");
    if (features[i].extent() > dimension)
      throw ContractError("record " + std::to_string(i) + " exceeds the feature dimension");
  }
}

namespace {

std::map<int, std::vector<std::size_t>> members_by_class(const LabeledDataset& ds) {
  std::map<int, std::vector<std::size_t>> members;
  for (int c : ds.class_alphabet) members[c];
  for (std::size_t i = 0; i < ds.size(); ++i) members[ds.labels[i]].push_back(i);
  return members;
}

}  // namespace

LabeledDataset make_stratified_folds(const LabeledDataset& ds, int k, std::uint64_t seed) {
  if (k < 2) throw ContractError("k must be >= 2");
  auto members = members_by_class(ds);
  for (const auto& [label, idx] : members) {
    if (idx.size() < static_cast<std::size_t>(k))
      throw DataError("class " + std::to_string(label) + " has " + std::to_string(idx.size()) +
                      " members, fewer than k=" + std::to_string(k));
  }
  LabeledDataset out = ds;
  std::vector<int> folds(ds.size(), 0);
  Rng rng(seed);
  std::size_t offset = 0;
  for (auto& [label, idx] : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    for (std::size_t j = 0; j < idx.size(); ++j)
      folds[idx[j]] = static_cast<int>((offset + j) % static_cast<std::size_t>(k));
    offset = (offset + idx.size()) % static_cast<std::size_t>(k);
  }
  out.folds = std::move(folds);
  return out;
}

LabeledDataset balance_classes(const LabeledDataset& ds, std::uint64_t seed) {
  auto members = members_by_class(ds);
  if (members.empty()) return ds;
  std::size_t minority = ds.size();
  for (const auto& [_, idx] : members) minority = std::min(minority, idx.size());
  Rng rng(seed);
  std::vector<std::size_t> keep;
  for (auto& [_, idx] : members) {
    rng.shuffle(std::span<std::size_t>(idx));
    keep.insert(keep.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(minority));
  }
  std::sort(keep.begin(), keep.end());
  return ds.subset(keep);
}

}  // namespace docstruct
