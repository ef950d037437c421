#include <algorithm>

#include "docstruct/errors.hpp"
#include "docstruct/structure.hpp"

namespace docstruct {

LineClassification classify_lines(std::span<const FeatureVector> features, const Model& m, VectorMode mode) {
  if (m.class_alphabet != std::vector<int>{0, 1})
    throw ContractError("line classification needs a two-class {0,1} model");
  LineClassification out;
  out.labels.reserve(features.size());
  for (const auto& fv : features) {
    auto p = m.predict(model_input(fv, mode));
    out.labels.push_back(p.label);
    out.scores.push_back(std::move(p.scores));
  }
  return out;
}

std::vector<int> classify_header_levels(std::span<const FeatureVector> header_features, const Model& m,
                                        VectorMode mode) {
  const auto& a = m.class_alphabet;
  if (a.size() < 2 || a.front() < 1 || a.back() > 3)
    throw ContractError("header level classification needs a model over levels {1,2,3}");
  std::vector<int> levels;
  levels.reserve(header_features.size());
  for (const auto& fv : header_features) levels.push_back(m.predict(model_input(fv, mode)).label);
  return levels;
}

}  // namespace docstruct
