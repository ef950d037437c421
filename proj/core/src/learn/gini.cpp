#include <cmath>

#include "docstruct/errors.hpp"
#include "docstruct/learn.hpp"

namespace docstruct {

double gini_index(std::span<const double> class_fractions) {
  double total = 0, squares = 0;
  for (double p : class_fractions) {
    if (!(p >= 0.0)) throw ContractError("class fractions must be non-negative");
    total += p;
    squares += p * p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ContractError("class fractions must sum to 1");
  return squares;
}

double gini_impurity(std::span<const double> class_fractions) {
  return 1.0 - gini_index(class_fractions);
}

}  // namespace docstruct
