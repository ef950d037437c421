#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "docstruct/errors.hpp"
#include "docstruct/semantics.hpp"
#include "json.hpp"

namespace docstruct {

using nlohmann::json;

namespace {

constexpr std::size_t kExhaustiveLimit = 8;

}  // namespace

SequenceModel SequenceModel::fit(const std::vector<std::vector<std::string>>& corpus,
                                 const std::vector<std::string>& classes, int max_length) {
  if (max_length < 1) throw ContractError("max_length must be >= 1");
  SequenceModel m;
  m.classes_ = classes;
  m.max_length_ = max_length;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (!m.index_.emplace(classes[i], i).second) throw ContractError("duplicate class " + classes[i]);
  }
  const std::size_t c = classes.size();
  // row 0 = start, row i+1 = class i; column i = class i, column c = end
  m.counts_.assign(c + 1, std::vector<double>(c + 1, 0.0));
  for (const auto& seq : corpus) {
    const std::size_t n = std::min(seq.size(), static_cast<std::size_t>(max_length));
    std::size_t row = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t col = m.index(seq[i]);
      m.counts_[row][col] += 1.0;
      row = col + 1;
    }
    m.counts_[row][c] += 1.0;
  }
  m.log_prob_.assign(c + 1, std::vector<double>(c + 1, 0.0));
  for (std::size_t r = 0; r <= c; ++r) {
    const double total = std::accumulate(m.counts_[r].begin(), m.counts_[r].end(), 0.0);
    const double denom = std::log(total + static_cast<double>(c + 1));
    for (std::size_t col = 0; col <= c; ++col) m.log_prob_[r][col] = std::log(m.counts_[r][col] + 1.0) - denom;
  }
  return m;
}

std::size_t SequenceModel::index(std::string_view label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw ContractError("label '" + std::string(label) + "' is not in the class alphabet");
  return it->second;
}

std::vector<std::string> SequenceModel::alphabet() const {
  std::vector<std::string> out = classes_;
  out.emplace_back(kStart);
  out.emplace_back(kEnd);
  out.emplace_back(kPad);
  return out;
}

double SequenceModel::log_probability(std::string_view from, std::string_view to) const {
  const std::size_t row = from == kStart ? 0 : index(from) + 1;
  const std::size_t col = to == kEnd ? classes_.size() : index(to);
  return log_prob_[row][col];
}

double SequenceModel::probability(std::string_view from, std::string_view to) const {
  return std::exp(log_probability(from, to));
}

double SequenceModel::score_indices(const std::vector<std::size_t>& seq) const {
  double s = 0;
  std::size_t row = 0;
  for (std::size_t col : seq) {
    s += log_prob_[row][col];
    row = col + 1;
  }
  return s + log_prob_[row][classes_.size()];
}

double SequenceModel::score(const std::vector<std::string>& seq) const {
  std::vector<std::size_t> idx;
  idx.reserve(seq.size());
  for (const auto& s : seq) idx.push_back(index(s));
  return score_indices(idx);
}

std::vector<std::string> SequenceModel::canonical_order(const std::vector<std::string>& labels) const {
  std::vector<std::size_t> idx;
  for (const auto& l : labels) idx.push_back(index(l));
  std::sort(idx.begin(), idx.end());
  std::vector<std::size_t> best;

  if (idx.size() <= kExhaustiveLimit) {
    double best_score = -std::numeric_limits<double>::infinity();
    do {
      const double s = score_indices(idx);
      if (s > best_score) {
        best_score = s;
        best = idx;
      }
    } while (std::next_permutation(idx.begin(), idx.end()));
  } else {
    for (std::size_t label : idx) {
      std::size_t best_pos = 0;
      double best_score = -std::numeric_limits<double>::infinity();
      for (std::size_t pos = 0; pos <= best.size(); ++pos) {
        auto trial = best;
        trial.insert(trial.begin() + static_cast<std::ptrdiff_t>(pos), label);
        const double s = score_indices(trial);
        if (s > best_score) {
          best_score = s;
          best_pos = pos;
        }
      }
      best.insert(best.begin() + static_cast<std::ptrdiff_t>(best_pos), label);
    }
  }
  std::vector<std::string> out;
  for (std::size_t i : best) out.push_back(classes_[i]);
  return out;
}

std::string SequenceModel::to_json() const {
  json j = {{"format", "docstruct.sequence_model"},
            {"version", 1},
            {"classes", classes_},
            {"max_length", max_length_},
            {"transition_counts", counts_}};
  return j.dump() + "\n";
}

SequenceModel SequenceModel::from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("sequence model: ") + e.what(), 1, e.byte);
  }
  if (j.value("format", "") != "docstruct.sequence_model") throw SchemaError("not a sequence model file");
  if (j.value("version", 0) != 1) throw VersionError("unsupported sequence model version");
  try {
    // Rebuild from counts so the log-probabilities are recomputed identically.
    auto classes = j.at("classes").get<std::vector<std::string>>();
    auto counts = j.at("transition_counts").get<std::vector<std::vector<double>>>();
    SequenceModel m = fit({}, classes, j.at("max_length").get<int>());
    if (counts.size() != m.counts_.size()) throw SchemaError("sequence model: bad transition matrix");
    for (const auto& row : counts)
      if (row.size() != classes.size() + 1) throw SchemaError("sequence model: bad transition matrix");
    m.counts_ = std::move(counts);
    const std::size_t c = classes.size();
    for (std::size_t r = 0; r <= c; ++r) {
      const double total = std::accumulate(m.counts_[r].begin(), m.counts_[r].end(), 0.0);
      const double denom = std::log(total + static_cast<double>(c + 1));
      for (std::size_t col = 0; col <= c; ++col) m.log_prob_[r][col] = std::log(m.counts_[r][col] + 1.0) - denom;
    }
    return m;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("sequence model: ") + e.what());
  }
}

}  // namespace docstruct
