#include <algorithm>

#include "internal.hpp"

namespace docstruct::detail {

namespace {

struct Entry {
  double value;
  std::size_t cls;
};

struct Split {
  int feature = -1;
  double threshold = 0;
  double score = -1;  // weighted child purity
};

class TreeBuilder {
 public:
  TreeBuilder(const LabeledDataset& ds, const std::vector<std::size_t>& y, int max_depth,
              int min_samples_leaf)
      : y_(y),
        k_(ds.class_alphabet.size()),
        max_depth_(max_depth),
        min_leaf_(static_cast<std::size_t>(std::max(1, min_samples_leaf))),
        columns_(ds.dimension),
        in_node_(ds.size(), 0),
        scratch_(ds.size(), 0.0) {
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (const auto& [j, v] : ds.features[i].entries) {
        if (v != 0.0) columns_[j].push_back({i, v});
      }
    }
  }

  DecisionTreeParams build(std::size_t n) {
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<std::size_t>& samples, int depth) {
    const int id = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    std::vector<std::size_t> counts(k_, 0);
    for (std::size_t i : samples) ++counts[y_[i]];
    const double n = static_cast<double>(samples.size());
    {
      TreeNode& node = tree_.nodes.back();
      node.samples = samples.size();
      node.distribution.resize(k_);
      for (std::size_t c = 0; c < k_; ++c) node.distribution[c] = static_cast<double>(counts[c]) / n;
    }
    const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
    if (pure || depth >= max_depth_ || samples.size() < 2 * min_leaf_) return id;

    double parent = 0;
    for (std::size_t c : counts) parent += static_cast<double>(c * c);
    parent /= n * n;

    Split best = find_split(samples, counts);
    if (best.feature < 0 || best.score - parent <= 1e-12) return id;

    for (const auto& [i, v] : columns_[static_cast<std::size_t>(best.feature)]) scratch_[i] = v;
    std::vector<std::size_t> left, right;
    for (std::size_t i : samples) (scratch_[i] <= best.threshold ? left : right).push_back(i);
    for (const auto& [i, v] : columns_[static_cast<std::size_t>(best.feature)]) scratch_[i] = 0.0;

    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(id)];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  // Best (feature, threshold) by weighted child purity; features and
  // thresholds are scanned in ascending order and only strict improvements
  // replace the incumbent.
  Split find_split(const std::vector<std::size_t>& samples, const std::vector<std::size_t>& counts) {
    for (std::size_t i : samples) in_node_[i] = 1;
    const std::size_t n = samples.size();
    Split best;
    std::vector<Entry> nz;
    std::vector<std::size_t> left(k_), zero(k_);
    for (std::size_t f = 0; f < columns_.size(); ++f) {
      nz.clear();
      for (const auto& [i, v] : columns_[f]) {
        if (in_node_[i]) nz.push_back({v, y_[i]});
      }
      if (nz.empty()) continue;
      std::sort(nz.begin(), nz.end(), [](const Entry& a, const Entry& b) { return a.value < b.value; });
      zero = counts;
      for (const auto& e : nz) --zero[e.cls];
      const std::size_t zeros = n - nz.size();

      std::fill(left.begin(), left.end(), 0);
      double sq_left = 0, sq_right = 0;
      for (std::size_t c : counts) sq_right += static_cast<double>(c * c);
      std::vector<std::size_t> right = counts;
      std::size_t n_left = 0;
      bool zero_done = zeros == 0;
      double last_value = 0;
      bool have_last = false;

      auto consider = [&](double next_value) {
        if (!have_last || next_value == last_value) return;
        const std::size_t n_right = n - n_left;
        if (n_left < min_leaf_ || n_right < min_leaf_) return;
        const double score = (sq_left / static_cast<double>(n_left) + sq_right / static_cast<double>(n_right)) /
                             static_cast<double>(n);
        if (score > best.score + 1e-12) {
          best.feature = static_cast<int>(f);
          best.threshold = 0.5 * (last_value + next_value);
          best.score = score;
        }
      };
      auto move_one = [&](std::size_t c) {
        sq_left += static_cast<double>(2 * left[c] + 1);
        sq_right -= static_cast<double>(2 * right[c] - 1);
        ++left[c];
        --right[c];
        ++n_left;
      };
      auto move_zero_block = [&]() {
        consider(0.0);
        for (std::size_t c = 0; c < k_; ++c) {
          if (zero[c] == 0) continue;
          const double before_l = static_cast<double>(left[c]), before_r = static_cast<double>(right[c]);
          left[c] += zero[c];
          right[c] -= zero[c];
          sq_left += static_cast<double>(left[c]) * static_cast<double>(left[c]) - before_l * before_l;
          sq_right += static_cast<double>(right[c]) * static_cast<double>(right[c]) - before_r * before_r;
        }
        n_left += zeros;
        last_value = 0.0;
        have_last = true;
        zero_done = true;
      };

      for (const auto& e : nz) {
        if (!zero_done && e.value > 0.0) move_zero_block();
        consider(e.value);
        move_one(e.cls);
        last_value = e.value;
        have_last = true;
      }
      if (!zero_done) move_zero_block();
    }
    for (std::size_t i : samples) in_node_[i] = 0;
    return best;
  }

  const std::vector<std::size_t>& y_;
  std::size_t k_;
  int max_depth_;
  std::size_t min_leaf_;
  std::vector<std::vector<std::pair<std::size_t, double>>> columns_;
  std::vector<char> in_node_;
  std::vector<double> scratch_;
  DecisionTreeParams tree_;
};

}  // namespace

DecisionTreeParams train_decision_tree(const LabeledDataset& ds, const std::vector<std::size_t>& y,
                                       int max_depth, int min_samples_leaf) {
  TreeBuilder builder(ds, y, max_depth, min_samples_leaf);
  return builder.build(ds.size());
}

std::vector<double> tree_scores(const DecisionTreeParams& p, const SparseVector& x) {
  std::size_t id = 0;
  while (!p.nodes[id].is_leaf()) {
    const TreeNode& node = p.nodes[id];
    id = static_cast<std::size_t>(x.at(static_cast<std::uint32_t>(node.feature)) <= node.threshold ? node.left
                                                                                                   : node.right);
  }
  return p.nodes[id].distribution;
}

}  // namespace docstruct::detail
