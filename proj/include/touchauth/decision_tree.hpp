#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "touchauth/dataset.hpp"
#include "touchauth/features.hpp"
#include "touchauth/rng.hpp"

namespace touchauth {

/// Flat-array binary tree node. Internal nodes route on one feature
/// (value < threshold goes left); leaves hold the genuine fraction of the
/// training samples that reached them.
struct TreeNode {
  std::int32_t feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  double genuine_fraction = 0.0;
  std::uint32_t sample_count = 0;

  bool is_leaf() const { return feature < 0; }

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct TreeParams {
  std::size_t max_depth = 0;  // 0 = unbounded
  std::size_t min_leaf = 1;
  std::size_t features_per_split = 6;  // floor(sqrt(36))
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  double score(const FeatureVector& sample) const {
    std::size_t i = 0;
    while (!nodes[i].is_leaf()) {
      const TreeNode& node = nodes[i];
      i = static_cast<std::size_t>(sample[static_cast<std::size_t>(node.feature)] <
                                           node.threshold
                                       ? node.left
                                       : node.right);
    }
    return nodes[i].genuine_fraction;
  }

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

namespace detail {

inline double gini(std::size_t c0, std::size_t n) {
  const double p0 = static_cast<double>(c0) / static_cast<double>(n);
  const double p1 = 1.0 - p0;
  return 1.0 - p0 * p0 - p1 * p1;
}

struct SplitChoice {
  double impurity = std::numeric_limits<double>::infinity();
  std::int32_t feature = -1;
  double threshold = 0.0;
};

}  // namespace detail

/// CART-style induction over the samples selected by `indices` (which may
/// repeat entries, as in a bootstrap). At each node `features_per_split`
/// candidate features are drawn without replacement from the stream;
/// candidate thresholds are midpoints between consecutive distinct values;
/// the split minimizing weighted Gini impurity wins, first candidate on ties.
/// Nodes stop at purity, the depth cap, fewer than 2*min_leaf samples, or
/// when no candidate feature admits a valid split.
inline DecisionTree train_tree(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                               std::vector<std::size_t> indices, const TreeParams& params,
                               Rng& rng) {
  DecisionTree tree;
  if (indices.empty()) {
    indices.resize(x.size());
    std::iota(indices.begin(), indices.end(), std::size_t{0});
  }

  struct Frame {
    std::vector<std::size_t> idx;
    std::size_t node;
    std::size_t depth;
  };

  tree.nodes.emplace_back();
  std::vector<Frame> stack;
  stack.push_back({std::move(indices), 0, 0});

  std::vector<std::pair<double, int>> column;  // (value, label) scratch

  while (!stack.empty()) {
    Frame frame = std::move(stack.back());
    stack.pop_back();
    const std::vector<std::size_t>& idx = frame.idx;
    const std::size_t n = idx.size();

    std::size_t n0 = 0;
    for (std::size_t i : idx) n0 += static_cast<std::size_t>(y[i] == kGenuineLabel);

    auto make_leaf = [&] {
      TreeNode& leaf = tree.nodes[frame.node];
      leaf.feature = -1;
      leaf.genuine_fraction = static_cast<double>(n0) / static_cast<double>(n);
      leaf.sample_count = static_cast<std::uint32_t>(n);
    };

    const bool pure = n0 == 0 || n0 == n;
    const bool depth_capped = params.max_depth > 0 && frame.depth >= params.max_depth;
    if (pure || depth_capped || n < 2 * params.min_leaf) {
      make_leaf();
      continue;
    }

    const std::vector<std::size_t> candidates =
        rng.index_sample(kFeatureCount, std::min(params.features_per_split, kFeatureCount));

    detail::SplitChoice best;
    for (std::size_t f : candidates) {
      column.clear();
      for (std::size_t i : idx) column.emplace_back(x[i][f], y[i]);
      std::sort(column.begin(), column.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });

      std::size_t left0 = 0;
      for (std::size_t i = 1; i < n; ++i) {
        left0 += static_cast<std::size_t>(column[i - 1].second == kGenuineLabel);
        if (!(column[i].first > column[i - 1].first)) continue;
        const std::size_t nl = i;
        const std::size_t nr = n - i;
        if (nl < params.min_leaf || nr < params.min_leaf) continue;
        const double impurity = (static_cast<double>(nl) * detail::gini(left0, nl) +
                                 static_cast<double>(nr) * detail::gini(n0 - left0, nr)) /
                                static_cast<double>(n);
        if (impurity < best.impurity) {
          double mid = 0.5 * (column[i - 1].first + column[i].first);
          if (!(mid > column[i - 1].first)) mid = column[i].first;  // adjacent doubles
          best = {impurity, static_cast<std::int32_t>(f), mid};
        }
      }
    }

    if (best.feature < 0) {
      make_leaf();  // all candidate features constant in this node
      continue;
    }

    std::vector<std::size_t> left_idx, right_idx;
    for (std::size_t i : idx) {
      (x[i][static_cast<std::size_t>(best.feature)] < best.threshold ? left_idx : right_idx)
          .push_back(i);
    }

    const std::size_t left_node = tree.nodes.size();
    const std::size_t right_node = left_node + 1;
    tree.nodes.emplace_back();
    tree.nodes.emplace_back();
    TreeNode& node = tree.nodes[frame.node];
    node.feature = best.feature;
    node.threshold = best.threshold;
    node.left = static_cast<std::int32_t>(left_node);
    node.right = static_cast<std::int32_t>(right_node);
    node.genuine_fraction = static_cast<double>(n0) / static_cast<double>(n);
    node.sample_count = static_cast<std::uint32_t>(n);

    // Left pushed last so it is processed first: node numbering and RNG
    // consumption follow depth-first, left-first order.
    stack.push_back({std::move(right_idx), right_node, frame.depth + 1});
    stack.push_back({std::move(left_idx), left_node, frame.depth + 1});
  }
  return tree;
}

inline DecisionTree train_tree(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                               const TreeParams& params, Rng& rng) {
  return train_tree(x, y, {}, params, rng);
}

}  // namespace touchauth
