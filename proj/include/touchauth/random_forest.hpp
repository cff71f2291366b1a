#pragma once

#include <cstddef>
#include <future>
#include <vector>

#include "touchauth/dataset.hpp"
#include "touchauth/decision_tree.hpp"
#include "touchauth/errors.hpp"
#include "touchauth/features.hpp"
#include "touchauth/rng.hpp"

namespace touchauth {

struct ForestParams {
  std::size_t tree_count = 100;
  TreeParams tree;
  std::size_t threads = 1;
};

/// Bagged ensemble of CART trees. The forest score is the mean leaf genuine
/// fraction across trees, in [0, 1]; classification compares it to a
/// threshold (score >= threshold means genuine).
struct RandomForest {
  std::vector<DecisionTree> trees;

  double score(const FeatureVector& sample) const {
    double sum = 0.0;
    for (const DecisionTree& tree : trees) sum += tree.score(sample);
    return sum / static_cast<double>(trees.size());
  }

  int classify(const FeatureVector& sample, double threshold = 0.5) const {
    return score(sample) >= threshold ? kGenuineLabel : kImposterLabel;
  }

  friend bool operator==(const RandomForest&, const RandomForest&) = default;
};

/// n draws with replacement, consumed from `rng` before tree induction.
inline std::vector<std::size_t> bootstrap_indices(Rng& rng, std::size_t n) {
  std::vector<std::size_t> indices(n);
  for (std::size_t& i : indices) i = rng.uniform_index(n);
  return indices;
}

/// Trains `tree_count` trees on bootstrap resamples. Each tree draws from its
/// own RNG stream, forked from `rng` by tree index, so results are identical
/// whether trees run serially or across threads.
inline RandomForest train_forest(const std::vector<FeatureVector>& x, const std::vector<int>& y,
                                 const ForestParams& params, Rng& rng) {
  if (x.size() != y.size()) throw ConfigError("feature/label count mismatch");
  if (x.empty()) throw TooFewSamples("cannot train a forest on an empty set");
  bool seen[2] = {false, false};
  for (int label : y) seen[label == kImposterLabel] = true;
  if (!seen[0] || !seen[1]) {
    throw OneClassOnly("training set must contain both genuine and imposter samples");
  }

  const Rng tree_base = rng.fork("tree");
  auto train_one = [&](std::size_t t) {
    Rng tree_rng = tree_base.fork(static_cast<std::uint64_t>(t));
    std::vector<std::size_t> indices = bootstrap_indices(tree_rng, x.size());
    return train_tree(x, y, std::move(indices), params.tree, tree_rng);
  };

  RandomForest forest;
  forest.trees.resize(params.tree_count);
  if (params.threads <= 1) {
    for (std::size_t t = 0; t < params.tree_count; ++t) forest.trees[t] = train_one(t);
    return forest;
  }

  std::vector<std::future<void>> workers;
  workers.reserve(params.threads);
  for (std::size_t w = 0; w < params.threads; ++w) {
    workers.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t t = w; t < params.tree_count; t += params.threads) {
        forest.trees[t] = train_one(t);
      }
    }));
  }
  for (std::future<void>& f : workers) f.get();
  return forest;
}

}  // namespace touchauth
