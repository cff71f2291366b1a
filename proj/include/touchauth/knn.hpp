#pragma once

#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

#include "touchauth/dataset.hpp"
#include "touchauth/errors.hpp"
#include "touchauth/features.hpp"

namespace touchauth {

struct KnnParams {
  std::size_t k = 5;
};

/// Exact brute-force k-nearest-neighbours over squared Euclidean distance.
/// Distance ties resolve to the lower training index. The score is the
/// fraction of the k neighbours labelled genuine, so with odd k it can never
/// land exactly on the 0.5 decision threshold.
struct KnnModel {
  std::vector<FeatureVector> train_x;
  std::vector<int> train_y;
  std::size_t k = 5;

  double score(const FeatureVector& sample) const {
    // Max-heap of (distance^2, index) keeps the k lexicographically smallest.
    std::priority_queue<std::pair<double, std::size_t>> nearest;
    for (std::size_t i = 0; i < train_x.size(); ++i) {
      double d2 = 0.0;
      for (std::size_t f = 0; f < kFeatureCount; ++f) {
        const double d = sample[f] - train_x[i][f];
        d2 += d * d;
      }
      const std::pair<double, std::size_t> entry{d2, i};
      if (nearest.size() < k) {
        nearest.push(entry);
      } else if (entry < nearest.top()) {
        nearest.pop();
        nearest.push(entry);
      }
    }
    std::size_t genuine = 0;
    while (!nearest.empty()) {
      genuine += static_cast<std::size_t>(train_y[nearest.top().second] == kGenuineLabel);
      nearest.pop();
    }
    return static_cast<double>(genuine) / static_cast<double>(k);
  }

  int classify(const FeatureVector& sample, double threshold = 0.5) const {
    return score(sample) >= threshold ? kGenuineLabel : kImposterLabel;
  }

  friend bool operator==(const KnnModel&, const KnnModel&) = default;
};

inline KnnModel train_knn(std::vector<FeatureVector> x, std::vector<int> y,
                          const KnnParams& params) {
  if (x.size() != y.size()) throw ConfigError("feature/label count mismatch");
  if (params.k == 0 || params.k % 2 == 0) {
    throw ConfigError("k must be a positive odd number");
  }
  if (x.size() < params.k) {
    throw TooFewSamples("training set smaller than k");
  }
  return KnnModel{std::move(x), std::move(y), params.k};
}

}  // namespace touchauth
