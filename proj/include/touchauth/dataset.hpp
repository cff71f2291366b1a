#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "touchauth/errors.hpp"
#include "touchauth/features.hpp"
#include "touchauth/rng.hpp"

namespace touchauth {

inline constexpr int kGenuineLabel = 0;
inline constexpr int kImposterLabel = 1;

struct LabeledSample {
  FeatureVector features{};
  int label = kGenuineLabel;
  std::string source_user;
  Game game = Game::Snake;
  int finger = 0;
  std::size_t gesture_index = 0;
};

/// Per-feature affine rescaling parameters, fitted on training data only.
struct Scaler {
  std::array<double, kFeatureCount> mean{};
  std::array<double, kFeatureCount> stdev{};
};

/// (v - mean) / std per column; zero-variance columns map to 0.
inline FeatureVector apply(const Scaler& s, const FeatureVector& v) {
  FeatureVector out;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    out[i] = s.stdev[i] == 0.0 ? 0.0 : (v[i] - s.mean[i]) / s.stdev[i];
  }
  return out;
}

inline Scaler fit_scaler(std::span<const LabeledSample> train) {
  Scaler s;
  if (train.empty()) return s;
  const double n = static_cast<double>(train.size());
  for (const LabeledSample& sample : train) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) s.mean[i] += sample.features[i];
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) s.mean[i] /= n;
  for (const LabeledSample& sample : train) {
    for (std::size_t i = 0; i < kFeatureCount; ++i) {
      const double d = sample.features[i] - s.mean[i];
      s.stdev[i] += d * d;
    }
  }
  for (std::size_t i = 0; i < kFeatureCount; ++i) s.stdev[i] = std::sqrt(s.stdev[i] / n);
  return s;
}

struct SplitPools {
  std::vector<FeatureRow> train_pool;
  std::vector<FeatureRow> test_pool;
};

/// Cuts one user's gesture rows into train/test pools. The default is a
/// seeded uniform permutation cut at floor(ratio*n); the chronological mode
/// orders rows by start time instead and is meant for stricter evaluations.
/// The cut is clamped so both pools are non-empty whenever n >= 2.
inline SplitPools split_user(std::vector<FeatureRow> rows, double ratio, Rng rng,
                             bool chronological = false) {
  const std::size_t n = rows.size();
  if (n < 2) {
    throw TooFewSamples("need at least 2 samples to split, got " + std::to_string(n));
  }
  if (chronological) {
    std::stable_sort(rows.begin(), rows.end(), [](const FeatureRow& a, const FeatureRow& b) {
      return a.start_time < b.start_time;
    });
  } else {
    rng.shuffle(rows);
  }
  std::size_t cut = static_cast<std::size_t>(ratio * static_cast<double>(n));
  cut = std::clamp<std::size_t>(cut, 1, n - 1);
  SplitPools pools;
  pools.train_pool.assign(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(cut));
  pools.test_pool.assign(rows.begin() + static_cast<std::ptrdiff_t>(cut), rows.end());
  return pools;
}

struct DatasetCounts {
  std::size_t genuine = 0;
  std::size_t imposter = 0;
  std::size_t shortfall = 0;  // genuine - imposter when pools ran dry
  std::map<std::string, std::size_t> per_imposter;
};

/// A per-target-user binary dataset: all of the target's samples labeled
/// genuine, an equal number of imposter samples drawn evenly from everyone
/// else, balanced independently in train and test.
struct AuthDataset {
  std::string target_user;
  Game game = Game::Snake;
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
  Scaler scaler;  // fitted on train
  std::uint64_t seed = 0;
  DatasetCounts train_counts;
  DatasetCounts test_counts;
  bool standardized = false;
};

namespace detail {

inline LabeledSample to_sample(const FeatureRow& row, int label) {
  LabeledSample s;
  s.features = row.features;
  s.label = label;
  s.source_user = row.user_id;
  s.game = row.game;
  s.finger = row.finger;
  s.gesture_index = row.gesture_index;
  return s;
}

/// Draws one balanced part (train or test). Imposter quotas start at
/// floor/ceil of G/(U-1); when a user's pool cannot cover its quota the
/// missing draws are reassigned one at a time to the least-loaded user with
/// spare samples, so contributions stay as even as the pools allow.
inline std::vector<LabeledSample> assemble_part(
    const std::string& target, const std::map<std::string, SplitPools>& pools,
    bool train_part, Rng& rng, DatasetCounts& counts) {
  auto pool_of = [&](const SplitPools& p) -> const std::vector<FeatureRow>& {
    return train_part ? p.train_pool : p.test_pool;
  };

  const auto target_it = pools.find(target);
  if (target_it == pools.end() || pool_of(target_it->second).empty()) {
    throw TooFewSamples("target user '" + target + "' has no samples in the " +
                        (train_part ? "train" : "test") + " pool");
  }

  std::vector<LabeledSample> part;
  for (const FeatureRow& row : pool_of(target_it->second)) {
    part.push_back(to_sample(row, kGenuineLabel));
  }
  const std::size_t genuine = part.size();

  std::vector<const std::pair<const std::string, SplitPools>*> imposters;
  for (const auto& entry : pools) {
    if (entry.first != target && !pool_of(entry.second).empty()) {
      imposters.push_back(&entry);
    }
  }
  if (imposters.empty()) {
    throw InsufficientImposterData("no other user has samples to impersonate '" + target +
                                   "'");
  }

  // Remainder +1s go to users in seeded-random order.
  rng.shuffle(imposters);
  const std::size_t base = genuine / imposters.size();
  const std::size_t rem = genuine % imposters.size();
  std::vector<std::size_t> quota(imposters.size(), base);
  for (std::size_t i = 0; i < rem; ++i) ++quota[i];

  std::vector<std::size_t> take(imposters.size());
  std::size_t total = 0;
  for (std::size_t i = 0; i < imposters.size(); ++i) {
    take[i] = std::min(quota[i], pool_of(imposters[i]->second).size());
    total += take[i];
  }
  while (total < genuine) {
    std::size_t best = imposters.size();
    for (std::size_t i = 0; i < imposters.size(); ++i) {
      if (take[i] < pool_of(imposters[i]->second).size() &&
          (best == imposters.size() || take[i] < take[best])) {
        best = i;
      }
    }
    if (best == imposters.size()) break;  // everyone exhausted
    ++take[best];
    ++total;
  }

  for (std::size_t i = 0; i < imposters.size(); ++i) {
    const auto& pool = pool_of(imposters[i]->second);
    const std::vector<std::size_t> picks = rng.index_sample(pool.size(), take[i]);
    for (std::size_t p : picks) {
      part.push_back(to_sample(pool[p], kImposterLabel));
    }
    counts.per_imposter[imposters[i]->first] = take[i];
  }

  counts.genuine = genuine;
  counts.imposter = total;
  counts.shortfall = genuine - total;
  rng.shuffle(part);
  return part;
}

}  // namespace detail

/// Builds the dataset for one target user from everyone's split pools. Train
/// imposters come only from train pools and test imposters only from test
/// pools, so the two sides cannot leak into each other.
inline AuthDataset assemble(const std::string& target_user, Game game,
                            const std::map<std::string, SplitPools>& pools, Rng rng) {
  AuthDataset ds;
  ds.target_user = target_user;
  ds.game = game;
  ds.seed = rng.seed();
  Rng train_rng = rng.fork("train");
  Rng test_rng = rng.fork("test");
  ds.train = detail::assemble_part(target_user, pools, true, train_rng, ds.train_counts);
  ds.test = detail::assemble_part(target_user, pools, false, test_rng, ds.test_counts);
  ds.scaler = fit_scaler(ds.train);
  return ds;
}

/// Applies the train-fitted scaler to both sides. Idempotent by flag.
inline AuthDataset standardize(AuthDataset ds) {
  if (ds.standardized) return ds;
  for (LabeledSample& s : ds.train) s.features = apply(ds.scaler, s.features);
  for (LabeledSample& s : ds.test) s.features = apply(ds.scaler, s.features);
  ds.standardized = true;
  return ds;
}

}  // namespace touchauth
