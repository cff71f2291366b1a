#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <string_view>
#include <vector>

#include "touchauth/dataset.hpp"
#include "touchauth/errors.hpp"

namespace touchauth {

/// Genuine is the positive class: tp counts genuine samples accepted,
/// fp counts imposter samples accepted.
struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  std::size_t total() const { return tp + fp + tn + fn; }

  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

inline ConfusionCounts confusion(const std::vector<double>& scores, const std::vector<int>& labels,
                                 double threshold = 0.5) {
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool accepted = scores[i] >= threshold;
    if (labels[i] == kGenuineLabel) {
      (accepted ? c.tp : c.fn) += 1;
    } else {
      (accepted ? c.fp : c.tn) += 1;
    }
  }
  return c;
}

struct RocPoint {
  double threshold = 0.0;
  double fpr = 0.0;  // imposters scoring >= threshold
  double fnr = 0.0;  // genuines scoring < threshold
};

/// One point per distinct observed score, ascending, plus a sentinel above
/// the maximum where everything is rejected. fpr is non-increasing and fnr
/// non-decreasing along the result.
inline std::vector<RocPoint> threshold_sweep(std::vector<double> genuine,
                                             std::vector<double> imposter) {
  if (genuine.empty() || imposter.empty()) {
    throw OneClassOnly("threshold sweep needs both genuine and imposter scores");
  }
  std::sort(genuine.begin(), genuine.end());
  std::sort(imposter.begin(), imposter.end());

  std::vector<double> thresholds;
  thresholds.reserve(genuine.size() + imposter.size() + 1);
  thresholds.insert(thresholds.end(), genuine.begin(), genuine.end());
  thresholds.insert(thresholds.end(), imposter.begin(), imposter.end());
  std::sort(thresholds.begin(), thresholds.end());
  thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
  thresholds.push_back(thresholds.back() + 1.0);

  const double ng = static_cast<double>(genuine.size());
  const double ni = static_cast<double>(imposter.size());
  std::vector<RocPoint> points;
  points.reserve(thresholds.size());
  for (double t : thresholds) {
    const auto imp_at = std::lower_bound(imposter.begin(), imposter.end(), t);
    const auto gen_at = std::lower_bound(genuine.begin(), genuine.end(), t);
    points.push_back({t, static_cast<double>(imposter.end() - imp_at) / ni,
                      static_cast<double>(gen_at - genuine.begin()) / ng});
  }
  return points;
}

/// Equal error rate: the common value of fpr and fnr where the two curves
/// cross. When no swept threshold hits the crossing exactly, the result is
/// linearly interpolated between the two bracketing points.
inline double compute_eer(const std::vector<double>& genuine,
                          const std::vector<double>& imposter) {
  const std::vector<RocPoint> points = threshold_sweep(genuine, imposter);
  // diff = fpr - fnr starts at +1 (accept everything) and is non-increasing.
  for (std::size_t i = 0; i < points.size(); ++i) {
    const double diff = points[i].fpr - points[i].fnr;
    if (diff > 0.0) continue;
    if (diff == 0.0 || i == 0) return points[i].fpr;
    const RocPoint& a = points[i - 1];
    const RocPoint& b = points[i];
    const double diff_a = a.fpr - a.fnr;
    const double alpha = diff_a / (diff_a - diff);
    return a.fpr + alpha * (b.fpr - a.fpr);
  }
  return points.back().fpr;  // unreachable: the sentinel has diff = -1
}

struct EvalMetrics {
  ConfusionCounts counts;
  double accuracy = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double eer = 0.0;

  double tpr() const { return 1.0 - fnr; }
  double tnr() const { return 1.0 - fpr; }
};

inline constexpr std::array<std::string_view, 4> kMetricNames = {"Accuracy", "FPR", "FNR", "EER"};

/// Threshold-0.5 confusion metrics plus threshold-free EER for one score set.
inline EvalMetrics evaluate_scores(const std::vector<double>& scores,
                                   const std::vector<int>& labels, double threshold = 0.5) {
  if (scores.size() != labels.size()) throw ConfigError("score/label count mismatch");
  if (scores.empty()) throw EmptyTestSet("no samples to evaluate");

  std::vector<double> genuine, imposter;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    (labels[i] == kGenuineLabel ? genuine : imposter).push_back(scores[i]);
  }
  if (genuine.empty() || imposter.empty()) {
    throw OneClassOnly("evaluation needs both genuine and imposter samples");
  }

  EvalMetrics m;
  m.counts = confusion(scores, labels, threshold);
  m.accuracy = static_cast<double>(m.counts.tp + m.counts.tn) /
               static_cast<double>(m.counts.total());
  m.fpr = static_cast<double>(m.counts.fp) / static_cast<double>(m.counts.fp + m.counts.tn);
  m.fnr = static_cast<double>(m.counts.fn) / static_cast<double>(m.counts.fn + m.counts.tp);
  m.eer = compute_eer(genuine, imposter);
  return m;
}

struct MetricAverages {
  double accuracy = 0.0;
  double fpr = 0.0;
  double fnr = 0.0;
  double eer = 0.0;
  std::size_t count = 0;
};

/// Unweighted arithmetic mean of per-evaluation metrics (macro average).
inline MetricAverages summarize(const std::vector<EvalMetrics>& all) {
  if (all.empty()) throw EmptyTestSet("nothing to summarize");
  MetricAverages avg;
  for (const EvalMetrics& m : all) {
    avg.accuracy += m.accuracy;
    avg.fpr += m.fpr;
    avg.fnr += m.fnr;
    avg.eer += m.eer;
  }
  const double n = static_cast<double>(all.size());
  avg.accuracy /= n;
  avg.fpr /= n;
  avg.fnr /= n;
  avg.eer /= n;
  avg.count = all.size();
  return avg;
}

}  // namespace touchauth
