#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "touchauth/errors.hpp"
#include "touchauth/segmentation.hpp"

namespace touchauth {

inline constexpr std::size_t kSeriesCount = 9;
inline constexpr std::size_t kStatCount = 4;
inline constexpr std::size_t kFeatureCount = kSeriesCount * kStatCount;

inline constexpr std::array<std::string_view, kSeriesCount> kSeriesNames = {
    "x_speed", "y_speed",      "speed",        "x_accel",         "y_accel",
    "accel",   "jerk",         "path_tangent", "angular_velocity"};

inline constexpr std::array<std::string_view, kStatCount> kStatNames = {"mean", "std",
                                                                        "min", "max"};

/// Column order is stat-major: all nine means, then stds, mins, maxes.
inline std::string feature_name(std::size_t i) {
  std::string name(kSeriesNames[i % kSeriesCount]);
  name += '_';
  name += kStatNames[i / kSeriesCount];
  return name;
}

using FeatureVector = std::array<double, kFeatureCount>;

/// Per-gesture derivative chain. With a window of W events the lengths are
/// W-1 (speeds, path tangent), W-2 (accelerations, angular velocity) and
/// W-3 (jerk); every value is finite because in-stream time deltas are
/// strictly positive.
struct KinematicSeries {
  std::vector<double> x_speed;
  std::vector<double> y_speed;
  std::vector<double> speed;
  std::vector<double> x_accel;
  std::vector<double> y_accel;
  std::vector<double> accel;
  std::vector<double> jerk;
  std::vector<double> path_tangent;      // radians in (-pi, pi]
  std::vector<double> angular_velocity;  // radians per second

  std::array<std::span<const double>, kSeriesCount> as_array() const {
    return {x_speed, y_speed, speed, x_accel, y_accel, accel, jerk, path_tangent,
            angular_velocity};
  }
};

/// Difference quotients (v[i+1]-v[i]) / (t[i+1]-t[i]); output length n-1.
inline std::vector<double> finite_diff(std::span<const double> values,
                                       std::span<const double> times) {
  if (values.size() < 2 || values.size() != times.size()) {
    throw DegenerateSeries("finite_diff needs two equally sized points, got " +
                           std::to_string(values.size()));
  }
  std::vector<double> out(values.size() - 1);
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    out[i] = (values[i + 1] - values[i]) / (times[i + 1] - times[i]);
  }
  return out;
}

struct SeriesOptions {
  /// Wrap tangent steps into (-pi, pi] before dividing by dt, so a heading
  /// that crosses the +-pi branch cut does not produce a 2*pi/dt spike.
  /// Turning this off reproduces the literal difference of angles.
  bool wrap_angular = true;
};

/// Computes the nine kinematic series of one gesture. The chain never crosses
/// gesture boundaries; each derived series is paired with the end time of the
/// interval its elements describe.
inline KinematicSeries compute_series(const Gesture& gesture, SeriesOptions opts = {}) {
  const std::size_t n = gesture.events.size();
  if (n < kMinWindow) {
    throw DegenerateSeries("gesture has " + std::to_string(n) + " events, need " +
                           std::to_string(kMinWindow));
  }
  std::vector<double> xs(n), ys(n), ts(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = gesture.events[i].x;
    ys[i] = gesture.events[i].y;
    ts[i] = gesture.events[i].timestamp;
  }

  KinematicSeries s;
  s.x_speed = finite_diff(xs, ts);
  s.y_speed = finite_diff(ys, ts);
  s.speed.resize(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) {
    s.speed[i] = std::sqrt(s.x_speed[i] * s.x_speed[i] + s.y_speed[i] * s.y_speed[i]);
  }

  // Element i of a first-derivative series describes (t[i], t[i+1]]; anchor
  // it at t[i+1] when differentiating again.
  const std::vector<double> t1(ts.begin() + 1, ts.end());
  s.x_accel = finite_diff(s.x_speed, t1);
  s.y_accel = finite_diff(s.y_speed, t1);
  s.accel = finite_diff(s.speed, t1);
  const std::vector<double> t2(ts.begin() + 2, ts.end());
  s.jerk = finite_diff(s.accel, t2);

  s.path_tangent.resize(n - 1);
  for (std::size_t i = 0; i < n - 1; ++i) {
    double a = std::atan2(ys[i + 1] - ys[i], xs[i + 1] - xs[i]);
    if (a == -std::numbers::pi) a = std::numbers::pi;
    s.path_tangent[i] = a;
  }

  s.angular_velocity.resize(n - 2);
  for (std::size_t i = 0; i < n - 2; ++i) {
    double d = s.path_tangent[i + 1] - s.path_tangent[i];
    if (opts.wrap_angular) {
      if (d > std::numbers::pi) d -= 2.0 * std::numbers::pi;
      if (d <= -std::numbers::pi) d += 2.0 * std::numbers::pi;
    }
    s.angular_velocity[i] = d / (t1[i + 1] - t1[i]);
  }
  return s;
}

/// Mean, population standard deviation, min and max of one series block.
inline std::array<double, kStatCount> series_stats(std::span<const double> v) {
  double sum = 0.0;
  double lo = v.front();
  double hi = v.front();
  for (double x : v) {
    sum += x;
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) {
    const double d = x - mean;
    ss += d * d;
  }
  const double stdev = std::sqrt(ss / static_cast<double>(v.size()));
  return {mean, stdev, lo, hi};
}

/// Collapses the nine series into the 36-value vector (stat-major order).
inline FeatureVector aggregate(const KinematicSeries& series) {
  FeatureVector out{};
  const auto blocks = series.as_array();
  for (std::size_t b = 0; b < kSeriesCount; ++b) {
    if (blocks[b].empty()) {
      throw DegenerateSeries(std::string("empty series: ") + std::string(kSeriesNames[b]));
    }
    const auto stats = series_stats(blocks[b]);
    for (std::size_t st = 0; st < kStatCount; ++st) {
      out[st * kSeriesCount + b] = stats[st];
    }
  }
  return out;
}

/// A featurized gesture with its provenance; `gesture_index` together with
/// `finger` identifies the source window within (user_id, game).
struct FeatureRow {
  FeatureVector features{};
  std::string user_id;
  Game game = Game::Snake;
  int finger = 0;
  std::size_t gesture_index = 0;
  double start_time = 0.0;
};

inline FeatureRow featurize(const Gesture& gesture, SeriesOptions opts = {}) {
  FeatureRow row;
  row.features = aggregate(compute_series(gesture, opts));
  for (double v : row.features) {
    if (!std::isfinite(v)) throw Error("non-finite feature value computed");
  }
  row.user_id = gesture.user_id;
  row.game = gesture.game;
  row.finger = gesture.finger;
  row.gesture_index = gesture.index;
  row.start_time = gesture.start_time();
  return row;
}

}  // namespace touchauth
