#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "touchauth/errors.hpp"
#include "touchauth/event_log.hpp"
#include "touchauth/rng.hpp"

namespace touchauth {

/// Per-user motion parameters. Swipes follow a correlated random walk:
/// heading takes Gaussian increments around a constant bias, speed mean
/// reverts to base_speed (an Ornstein-Uhlenbeck process).
struct MotionProfile {
  std::string user_id;
  double base_speed = 400.0;      // px/s the speed process reverts to
  double speed_sigma = 60.0;      // px/s/sqrt(s) speed noise
  double speed_reversion = 4.0;   // 1/s pull toward base_speed
  double turn_sigma = 0.2;        // rad/sqrt(s) heading noise
  double turn_bias = 0.0;         // rad/s steady drift
  double touch_major = 24.0;      // mean contact ellipse axes, px
  double touch_minor = 16.0;
  double tap_period = 0.8;        // s mean gap between finger-1 taps
  double tap_duration = 0.25;     // s mean tap hold time
};

struct SynthParams {
  std::size_t user_count = 15;
  double duration = 60.0;  // seconds of play per user per game
  int grid = 4000;         // square screen, coordinates in [0, grid-1]
};

namespace detail {

inline double lerp_grade(double lo, double hi, std::size_t rank, std::size_t n) {
  if (n <= 1) return 0.5 * (lo + hi);
  return lo + (hi - lo) * static_cast<double>(rank) / static_cast<double>(n - 1);
}

inline std::vector<std::size_t> random_ranks(std::size_t n, Rng& rng) {
  std::vector<std::size_t> ranks(n);
  std::iota(ranks.begin(), ranks.end(), std::size_t{0});
  rng.shuffle(ranks);
  return ranks;
}

}  // namespace detail

/// Profiles stratified across the parameter ranges: user i takes the i-th
/// lattice point on base_speed and an independently permuted lattice point on
/// each other attribute, so no two users share a profile.
inline std::vector<MotionProfile> make_profiles(std::size_t n, Rng rng) {
  if (n == 0) throw ConfigError("need at least one user");
  const std::vector<std::size_t> turn_rank = detail::random_ranks(n, rng);
  const std::vector<std::size_t> bias_rank = detail::random_ranks(n, rng);
  const std::vector<std::size_t> tap_rank = detail::random_ranks(n, rng);
  const std::vector<std::size_t> touch_rank = detail::random_ranks(n, rng);

  std::vector<MotionProfile> profiles(n);
  for (std::size_t i = 0; i < n; ++i) {
    MotionProfile& p = profiles[i];
    p.user_id = "user" + std::string(i + 1 < 10 ? "0" : "") + std::to_string(i + 1);
    p.base_speed = detail::lerp_grade(180.0, 820.0, i, n);
    p.speed_sigma = 0.12 * p.base_speed;
    p.speed_reversion = 4.0;
    p.turn_sigma = detail::lerp_grade(0.10, 0.45, turn_rank[i], n);
    p.turn_bias = detail::lerp_grade(-0.6, 0.6, bias_rank[i], n);
    p.tap_period = detail::lerp_grade(0.45, 1.50, tap_rank[i], n);
    p.tap_duration = detail::lerp_grade(0.12, 0.40, tap_rank[i], n);
    p.touch_major = detail::lerp_grade(18.0, 30.0, touch_rank[i], n);
    p.touch_minor = 0.65 * p.touch_major;
  }
  return profiles;
}

namespace detail {

/// Emits one finger's events with strictly increasing microsecond-rounded
/// timestamps; collisions bump by one microsecond.
class EventEmitter {
 public:
  EventEmitter(std::vector<TouchEvent>& out, int finger) : out_(out), finger_(finger) {}

  void emit(double t, double x, double y, TouchState state, int major, int minor) {
    double ts = std::round(t * 1e6) / 1e6;
    if (has_last_ && ts <= last_) ts = last_ + 1e-6;
    last_ = ts;
    has_last_ = true;
    out_.push_back({ts, static_cast<int>(std::lround(x)), static_cast<int>(std::lround(y)),
                    state, major, minor, finger_});
  }

 private:
  std::vector<TouchEvent>& out_;
  int finger_;
  double last_ = 0.0;
  bool has_last_ = false;
};

struct ContactJitter {
  int major;
  int minor;
};

inline ContactJitter jitter_contact(const MotionProfile& p, Rng& rng) {
  int major = static_cast<int>(std::lround(p.touch_major + 1.5 * rng.gaussian()));
  int minor = static_cast<int>(std::lround(p.touch_minor + 1.2 * rng.gaussian()));
  major = std::max(major, 1);
  minor = std::clamp(minor, 1, major);
  return {major, minor};
}

inline void reflect(double& pos, double& component, double max_pos) {
  while (pos < 0.0 || pos > max_pos) {
    if (pos < 0.0) pos = -pos;
    if (pos > max_pos) pos = 2.0 * max_pos - pos;
    component = -component;
  }
}

inline void synth_swipes(std::vector<TouchEvent>& out, const MotionProfile& p, Game game,
                         double duration, int grid, Rng rng) {
  constexpr double kPi = std::numbers::pi;
  // Snake demands continuous steering, so it samples faster and swipes longer.
  const double dt = game == Game::Snake ? 0.011 : 0.021;
  const double swipe_mean = game == Game::Snake ? 2.2 : 1.2;
  const double gap_mean = game == Game::Snake ? 0.18 : 0.35;
  const double speed_target = p.base_speed * (game == Game::Snake ? 1.0 : 0.9);
  const double max_pos = static_cast<double>(grid - 1);
  const double sqrt_dt = std::sqrt(dt);

  EventEmitter emitter(out, 0);
  double t = rng.uniform(0.01, 0.05);
  double px = rng.uniform(0.15, 0.85) * max_pos;
  double py = rng.uniform(0.15, 0.85) * max_pos;

  while (t < duration) {
    const double swipe_end =
        t + std::clamp(rng.exponential(swipe_mean), 10.0 * dt, 6.0);
    double heading = rng.uniform(-kPi, kPi);
    double speed = speed_target;

    ContactJitter c = jitter_contact(p, rng);
    emitter.emit(t, px, py, TouchState::Down, c.major, c.minor);

    while (t + dt < swipe_end && t + dt < duration) {
      t += dt;
      speed += p.speed_reversion * (speed_target - speed) * dt +
               p.speed_sigma * sqrt_dt * rng.gaussian();
      speed = std::max(speed, 10.0);
      heading += p.turn_bias * dt + p.turn_sigma * sqrt_dt * rng.gaussian();
      heading = std::remainder(heading, 2.0 * kPi);

      double vx = speed * std::cos(heading);
      double vy = speed * std::sin(heading);
      px += vx * dt;
      py += vy * dt;
      reflect(px, vx, max_pos);
      reflect(py, vy, max_pos);
      heading = std::atan2(vy, vx);

      c = jitter_contact(p, rng);
      emitter.emit(t, px, py, TouchState::Held, c.major, c.minor);
    }

    t += dt;
    c = jitter_contact(p, rng);
    emitter.emit(t, px, py, TouchState::Up, c.major, c.minor);
    t += rng.exponential(gap_mean);
  }
}

inline void synth_taps(std::vector<TouchEvent>& out, const MotionProfile& p, double duration,
                       int grid, Rng rng) {
  constexpr double kTapDt = 0.03;
  const double max_pos = static_cast<double>(grid - 1);

  EventEmitter emitter(out, 1);
  double t = rng.exponential(p.tap_period);
  while (t < duration) {
    const double x = rng.uniform(0.05, 0.95) * max_pos;
    const double y = rng.uniform(0.05, 0.95) * max_pos;

    ContactJitter c = jitter_contact(p, rng);
    emitter.emit(t, x, y, TouchState::Down, c.major, c.minor);

    const double hold = std::clamp(rng.exponential(p.tap_duration), 2.0 * kTapDt, 1.2);
    const double release = t + hold;
    while (t + kTapDt < release) {
      t += kTapDt;
      c = jitter_contact(p, rng);
      emitter.emit(t, x + rng.gaussian(), y + rng.gaussian(), TouchState::Held, c.major,
                   c.minor);
    }

    t += kTapDt;
    c = jitter_contact(p, rng);
    emitter.emit(t, x, y, TouchState::Up, c.major, c.minor);
    t += rng.exponential(p.tap_period);
  }
}

}  // namespace detail

/// One simulated play session: a swipe stream on finger 0 and a tap stream on
/// finger 1, merged by timestamp. Output parses cleanly back through
/// load_session / split_by_finger.
inline SessionLog generate_session(const MotionProfile& profile, Game game, double duration,
                                   int grid, Rng rng) {
  if (duration <= 0.0 || grid < 2) throw ConfigError("bad session parameters");
  std::vector<TouchEvent> events;
  detail::synth_swipes(events, profile, game, duration, grid, rng.fork("swipes"));
  detail::synth_taps(events, profile, duration, grid, rng.fork("taps"));
  std::stable_sort(events.begin(), events.end(), [](const TouchEvent& a, const TouchEvent& b) {
    return a.timestamp < b.timestamp;
  });

  SessionLog log;
  log.user_id = profile.user_id;
  log.game = game;
  log.events = std::move(events);
  log.summary.rows_read = log.events.size();
  return log;
}

struct CorpusFile {
  std::string filename;
  std::string user_id;
  Game game = Game::Snake;
  std::size_t event_count = 0;
};

struct CorpusSummary {
  std::uint64_t seed = 0;
  std::vector<CorpusFile> files;
  std::size_t total_events = 0;
};

/// Writes <user>_<Game>.csv for every user and both games under `dir`.
inline CorpusSummary make_corpus(const std::filesystem::path& dir, const SynthParams& params,
                                 std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  Rng base(seed);
  const std::vector<MotionProfile> profiles =
      make_profiles(params.user_count, base.fork("profiles"));

  CorpusSummary summary;
  summary.seed = seed;
  for (const MotionProfile& profile : profiles) {
    for (Game game : {Game::Snake, Game::Minecraft}) {
      Rng session_rng = base.fork(profile.user_id).fork(game_name(game));
      const SessionLog log =
          generate_session(profile, game, params.duration, params.grid, session_rng);
      const std::string filename = profile.user_id + "_" + std::string(game_name(game)) + ".csv";
      write_session_csv(log, dir / filename);
      summary.files.push_back({filename, profile.user_id, game, log.events.size()});
      summary.total_events += log.events.size();
    }
  }
  return summary;
}

}  // namespace touchauth
