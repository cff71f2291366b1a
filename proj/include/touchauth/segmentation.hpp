#pragma once

#include <cassert>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "touchauth/errors.hpp"
#include "touchauth/event_log.hpp"

namespace touchauth {

/// Smallest window for which the full derivative chain (through jerk) has at
/// least one value.
inline constexpr std::size_t kMinWindow = 4;

inline constexpr std::size_t kDefaultWindow = 10;

/// A fixed-size window of consecutive single-finger events: the unit sample
/// for feature extraction and classification. `index` is the window's
/// position within its stream, so (user_id, game, finger, index) identifies a
/// gesture uniquely across a corpus.
struct Gesture {
  std::string user_id;
  Game game = Game::Snake;
  int finger = 0;
  std::size_t index = 0;
  std::vector<TouchEvent> events;

  double start_time() const { return events.front().timestamp; }
};

/// Cuts a cleaned single-finger stream into consecutive, non-overlapping
/// windows of `window` events. The trailing remainder is discarded.
inline std::vector<Gesture> segment(std::span<const TouchEvent> stream, std::size_t window,
                                    std::string_view user_id, Game game, int finger) {
  if (window < kMinWindow) {
    throw WindowTooSmall("window must be at least " + std::to_string(kMinWindow) +
                         ", got " + std::to_string(window));
  }
  std::vector<Gesture> gestures;
  const std::size_t count = stream.size() / window;
  gestures.reserve(count);
  for (std::size_t g = 0; g < count; ++g) {
    Gesture gesture;
    gesture.user_id = std::string(user_id);
    gesture.game = game;
    gesture.finger = finger;
    gesture.index = g;
    gesture.events.assign(stream.begin() + static_cast<std::ptrdiff_t>(g * window),
                          stream.begin() + static_cast<std::ptrdiff_t>((g + 1) * window));
#ifndef NDEBUG
    for (std::size_t i = 0; i + 1 < gesture.events.size(); ++i) {
      assert(gesture.events[i + 1].timestamp > gesture.events[i].timestamp);
      assert(gesture.events[i].finger == finger);
    }
#endif
    gestures.push_back(std::move(gesture));
  }
  return gestures;
}

}  // namespace touchauth
