#pragma once

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "touchauth/errors.hpp"

namespace touchauth {

enum class TouchState { Down, Held, Up };

enum class Game { Snake, Minecraft };

inline std::string_view to_string(TouchState s) {
  switch (s) {
    case TouchState::Down: return "DOWN";
    case TouchState::Held: return "HELD";
    case TouchState::Up: return "UP";
  }
  return "?";
}

/// Token table for the BTN_TOUCH column. Unknown tokens are hard parse
/// errors; add entries here if a capture tool spells the states differently.
inline std::optional<TouchState> parse_touch_state(std::string_view token) {
  if (token == "DOWN") return TouchState::Down;
  if (token == "HELD") return TouchState::Held;
  if (token == "UP") return TouchState::Up;
  return std::nullopt;
}

/// Name used in session file names (<user_id>_<game>.csv).
inline std::string_view game_name(Game g) {
  return g == Game::Snake ? "Snake" : "Minecraft";
}

/// Short label used in result tables.
inline std::string_view game_label(Game g) {
  return g == Game::Snake ? "Snake" : "MC";
}

inline std::optional<Game> parse_game(std::string_view token) {
  auto eq_nocase = [](std::string_view a, std::string_view b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(a[i])) !=
          std::tolower(static_cast<unsigned char>(b[i]))) {
        return false;
      }
    }
    return true;
  };
  if (eq_nocase(token, "snake")) return Game::Snake;
  if (eq_nocase(token, "minecraft") || eq_nocase(token, "mc")) return Game::Minecraft;
  return std::nullopt;
}

/// One line of the 7-field log: time in seconds, raw integer screen
/// coordinates, touch state, contact-ellipse axes, finger id 0 or 1.
struct TouchEvent {
  double timestamp = 0.0;
  int x = 0;
  int y = 0;
  TouchState touch_state = TouchState::Held;
  int touch_major = 0;
  int touch_minor = 0;
  int finger = 0;

  friend bool operator==(const TouchEvent&, const TouchEvent&) = default;
};

enum class ParseErrorKind {
  MissingField,       // empty column or wrong column count
  MalformedNumber,
  UnknownTouchState,
  UnknownFinger,
  InvalidValue,       // parsed but violates field constraints
};

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::MissingField: return "missing_field";
    case ParseErrorKind::MalformedNumber: return "malformed_number";
    case ParseErrorKind::UnknownTouchState: return "unknown_touch_state";
    case ParseErrorKind::UnknownFinger: return "unknown_finger";
    case ParseErrorKind::InvalidValue: return "invalid_value";
  }
  return "?";
}

struct ParseOutcome {
  std::optional<TouchEvent> event;
  ParseErrorKind error = ParseErrorKind::MissingField;

  bool ok() const { return event.has_value(); }
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline bool parse_double(std::string_view s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

inline bool parse_int(std::string_view s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, out);
  return ec == std::errc{} && ptr == end;
}

inline std::size_t split_fields(std::string_view line, std::array<std::string_view, 8>& out) {
  std::size_t count = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      if (count < out.size()) out[count] = trim(line.substr(start, i - start));
      ++count;
      start = i + 1;
    }
  }
  return count;
}

}  // namespace detail

/// Parses one data row `Timestamp,X,Y,BTN_TOUCH,TOUCH_MAJOR,TOUCH_MINOR,FINGER`.
inline ParseOutcome parse_line(std::string_view line) {
  std::array<std::string_view, 8> f;
  const std::size_t n = detail::split_fields(line, f);
  if (n != 7) return {std::nullopt, ParseErrorKind::MissingField};
  for (std::size_t i = 0; i < 7; ++i) {
    if (f[i].empty()) return {std::nullopt, ParseErrorKind::MissingField};
  }

  TouchEvent e;
  if (!detail::parse_double(f[0], e.timestamp) || !std::isfinite(e.timestamp)) {
    return {std::nullopt, ParseErrorKind::MalformedNumber};
  }
  if (!detail::parse_int(f[1], e.x) || !detail::parse_int(f[2], e.y)) {
    return {std::nullopt, ParseErrorKind::MalformedNumber};
  }
  const auto state = parse_touch_state(f[3]);
  if (!state) return {std::nullopt, ParseErrorKind::UnknownTouchState};
  e.touch_state = *state;
  if (!detail::parse_int(f[4], e.touch_major) || !detail::parse_int(f[5], e.touch_minor)) {
    return {std::nullopt, ParseErrorKind::MalformedNumber};
  }
  int finger = -1;
  if (!detail::parse_int(f[6], finger)) {
    return {std::nullopt, ParseErrorKind::MalformedNumber};
  }
  if (finger != 0 && finger != 1) return {std::nullopt, ParseErrorKind::UnknownFinger};
  e.finger = finger;

  // Field constraints: non-negative time, ordered non-negative ellipse axes.
  if (e.timestamp < 0.0 || e.touch_minor < 0 || e.touch_major < e.touch_minor) {
    return {std::nullopt, ParseErrorKind::InvalidValue};
  }
  return {e, ParseErrorKind::MissingField};
}

struct CleaningSummary {
  std::size_t rows_read = 0;     // data rows seen; header and blank lines excluded
  std::size_t rows_dropped = 0;  // rows that failed to parse
  std::map<ParseErrorKind, std::size_t> dropped_by_reason;
};

/// A parsed session: one user, one game, events in file order. Immutable
/// after load; safe to share across threads.
struct SessionLog {
  std::string user_id;
  Game game = Game::Snake;
  std::vector<TouchEvent> events;
  CleaningSummary summary;
};

/// Loads a session file, dropping (and counting) unparseable rows. A header
/// row is detected by a non-numeric first field and skipped.
inline SessionLog load_session(const std::filesystem::path& path, std::string user_id,
                               Game game) {
  std::ifstream in(path);
  if (!in) throw FileNotFound("cannot open session file: " + path.string());

  SessionLog session;
  session.user_id = std::move(user_id);
  session.game = game;

  std::string line;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    const std::string_view sv = detail::trim(line);
    if (sv.empty()) continue;
    if (first_data_line) {
      first_data_line = false;
      const std::size_t comma = sv.find(',');
      double probe;
      if (!detail::parse_double(detail::trim(sv.substr(0, comma)), probe)) {
        continue;  // header row
      }
    }
    ++session.summary.rows_read;
    ParseOutcome out = parse_line(sv);
    if (out.ok()) {
      session.events.push_back(*out.event);
    } else {
      ++session.summary.rows_dropped;
      ++session.summary.dropped_by_reason[out.error];
    }
  }
  if (session.events.empty()) {
    throw EmptyLog("no valid events in: " + path.string());
  }
  return session;
}

struct FingerStreams {
  std::vector<TouchEvent> finger0;
  std::vector<TouchEvent> finger1;
  /// Events dropped because their timestamp did not advance past the
  /// previously kept event of the same finger. Keeping the first occurrence
  /// guarantees every in-stream time delta is strictly positive.
  std::size_t dropped_duplicates = 0;
};

/// Separates a cleaned session into per-finger streams, preserving relative
/// order. Equal timestamps across fingers are expected and kept; within one
/// finger the first event at a timestamp wins.
inline FingerStreams split_by_finger(const SessionLog& session) {
  FingerStreams out;
  double last[2] = {-1.0, -1.0};
  bool seen[2] = {false, false};
  for (const TouchEvent& e : session.events) {
    const int f = e.finger;
    if (seen[f] && !(e.timestamp > last[f])) {
      ++out.dropped_duplicates;
      continue;
    }
    seen[f] = true;
    last[f] = e.timestamp;
    (f == 0 ? out.finger0 : out.finger1).push_back(e);
  }
  return out;
}

inline constexpr std::string_view kSessionCsvHeader =
    "Timestamp,X,Y,BTN_TOUCH,TOUCH_MAJOR,TOUCH_MINOR,FINGER";

namespace detail {

/// Shortest round-trip decimal form of a double.
inline std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline std::string to_csv_line(const TouchEvent& e) {
  std::string s = detail::format_double(e.timestamp);
  s += ',';
  s += std::to_string(e.x);
  s += ',';
  s += std::to_string(e.y);
  s += ',';
  s += to_string(e.touch_state);
  s += ',';
  s += std::to_string(e.touch_major);
  s += ',';
  s += std::to_string(e.touch_minor);
  s += ',';
  s += std::to_string(e.finger);
  return s;
}

inline void write_session_csv(const SessionLog& session, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write session file: " + path.string());
  out << kSessionCsvHeader << '\n';
  for (const TouchEvent& e : session.events) {
    out << to_csv_line(e) << '\n';
  }
}

}  // namespace touchauth
