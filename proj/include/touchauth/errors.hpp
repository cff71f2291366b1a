#pragma once

#include <stdexcept>
#include <string>

namespace touchauth {

/// Base for all pipeline errors so callers can catch one type at the boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FileNotFound : Error {
  using Error::Error;
};

/// A session file contained no parseable events.
struct EmptyLog : Error {
  using Error::Error;
};

/// Gesture window below the minimum the derivative chain needs.
struct WindowTooSmall : Error {
  using Error::Error;
};

/// A difference quotient was requested over fewer than two points.
struct DegenerateSeries : Error {
  using Error::Error;
};

struct TooFewSamples : Error {
  using Error::Error;
};

/// No imposter user had any samples to draw from.
struct InsufficientImposterData : Error {
  using Error::Error;
};

struct EmptyTestSet : Error {
  using Error::Error;
};

/// Score list held only genuine or only imposter samples.
struct OneClassOnly : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace touchauth
