#pragma once

#include <stdexcept>
#include <string>

namespace trapo {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An argument fell outside its documented domain.
struct DomainError : Error {
  using Error::Error;
};

/// Two distributions were defined over alphabets of different sizes.
struct AlphabetMismatch : Error {
  using Error::Error;
};

/// p places probability mass where q has none (KL undefined).
struct SupportMismatch : Error {
  using Error::Error;
};

/// A token id outside the vocabulary was used.
struct UnknownToken : Error {
  using Error::Error;
};

/// A gradient was requested over a batch with no contributing token.
struct EmptyBatch : Error {
  using Error::Error;
};

/// An aggregate was requested over an empty collection.
struct EmptySet : Error {
  using Error::Error;
};

/// A rollout group was used before its advantages were computed.
struct MissingAdvantages : Error {
  using Error::Error;
};

/// A micro-group spec violated a hard invariant.
struct SpecInvalid : Error {
  using Error::Error;
};

/// A run configuration failed validation before any compute.
struct ConfigError : Error {
  using Error::Error;
};

/// Training produced a non-finite parameter; message carries the step index.
struct DivergenceDetected : Error {
  explicit DivergenceDetected(int step, const std::string& what)
      : Error("divergence detected at step " + std::to_string(step) + ": " + what), step(step) {}
  int step;
};

/// An iterative solver exhausted its budget before reaching tolerance.
struct NonConvergence : Error {
  using Error::Error;
};

/// A metrics file or run directory required by a report was absent.
struct MissingMetrics : Error {
  using Error::Error;
};

/// Requested file could not be read or written.
struct IoError : Error {
  using Error::Error;
};

}  // namespace trapo
