#pragma once

#include <stdexcept>
#include <string>

namespace matchcert {

// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (market files, rational literals).
struct ParseError : Error {
  using Error::Error;
};

// Market shape problems: non-square matrices, mismatched sizes, bad labels.
struct InvalidMarketError : Error {
  using Error::Error;
};

// Bad parameters for a generator (odd n, K too small, epsilon out of range).
struct InvalidConfigError : Error {
  using Error::Error;
};

// A vector that should be a permutation matching is not one, or its size
// does not fit the market.
struct InvalidMatchingError : Error {
  using Error::Error;
};

// A strict ordinal reading was requested but some agent is indifferent
// between two partners.
struct TiesPresentError : Error {
  using Error::Error;
};

// A construction was pointed at a matching that is not stable.
struct NotStableError : Error {
  using Error::Error;
};

// A matching that must belong to the stable set does not.
struct NotMemberError : Error {
  using Error::Error;
};

// The matching is stable but not isolated in the stable set, and the
// requested construction needs isolation.
struct NotIsolatedError : Error {
  using Error::Error;
};

// The instance is too large for the selected method.
struct SizeLimitError : Error {
  using Error::Error;
};

// Stable-set enumeration exceeded the caller's cap.
struct StableSetTooLargeError : SizeLimitError {
  using SizeLimitError::SizeLimitError;
};

// The five certifier verdicts contradict the implication lattice between
// the solution concepts.  This should never happen; it signals a bug.
struct ImplicationViolationError : Error {
  using Error::Error;
};

// A broken internal invariant (a solver lied to us).
struct InternalError : Error {
  using Error::Error;
};

}  // namespace matchcert
