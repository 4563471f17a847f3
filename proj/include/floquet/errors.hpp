#ifndef FLOQUET_ERRORS_HPP
#define FLOQUET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace floq {

// Base for all numeric/solver failures; the CLI maps these to exit code 3.
struct FloquetError : std::runtime_error {
  explicit FloquetError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InvalidParameter : FloquetError {
  using FloquetError::FloquetError;
};

// Fewer than N well-concentrated in-zone eigenpairs.
struct DegenerateSelection : FloquetError {
  using FloquetError::FloquetError;
};

// Mode Fourier tails do not decay inside the truncated window.
struct TruncationTooSmall : FloquetError {
  using FloquetError::FloquetError;
};

// Mode vectors at t=0 do not span the state space.
struct SingularBasis : FloquetError {
  using FloquetError::FloquetError;
};

struct StepTooLarge : FloquetError {
  using FloquetError::FloquetError;
};

struct NonuniformGrid : FloquetError {
  using FloquetError::FloquetError;
};

// Transformed mode overlaps no solved mode above threshold.
struct NoMatchingMode : FloquetError {
  using FloquetError::FloquetError;
};

// Symmetry phase undefined inside a degenerate subspace.
struct AmbiguousAtDegeneracy : FloquetError {
  using FloquetError::FloquetError;
};

struct NoMinimumInBracket : FloquetError {
  using FloquetError::FloquetError;
};

struct NotDegenerate : FloquetError {
  using FloquetError::FloquetError;
};

// Config/usage problems; the CLI maps these to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace floq

#endif
