#pragma once

#include <stdexcept>
#include <string>

namespace chancomp {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Shape mismatch or a dimension beyond max_total_dim().
struct DimensionError : Error {
  using Error::Error;
};

// Parameter outside its mathematical domain (p < 1, bad mixing weights, ...).
struct DomainError : Error {
  using Error::Error;
};

// Value fails a type invariant (non-Hermitian, non-unit trace, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Choi matrix has an eigenvalue below the negativity tolerance.
struct NotCPError : Error {
  using Error::Error;
};

// Two dilations passed to the witness solver do not share a kept-side map.
struct NotSameChannelError : Error {
  using Error::Error;
};

struct IOError : Error {
  using Error::Error;
};

}  // namespace chancomp
