#pragma once

#include <cstdint>

namespace chancomp {

// Numerical tolerances. The defaults leave headroom over the ~1e-12
// residuals double-precision eigensolvers deliver at the dimensions this
// library targets. `rank` and `tp` cutoffs are relative to the problem scale.
struct Tolerances {
  double herm = 1e-9;   // Hermiticity validation
  double trace = 1e-9;  // unit-trace validation
  double norm = 1e-9;   // unit-norm validation
  double psd = 1e-10;   // negative-eigenvalue slack and clamping threshold
  double rank = 1e-9;   // relative spectral cutoff for rank decisions
  double tp = 1e-9;     // trace-preservation flag
};

inline constexpr Tolerances kDefaultTol{};

// Cap on any composite Hilbert-space dimension (rows or columns of a tensor
// product). Defaults to 4096; override with the CHANCOMP_MAX_DIM environment
// variable. Read once per process.
int max_total_dim();

// Default master seed for every seeded computation (CLI and library).
inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

}  // namespace chancomp
