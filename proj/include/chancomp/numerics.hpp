#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "chancomp/config.hpp"
#include "chancomp/errors.hpp"

namespace chancomp {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Which tensor factor a partial trace keeps. The global ordering convention
// is left-factor major: in H_B (x) H_C the composite index is b*d_C + c.
enum class Keep { B, C };

// Unit vector in C^dim.
class PureState {
 public:
  explicit PureState(Vector amplitudes, double tol_norm = kDefaultTol.norm);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Matrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  Vector amplitudes_;
};

// Hermitian positive-semidefinite operator. With `normalized` set the trace
// must be 1 within tol.trace; otherwise the trace is unconstrained (outputs
// of CP maps that are not trace preserving land here).
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix m, bool normalized = true,
                         const Tolerances& tol = kDefaultTol);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Matrix& matrix() const { return matrix_; }
  bool normalized() const { return normalized_; }

 private:
  Matrix matrix_;
  bool normalized_;
};

// Kronecker product, left factor major (the index of `a` varies slowest).
Matrix tensor_product(const Matrix& a, const Matrix& b);

// Kronecker product of column vectors with the same convention.
Vector tensor_product_vec(const Vector& a, const Vector& b);

// Partial trace of an operator on H_B (x) H_C.
Matrix partial_trace(const Matrix& m, int dim_b, int dim_c, Keep keep);

// Eigenvalues of a Hermitian matrix with |lambda| > tol, sorted descending.
std::vector<double> nonzero_spectrum(const Matrix& h, double tol,
                                     double tol_herm = kDefaultTol.herm);

// -Tr sigma ln sigma in nats, eigenvalues clamped to [0,1] before the log.
double von_neumann_entropy(const DensityMatrix& sigma);

// Tr sigma^p over clamped eigenvalues, p >= 1 finite.
double trace_power(const DensityMatrix& sigma, double p);

// Unvalidated spectral helpers used in inner loops.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& h);  // ascending
double entropy_from_eigenvalues(const Eigen::VectorXd& eigs);
double trace_power_from_eigenvalues(const Eigen::VectorXd& eigs, double p);
double operator_norm(const Matrix& m);  // largest singular value

// Deterministic random stream. mt19937_64 is fully specified by the
// standard; the uniform and normal transforms are hand-rolled so identical
// seeds give bitwise-identical output on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t raw() { return gen_(); }
  double uniform();         // [0, 1)
  double normal();          // standard normal (Box-Muller)
  Complex complex_normal(); // independent N(0,1) real and imaginary parts

 private:
  std::mt19937_64 gen_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

// Counter-indexed sub-seed scheme (SplitMix64 mix of master + counter).
// All multi-start and probe-set seeds derive from this.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter);

PureState random_pure(int dim, Rng& rng);
DensityMatrix random_density(int dim, Rng& rng);
// Haar-distributed: QR of a complex Gaussian matrix with phase-fixed diagonal.
Matrix random_unitary(int dim, Rng& rng);

PureState random_pure(int dim, std::uint64_t seed);
DensityMatrix random_density(int dim, std::uint64_t seed);
Matrix random_unitary(int dim, std::uint64_t seed);

// Pivoted Cholesky of a Hermitian PSD matrix: returns L (n x r) with
// a = L L^* up to the relative cutoff; r is the numerical rank. Throws
// DomainError if a has a negative eigenvalue beyond tolerance.
Matrix kolmogorov_factorization(const Matrix& a,
                                double tol_rank = kDefaultTol.rank);

namespace detail {
void require_square(const Matrix& m, const char* what);
void require_hermitian(const Matrix& m, double tol, const char* what);
void check_total_dim(long rows, long cols, const char* what);
}  // namespace detail

}  // namespace chancomp
