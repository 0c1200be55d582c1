#include "chancomp/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace chancomp {

int max_total_dim() {
  static const int value = [] {
    if (const char* s = std::getenv("CHANCOMP_MAX_DIM")) {
      char* end = nullptr;
      const long v = std::strtol(s, &end, 10);
      if (end != s && v > 0) return static_cast<int>(std::min(v, 1L << 20));
    }
    return 4096;
  }();
  return value;
}

namespace detail {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0)
    throw DimensionError(std::string(what) + ": expected a nonempty square matrix, got " +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void require_hermitian(const Matrix& m, double tol, const char* what) {
  require_square(m, what);
  const double dev = (m - m.adjoint()).norm();
  if (dev > tol * std::max(1.0, m.norm()))
    throw ValidationError(std::string(what) + ": matrix is not Hermitian (deviation " +
                          std::to_string(dev) + ")");
}

void check_total_dim(long rows, long cols, const char* what) {
  const long cap = max_total_dim();
  if (rows > cap || cols > cap)
    throw DimensionError(std::string(what) + ": dimension " +
                         std::to_string(std::max(rows, cols)) +
                         " exceeds the limit " + std::to_string(cap));
}

}  // namespace detail

PureState::PureState(Vector amplitudes, double tol_norm)
    : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("PureState: empty vector");
  const double n = amplitudes_.norm();
  if (std::abs(n - 1.0) > tol_norm)
    throw ValidationError("PureState: norm " + std::to_string(n) + " is not 1");
}

DensityMatrix::DensityMatrix(Matrix m, bool normalized, const Tolerances& tol)
    : matrix_(std::move(m)), normalized_(normalized) {
  detail::require_hermitian(matrix_, tol.herm, "DensityMatrix");
  Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
  const double scale = std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff());
  if (es.eigenvalues().minCoeff() < -tol.psd * scale)
    throw ValidationError("DensityMatrix: negative eigenvalue " +
                          std::to_string(es.eigenvalues().minCoeff()));
  if (normalized_) {
    const double tr = matrix_.trace().real();
    if (std::abs(tr - 1.0) > tol.trace)
      throw ValidationError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  return DensityMatrix(psi.projector());
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim < 1) throw DimensionError("maximally_mixed: dim must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  detail::check_total_dim(a.rows() * b.rows(), a.cols() * b.cols(), "tensor_product");
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Vector tensor_product_vec(const Vector& a, const Vector& b) {
  detail::check_total_dim(a.size() * b.size(), 1, "tensor_product_vec");
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, int dim_b, int dim_c, Keep keep) {
  detail::require_square(m, "partial_trace");
  if (dim_b < 1 || dim_c < 1 ||
      m.rows() != static_cast<Eigen::Index>(dim_b) * dim_c)
    throw DimensionError("partial_trace: matrix is " + std::to_string(m.rows()) +
                         "-dimensional, expected " + std::to_string(dim_b) + "*" +
                         std::to_string(dim_c));
  if (keep == Keep::B) {
    Matrix out = Matrix::Zero(dim_b, dim_b);
    for (int b1 = 0; b1 < dim_b; ++b1)
      for (int b2 = 0; b2 < dim_b; ++b2)
        for (int c = 0; c < dim_c; ++c)
          out(b1, b2) += m(b1 * dim_c + c, b2 * dim_c + c);
    return out;
  }
  Matrix out = Matrix::Zero(dim_c, dim_c);
  for (int c1 = 0; c1 < dim_c; ++c1)
    for (int c2 = 0; c2 < dim_c; ++c2)
      for (int b = 0; b < dim_b; ++b)
        out(c1, c2) += m(b * dim_c + c1, b * dim_c + c2);
  return out;
}

std::vector<double> nonzero_spectrum(const Matrix& h, double tol, double tol_herm) {
  detail::require_hermitian(h, tol_herm, "nonzero_spectrum");
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  std::vector<double> out;
  for (Eigen::Index i = es.eigenvalues().size(); i-- > 0;) {
    const double v = es.eigenvalues()(i);
    if (std::abs(v) > tol) out.push_back(v);
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& h) {
  return Eigen::SelfAdjointEigenSolver<Matrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
}

double entropy_from_eigenvalues(const Eigen::VectorXd& eigs) {
  double s = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double l = std::clamp(eigs(i), 0.0, 1.0);
    if (l > 0) s -= l * std::log(l);
  }
  return s;
}

double trace_power_from_eigenvalues(const Eigen::VectorXd& eigs, double p) {
  double s = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    const double l = std::max(eigs(i), 0.0);
    if (l > 0) s += std::pow(l, p);
  }
  return s;
}

double von_neumann_entropy(const DensityMatrix& sigma) {
  return entropy_from_eigenvalues(hermitian_eigenvalues(sigma.matrix()));
}

double trace_power(const DensityMatrix& sigma, double p) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw DomainError("trace_power: p must be finite and >= 1");
  return trace_power_from_eigenvalues(hermitian_eigenvalues(sigma.matrix()), p);
}

double operator_norm(const Matrix& m) {
  if (m.size() == 0) return 0;
  return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

double Rng::uniform() {
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_cached_) {
    has_cached_ = false;
    return cached_;
  }
  // 1-uniform() lies in (0,1], keeping the log finite.
  const double r = std::sqrt(-2.0 * std::log(1.0 - uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  cached_ = r * std::sin(t);
  has_cached_ = true;
  return r * std::cos(t);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re, im};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t counter) {
  std::uint64_t z = master + (counter + 1) * 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

PureState random_pure(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_pure: dim must be positive");
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  v.normalize();
  return PureState(v);
}

DensityMatrix random_density(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_density: dim must be positive");
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(std::move(rho));
}

Matrix random_unitary(int dim, Rng& rng) {
  if (dim < 1) throw DimensionError("random_unitary: dim must be positive");
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Vector diag = qr.matrixQR().diagonal();
  for (int j = 0; j < dim; ++j) {
    const double a = std::abs(diag(j));
    if (a > 0) q.col(j) *= diag(j) / a;
  }
  return q;
}

PureState random_pure(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure(dim, rng);
}

DensityMatrix random_density(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_density(dim, rng);
}

Matrix random_unitary(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_unitary(dim, rng);
}

Matrix kolmogorov_factorization(const Matrix& a, double tol_rank) {
  detail::require_hermitian(a, kDefaultTol.herm, "kolmogorov_factorization");
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXd d = a.diagonal().real();
  const double scale = std::max(d.maxCoeff(), 0.0);
  const double cutoff = tol_rank * scale;
  const double neg_tol = std::max(kDefaultTol.psd * std::max(1.0, scale), cutoff);

  Matrix l = Matrix::Zero(n, n);
  std::vector<bool> used(n, false);
  std::vector<int> pivots;
  int r = 0;
  for (; r < n; ++r) {
    int piv = -1;
    double best = cutoff;
    for (int i = 0; i < n; ++i)
      if (!used[i] && d(i) > best) {
        best = d(i);
        piv = i;
      }
    if (piv < 0) break;
    used[piv] = true;
    const double s = std::sqrt(d(piv));
    l(piv, r) = s;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      Complex acc = a(i, piv);
      for (int k = 0; k < r; ++k) acc -= l(i, k) * std::conj(l(piv, k));
      l(i, r) = acc / s;
      d(i) -= std::norm(l(i, r));
      if (d(i) < -neg_tol)
        throw DomainError("kolmogorov_factorization: matrix is not positive semidefinite "
                          "(Schur complement diagonal " + std::to_string(d(i)) + ")");
    }
    d(piv) = 0;
  }
  return l.leftCols(r);
}

}  // namespace chancomp
