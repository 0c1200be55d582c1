#include "chancomp/families.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace chancomp {

CorrelationMatrix::CorrelationMatrix(Matrix gram, bool require_unit_diagonal,
                                     const Tolerances& tol)
    : size(static_cast<int>(gram.rows())), c(std::move(gram)) {
  detail::require_hermitian(c, tol.herm, "CorrelationMatrix");
  const Eigen::VectorXd eigs = hermitian_eigenvalues(c);
  const double scale = std::max(1.0, eigs.cwiseAbs().maxCoeff());
  if (eigs.minCoeff() < -tol.psd * scale)
    throw DomainError("CorrelationMatrix: not positive semidefinite (eigenvalue " +
                      std::to_string(eigs.minCoeff()) + ")");
  unit_diagonal = (c.diagonal().array() - 1.0).abs().maxCoeff() <= tol.herm;
  if (require_unit_diagonal && !unit_diagonal)
    throw ValidationError("CorrelationMatrix: diagonal entries must equal 1");
}

int EBSpec::d_in() const {
  return psi.empty() ? 0 : static_cast<int>(psi.front().size());
}

int EBSpec::d_out() const {
  return phi.empty() ? 0 : static_cast<int>(phi.front().size());
}

bool EBSpec::is_channel(double tol) const {
  if (psi.empty()) return false;
  const int d = d_in();
  Matrix sum = Matrix::Zero(d, d);
  for (std::size_t a = 0; a < psi.size(); ++a)
    sum.noalias() += phi[a].squaredNorm() * (psi[a] * psi[a].adjoint());
  return (sum - Matrix::Identity(d, d)).norm() <= tol;
}

KrausMap identity_channel(int d) {
  if (d < 1) throw DomainError("identity_channel: d must be positive");
  return KrausMap({Matrix::Identity(d, d)});
}

KrausMap completely_depolarizing(int d) {
  if (d < 1) throw DomainError("completely_depolarizing: d must be positive");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(d) * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int k = 0; k < d; ++k) {
      Matrix e = Matrix::Zero(d, d);
      e(j, k) = s;
      ops.push_back(std::move(e));
    }
  return KrausMap(std::move(ops));
}

KrausMap depolarizing(int d, double p) {
  if (d < 1) throw DomainError("depolarizing: d must be positive");
  const double p_max = static_cast<double>(d) * d / (static_cast<double>(d) * d - 1);
  if (!(p >= 0.0 && p <= p_max))
    throw DomainError("depolarizing: p must lie in [0, " + std::to_string(p_max) + "]");
  // Choi = (1-p) vec(I)vec(I)^* + (p/d) I, positive on the whole range.
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  Vector w = Vector::Zero(n);
  for (int j = 0; j < d; ++j) w(static_cast<Eigen::Index>(j) * d + j) = 1.0;
  Matrix c = (1.0 - p) * (w * w.adjoint());
  c += (p / d) * Matrix::Identity(n, n);
  return choi_to_kraus(ChoiMatrix(d, d, std::move(c)));
}

SForm depolarizing_complement_s(int d, double p) {
  if (d < 1) throw DomainError("depolarizing_complement_s: d must be positive");
  const double p_max = static_cast<double>(d) * d / (static_cast<double>(d) * d - 1);
  if (!(p >= 0.0 && p <= p_max))
    throw DomainError("depolarizing_complement_s: p out of range");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const Vector om = max_entangled(d).amplitudes();
  const double coef =
      -std::sqrt(p) / d + std::sqrt(std::max(0.0, 1.0 - p * (1.0 - 1.0 / (static_cast<double>(d) * d))));
  Matrix s = std::sqrt(p / d) * Matrix::Identity(n, n);
  s += std::sqrt(static_cast<double>(d)) * coef * (om * om.adjoint());
  return SForm(d, d, std::move(s));
}

KrausMap transpose_depolarizing(int d) {
  if (d < 2) throw DomainError("transpose_depolarizing: d must be at least 2");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(d) * (d - 1) / 2);
  const double s = 1.0 / std::sqrt(static_cast<double>(d) - 1);
  for (int j = 0; j < d; ++j)
    for (int k = j + 1; k < d; ++k) {
      Matrix e = Matrix::Zero(d, d);
      e(j, k) = s;
      e(k, j) = -s;
      ops.push_back(std::move(e));
    }
  return KrausMap(std::move(ops));
}

KrausMap wh_complement(int d) {
  if (d < 2) throw DomainError("wh_complement: d must be at least 2");
  detail::check_total_dim(static_cast<long>(d) * d, d, "wh_complement");
  const double s = 1.0 / std::sqrt(2.0 * (d - 1));
  std::vector<Matrix> ops;
  ops.reserve(d);
  for (int j = 0; j < d; ++j) {
    Matrix vj = Matrix::Zero(static_cast<Eigen::Index>(d) * d, d);
    for (int a = 0; a < d; ++a) {
      vj(static_cast<Eigen::Index>(a) * d + j, a) += s;
      vj(static_cast<Eigen::Index>(j) * d + a, a) -= s;
    }
    ops.push_back(std::move(vj));
  }
  return KrausMap(std::move(ops));
}

Matrix flip_operator(int d) {
  if (d < 1) throw DomainError("flip_operator: d must be positive");
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  detail::check_total_dim(n, n, "flip_operator");
  Matrix f = Matrix::Zero(n, n);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) f(static_cast<Eigen::Index>(i) * d + j, static_cast<Eigen::Index>(j) * d + i) = 1.0;
  return f;
}

PureState max_entangled(int d) {
  if (d < 1) throw DomainError("max_entangled: d must be positive");
  Vector om = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) om(static_cast<Eigen::Index>(j) * d + j) = s;
  return PureState(std::move(om));
}

namespace {

void require_consistent(const EBSpec& spec) {
  if (spec.psi.empty() || spec.psi.size() != spec.phi.size())
    throw DimensionError("EBSpec: psi and phi must be nonempty and equally long");
  for (const auto& v : spec.psi)
    if (v.size() != spec.psi.front().size())
      throw DimensionError("EBSpec: psi vectors have mixed dimensions");
  for (const auto& v : spec.phi)
    if (v.size() != spec.phi.front().size())
      throw DimensionError("EBSpec: phi vectors have mixed dimensions");
}

}  // namespace

KrausMap eb_channel(const EBSpec& spec) {
  require_consistent(spec);
  std::vector<Matrix> ops;
  ops.reserve(spec.psi.size());
  for (std::size_t a = 0; a < spec.psi.size(); ++a)
    ops.push_back(spec.phi[a] * spec.psi[a].adjoint());
  return KrausMap(std::move(ops));
}

Matrix eb_correlation(const EBSpec& spec) {
  require_consistent(spec);
  const int n = spec.terms();
  Matrix c(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) c(a, b) = spec.phi[b].adjoint() * spec.phi[a];
  return c;
}

namespace {

// V~_j = sum_a L(a,j) |e_a><psi_a| for the Kolmogorov factor L of the
// correlation matrix.
KrausMap kolmogorov_kraus(const Matrix& l, const std::vector<Vector>& psi) {
  const int n = static_cast<int>(l.rows());
  const int d = static_cast<int>(psi.front().size());
  std::vector<Matrix> ops;
  ops.reserve(l.cols());
  for (Eigen::Index j = 0; j < l.cols(); ++j) {
    Matrix vj(n, d);
    for (int a = 0; a < n; ++a) vj.row(a) = l(a, j) * psi[a].adjoint();
    ops.push_back(std::move(vj));
  }
  if (ops.empty()) ops.push_back(Matrix::Zero(n, d));
  return KrausMap(std::move(ops));
}

}  // namespace

KrausMap eb_complement_closed_form(const EBSpec& spec, double tol_rank) {
  require_consistent(spec);
  const Matrix l = kolmogorov_factorization(eb_correlation(spec), tol_rank);
  return kolmogorov_kraus(l, spec.psi);
}

KrausMap diagonal_channel(const CorrelationMatrix& c, double tol_rank) {
  if (!c.unit_diagonal)
    throw ValidationError("diagonal_channel: correlation matrix needs a unit diagonal");
  std::vector<Vector> basis;
  basis.reserve(c.size);
  for (int a = 0; a < c.size; ++a) basis.push_back(Vector::Unit(c.size, a));
  return kolmogorov_kraus(kolmogorov_factorization(c.c, tol_rank), basis);
}

KrausMap generalized_diagonal(const CorrelationMatrix& c,
                              const std::vector<Vector>& psi, double tol_rank) {
  if (static_cast<int>(psi.size()) != c.size)
    throw DimensionError("generalized_diagonal: need one psi vector per matrix row");
  for (const auto& v : psi)
    if (v.size() != psi.front().size())
      throw DimensionError("generalized_diagonal: psi vectors have mixed dimensions");
  return kolmogorov_kraus(kolmogorov_factorization(c.c, tol_rank), psi);
}

KrausMap convex_mixture(const std::vector<KrausMap>& maps,
                        const std::vector<double>& weights) {
  if (maps.empty() || maps.size() != weights.size())
    throw DimensionError("convex_mixture: need one weight per map");
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw DomainError("convex_mixture: negative weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kDefaultTol.trace)
    throw DomainError("convex_mixture: weights sum to " + std::to_string(sum));
  const int din = maps.front().d_in;
  const int dout = maps.front().d_out;
  std::vector<Matrix> ops;
  for (std::size_t i = 0; i < maps.size(); ++i) {
    if (maps[i].d_in != din || maps[i].d_out != dout)
      throw DimensionError("convex_mixture: maps have mixed shapes");
    const double s = std::sqrt(weights[i]);
    for (const auto& v : maps[i].kraus) ops.push_back(s * v);
  }
  return KrausMap(std::move(ops));
}

EBSpec random_eb_spec(int d_in, int d_out, int terms, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || terms < 1)
    throw DomainError("random_eb_spec: dimensions and term count must be positive");
  Rng rng(seed);
  EBSpec spec;
  for (int a = 0; a < terms; ++a) {
    spec.psi.push_back(random_pure(d_in, rng).amplitudes());
    spec.phi.push_back(random_pure(d_out, rng).amplitudes());
  }
  return spec;
}

EBSpec random_eb_channel_spec(int d_in, int d_out, int blocks, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || blocks < 1)
    throw DomainError("random_eb_channel_spec: dimensions and blocks must be positive");
  Rng rng(seed);
  const int n = d_in * blocks;
  const Matrix u = random_unitary(n, rng);
  // Rows of the first d_in Haar columns give an exact rank-one resolution of
  // the identity; their norms become the output-vector lengths.
  EBSpec spec;
  for (int a = 0; a < n; ++a) {
    Vector row(d_in);
    for (int i = 0; i < d_in; ++i) row(i) = std::conj(u(a, i));
    const double w = row.norm();
    if (w < 1e-14) continue;
    spec.psi.push_back(row / w);
    spec.phi.push_back(w * random_pure(d_out, rng).amplitudes());
  }
  return spec;
}

EBSpec random_qc_spec(int d, std::uint64_t seed) {
  if (d < 1) throw DomainError("random_qc_spec: d must be positive");
  Rng rng(seed);
  const Matrix u = random_unitary(d, rng);
  EBSpec spec;
  for (int a = 0; a < d; ++a) {
    spec.psi.push_back(random_pure(d, rng).amplitudes());
    spec.phi.push_back(u.col(a));
  }
  return spec;
}

EBSpec random_cq_spec(int d_in, int d_out, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1) throw DomainError("random_cq_spec: dims must be positive");
  Rng rng(seed);
  const Matrix u = random_unitary(d_in, rng);
  EBSpec spec;
  for (int a = 0; a < d_in; ++a) {
    spec.psi.push_back(u.col(a));
    spec.phi.push_back(random_pure(d_out, rng).amplitudes());
  }
  return spec;
}

CorrelationMatrix random_correlation(int size, bool unit_diagonal, std::uint64_t seed) {
  if (size < 1) throw DomainError("random_correlation: size must be positive");
  Rng rng(seed);
  Matrix g(size, size);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) g(i, j) = rng.complex_normal();
  Matrix c = g * g.adjoint();
  if (unit_diagonal) {
    Eigen::VectorXd d = c.diagonal().real().cwiseMax(1e-12).cwiseSqrt();
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < size; ++j) c(i, j) /= d(i) * d(j);
    c.diagonal().setOnes();
  }
  return CorrelationMatrix(std::move(c), unit_diagonal);
}

KrausMap random_cp_map(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || n_kraus < 1)
    throw DomainError("random_cp_map: dimensions and operator count must be positive");
  Rng rng(seed);
  std::vector<Matrix> ops;
  ops.reserve(n_kraus);
  for (int c = 0; c < n_kraus; ++c) {
    Matrix v(d_out, d_in);
    for (int i = 0; i < d_out; ++i)
      for (int j = 0; j < d_in; ++j) v(i, j) = rng.complex_normal();
    ops.push_back(std::move(v));
  }
  Matrix k = Matrix::Zero(d_in, d_in);
  for (const auto& v : ops) k.noalias() += v.adjoint() * v;
  const double scale = 1.0 / std::sqrt(hermitian_eigenvalues(k).maxCoeff());
  for (auto& v : ops) v *= scale;
  return KrausMap(std::move(ops));
}

KrausMap random_tp_channel(int d_in, int d_out, int n_kraus, std::uint64_t seed) {
  if (d_in < 1 || d_out < 1 || n_kraus < 1)
    throw DomainError("random_tp_channel: dimensions must be positive");
  if (static_cast<long>(d_out) * n_kraus < d_in)
    throw DomainError("random_tp_channel: d_out * n_kraus must be at least d_in");
  Rng rng(seed);
  const Matrix u = random_unitary(d_out * n_kraus, rng);
  const StinespringOperator v(d_out, n_kraus, u.leftCols(d_in));
  return stinespring_to_kraus(v, Keep::B);
}

}  // namespace chancomp
