#include "chancomp/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

namespace chancomp {

KrausMap::KrausMap(std::vector<Matrix> operators, double tol_tp)
    : kraus(std::move(operators)) {
  if (kraus.empty()) throw ValidationError("KrausMap: empty Kraus list");
  d_out = static_cast<int>(kraus.front().rows());
  d_in = static_cast<int>(kraus.front().cols());
  if (d_out < 1 || d_in < 1) throw DimensionError("KrausMap: empty operator");
  for (const auto& v : kraus)
    if (v.rows() != d_out || v.cols() != d_in)
      throw DimensionError("KrausMap: operators have mixed shapes");
  Matrix k = Matrix::Zero(d_in, d_in);
  for (const auto& v : kraus) k.noalias() += v.adjoint() * v;
  trace_preserving = (k - Matrix::Identity(d_in, d_in)).norm() <= tol_tp;
}

StinespringOperator::StinespringOperator(int dim_b, int dim_c, Matrix op)
    : d_A(static_cast<int>(op.cols())), d_B(dim_b), d_C(dim_c), v(std::move(op)) {
  if (d_B < 1 || d_C < 1 || d_A < 1 ||
      v.rows() != static_cast<Eigen::Index>(d_B) * d_C)
    throw DimensionError("StinespringOperator: operator is " +
                         std::to_string(v.rows()) + "x" + std::to_string(v.cols()) +
                         ", expected " + std::to_string(d_B) + "*" +
                         std::to_string(d_C) + " rows");
}

bool StinespringOperator::is_isometry(double tol) const {
  return (v.adjoint() * v - Matrix::Identity(d_A, d_A)).norm() <= tol;
}

ChoiMatrix::ChoiMatrix(int din, int dout, Matrix matrix)
    : d_in(din), d_out(dout), m(std::move(matrix)) {
  if (d_in < 1 || d_out < 1 ||
      m.rows() != static_cast<Eigen::Index>(d_in) * d_out || m.rows() != m.cols())
    throw DimensionError("ChoiMatrix: matrix is " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + ", expected " +
                         std::to_string(d_in) + "*" + std::to_string(d_out));
}

int ChoiMatrix::rank(double tol_rank) const {
  const Eigen::VectorXd eigs = hermitian_eigenvalues(m);
  const double cutoff = tol_rank * std::max(eigs.cwiseAbs().maxCoeff(), 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs(i) > cutoff) ++r;
  return r;
}

Matrix apply_matrix(const KrausMap& phi, const Matrix& rho) {
  if (rho.rows() != phi.d_in || rho.cols() != phi.d_in)
    throw DimensionError("apply: state dimension " + std::to_string(rho.rows()) +
                         " does not match d_in " + std::to_string(phi.d_in));
  Matrix out = Matrix::Zero(phi.d_out, phi.d_out);
  for (const auto& v : phi.kraus) out.noalias() += v * rho * v.adjoint();
  return out;
}

DensityMatrix apply(const KrausMap& phi, const DensityMatrix& rho) {
  return DensityMatrix(apply_matrix(phi, rho.matrix()),
                       phi.trace_preserving && rho.normalized());
}

Matrix dual_apply(const KrausMap& phi, const Matrix& x) {
  if (x.rows() != phi.d_out || x.cols() != phi.d_out)
    throw DimensionError("dual_apply: observable dimension " +
                         std::to_string(x.rows()) + " does not match d_out " +
                         std::to_string(phi.d_out));
  Matrix out = Matrix::Zero(phi.d_in, phi.d_in);
  for (const auto& v : phi.kraus) out.noalias() += v.adjoint() * x * v;
  return out;
}

StinespringOperator kraus_to_stinespring(const KrausMap& phi) {
  const int m = phi.size();
  Matrix v(static_cast<Eigen::Index>(phi.d_out) * m, phi.d_in);
  for (int b = 0; b < phi.d_out; ++b)
    for (int c = 0; c < m; ++c) v.row(static_cast<Eigen::Index>(b) * m + c) = phi.kraus[c].row(b);
  return StinespringOperator(phi.d_out, m, std::move(v));
}

KrausMap stinespring_to_kraus(const StinespringOperator& v, Keep side) {
  std::vector<Matrix> ops;
  if (side == Keep::B) {
    ops.reserve(v.d_C);
    for (int c = 0; c < v.d_C; ++c) {
      Matrix k(v.d_B, v.d_A);
      for (int b = 0; b < v.d_B; ++b) k.row(b) = v.v.row(static_cast<Eigen::Index>(b) * v.d_C + c);
      ops.push_back(std::move(k));
    }
  } else {
    ops.reserve(v.d_B);
    for (int b = 0; b < v.d_B; ++b)
      ops.push_back(v.v.middleRows(static_cast<Eigen::Index>(b) * v.d_C, v.d_C));
  }
  return KrausMap(std::move(ops));
}

StinespringOperator swap_output_factors(const StinespringOperator& v) {
  Matrix w(v.v.rows(), v.v.cols());
  for (int b = 0; b < v.d_B; ++b)
    for (int c = 0; c < v.d_C; ++c)
      w.row(static_cast<Eigen::Index>(c) * v.d_B + b) =
          v.v.row(static_cast<Eigen::Index>(b) * v.d_C + c);
  return StinespringOperator(v.d_C, v.d_B, std::move(w));
}

StinespringOperator tensor_dilations(const StinespringOperator& v1,
                                     const StinespringOperator& v2) {
  const long db = static_cast<long>(v1.d_B) * v2.d_B;
  const long dc = static_cast<long>(v1.d_C) * v2.d_C;
  detail::check_total_dim(db * dc, static_cast<long>(v1.d_A) * v2.d_A,
                          "tensor_dilations");
  const Matrix prod = tensor_product(v1.v, v2.v);
  Matrix w(prod.rows(), prod.cols());
  for (int b1 = 0; b1 < v1.d_B; ++b1)
    for (int c1 = 0; c1 < v1.d_C; ++c1)
      for (int b2 = 0; b2 < v2.d_B; ++b2)
        for (int c2 = 0; c2 < v2.d_C; ++c2) {
          const Eigen::Index src =
              (static_cast<Eigen::Index>(b1) * v1.d_C + c1) * (v2.d_B * v2.d_C) +
              static_cast<Eigen::Index>(b2) * v2.d_C + c2;
          const Eigen::Index dst =
              (static_cast<Eigen::Index>(b1) * v2.d_B + b2) * dc +
              static_cast<Eigen::Index>(c1) * v2.d_C + c2;
          w.row(dst) = prod.row(src);
        }
  return StinespringOperator(static_cast<int>(db), static_cast<int>(dc), std::move(w));
}

KrausMap recombine_kraus(const KrausMap& phi, const Matrix& mixing) {
  if (mixing.cols() != phi.size())
    throw DimensionError("recombine_kraus: mixing matrix needs one column per operator");
  std::vector<Matrix> ops(mixing.rows(), Matrix::Zero(phi.d_out, phi.d_in));
  for (Eigen::Index i = 0; i < mixing.rows(); ++i)
    for (int j = 0; j < phi.size(); ++j) ops[i] += mixing(i, j) * phi.kraus[j];
  return KrausMap(std::move(ops));
}

namespace {

// Column vectorization matching the Choi block layout: vec(V)[j*d_out + a] = V(a, j).
Vector choi_vec(const Matrix& v) {
  Vector out(v.rows() * v.cols());
  for (Eigen::Index j = 0; j < v.cols(); ++j)
    for (Eigen::Index a = 0; a < v.rows(); ++a) out(j * v.rows() + a) = v(a, j);
  return out;
}

Matrix choi_unvec(const Vector& w, int d_in, int d_out) {
  Matrix v(d_out, d_in);
  for (int j = 0; j < d_in; ++j)
    for (int a = 0; a < d_out; ++a) v(a, j) = w(static_cast<Eigen::Index>(j) * d_out + a);
  return v;
}

bool lex_less(const Vector& a, const Vector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

ChoiMatrix choi(const KrausMap& phi) {
  const Eigen::Index n = static_cast<Eigen::Index>(phi.d_in) * phi.d_out;
  detail::check_total_dim(n, n, "choi");
  Matrix c = Matrix::Zero(n, n);
  for (const auto& v : phi.kraus) {
    const Vector w = choi_vec(v);
    c.noalias() += w * w.adjoint();
  }
  return ChoiMatrix(phi.d_in, phi.d_out, std::move(c));
}

KrausMap choi_to_kraus(const ChoiMatrix& c, double tol_rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(c.m);
  const Eigen::VectorXd eigs = es.eigenvalues();
  const double scale = std::max(eigs.cwiseAbs().maxCoeff(), 0.0);
  const double cutoff = tol_rank * scale;
  const double neg_tol = tol_rank * std::max(1.0, scale);
  if (eigs.minCoeff() < -neg_tol)
    throw NotCPError("choi_to_kraus: negative Choi eigenvalue " +
                     std::to_string(eigs.minCoeff()));

  std::vector<int> order;
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs(i) > cutoff) order.push_back(static_cast<int>(i));
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (eigs(i) != eigs(j)) return eigs(i) > eigs(j);
    return lex_less(es.eigenvectors().col(i), es.eigenvectors().col(j));
  });

  std::vector<Matrix> ops;
  ops.reserve(order.size());
  for (int i : order)
    ops.push_back(choi_unvec(std::sqrt(eigs(i)) * es.eigenvectors().col(i),
                             c.d_in, c.d_out));
  if (ops.empty()) ops.push_back(Matrix::Zero(c.d_out, c.d_in));  // zero map
  return KrausMap(std::move(ops));
}

KrausMap tensor(const KrausMap& phi1, const KrausMap& phi2) {
  detail::check_total_dim(static_cast<long>(phi1.d_out) * phi2.d_out,
                          static_cast<long>(phi1.d_in) * phi2.d_in, "tensor");
  std::vector<Matrix> ops;
  ops.reserve(static_cast<std::size_t>(phi1.size()) * phi2.size());
  for (const auto& a : phi1.kraus)
    for (const auto& b : phi2.kraus) ops.push_back(tensor_product(a, b));
  return KrausMap(std::move(ops));
}

double choi_residual(const KrausMap& phi1, const KrausMap& phi2) {
  if (phi1.d_in != phi2.d_in || phi1.d_out != phi2.d_out)
    throw DimensionError("choi_residual: maps have different shapes");
  return (choi(phi1).m - choi(phi2).m).norm();
}

double check_covariance(const KrausMap& phi, const Matrix& u_in,
                        const Matrix& u_out, int probes, std::uint64_t seed) {
  detail::require_square(u_in, "check_covariance");
  detail::require_square(u_out, "check_covariance");
  if (u_in.rows() != phi.d_in || u_out.rows() != phi.d_out)
    throw DimensionError("check_covariance: unitary dimensions do not match the map");
  const double scale_in = std::max(1.0, u_in.norm());
  const double scale_out = std::max(1.0, u_out.norm());
  if ((u_in.adjoint() * u_in - Matrix::Identity(phi.d_in, phi.d_in)).norm() >
          kDefaultTol.herm * scale_in ||
      (u_out.adjoint() * u_out - Matrix::Identity(phi.d_out, phi.d_out)).norm() >
          kDefaultTol.herm * scale_out)
    throw ValidationError("check_covariance: inputs are not unitary");

  double worst = 0;
  for (int i = 0; i < probes; ++i) {
    const Matrix rho = random_density(phi.d_in, derive_seed(seed, i)).matrix();
    const Matrix lhs = apply_matrix(phi, u_in * rho * u_in.adjoint());
    const Matrix rhs = u_out * apply_matrix(phi, rho) * u_out.adjoint();
    const Eigen::VectorXd eigs = hermitian_eigenvalues(lhs - rhs);
    worst = std::max(worst, eigs.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace chancomp
