#include "chancomp/complement.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace chancomp {

SForm::SForm(int dim_a, int dim_b, Matrix matrix)
    : d_A(dim_a), d_B(dim_b), d_C(static_cast<int>(matrix.rows())), s(std::move(matrix)) {
  if (d_A < 1 || d_B < 1 || d_C < 1 ||
      s.cols() != static_cast<Eigen::Index>(d_A) * d_B)
    throw DimensionError("SForm: operator is " + std::to_string(s.rows()) + "x" +
                         std::to_string(s.cols()) + ", expected " +
                         std::to_string(d_A) + "*" + std::to_string(d_B) + " columns");
}

KrausMap complement(const KrausMap& phi) {
  const int m = phi.size();
  std::vector<Matrix> ops;
  ops.reserve(phi.d_out);
  for (int j = 0; j < phi.d_out; ++j) {
    Matrix vj(m, phi.d_in);
    for (int a = 0; a < m; ++a) vj.row(a) = phi.kraus[a].row(j);
    ops.push_back(std::move(vj));
  }
  return KrausMap(std::move(ops));
}

KrausMap minimal_form(const KrausMap& phi, double tol_rank) {
  return choi_to_kraus(choi(phi), tol_rank);
}

namespace {

Matrix pseudo_inverse_psd(const Matrix& g, double tol_rank) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  const Eigen::VectorXd eigs = es.eigenvalues();
  const double cutoff = tol_rank * std::max(eigs.cwiseAbs().maxCoeff(), 0.0);
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(eigs.size());
  for (Eigen::Index i = 0; i < eigs.size(); ++i)
    if (eigs(i) > cutoff) inv(i) = 1.0 / eigs(i);
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().adjoint();
}

WitnessKind classify(const Matrix& w, double tol) {
  const Matrix wtw = w.adjoint() * w;
  if ((wtw - Matrix::Identity(w.cols(), w.cols())).norm() <= tol * std::max(1.0, wtw.norm()))
    return WitnessKind::isometry;
  return WitnessKind::partial_isometry;
}

KrausMap conjugate_output(const KrausMap& phi, const Matrix& w) {
  std::vector<Matrix> ops;
  ops.reserve(phi.kraus.size());
  for (const auto& k : phi.kraus) ops.push_back(w * k);
  return KrausMap(std::move(ops));
}

}  // namespace

WitnessResult equivalence_witness(const StinespringOperator& v1,
                                  const StinespringOperator& v2, double tol,
                                  double tol_rank) {
  if (v1.d_A != v2.d_A || v1.d_B != v2.d_B)
    throw DimensionError("equivalence_witness: dilations act on different spaces");
  const KrausMap side_b1 = stinespring_to_kraus(v1, Keep::B);
  const KrausMap side_b2 = stinespring_to_kraus(v2, Keep::B);
  const double scale = std::max(1.0, choi(side_b1).m.norm());
  const double same = choi_residual(side_b1, side_b2);
  if (same > tol * scale)
    throw NotSameChannelError("equivalence_witness: the dilations' B-side maps differ "
                              "(Choi residual " + std::to_string(same) + ")");

  // Gram system on the side-B Kraus operators of v1: row c' of W solves
  // G w = rhs with G_kc = Tr A_k^* A_c and rhs_k = Tr A_k^* A'_{c'}.
  const int m1 = v1.d_C;
  const int m2 = v2.d_C;
  Matrix g(m1, m1);
  for (int k = 0; k < m1; ++k)
    for (int c = 0; c < m1; ++c)
      g(k, c) = (side_b1.kraus[k].adjoint() * side_b1.kraus[c]).trace();
  const Matrix g_pinv = pseudo_inverse_psd(g, tol_rank);

  Matrix w(m2, m1);
  for (int cp = 0; cp < m2; ++cp) {
    Vector rhs(m1);
    for (int k = 0; k < m1; ++k)
      rhs(k) = (side_b1.kraus[k].adjoint() * side_b2.kraus[cp]).trace();
    w.row(cp) = (g_pinv * rhs).transpose();
  }

  WitnessResult out;
  out.residual = (v2.v - tensor_product(Matrix::Identity(v1.d_B, v1.d_B), w) * v1.v).norm();
  out.witness = EquivalenceWitness{w, classify(w, tol)};

  const KrausMap side_c1 = stinespring_to_kraus(v1, Keep::C);
  const KrausMap side_c2 = stinespring_to_kraus(v2, Keep::C);
  out.forward_choi_residual = choi_residual(conjugate_output(side_c1, w), side_c2);
  out.backward_choi_residual = choi_residual(conjugate_output(side_c2, w.adjoint()), side_c1);
  return out;
}

WitnessResult complement_witness(const KrausMap& base, const KrausMap& candidate,
                                 double tol, double tol_rank) {
  const StinespringOperator v1 = kraus_to_stinespring(base);
  const StinespringOperator v2 = swap_output_factors(kraus_to_stinespring(candidate));
  return equivalence_witness(v1, v2, tol, tol_rank);
}

WitnessResult double_complement_check(const KrausMap& phi) {
  const KrausMap twice = complement(complement(phi));
  try {
    return equivalence_witness(kraus_to_stinespring(phi), kraus_to_stinespring(twice));
  } catch (const NotSameChannelError&) {
    // Report the disagreement as a residual instead of escalating.
    WitnessResult out;
    out.residual = choi_residual(phi, twice);
    out.forward_choi_residual = out.residual;
    out.backward_choi_residual = out.residual;
    out.witness = EquivalenceWitness{Matrix::Identity(phi.size(), phi.size()),
                                     WitnessKind::partial_isometry};
    return out;
  }
}

SForm s_form(const StinespringOperator& v) {
  Matrix s(v.d_C, static_cast<Eigen::Index>(v.d_A) * v.d_B);
  for (int c = 0; c < v.d_C; ++c)
    for (int a = 0; a < v.d_A; ++a)
      for (int b = 0; b < v.d_B; ++b)
        s(c, static_cast<Eigen::Index>(a) * v.d_B + b) =
            v.v(static_cast<Eigen::Index>(b) * v.d_C + c, a);
  return SForm(v.d_A, v.d_B, std::move(s));
}

StinespringOperator s_form_to_stinespring(const SForm& s) {
  Matrix v(static_cast<Eigen::Index>(s.d_B) * s.d_C, s.d_A);
  for (int b = 0; b < s.d_B; ++b)
    for (int c = 0; c < s.d_C; ++c)
      for (int a = 0; a < s.d_A; ++a)
        v(static_cast<Eigen::Index>(b) * s.d_C + c, a) =
            s.s(c, static_cast<Eigen::Index>(a) * s.d_B + b);
  return StinespringOperator(s.d_B, s.d_C, std::move(v));
}

KrausMap s_to_channel(const SForm& s) {
  std::vector<Matrix> ops;
  ops.reserve(s.d_B);
  for (int b = 0; b < s.d_B; ++b) {
    Matrix k(s.d_C, s.d_A);
    for (int a = 0; a < s.d_A; ++a)
      k.col(a) = s.s.col(static_cast<Eigen::Index>(a) * s.d_B + b);
    ops.push_back(std::move(k));
  }
  return KrausMap(std::move(ops));
}

}  // namespace chancomp
