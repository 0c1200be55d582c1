#include <doctest.h>

#include <cmath>
#include <vector>

#include "chancomp/families.hpp"

using namespace chancomp;

TEST_CASE("depolarizing family") {
  CHECK(choi_residual(depolarizing(2, 0.0), identity_channel(2)) < 1e-12);
  CHECK(choi_residual(depolarizing(2, 1.0), completely_depolarizing(2)) < 1e-12);
  CHECK(depolarizing(3, 0.4).trace_preserving);
  // boundary of the CP range is still a valid channel
  CHECK(depolarizing(2, 4.0 / 3.0).trace_preserving);
  CHECK_THROWS_AS(depolarizing(2, 1.4), DomainError);
  CHECK_THROWS_AS(depolarizing(2, -0.1), DomainError);

  Rng rng(5);
  const Matrix rho = random_density(3, rng).matrix();
  const double p = 0.6;
  const Matrix expect =
      (1 - p) * rho + (p / 3.0) * rho.trace() * Matrix::Identity(3, 3);
  CHECK((apply_matrix(depolarizing(3, p), rho) - expect).norm() < 1e-12);
}

TEST_CASE("transpose-depolarizing formula and minimal enumeration") {
  const int d = 2;
  Matrix e11 = Matrix::Zero(d, d);
  e11(0, 0) = 1.0;
  Matrix e22 = Matrix::Zero(d, d);
  e22(1, 1) = 1.0;
  CHECK((apply_matrix(transpose_depolarizing(d), e11) - e22).norm() < 1e-14);

  Rng rng(9);
  const Matrix rho = random_density(d, rng).matrix();
  const Matrix expect = (Matrix::Identity(d, d) * rho.trace() - rho.transpose());
  CHECK((apply_matrix(transpose_depolarizing(d), rho) - expect).norm() < 1e-13);

  const KrausMap td3 = transpose_depolarizing(3);
  CHECK(td3.size() == 3);
  Matrix sum = Matrix::Zero(3, 3);
  for (const auto& v : td3.kraus) sum += v.adjoint() * v;
  CHECK((sum - Matrix::Identity(3, 3)).norm() < 1e-12);

  CHECK_THROWS_AS(transpose_depolarizing(1), DomainError);
}

TEST_CASE("transpose-depolarizing output spectrum is flat on pure inputs") {
  for (int d : {3, 4}) {
    const KrausMap td = transpose_depolarizing(d);
    for (int t = 0; t < 5; ++t) {
      const Matrix rho = random_pure(d, derive_seed(321, 10 * d + t)).projector();
      const auto spec = nonzero_spectrum(apply_matrix(td, rho), 1e-9);
      REQUIRE(static_cast<int>(spec.size()) == d - 1);
      for (double l : spec) CHECK(std::abs(l - 1.0 / (d - 1)) < 1e-10);
    }
  }
}

TEST_CASE("flip operator and the maximally entangled vector") {
  Matrix swap(4, 4);
  swap << 1, 0, 0, 0,
          0, 0, 1, 0,
          0, 1, 0, 0,
          0, 0, 0, 1;
  CHECK((flip_operator(2) - swap).norm() == 0.0);

  const Matrix f = flip_operator(3);
  CHECK((f * f - Matrix::Identity(9, 9)).norm() == 0.0);

  const Matrix u = random_unitary(3, std::uint64_t{77});
  const Matrix uu = tensor_product(u, u);
  CHECK((f * uu - uu * f).norm() < 1e-12);

  CHECK(std::abs(max_entangled(4).amplitudes().norm() - 1.0) < 1e-14);
}

TEST_CASE("eb channels: completeness and trace preservation") {
  const EBSpec spec = random_eb_channel_spec(3, 2, 2, 1234);
  CHECK(spec.is_channel(1e-10));
  CHECK(eb_channel(spec).trace_preserving);

  const EBSpec loose = random_eb_spec(3, 2, 4, 99);
  CHECK_FALSE(eb_channel(loose).trace_preserving);
}

TEST_CASE("closed-form eb complement equals the generic complement") {
  for (int t = 0; t < 5; ++t) {
    const EBSpec spec = random_eb_spec(3, 3, 4, derive_seed(40, t));
    const KrausMap closed = eb_complement_closed_form(spec);
    const KrausMap generic = complement(eb_channel(spec));
    CHECK(choi_residual(closed, generic) < 1e-10);
  }
}

TEST_CASE("q-c specs: delta correlation and self-similar complement") {
  const EBSpec spec = random_qc_spec(3, 505);
  const Matrix c = eb_correlation(spec);
  CHECK((c - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);

  // complement Kraus operators are rank one with orthonormal outputs: q-c again
  const KrausMap comp = eb_complement_closed_form(spec);
  REQUIRE(comp.size() == 3);
  for (const auto& v : comp.kraus) {
    Eigen::JacobiSVD<Matrix> svd(v);
    CHECK(svd.singularValues()(1) < 1e-10);  // rank one
  }
}

TEST_CASE("c-q specs complement to dephasing-type maps") {
  const EBSpec spec = random_cq_spec(3, 2, 707);
  CHECK(eb_channel(spec).trace_preserving);
  const KrausMap comp = eb_complement_closed_form(spec);
  // with an orthonormal (but rotated) input basis, the families V_k^* V_j
  // and V_j V_k^* each consist of commuting normal operators
  std::vector<Matrix> left, right;
  for (const auto& a : comp.kraus)
    for (const auto& b : comp.kraus) {
      left.push_back(a.adjoint() * b);
      right.push_back(a * b.adjoint());
    }
  for (const auto& x : left)
    for (const auto& y : left) CHECK((x * y - y * x).norm() < 1e-10);
  for (const auto& x : right)
    for (const auto& y : right) CHECK((x * y - y * x).norm() < 1e-10);
}

TEST_CASE("diagonal channels") {
  // c = I: completely dephasing
  const CorrelationMatrix eye(Matrix::Identity(3, 3), true);
  const KrausMap deph = diagonal_channel(eye);
  Rng rng(3);
  const Matrix rho = random_density(3, rng).matrix();
  const Matrix out = apply_matrix(deph, rho);
  CHECK((out - Matrix(rho.diagonal().asDiagonal())).norm() < 1e-12);

  // c = all ones: identity channel
  const CorrelationMatrix ones(Matrix::Ones(3, 3), true);
  const KrausMap id = diagonal_channel(ones);
  CHECK(id.size() == 1);
  CHECK(choi_residual(id, identity_channel(3)) < 1e-12);

  // random unit-diagonal c: Hadamard action, basis fixed points, commuting
  // normal Kraus operators
  const CorrelationMatrix c = random_correlation(3, true, 808);
  const KrausMap ch = diagonal_channel(c);
  CHECK(ch.trace_preserving);
  for (int a = 0; a < 3; ++a) {
    Matrix e = Matrix::Zero(3, 3);
    e(a, a) = 1.0;
    CHECK((apply_matrix(ch, e) - e).norm() < 1e-10);
  }
  const Matrix out2 = apply_matrix(ch, rho);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      CHECK(std::abs(out2(a, b) - c.c(a, b) * rho(a, b)) < 1e-10);
  for (const auto& x : ch.kraus)
    for (const auto& y : ch.kraus) {
      CHECK((x * y - y * x).norm() < 1e-10);
      CHECK((x * x.adjoint() - x.adjoint() * x).norm() < 1e-10);
    }

  const CorrelationMatrix bad(Matrix::Identity(2, 2) * 0.5);
  CHECK_THROWS_AS(diagonal_channel(bad), ValidationError);
}

TEST_CASE("generalized diagonal reduces to the dephasing channel on the "
          "canonical basis") {
  const CorrelationMatrix c = random_correlation(3, true, 909);
  std::vector<Vector> basis;
  for (int a = 0; a < 3; ++a) basis.push_back(Vector::Unit(3, a));
  CHECK(choi_residual(generalized_diagonal(c, basis), diagonal_channel(c)) < 1e-10);
}

TEST_CASE("convex mixtures") {
  const KrausMap id = identity_channel(2);
  const KrausMap dep = completely_depolarizing(2);

  CHECK(choi_residual(convex_mixture({id, id}, {0.5, 0.5}), id) < 1e-12);

  Matrix e11 = Matrix::Zero(2, 2);
  e11(0, 0) = 1.0;
  const Matrix out = apply_matrix(convex_mixture({id, dep}, {0.3, 0.7}), e11);
  Matrix expect = Matrix::Zero(2, 2);
  expect(0, 0) = 0.65;
  expect(1, 1) = 0.35;
  CHECK((out - expect).norm() < 1e-13);

  CHECK(convex_mixture({id, dep}, {0.3, 0.7}).trace_preserving);

  CHECK_THROWS_AS(convex_mixture({id, dep}, {0.5, 0.6}), DomainError);
  CHECK_THROWS_AS(convex_mixture({id, dep}, {1.5, -0.5}), DomainError);
  CHECK_THROWS_AS(convex_mixture({id, identity_channel(3)}, {0.5, 0.5}),
                  DimensionError);
}

TEST_CASE("random channel generators produce channels") {
  const KrausMap ch = random_tp_channel(3, 2, 3, 2024);
  CHECK(ch.trace_preserving);
  CHECK(ch.d_in == 3);
  CHECK(ch.d_out == 2);
  CHECK_THROWS_AS(random_tp_channel(5, 2, 2, 1), DomainError);

  const KrausMap cp = random_cp_map(2, 3, 4, 2025);
  Matrix k = Matrix::Zero(2, 2);
  for (const auto& v : cp.kraus) k += v.adjoint() * v;
  CHECK(hermitian_eigenvalues(k).maxCoeff() == doctest::Approx(1.0));
}
