#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "chancomp/numerics.hpp"

using namespace chancomp;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace

TEST_CASE("tensor product identities") {
  CHECK((tensor_product(Matrix::Identity(2, 2), Matrix::Identity(3, 3)) -
         Matrix::Identity(6, 6))
            .norm() == doctest::Approx(0.0));

  Matrix expect(4, 4);
  expect << 0, 0, 1, 0,
            0, 0, 0, -1,
            1, 0, 0, 0,
            0, -1, 0, 0;
  CHECK((tensor_product(pauli_x(), pauli_z()) - expect).norm() == doctest::Approx(0.0));
}

TEST_CASE("tensor product spectrum is the pairwise eigenvalue products") {
  Rng rng(41);
  Matrix a(2, 2), b(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a(i, j) = rng.complex_normal();
      b(i, j) = rng.complex_normal();
    }
  a = (a + a.adjoint()).eval();
  b = (b + b.adjoint()).eval();

  // Oracle: every product lambda_i mu_j, assembled by hand.
  const Eigen::VectorXd ea = hermitian_eigenvalues(a);
  const Eigen::VectorXd eb = hermitian_eigenvalues(b);
  std::vector<double> products;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) products.push_back(ea(i) * eb(j));
  std::sort(products.begin(), products.end());

  Eigen::VectorXd got = hermitian_eigenvalues(tensor_product(a, b));
  std::vector<double> gv(got.data(), got.data() + got.size());
  std::sort(gv.begin(), gv.end());
  for (std::size_t i = 0; i < gv.size(); ++i)
    CHECK(gv[i] == doctest::Approx(products[i]).epsilon(1e-10));
}

TEST_CASE("tensor product enforces the dimension cap") {
  const Matrix big = Matrix::Identity(100, 100);
  CHECK_THROWS_AS(tensor_product(big, Matrix::Identity(64, 64)), DimensionError);
}

TEST_CASE("partial trace on product and entangled states") {
  Rng rng(7);
  const Matrix rho = random_density(2, rng).matrix();
  const Matrix sigma = random_density(3, rng).matrix();
  const Matrix joint = tensor_product(rho, sigma);

  CHECK((partial_trace(joint, 2, 3, Keep::B) - rho).norm() < 1e-12);
  CHECK((partial_trace(joint, 2, 3, Keep::C) - sigma).norm() < 1e-12);

  CHECK((partial_trace(Matrix::Identity(4, 4), 2, 2, Keep::C) - 2.0 * Matrix::Identity(2, 2))
            .norm() < 1e-14);

  // Maximally entangled on 3x3: both marginals are I/3.
  Vector om = Vector::Zero(9);
  for (int j = 0; j < 3; ++j) om(j * 3 + j) = 1.0 / std::sqrt(3.0);
  const Matrix proj = om * om.adjoint();
  CHECK((partial_trace(proj, 3, 3, Keep::B) - Matrix::Identity(3, 3) / 3.0).norm() < 1e-14);

  CHECK_THROWS_AS(partial_trace(Matrix::Identity(5, 5), 2, 2, Keep::B), DimensionError);
}

TEST_CASE("partial trace is linear and trace preserving on random input") {
  Rng rng(11);
  Matrix m(6, 6), n(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      m(i, j) = rng.complex_normal();
      n(i, j) = rng.complex_normal();
    }
  const Complex alpha(0.3, -1.2);
  CHECK((partial_trace(m + alpha * n, 2, 3, Keep::C) -
         (partial_trace(m, 2, 3, Keep::C) + alpha * partial_trace(n, 2, 3, Keep::C)))
            .norm() < 1e-12);
  CHECK(std::abs(partial_trace(m, 2, 3, Keep::B).trace() - m.trace()) < 1e-12);
  CHECK(std::abs(partial_trace(m, 2, 3, Keep::C).trace() - m.trace()) < 1e-12);
}

TEST_CASE("nonzero spectrum filters and sorts") {
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = 0.5;
  const auto spec = nonzero_spectrum(d, 1e-12);
  REQUIRE(spec.size() == 2);
  CHECK(spec[0] == doctest::Approx(0.5));
  CHECK(spec[1] == doctest::Approx(0.5));

  Rng rng(3);
  const Matrix proj = random_pure(4, rng).projector();
  const auto one = nonzero_spectrum(proj, 1e-9);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == doctest::Approx(1.0));

  Matrix bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(nonzero_spectrum(bad, 1e-9), ValidationError);
}

TEST_CASE("nonzero spectrum is unitarily invariant") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    Matrix h(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) h(i, j) = rng.complex_normal();
    h = (h + h.adjoint()).eval();
    const Matrix u = random_unitary(4, rng);
    const auto s1 = nonzero_spectrum(h, 1e-9);
    const auto s2 = nonzero_spectrum(u * h * u.adjoint(), 1e-9);
    REQUIRE(s1.size() == s2.size());
    for (std::size_t i = 0; i < s1.size(); ++i)
      CHECK(s1[i] == doctest::Approx(s2[i]).epsilon(1e-10));
  }
}

TEST_CASE("entropy values") {
  Rng rng(5);
  CHECK(von_neumann_entropy(DensityMatrix::from_pure(random_pure(3, rng))) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(von_neumann_entropy(DensityMatrix::maximally_mixed(3)) ==
        doctest::Approx(std::log(3.0)));
  Matrix d = Matrix::Zero(3, 3);
  d(0, 0) = 0.5;
  d(1, 1) = 0.5;
  CHECK(von_neumann_entropy(DensityMatrix(d)) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("entropy is unitarily invariant") {
  Rng rng(23);
  const DensityMatrix rho = random_density(4, rng);
  const Matrix u = random_unitary(4, rng);
  const DensityMatrix rotated(u * rho.matrix() * u.adjoint());
  CHECK(von_neumann_entropy(rho) ==
        doctest::Approx(von_neumann_entropy(rotated)).epsilon(1e-10));
}

TEST_CASE("trace power") {
  Rng rng(29);
  const DensityMatrix pure = DensityMatrix::from_pure(random_pure(3, rng));
  CHECK(trace_power(pure, 1.7) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(trace_power(DensityMatrix::maximally_mixed(2), 2.0) == doctest::Approx(0.5));
  CHECK(trace_power(DensityMatrix::maximally_mixed(3), 3.0) ==
        doctest::Approx(1.0 / 9.0));
  const DensityMatrix rho = random_density(4, rng);
  CHECK(trace_power(rho, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(trace_power(rho, 0.5), DomainError);
}

TEST_CASE("random generators are deterministic and well formed") {
  const Matrix u1 = random_unitary(3, std::uint64_t{42});
  const Matrix u2 = random_unitary(3, std::uint64_t{42});
  CHECK(u1 == u2);  // bitwise

  CHECK((u1.adjoint() * u1 - Matrix::Identity(3, 3)).norm() < 1e-12);

  const PureState p1 = random_pure(3, std::uint64_t{1});
  const PureState p2 = random_pure(3, std::uint64_t{1});
  CHECK(p1.amplitudes() == p2.amplitudes());
  CHECK(std::abs(p1.amplitudes().norm() - 1.0) < 1e-12);

  const DensityMatrix d1 = random_density(4, std::uint64_t{9});
  const DensityMatrix d2 = random_density(4, std::uint64_t{9});
  CHECK(d1.matrix() == d2.matrix());

  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
}

TEST_CASE("state validation") {
  Vector v(2);
  v << 1.0, 1.0;
  CHECK_THROWS_AS(PureState{v}, ValidationError);

  Matrix notherm(2, 2);
  notherm << 1, 1, 0, 0;
  CHECK_THROWS_AS(DensityMatrix{notherm}, ValidationError);

  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{neg}, ValidationError);

  Matrix half = Matrix::Identity(2, 2) * 0.25;
  CHECK_THROWS_AS(DensityMatrix{half}, ValidationError);
  CHECK_NOTHROW(DensityMatrix(half, false));
}

TEST_CASE("kolmogorov factorization") {
  // identity: factors are the canonical basis
  const Matrix l0 = kolmogorov_factorization(Matrix::Identity(3, 3));
  CHECK(l0.cols() == 3);
  CHECK((l0 * l0.adjoint() - Matrix::Identity(3, 3)).norm() < 1e-12);

  // all-ones: rank one
  const Matrix ones = Matrix::Ones(4, 4);
  const Matrix l1 = kolmogorov_factorization(ones);
  CHECK(l1.cols() == 1);
  CHECK((l1 * l1.adjoint() - ones).norm() < 1e-12);

  // random PSD with deficient rank
  Rng rng(31);
  Matrix g(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = rng.complex_normal();
  const Matrix a = g * g.adjoint();
  const Matrix l = kolmogorov_factorization(a);
  CHECK(l.cols() == 3);
  CHECK((l * l.adjoint() - a).norm() < 1e-10 * a.norm());

  Matrix indef = Matrix::Identity(2, 2);
  indef(1, 1) = -1.0;
  CHECK_THROWS_AS(kolmogorov_factorization(indef), DomainError);
}
