#include <doctest.h>

#include <cmath>
#include <vector>

#include "chancomp/channel.hpp"
#include "chancomp/families.hpp"
#include "chancomp/io.hpp"

using namespace chancomp;

namespace {

// Partial trace written independently of the library routine, for use as an
// oracle against the Stinespring-based reconstructions.
Matrix oracle_trace_out_second(const Matrix& m, int db, int dc) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j) {
      Complex acc = 0;
      for (int c = 0; c < dc; ++c) acc += m(i * dc + c, j * dc + c);
      out(i, j) = acc;
    }
  return out;
}

Matrix oracle_trace_out_first(const Matrix& m, int db, int dc) {
  Matrix out = Matrix::Zero(dc, dc);
  for (int i = 0; i < dc; ++i)
    for (int j = 0; j < dc; ++j) {
      Complex acc = 0;
      for (int b = 0; b < db; ++b) acc += m(b * dc + i, b * dc + j);
      out(i, j) = acc;
    }
  return out;
}

}  // namespace

TEST_CASE("apply: identity, constant output and the transpose formula") {
  Rng rng(2);
  const DensityMatrix rho = random_density(2, rng);
  CHECK((apply(identity_channel(2), rho).matrix() - rho.matrix()).norm() < 1e-14);

  const DensityMatrix any = random_density(2, rng);
  CHECK((apply(completely_depolarizing(2), any).matrix() - Matrix::Identity(2, 2) / 2.0)
            .norm() < 1e-13);

  // transpose-depolarizing on |e1><e1| at d = 3: (I - E11)/2
  Matrix e11 = Matrix::Zero(3, 3);
  e11(0, 0) = 1.0;
  Matrix expect = (Matrix::Identity(3, 3) - e11) / 2.0;
  CHECK((apply_matrix(transpose_depolarizing(3), e11) - expect).norm() < 1e-13);

  CHECK_THROWS_AS(apply(identity_channel(3), rho), DimensionError);
}

TEST_CASE("trace-preserving flag") {
  CHECK(identity_channel(4).trace_preserving);
  CHECK(completely_depolarizing(3).trace_preserving);
  CHECK(transpose_depolarizing(3).trace_preserving);
  CHECK_FALSE(KrausMap({Matrix::Identity(2, 2) * 0.5}).trace_preserving);
}

TEST_CASE("dual map: unitality and the pairing identity") {
  const KrausMap dep = completely_depolarizing(3);
  CHECK((dual_apply(dep, Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)).norm() < 1e-12);

  Rng rng(13);
  Matrix x(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) x(i, j) = rng.complex_normal();
  CHECK((dual_apply(dep, x) - (x.trace() / 3.0) * Matrix::Identity(3, 3)).norm() < 1e-12);

  const KrausMap phi = random_cp_map(3, 2, 3, 99);
  const Matrix rho = random_density(3, rng).matrix();
  Matrix y(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) y(i, j) = rng.complex_normal();
  const Complex lhs = (y * apply_matrix(phi, rho)).trace();
  const Complex rhs = (dual_apply(phi, y) * rho).trace();
  CHECK(std::abs(lhs - rhs) < 1e-10);
}

TEST_CASE("kraus_to_stinespring stacks and reconstructs") {
  const KrausMap id = identity_channel(3);
  const StinespringOperator v_id = kraus_to_stinespring(id);
  CHECK(v_id.d_C == 1);
  CHECK((v_id.v - Matrix::Identity(3, 3)).norm() == 0.0);

  // q-c at d=2: projective measurement Kraus {E11, E22}
  Matrix k1 = Matrix::Zero(2, 2), k2 = Matrix::Zero(2, 2);
  k1(0, 0) = 1.0;
  k2(1, 1) = 1.0;
  const KrausMap qc({k1, k2});
  const StinespringOperator v = kraus_to_stinespring(qc);
  CHECK(v.v.rows() == 4);
  CHECK(v.v.cols() == 2);
  CHECK(v.is_isometry());

  Rng rng(3);
  const Matrix rho = random_density(2, rng).matrix();
  const Matrix big = v.v * rho * v.v.adjoint();
  CHECK((oracle_trace_out_second(big, 2, 2) - apply_matrix(qc, rho)).norm() < 1e-13);

  // TP map stacks to an isometry
  const KrausMap ch = random_tp_channel(3, 2, 3, 5);
  CHECK(kraus_to_stinespring(ch).is_isometry(1e-10));
}

TEST_CASE("stinespring_to_kraus: both sides against the partial-trace oracle") {
  Rng rng(8);
  Matrix raw(4, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 3; ++j) raw(i, j) = rng.complex_normal();
  const StinespringOperator v(2, 2, raw);

  const KrausMap side_b = stinespring_to_kraus(v, Keep::B);
  const KrausMap side_c = stinespring_to_kraus(v, Keep::C);
  for (int t = 0; t < 4; ++t) {
    const Matrix rho = random_density(3, rng).matrix();
    const Matrix big = raw * rho * raw.adjoint();
    CHECK((apply_matrix(side_b, rho) - oracle_trace_out_second(big, 2, 2)).norm() < 1e-12);
    CHECK((apply_matrix(side_c, rho) - oracle_trace_out_first(big, 2, 2)).norm() < 1e-12);
  }
}

TEST_CASE("round trip through the stacked dilation is exact") {
  const KrausMap phi = random_cp_map(3, 2, 4, 21);
  const KrausMap back = stinespring_to_kraus(kraus_to_stinespring(phi), Keep::B);
  REQUIRE(back.size() == phi.size());
  for (int i = 0; i < phi.size(); ++i) CHECK((back.kraus[i] - phi.kraus[i]).norm() == 0.0);
}

TEST_CASE("swap_output_factors exchanges the two induced maps") {
  const KrausMap phi = random_cp_map(2, 3, 2, 77);
  const StinespringOperator v = kraus_to_stinespring(phi);
  const StinespringOperator w = swap_output_factors(v);
  CHECK(w.d_B == v.d_C);
  CHECK(w.d_C == v.d_B);
  CHECK(choi_residual(stinespring_to_kraus(w, Keep::C), stinespring_to_kraus(v, Keep::B)) < 1e-12);
  CHECK(choi_residual(stinespring_to_kraus(w, Keep::B), stinespring_to_kraus(v, Keep::C)) < 1e-12);
}

TEST_CASE("choi: ranks and reconstruction") {
  CHECK(choi(identity_channel(2)).rank() == 1);

  const ChoiMatrix cd = choi(completely_depolarizing(2));
  CHECK(cd.rank() == 4);
  CHECK((cd.m - Matrix::Identity(4, 4) / 2.0).norm() < 1e-13);

  // map with linearly dependent operators collapses to its Choi rank
  Rng rng(15);
  std::vector<Matrix> ops;
  for (int i = 0; i < 3; ++i) {
    Matrix v(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) v(r, c) = rng.complex_normal();
    ops.push_back(v);
  }
  ops.push_back(ops[0] * 0.5 + ops[1]);
  ops.push_back(ops[2] * Complex(0, 1));
  const KrausMap redundant(ops);
  const ChoiMatrix c = choi(redundant);
  CHECK(c.rank() <= 4);
  CHECK(c.rank() == 3);
  const KrausMap shrunk = choi_to_kraus(c);
  CHECK(shrunk.size() == 3);
  CHECK(choi_residual(shrunk, redundant) < 1e-10);

  Matrix not_cp = Matrix::Identity(4, 4);
  not_cp(3, 3) = -1.0;
  CHECK_THROWS_AS(choi_to_kraus(ChoiMatrix(2, 2, not_cp)), NotCPError);
}

TEST_CASE("maps with equal Choi matrices agree on matrix units") {
  const KrausMap a = random_cp_map(2, 2, 3, 101);
  // Same map, different Kraus list: mix by a random unitary.
  const Matrix u = random_unitary(3, std::uint64_t{55});
  std::vector<Matrix> mixed(3, Matrix::Zero(2, 2));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) mixed[i] += u(i, j) * a.kraus[j];
  const KrausMap b(mixed);
  CHECK(choi_residual(a, b) < 1e-12);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k < 2; ++k) {
      Matrix e = Matrix::Zero(2, 2);
      e(j, k) = 1.0;
      CHECK((apply_matrix(a, e) - apply_matrix(b, e)).norm() < 1e-12);
    }
}

TEST_CASE("tensor: identities and the product rule") {
  const KrausMap id2 = identity_channel(2);
  CHECK(choi_residual(tensor(id2, id2), identity_channel(4)) < 1e-13);

  Rng rng(6);
  const KrausMap phi = random_tp_channel(2, 2, 2, 31);
  const Matrix rho = random_density(2, rng).matrix();
  const Matrix sigma = random_density(2, rng).matrix();
  const Matrix lhs = apply_matrix(tensor(phi, id2), tensor_product(rho, sigma));
  const Matrix rhs = tensor_product(apply_matrix(phi, rho), sigma);
  CHECK((lhs - rhs).norm() < 1e-12);
}

TEST_CASE("tensor Choi equals the index-reshuffled product of Choi matrices") {
  const KrausMap p1 = random_cp_map(2, 2, 2, 301);
  const KrausMap p2 = random_cp_map(2, 2, 3, 302);
  const Matrix c1 = choi(p1).m;
  const Matrix c2 = choi(p2).m;
  const Matrix ct = choi(tensor(p1, p2)).m;
  // Oracle: brute-force index permutation (j1 j2, a1 a2) <-> (j1 a1)(j2 a2).
  for (int j1 = 0; j1 < 2; ++j1)
    for (int a1 = 0; a1 < 2; ++a1)
      for (int j2 = 0; j2 < 2; ++j2)
        for (int a2 = 0; a2 < 2; ++a2)
          for (int k1 = 0; k1 < 2; ++k1)
            for (int b1 = 0; b1 < 2; ++b1)
              for (int k2 = 0; k2 < 2; ++k2)
                for (int b2 = 0; b2 < 2; ++b2) {
                  const int row = ((j1 * 2 + j2) * 4) + (a1 * 2 + a2);
                  const int col = ((k1 * 2 + k2) * 4) + (b1 * 2 + b2);
                  const Complex expect =
                      c1(j1 * 2 + a1, k1 * 2 + b1) * c2(j2 * 2 + a2, k2 * 2 + b2);
                  CHECK(std::abs(ct(row, col) - expect) < 1e-12);
                }
}

TEST_CASE("covariance checks for the named instances") {
  Rng rng(44);
  const Matrix u3 = random_unitary(3, rng);
  CHECK(check_covariance(transpose_depolarizing(3), u3, u3.conjugate()) < 1e-10);

  const Matrix u2 = random_unitary(2, rng);
  CHECK(check_covariance(depolarizing(2, 0.7), u2, u2) < 1e-10);

  CHECK(check_covariance(wh_complement(3), u3, tensor_product(u3, u3)) < 1e-10);

  Matrix notu(3, 3);
  notu.setOnes();
  CHECK_THROWS_AS(check_covariance(transpose_depolarizing(3), notu, u3), ValidationError);
}

TEST_CASE("trace identity between a map and its complement") {
  Rng rng(91);
  for (int t = 0; t < 5; ++t) {
    const KrausMap phi = random_cp_map(3, 2, 3, derive_seed(500, t));
    const KrausMap comp = complement(phi);
    const Matrix rho = random_density(3, rng).matrix();
    CHECK(std::abs(apply_matrix(phi, rho).trace() - apply_matrix(comp, rho).trace()) < 1e-10);
  }
}

TEST_CASE("channel JSON round trip") {
  const KrausMap phi = random_cp_map(3, 2, 2, 404);
  const Json j = channel_to_json(phi, Json{{"family", "random"}});
  Json meta;
  const KrausMap back = channel_from_json(j, &meta);
  CHECK(meta["family"] == "random");
  CHECK(back.d_in == 3);
  CHECK(back.d_out == 2);
  CHECK(choi_residual(phi, back) == doctest::Approx(0.0));

  Json bad = j;
  bad["kraus"][0][0][0] = "oops";
  CHECK_THROWS_AS(channel_from_json(bad), ValidationError);
}
