#include <doctest.h>

#include <cmath>

#include "chancomp/gaussian.hpp"

using namespace chancomp;

TEST_CASE("attenuation and amplifier actions") {
  const Eigen::Matrix2d vac = Eigen::Matrix2d::Identity();

  // beamsplitter with vacuum keeps vacuum
  CHECK((apply_cov(attenuation(0.6), vac) - vac).norm() < 1e-15);

  // amplifier with coefficient sqrt(2): I -> 3I
  CHECK((apply_cov(amplifier(std::sqrt(2.0)), vac) - 3.0 * vac).norm() < 1e-12);

  // identity limit
  const GaussianChannel nearly = attenuation(1.0 - 1e-12);
  CHECK((nearly.x - vac).norm() < 1e-11);
  CHECK(nearly.y.norm() < 1e-11);

  CHECK_THROWS_AS(attenuation(0.0), DomainError);
  CHECK_THROWS_AS(attenuation(1.0), DomainError);
  CHECK_THROWS_AS(attenuation(1.3), DomainError);
  CHECK_THROWS_AS(amplifier(0.9), DomainError);
  CHECK_THROWS_AS(conjugate_amplifier(-1.0), DomainError);
}

TEST_CASE("dilations are symplectic and reproduce the channel") {
  for (double k : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9,
                   1.1, 1.5, 2.0, 2.5, 3.0}) {
    const GaussianChannel ch = k < 1.0 ? attenuation(k) : amplifier(k);
    const BogoliubovDilation d = dilate(ch);
    CHECK(symplectic_residual(d) < 1e-12);

    // system block of s (gamma + I) s^T equals the channel action
    for (int t = 0; t < 3; ++t) {
      Eigen::Matrix2d g = Eigen::Matrix2d::Random();
      g = (g * g.transpose() + Eigen::Matrix2d::Identity()).eval();
      Eigen::Matrix4d joint = Eigen::Matrix4d::Zero();
      joint.block<2, 2>(0, 0) = g;
      joint.block<2, 2>(2, 2) = Eigen::Matrix2d::Identity();
      const Eigen::Matrix4d out = d.s * joint * d.s.transpose();
      CHECK((out.block<2, 2>(0, 0) - apply_cov(ch, g)).norm() < 1e-12);
      // environment block matches the complement
      CHECK((out.block<2, 2>(2, 2) - apply_cov(complement_gaussian(ch), g)).norm() < 1e-12);
    }
  }
  CHECK_THROWS_AS(dilate(conjugate_amplifier(1.0)), DomainError);
}

TEST_CASE("attenuation complements to attenuation with the dual coefficient") {
  const GaussianChannel c = complement_gaussian(attenuation(0.6));
  CHECK(c.kind == GaussianKind::attenuation);
  CHECK(std::abs(c.coeff - 0.8) < 1e-12);

  // self-complementary point
  const double k = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(complement_gaussian(attenuation(k)).coeff - k) < 1e-12);

  // coefficient round trip
  for (double kk : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const GaussianChannel once = complement_gaussian(attenuation(kk));
    const GaussianChannel twice = complement_gaussian(attenuation(once.coeff));
    CHECK(std::abs(twice.coeff - kk) < 1e-12);
  }
}

TEST_CASE("amplifier complements to the conjugate amplifier") {
  const GaussianChannel c = complement_gaussian(amplifier(std::sqrt(2.0)));
  CHECK(c.kind == GaussianKind::conjugate_amplifier);
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  CHECK((c.x - z).norm() < 1e-12);
  CHECK((c.y - 2.0 * Eigen::Matrix2d::Identity()).norm() < 1e-12);
  CHECK(std::abs(c.coeff - 1.0) < 1e-12);

  // factory matches the extracted form
  const GaussianChannel built = conjugate_amplifier(c.coeff);
  CHECK((built.x - c.x).norm() < 1e-12);
  CHECK((built.y - c.y).norm() < 1e-12);

  CHECK_THROWS_AS(complement_gaussian(conjugate_amplifier(1.0)), DomainError);
}

TEST_CASE("complete positivity holds for channels and complements") {
  for (double k : {0.2, 0.5, 0.8, 1.2, 2.0, 3.0}) {
    const GaussianChannel ch = k < 1.0 ? attenuation(k) : amplifier(k);
    CHECK(cp_defect(ch) < 1e-12);
    CHECK(cp_defect(complement_gaussian(ch)) < 1e-12);
  }
}

TEST_CASE("non-vacuum environment changes only the noise block") {
  const GaussianChannel ch = attenuation(0.7);
  Eigen::Matrix2d env;
  env << 2.0, 0.3, 0.3, 1.5;
  const GaussianChannel vac = complement_gaussian(ch);
  const GaussianChannel hot = complement_gaussian(ch, env);
  CHECK((vac.x - hot.x).norm() == 0.0);
  CHECK((vac.y - hot.y).norm() > 1e-3);
  const Eigen::Matrix2d se = dilate(ch).s.block<2, 2>(2, 2);
  CHECK((hot.y - se * env * se.transpose()).norm() < 1e-13);
}
