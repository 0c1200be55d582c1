#include "chancomp/gaussian.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace chancomp {

namespace {

Eigen::Matrix2d symplectic_form() {
  Eigen::Matrix2d om;
  om << 0, 1, -1, 0;
  return om;
}

Eigen::Matrix2d phase_conjugation() {
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  return z;
}

}  // namespace

const char* to_string(GaussianKind kind) {
  switch (kind) {
    case GaussianKind::attenuation: return "attenuation";
    case GaussianKind::amplifier: return "amplifier";
    case GaussianKind::conjugate_amplifier: return "conjugate_amplifier";
  }
  return "unknown";
}

GaussianChannel attenuation(double k) {
  if (!(k > 0.0 && k < 1.0))
    throw DomainError("attenuation: coefficient must lie in (0, 1)");
  GaussianChannel ch;
  ch.kind = GaussianKind::attenuation;
  ch.coeff = k;
  ch.x = k * Eigen::Matrix2d::Identity();
  ch.y = (1.0 - k * k) * Eigen::Matrix2d::Identity();
  return ch;
}

GaussianChannel amplifier(double k) {
  if (!(k > 1.0)) throw DomainError("amplifier: coefficient must exceed 1");
  GaussianChannel ch;
  ch.kind = GaussianKind::amplifier;
  ch.coeff = k;
  ch.x = k * Eigen::Matrix2d::Identity();
  ch.y = (k * k - 1.0) * Eigen::Matrix2d::Identity();
  return ch;
}

GaussianChannel conjugate_amplifier(double c) {
  if (!(c > 0.0)) throw DomainError("conjugate_amplifier: coefficient must be positive");
  GaussianChannel ch;
  ch.kind = GaussianKind::conjugate_amplifier;
  ch.coeff = c;
  ch.x = c * phase_conjugation();
  ch.y = (1.0 + c * c) * Eigen::Matrix2d::Identity();
  return ch;
}

Eigen::Matrix2d apply_cov(const GaussianChannel& ch, const Eigen::Matrix2d& gamma) {
  return ch.x * gamma * ch.x.transpose() + ch.y;
}

BogoliubovDilation dilate(const GaussianChannel& ch) {
  BogoliubovDilation d;
  if (ch.kind == GaussianKind::attenuation) {
    const double k = ch.coeff;
    const double b = std::sqrt(1.0 - k * k);
    d.s.block<2, 2>(0, 0) = k * Eigen::Matrix2d::Identity();
    d.s.block<2, 2>(0, 2) = b * Eigen::Matrix2d::Identity();
    d.s.block<2, 2>(2, 0) = b * Eigen::Matrix2d::Identity();
    d.s.block<2, 2>(2, 2) = -k * Eigen::Matrix2d::Identity();
  } else if (ch.kind == GaussianKind::amplifier) {
    const double k = ch.coeff;
    const double b = std::sqrt(k * k - 1.0);
    const Eigen::Matrix2d z = phase_conjugation();
    d.s.block<2, 2>(0, 0) = k * Eigen::Matrix2d::Identity();
    d.s.block<2, 2>(0, 2) = b * z;
    d.s.block<2, 2>(2, 0) = b * z;
    d.s.block<2, 2>(2, 2) = k * Eigen::Matrix2d::Identity();
  } else {
    throw DomainError("dilate: only attenuation and amplifier channels dilate here");
  }
  return d;
}

GaussianChannel complement_gaussian(const GaussianChannel& ch) {
  return complement_gaussian(ch, Eigen::Matrix2d::Identity());
}

GaussianChannel complement_gaussian(const GaussianChannel& ch,
                                    const Eigen::Matrix2d& env_cov) {
  const BogoliubovDilation d = dilate(ch);
  const Eigen::Matrix2d xe = d.s.block<2, 2>(2, 0);
  const Eigen::Matrix2d se = d.s.block<2, 2>(2, 2);
  GaussianChannel out;
  out.x = xe;
  out.y = se * env_cov * se.transpose();
  if (ch.kind == GaussianKind::attenuation) {
    out.kind = GaussianKind::attenuation;
    out.coeff = xe(0, 0);
  } else {
    out.kind = GaussianKind::conjugate_amplifier;
    out.coeff = xe(0, 0);
  }
  return out;
}

double symplectic_residual(const BogoliubovDilation& d) {
  Eigen::Matrix4d om4 = Eigen::Matrix4d::Zero();
  om4.block<2, 2>(0, 0) = symplectic_form();
  om4.block<2, 2>(2, 2) = symplectic_form();
  return (d.s * om4 * d.s.transpose() - om4).norm();
}

double cp_defect(const GaussianChannel& ch) {
  const Eigen::Matrix2d om = symplectic_form();
  const Eigen::Matrix2d anti = ch.x * om * ch.x.transpose() - om;
  Eigen::Matrix2cd m = ch.y.cast<std::complex<double>>();
  m += std::complex<double>(0, 1) * anti.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> es(m, Eigen::EigenvaluesOnly);
  return std::max(0.0, -es.eigenvalues().minCoeff());
}

}  // namespace chancomp
