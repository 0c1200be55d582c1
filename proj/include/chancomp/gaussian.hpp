#pragma once

#include <Eigen/Dense>

#include "chancomp/errors.hpp"

namespace chancomp {

enum class GaussianKind { attenuation, amplifier, conjugate_amplifier };

const char* to_string(GaussianKind kind);

// One-mode Gaussian channel acting on quadrature covariance matrices as
// gamma -> x gamma x^T + y, with vacuum covariance = I and symplectic form
// Om = [[0,1],[-1,0]].
struct GaussianChannel {
  GaussianKind kind = GaussianKind::attenuation;
  double coeff = 0;
  Eigen::Matrix2d x = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d y = Eigen::Matrix2d::Zero();
};

// 4x4 symplectic matrix on stacked (system, environment) quadratures.
struct BogoliubovDilation {
  Eigen::Matrix4d s = Eigen::Matrix4d::Identity();
};

GaussianChannel attenuation(double k);        // 0 < k < 1
GaussianChannel amplifier(double k);          // k > 1
GaussianChannel conjugate_amplifier(double c);  // c > 0: x = c Z, y = (1+c^2) I

Eigen::Matrix2d apply_cov(const GaussianChannel& ch, const Eigen::Matrix2d& gamma);

// Two-mode Bogoliubov dilation with the environment in vacuum; the system
// block reproduces the channel. Attenuation mixes the modes on a
// beamsplitter; the amplifier couples to the conjugated environment mode
// (creation operators become Z-conjugation on quadratures).
BogoliubovDilation dilate(const GaussianChannel& ch);

// Environment output block of the dilation: attenuation(k) complements to
// attenuation(sqrt(1-k^2)), amplifier(k) to a conjugate amplifier with
// coefficient sqrt(k^2-1). Optional env_cov replaces the vacuum environment
// (affects y only).
GaussianChannel complement_gaussian(const GaussianChannel& ch);
GaussianChannel complement_gaussian(const GaussianChannel& ch,
                                    const Eigen::Matrix2d& env_cov);

// || s Om4 s^T - Om4 ||_F.
double symplectic_residual(const BogoliubovDilation& d);

// Most negative eigenvalue of y + i(x Om x^T - Om), clipped at zero; zero
// means the channel is completely positive.
double cp_defect(const GaussianChannel& ch);

}  // namespace chancomp
