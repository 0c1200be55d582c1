#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>

#include "chancomp/complement.hpp"
#include "chancomp/families.hpp"
#include "chancomp/gaussian.hpp"
#include "chancomp/purity.hpp"

namespace chancomp::verify {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Check hard(std::string name, double residual, double threshold) {
  return Check{std::move(name), residual, threshold, residual <= threshold, false};
}

Check info(std::string name, double value) {
  return Check{std::move(name), value, kInf, true, true};
}

double spectra_deviation(const KrausMap& phi, const Matrix& pure) {
  const KrausMap comp = complement(phi);
  auto a = nonzero_spectrum(apply_matrix(phi, pure), 1e-11);
  auto b = nonzero_spectrum(apply_matrix(comp, pure), 1e-11);
  const std::size_t n = std::max(a.size(), b.size());
  a.resize(n, 0.0);
  b.resize(n, 0.0);
  double worst = 0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

bool Suite::passed() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.pass; });
}

nlohmann::json Suite::to_json() const {
  nlohmann::json out;
  out["suite"] = name;
  out["pass"] = passed();
  nlohmann::json list = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j;
    j["name"] = c.name;
    j["residual"] = c.residual;
    if (std::isfinite(c.threshold)) j["threshold"] = c.threshold;
    j["pass"] = c.pass;
    j["informational"] = c.informational;
    list.push_back(std::move(j));
  }
  out["checks"] = std::move(list);
  return out;
}

void Suite::print(std::ostream& os) const {
  for (const auto& c : checks) {
    if (c.informational)
      os << "  [info] " << c.name << " = " << c.residual << "\n";
    else
      os << "  [" << (c.pass ? " ok " : "FAIL") << "] " << c.name << " = "
         << c.residual << " (threshold " << c.threshold << ")\n";
  }
  os << (passed() ? "PASS" : "FAIL") << ": " << name << "\n";
}

Suite spectra(int trials, std::uint64_t seed) {
  Suite suite{"spectra", {}};
  double worst = 0;
  Rng dims(derive_seed(seed, 0));
  for (int t = 0; t < trials; ++t) {
    const int d_in = 2 + static_cast<int>(dims.raw() % 3);
    const int d_out = 2 + static_cast<int>(dims.raw() % 3);
    const int n_kraus = 1 + static_cast<int>(dims.raw() % 8);
    const KrausMap phi =
        random_cp_map(d_in, d_out, n_kraus, derive_seed(seed, 1000 + t));
    for (int s = 0; s < 20; ++s) {
      const Matrix pure =
          random_pure(d_in, derive_seed(seed, 100000 + 20 * t + s)).projector();
      worst = std::max(worst, spectra_deviation(phi, pure));
    }
  }
  suite.checks.push_back(
      hard("max elementwise deviation of the nonzero output spectra", worst, 1e-9));
  return suite;
}

namespace {

std::vector<KrausMap> verification_channels(int channels, std::uint64_t seed) {
  std::vector<KrausMap> out;
  Rng dims(derive_seed(seed, 7));
  for (int i = 0; i < channels; ++i) {
    const int d = 2 + static_cast<int>(dims.raw() % 2);
    const int env = 2 + static_cast<int>(dims.raw() % 2);
    out.push_back(random_tp_channel(d, d, env, derive_seed(seed, 2000 + i)));
  }
  return out;
}

}  // namespace

Suite nu_p(int channels, int restarts, std::uint64_t seed) {
  Suite suite{"nu-p", {}};
  const auto set = verification_channels(channels, seed);
  for (double p : {1.5, 2.0, 3.0, kInf}) {
    double worst = 0;
    for (std::size_t i = 0; i < set.size(); ++i) {
      OptimizerOptions opts;
      opts.restarts = restarts;
      opts.seed = derive_seed(seed, 3000 + i);
      const double a = output_purity(set[i], p, opts).value;
      const double b = output_purity(complement(set[i]), p, opts).value;
      worst = std::max(worst, std::abs(a - b));
    }
    const std::string label = std::isinf(p) ? "inf" : std::to_string(p);
    suite.checks.push_back(
        hard("max |nu_p(channel) - nu_p(complement)| at p = " + label, worst, 1e-5));
  }
  return suite;
}

Suite min_entropy(int channels, int restarts, std::uint64_t seed) {
  Suite suite{"min-entropy", {}};
  const auto set = verification_channels(channels, seed);
  double worst = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    OptimizerOptions opts;
    opts.restarts = restarts;
    opts.seed = derive_seed(seed, 4000 + i);
    const double a = min_output_entropy(set[i], opts).value;
    const double b = min_output_entropy(complement(set[i]), opts).value;
    worst = std::max(worst, std::abs(a - b));
  }
  suite.checks.push_back(
      hard("max |min-entropy(channel) - min-entropy(complement)|", worst, 1e-5));
  return suite;
}

Suite tensor_complement(int trials, std::uint64_t seed) {
  Suite suite{"tensor-complement", {}};
  double worst_ls = 0, worst_choi = 0;
  for (int t = 0; t < trials; ++t) {
    const KrausMap p1 = random_tp_channel(2, 2, 2, derive_seed(seed, 5000 + t));
    const KrausMap p2 = random_cp_map(2, 2, 2, derive_seed(seed, 6000 + t));
    const WitnessResult r =
        equivalence_witness(kraus_to_stinespring(tensor(p1, p2)),
                            tensor_dilations(kraus_to_stinespring(p1),
                                             kraus_to_stinespring(p2)));
    worst_ls = std::max(worst_ls, r.residual);
    worst_choi = std::max(worst_choi, r.forward_choi_residual);
  }
  suite.checks.push_back(hard("max witness solve residual", worst_ls, 1e-9));
  suite.checks.push_back(
      hard("max Choi residual of W complement(tensor) W* vs tensor of complements",
           worst_choi, 1e-9));
  return suite;
}

Suite wh_witness(int d, double p) {
  Suite suite{"wh-witness", {}};
  const WhWitness w = wh_violation_witness(d, p);
  suite.checks.push_back(info("ratio", w.ratio));
  suite.checks.push_back(info("witness value (exact eigendecomposition)", w.witness_value));
  suite.checks.push_back(info("single-copy product value (closed form)", w.product_value));
  if (p == 1.0)
    suite.checks.push_back(hard("ratio = 1 at p = 1", std::abs(w.ratio - 1.0), 1e-12));
  if (p <= 2.0)
    suite.checks.push_back(
        hard("multiplicativity holds for p <= 2: ratio - 1", w.ratio - 1.0, 1e-12));
  if (d >= 4 && p >= 30.0)
    suite.checks.push_back(
        hard("violation: 1 - ratio must be negative", 1.0 - w.ratio, -1e-6));
  return suite;
}

Suite gaussian() {
  Suite suite{"gaussian", {}};
  double coeff_dev = 0, sympl = 0, roundtrip = 0, cp = 0;
  for (int i = 1; i <= 9; ++i) {
    const double k = 0.1 * i;
    const GaussianChannel ch = attenuation(k);
    const GaussianChannel comp = complement_gaussian(ch);
    coeff_dev = std::max(coeff_dev, std::abs(comp.coeff - std::sqrt(1.0 - k * k)));
    sympl = std::max(sympl, symplectic_residual(dilate(ch)));
    roundtrip =
        std::max(roundtrip, std::abs(complement_gaussian(attenuation(comp.coeff)).coeff - k));
    cp = std::max(cp, std::max(cp_defect(ch), cp_defect(comp)));
  }
  for (double k : {1.1, 1.5, 2.0, 2.5, 3.0}) {
    sympl = std::max(sympl, symplectic_residual(dilate(amplifier(k))));
    cp = std::max(cp, cp_defect(complement_gaussian(amplifier(k))));
  }
  suite.checks.push_back(
      hard("attenuation complement coefficient vs sqrt(1-k^2)", coeff_dev, 1e-12));
  suite.checks.push_back(hard("dilation symplectic residual", sympl, 1e-12));
  suite.checks.push_back(hard("double complement coefficient round trip", roundtrip, 1e-12));
  suite.checks.push_back(hard("complete positivity defect", cp, 1e-12));

  const GaussianChannel amp_comp = complement_gaussian(amplifier(std::sqrt(2.0)));
  Eigen::Matrix2d z;
  z << 1, 0, 0, -1;
  const double class_dev =
      std::max((amp_comp.x - z).norm(),
               (amp_comp.y - 2.0 * Eigen::Matrix2d::Identity()).norm());
  suite.checks.push_back(hard(
      "amplifier(sqrt 2) complement classified as conjugate amplifier (x = Z, y = 2I)",
      amp_comp.kind == GaussianKind::conjugate_amplifier ? class_dev : kInf, 1e-12));
  return suite;
}

}  // namespace chancomp::verify
