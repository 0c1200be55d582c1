#include "chancomp/purity.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "chancomp/families.hpp"

namespace chancomp {

namespace {

Matrix apply_to_pure(const KrausMap& phi, const Vector& psi) {
  Matrix out = Matrix::Zero(phi.d_out, phi.d_out);
  for (const auto& v : phi.kraus) {
    const Vector w = v * psi;
    out.noalias() += w * w.adjoint();
  }
  return out;
}

// Phi^*(X) psi without forming Phi^*(X).
Vector dual_on_vec(const KrausMap& phi, const Matrix& x, const Vector& psi) {
  Vector out = Vector::Zero(phi.d_in);
  for (const auto& v : phi.kraus) out.noalias() += v.adjoint() * (x * (v * psi));
  return out;
}

struct SearchOutcome {
  Vector psi;
  double value = -std::numeric_limits<double>::infinity();
  bool converged = false;
  double final_improvement = 0;
};

// Projected ascent on the unit sphere with a backtracking-then-expanding
// line search (expansion lets the step size recover within one iteration
// after a deep backtracking run near entropy cliffs). Maximizes `objective`;
// `direction` returns an ascent direction.
template <typename Objective, typename Direction>
SearchOutcome sphere_ascent(Vector psi, const Objective& objective,
                            const Direction& direction,
                            const OptimizerOptions& opts) {
  const auto retract = [](const Vector& base, double step, const Vector& dir) {
    Vector cand = base + step * dir;
    const double n = cand.norm();
    return n > 0 ? Vector(cand / n) : base;
  };
  SearchOutcome out;
  double f = objective(psi);
  double eta = 1.0;
  int stall = 0;
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const Vector g = direction(psi);
    // Walk the dyadic step ladder for the locally best step: accepting the
    // first improving step can hop across a curved valley with negligible
    // gain while an intermediate step descends properly.
    double best_step = 0;
    double best_f = f;
    int past_peak = 0;
    for (double step = eta; step > 1e-18; step *= 0.5) {
      const double cand = objective(retract(psi, step, g));
      if (cand > best_f) {
        best_f = cand;
        best_step = step;
        past_peak = 0;
      } else if (best_step > 0 && ++past_peak >= 2) {
        break;
      }
    }
    if (best_step > 0) {
      while (best_step < 1e6) {
        const double wider = objective(retract(psi, best_step * 2.0, g));
        if (!(wider > best_f)) break;
        best_f = wider;
        best_step *= 2.0;
      }
      out.final_improvement = best_f - f;
      psi = retract(psi, best_step, g);
      f = best_f;
      eta = std::min(best_step * 4.0, 1e6);
    } else {
      out.converged = true;
      out.final_improvement = 0;
      break;
    }
    if (out.final_improvement < opts.improvement_tol) {
      if (++stall >= opts.stall_window) {
        out.converged = true;
        break;
      }
    } else {
      stall = 0;
    }
  }
  out.psi = std::move(psi);
  out.value = f;
  return out;
}

double trace_power_objective(const KrausMap& phi, const Vector& psi, double p) {
  return trace_power_from_eigenvalues(
      hermitian_eigenvalues(apply_to_pure(phi, psi)), p);
}

bool needs_finite_differences(double p, const Eigen::VectorXd& eigs) {
  const double r = std::round(p);
  const bool even_integer = std::abs(p - r) == 0.0 && std::fmod(r, 2.0) == 0.0;
  if (even_integer) return false;
  double min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 1; i < eigs.size(); ++i)
    min_gap = std::min(min_gap, eigs(i) - eigs(i - 1));
  return min_gap < 1e-8;
}

Vector finite_difference_direction(const KrausMap& phi, const Vector& psi, double p) {
  const double h = 1e-6;
  Vector g(psi.size());
  for (Eigen::Index i = 0; i < psi.size(); ++i) {
    Vector e = Vector::Zero(psi.size());
    e(i) = 1.0;
    const double fr = trace_power_objective(phi, (psi + h * e).normalized(), p) -
                      trace_power_objective(phi, (psi - h * e).normalized(), p);
    e(i) = Complex(0, 1);
    const double fi = trace_power_objective(phi, (psi + h * e).normalized(), p) -
                      trace_power_objective(phi, (psi - h * e).normalized(), p);
    g(i) = Complex(fr, fi) / (2.0 * h);
  }
  return g;
}

// Wirtinger gradient of psi -> Tr Phi(psi psi^*)^p: p Phi^*(sigma^{p-1}) psi,
// with a central-difference fallback near spectral degeneracies when the
// matrix power is not smooth.
Vector trace_power_direction(const KrausMap& phi, const Vector& psi, double p) {
  if (p == 1.0) {
    // Linear objective Tr(psi psi^* sum V^*V).
    return dual_on_vec(phi, Matrix::Identity(phi.d_out, phi.d_out), psi);
  }
  const Matrix sigma = apply_to_pure(phi, psi);
  Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
  if (needs_finite_differences(p, es.eigenvalues()))
    return finite_difference_direction(phi, psi, p);
  Matrix power = Matrix::Zero(phi.d_out, phi.d_out);
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double l = std::max(es.eigenvalues()(i), 0.0);
    if (l > 0)
      power.noalias() +=
          std::pow(l, p - 1.0) * (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
  }
  return p * dual_on_vec(phi, power, psi);
}

PurityResult reduce_restarts(const KrausMap& phi, const OptimizerOptions& opts,
                             PurityKind kind,
                             const std::function<SearchOutcome(std::uint64_t)>& run) {
  PurityResult res;
  res.kind = kind;
  res.seed = opts.seed;
  res.restarts_used = opts.restarts;
  SearchOutcome best;
  bool have = false;
  for (int r = 0; r < opts.restarts; ++r) {
    SearchOutcome o = run(derive_seed(opts.seed, static_cast<std::uint64_t>(r)));
    if (!have || o.value > best.value) {
      best = std::move(o);
      have = true;
    }
  }
  res.converged = best.converged;
  res.final_improvement = best.final_improvement;
  res.best_state = PureState(best.psi);
  res.value = best.value;
  return res;
}

PurityResult purity_iterative(const KrausMap& phi, double p,
                              const OptimizerOptions& opts) {
  PurityResult res;
  if (std::isinf(p)) {
    // Alternating eigenvector ascent on <u|Phi(psi psi^*)|u>: each half-step
    // is the exact maximizer, so the largest output eigenvalue is monotone.
    res = reduce_restarts(phi, opts, PurityKind::purity, [&](std::uint64_t s) {
      Vector psi = random_pure(phi.d_in, s).amplitudes();
      SearchOutcome out;
      double val = -std::numeric_limits<double>::infinity();
      int stall = 0;
      bool converged = false;
      double last = 0;
      for (int iter = 0; iter < opts.max_iterations; ++iter) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(apply_to_pure(phi, psi));
        const double cur = es.eigenvalues()(phi.d_out - 1);
        last = cur - val;
        if (iter > 0 && last < opts.improvement_tol) {
          if (++stall >= opts.stall_window) {
            converged = true;
            val = std::max(val, cur);
            break;
          }
        } else {
          stall = 0;
        }
        val = std::max(val, cur);
        const Vector u = es.eigenvectors().col(phi.d_out - 1);
        Eigen::SelfAdjointEigenSolver<Matrix> back(dual_apply(phi, u * u.adjoint()));
        psi = back.eigenvectors().col(phi.d_in - 1);
      }
      out.psi = std::move(psi);
      out.value = val;
      out.converged = converged;
      out.final_improvement = std::max(last, 0.0);
      return out;
    });
    res.p = p;
    return res;
  }

  res = reduce_restarts(phi, opts, PurityKind::purity, [&](std::uint64_t s) {
    const Vector psi0 = random_pure(phi.d_in, s).amplitudes();
    return sphere_ascent(
        psi0, [&](const Vector& v) { return trace_power_objective(phi, v, p); },
        [&](const Vector& v) { return trace_power_direction(phi, v, p); }, opts);
  });
  res.p = p;
  res.value = std::pow(res.value, 1.0 / p);
  return res;
}

}  // namespace

PurityResult output_purity(const KrausMap& phi, double p,
                           const OptimizerOptions& opts) {
  if (std::isnan(p) || p < 1.0)
    throw DomainError("output_purity: p must be >= 1 (or infinity)");
  if (p == 1.0) {
    // Tr Phi(rho) = Tr(rho sum V^*V): the maximum over states is the largest
    // eigenvalue of the dual unit.
    PurityResult res;
    res.kind = PurityKind::purity;
    res.p = p;
    res.seed = opts.seed;
    res.converged = true;
    Eigen::SelfAdjointEigenSolver<Matrix> es(
        dual_apply(phi, Matrix::Identity(phi.d_out, phi.d_out)));
    res.value = es.eigenvalues()(phi.d_in - 1);
    res.best_state = PureState(es.eigenvectors().col(phi.d_in - 1));
    return res;
  }
  return purity_iterative(phi, p, opts);
}

PurityResult min_output_entropy(const KrausMap& phi, const OptimizerOptions& opts) {
  if (!phi.trace_preserving)
    throw DomainError("min_output_entropy: map must be trace preserving");
  PurityResult res = reduce_restarts(
      phi, opts, PurityKind::min_entropy, [&](std::uint64_t s) {
        const Vector psi0 = random_pure(phi.d_in, s).amplitudes();
        // Maximize -H; ascent direction Phi^*(ln sigma + I) psi with clamped logs.
        return sphere_ascent(
            psi0,
            [&](const Vector& v) {
              return -entropy_from_eigenvalues(
                  hermitian_eigenvalues(apply_to_pure(phi, v)));
            },
            [&](const Vector& v) {
              const Matrix sigma = apply_to_pure(phi, v);
              Eigen::SelfAdjointEigenSolver<Matrix> es(sigma);
              Matrix lg = Matrix::Zero(phi.d_out, phi.d_out);
              for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
                const double l = std::max(es.eigenvalues()(i), 1e-18);
                lg.noalias() += (std::log(l) + 1.0) *
                                (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
              }
              return Vector(dual_on_vec(phi, lg, v));
            },
            opts);
      });
  res.value = -res.value;
  return res;
}

namespace {

// Thin QR with positive-diagonal phase fix; retraction onto the Stiefel
// manifold of column-orthonormal m x r matrices.
Matrix qf(const Matrix& x) {
  Eigen::HouseholderQR<Matrix> qr(x);
  Matrix q = qr.householderQ() * Matrix::Identity(x.rows(), x.cols());
  const Vector diag = qr.matrixQR().diagonal();
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    const double a = std::abs(diag(j));
    if (a > 0) q.col(j) *= diag(j) / a;
  }
  return q;
}

struct EnsembleObjective {
  const KrausMap& phi;
  Matrix b;  // d x r, columns sqrt(lambda_i) u_i

  // Average output entropy sum_x t_x H(Phi(v_x v_x^*)/t_x) for the ensemble
  // induced by the mixing matrix rows.
  double value(const Matrix& m) const {
    double f = 0;
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      const Vector v = b * m.row(x).transpose();
      const double t = v.squaredNorm();
      if (t < 1e-15) continue;
      const Eigen::VectorXd eigs = hermitian_eigenvalues(apply_to_pure(phi, v));
      for (Eigen::Index i = 0; i < eigs.size(); ++i) {
        const double l = std::max(eigs(i), 0.0);
        if (l > 0) f -= l * std::log(l / t);
      }
    }
    return f;
  }

  Matrix euclidean_gradient(const Matrix& m) const {
    Matrix g = Matrix::Zero(m.rows(), m.cols());
    for (Eigen::Index x = 0; x < m.rows(); ++x) {
      const Vector v = b * m.row(x).transpose();
      const double t = v.squaredNorm();
      if (t < 1e-15) continue;
      Eigen::SelfAdjointEigenSolver<Matrix> es(apply_to_pure(phi, v));
      Matrix neg_log = Matrix::Zero(phi.d_out, phi.d_out);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double l = std::max(es.eigenvalues()(i) / t, 1e-18);
        neg_log.noalias() -=
            std::log(l) * (es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint());
      }
      const Vector gx = dual_on_vec(phi, neg_log, v);
      g.row(x) = (b.adjoint() * gx).transpose();
    }
    return g;
  }
};

Matrix stiefel_tangent(const Matrix& m, const Matrix& grad) {
  const Matrix mg = m.adjoint() * grad;
  return grad - m * ((mg + mg.adjoint()) * 0.5);
}

}  // namespace

PurityResult entropy_convex_closure(const KrausMap& phi, const DensityMatrix& rho,
                                    const OptimizerOptions& opts) {
  if (!phi.trace_preserving)
    throw DomainError("entropy_convex_closure: map must be trace preserving");
  if (rho.dim() != phi.d_in)
    throw DimensionError("entropy_convex_closure: state dimension mismatch");
  if (!rho.normalized())
    throw ValidationError("entropy_convex_closure: state must be normalized");

  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  const double top = es.eigenvalues().maxCoeff();
  std::vector<int> keep;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > kDefaultTol.rank * top) keep.push_back(static_cast<int>(i));
  const int r = static_cast<int>(keep.size());
  Matrix b(phi.d_in, r);
  for (int i = 0; i < r; ++i)
    b.col(i) = std::sqrt(es.eigenvalues()(keep[i])) * es.eigenvectors().col(keep[i]);

  PurityResult res;
  res.kind = PurityKind::convex_closure;
  res.seed = opts.seed;

  if (r == 1) {
    // Pure input: the decomposition is unique.
    const Vector psi = es.eigenvectors().col(keep[0]);
    res.value = entropy_from_eigenvalues(hermitian_eigenvalues(apply_to_pure(phi, psi)));
    res.converged = true;
    res.best_ensemble = Ensemble{{1.0}, {PureState(psi)}};
    return res;
  }

  const int members = opts.ensemble_cap > 0 ? std::max(opts.ensemble_cap, r) : r * r;
  const EnsembleObjective problem{phi, std::move(b)};

  double best_value = std::numeric_limits<double>::infinity();
  Matrix best_m;
  bool best_converged = false;
  double best_improvement = 0;
  for (int restart = 0; restart < opts.restarts; ++restart) {
    Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(restart)));
    Matrix m(members, r);
    for (int i = 0; i < members; ++i)
      for (int j = 0; j < r; ++j) m(i, j) = rng.complex_normal();
    m = qf(m);

    double f = problem.value(m);
    double eta = 1.0;
    int stall = 0;
    bool converged = false;
    double last_improvement = 0;
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
      const Matrix dir = stiefel_tangent(m, problem.euclidean_gradient(m));
      double best_step = 0;
      double best_f = f;
      int past_peak = 0;
      for (double step = eta; step > 1e-18; step *= 0.5) {
        const double cand = problem.value(qf(m - step * dir));
        if (cand < best_f) {
          best_f = cand;
          best_step = step;
          past_peak = 0;
        } else if (best_step > 0 && ++past_peak >= 2) {
          break;
        }
      }
      if (best_step > 0) {
        while (best_step < 1e6) {
          const double wider = problem.value(qf(m - best_step * 2.0 * dir));
          if (!(wider < best_f)) break;
          best_f = wider;
          best_step *= 2.0;
        }
        last_improvement = f - best_f;
        m = qf(m - best_step * dir);
        f = best_f;
        eta = std::min(best_step * 4.0, 1e6);
      } else {
        converged = true;
        last_improvement = 0;
        break;
      }
      if (last_improvement < opts.improvement_tol) {
        if (++stall >= opts.stall_window) {
          converged = true;
          break;
        }
      } else {
        stall = 0;
      }
    }
    if (f < best_value) {
      best_value = f;
      best_m = m;
      best_converged = converged;
      best_improvement = last_improvement;
    }
  }

  res.value = best_value;
  res.converged = best_converged;
  res.final_improvement = best_improvement;
  res.restarts_used = opts.restarts;
  Ensemble ens;
  for (Eigen::Index x = 0; x < best_m.rows(); ++x) {
    const Vector v = problem.b * best_m.row(x).transpose();
    const double t = v.squaredNorm();
    if (t < 1e-12) continue;
    ens.weights.push_back(t);
    ens.states.emplace_back(Vector(v / std::sqrt(t)));
  }
  res.best_ensemble = std::move(ens);
  return res;
}

double multiplicativity_gap(const KrausMap& phi1, const KrausMap& phi2, double p,
                            const OptimizerOptions& opts) {
  const double joint = output_purity(tensor(phi1, phi2), p, opts).value;
  const double lhs = output_purity(phi1, p, opts).value;
  const double rhs = output_purity(phi2, p, opts).value;
  return joint - lhs * rhs;
}

double additivity_gap(const KrausMap& phi1, const KrausMap& phi2,
                      const OptimizerOptions& opts) {
  const double joint = min_output_entropy(tensor(phi1, phi2), opts).value;
  const double lhs = min_output_entropy(phi1, opts).value;
  const double rhs = min_output_entropy(phi2, opts).value;
  return joint - lhs - rhs;
}

SuperadditivityReport superadditivity_slack(const KrausMap& phi1,
                                            const KrausMap& phi2,
                                            const DensityMatrix& joint,
                                            const OptimizerOptions& opts) {
  if (joint.dim() != phi1.d_in * phi2.d_in)
    throw DimensionError("superadditivity_slack: joint state dimension mismatch");
  const DensityMatrix rho1(
      partial_trace(joint.matrix(), phi1.d_in, phi2.d_in, Keep::B));
  const DensityMatrix rho2(
      partial_trace(joint.matrix(), phi1.d_in, phi2.d_in, Keep::C));
  const PurityResult h12 = entropy_convex_closure(tensor(phi1, phi2), joint, opts);
  const PurityResult h1 = entropy_convex_closure(phi1, rho1, opts);
  const PurityResult h2 = entropy_convex_closure(phi2, rho2, opts);
  SuperadditivityReport rep;
  rep.slack = h12.value - h1.value - h2.value;
  // All three terms are optimizer upper bounds; accumulate their convergence
  // slack as the honest uncertainty of the difference.
  rep.uncertainty = (h12.final_improvement + h1.final_improvement +
                     h2.final_improvement) +
                    3 * opts.improvement_tol * opts.stall_window;
  rep.flagged = rep.slack < -1e-3;
  return rep;
}

WhWitness wh_violation_witness(int d, double p) {
  if (d < 2) throw DomainError("wh_violation_witness: d must be at least 2");
  if (std::isnan(p) || p < 1.0)
    throw DomainError("wh_violation_witness: p must be >= 1");
  if (static_cast<long>(d) * d > max_total_dim())
    throw DimensionError("wh_violation_witness: d^2 exceeds the dimension limit");
  const KrausMap single = transpose_depolarizing(d);
  const KrausMap pair = tensor(single, single);
  const Matrix out = apply_matrix(pair, max_entangled(d).projector());
  const Eigen::VectorXd eigs = hermitian_eigenvalues(out);
  WhWitness w;
  if (std::isinf(p)) {
    w.witness_value = eigs.maxCoeff();
    w.product_value = std::pow(static_cast<double>(d) - 1.0, -2.0);
  } else {
    w.witness_value = std::pow(trace_power_from_eigenvalues(eigs, p), 1.0 / p);
    w.product_value = std::pow(static_cast<double>(d) - 1.0, 2.0 * (1.0 - p) / p);
  }
  w.ratio = w.witness_value / w.product_value;
  return w;
}

namespace detail {

PurityResult output_purity_iterative(const KrausMap& phi, double p,
                                     const OptimizerOptions& opts) {
  if (std::isnan(p) || p < 1.0) throw DomainError("output_purity: p must be >= 1");
  return purity_iterative(phi, p, opts);
}

}  // namespace detail

}  // namespace chancomp
