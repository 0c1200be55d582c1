#pragma once

#include <cstdint>
#include <vector>

#include "chancomp/channel.hpp"
#include "chancomp/complement.hpp"

namespace chancomp {

// Gram matrix c_ab = <phi_b|phi_a> of an entanglement-breaking family;
// positive semidefinite. unit_diagonal marks the dephasing subclass.
struct CorrelationMatrix {
  explicit CorrelationMatrix(Matrix gram, bool require_unit_diagonal = false,
                             const Tolerances& tol = kDefaultTol);

  int size = 0;
  Matrix c;
  bool unit_diagonal = false;
};

// Rank-one Kraus family |phi_a><psi_a|.
struct EBSpec {
  std::vector<Vector> psi;  // input-side vectors
  std::vector<Vector> phi;  // output-side vectors

  int terms() const { return static_cast<int>(psi.size()); }
  int d_in() const;
  int d_out() const;
  // (Over)completeness: sum |psi_a><phi_a|phi_a><psi_a| = I.
  bool is_channel(double tol = kDefaultTol.tp) const;
};

KrausMap identity_channel(int d);
// rho -> (Tr rho / d) I, Kraus {E_jk / sqrt(d)}.
KrausMap completely_depolarizing(int d);

// rho -> (1-p) rho + (p/d) I Tr rho for 0 <= p <= d^2/(d^2-1); Kraus set from
// the Choi eigendecomposition (valid on the whole parameter range).
KrausMap depolarizing(int d, double p);

// Closed-form environment map of the depolarizing channel,
// S = sqrt(p/d) I + sqrt(d) (-sqrt(p)/d + sqrt(1 - p(d^2-1)/d^2)) |Om><Om|.
SForm depolarizing_complement_s(int d, double p);

// rho -> (I Tr rho - rho^T)/(d-1); Kraus (E_jk - E_kj)/sqrt(d-1) over j < k
// (the j = k terms vanish and (j,k),(k,j) duplicate up to sign, so this
// enumeration is minimal: d(d-1)/2 operators).
KrausMap transpose_depolarizing(int d);

// Its complementary channel in closed form: V~_j psi =
// (psi (x) e_j - e_j (x) psi)/sqrt(2(d-1)), mapping into H_d (x) H_d.
KrausMap wh_complement(int d);

// F(x (x) y) = y (x) x.
Matrix flip_operator(int d);
// (1/sqrt(d)) sum_j e_j (x) e_j.
PureState max_entangled(int d);

KrausMap eb_channel(const EBSpec& spec);

// Complement via the correlation matrix: factorizes c_ab = sum_j v_aj
// conj(v_bj) by pivoted Cholesky and returns V~_j = sum_a v_aj |e_a><psi_a|.
// Equal as a map to complement(eb_channel(spec)).
KrausMap eb_complement_closed_form(const EBSpec& spec,
                                   double tol_rank = kDefaultTol.rank);

// c_ab = <phi_b|phi_a> of a spec.
Matrix eb_correlation(const EBSpec& spec);

// Dephasing channel rho -> [c_ab rho_ab]; requires unit diagonal. The
// canonical basis states are fixed points.
KrausMap diagonal_channel(const CorrelationMatrix& c,
                          double tol_rank = kDefaultTol.rank);

// Same construction with an arbitrary system of input vectors psi_a.
KrausMap generalized_diagonal(const CorrelationMatrix& c,
                              const std::vector<Vector>& psi,
                              double tol_rank = kDefaultTol.rank);

// Kraus union scaled by sqrt(w_i); weights nonnegative, summing to 1.
KrausMap convex_mixture(const std::vector<KrausMap>& maps,
                        const std::vector<double>& weights);

// --- seeded instance generators (CLI `gen` and the test suites) ---

// Arbitrary rank-one family: random unit psi/phi vectors (CP, generally not
// trace preserving).
EBSpec random_eb_spec(int d_in, int d_out, int terms, std::uint64_t seed);

// Trace preserving by construction: the rows of `blocks` stacked Haar
// isometry columns form an exact rank-one resolution of the identity;
// produces d_in*blocks terms.
EBSpec random_eb_channel_spec(int d_in, int d_out, int blocks,
                              std::uint64_t seed);

// q-c: orthonormal output family (c = identity exactly).
EBSpec random_qc_spec(int d, std::uint64_t seed);

// c-q: orthonormal input basis with unit output vectors (always a channel);
// complementary to a dephasing map.
EBSpec random_cq_spec(int d_in, int d_out, std::uint64_t seed);

CorrelationMatrix random_correlation(int size, bool unit_diagonal,
                                     std::uint64_t seed);

// Gaussian Kraus operators rescaled so the largest eigenvalue of sum V^*V
// is 1 (keeps purity functionals O(1)).
KrausMap random_cp_map(int d_in, int d_out, int n_kraus, std::uint64_t seed);

// Slices of a Haar isometry H_{d_in} -> H_{d_out} (x) H_{n_kraus); requires
// d_out*n_kraus >= d_in.
KrausMap random_tp_channel(int d_in, int d_out, int n_kraus,
                           std::uint64_t seed);

}  // namespace chancomp
