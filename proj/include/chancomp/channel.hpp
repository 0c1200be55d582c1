#pragma once

#include <cstdint>
#include <vector>

#include "chancomp/numerics.hpp"

namespace chancomp {

// CP map given by an ordered list of d_out x d_in Kraus operators.
// trace_preserving is set iff the sum of V^*V equals the identity within tol.
struct KrausMap {
  explicit KrausMap(std::vector<Matrix> operators,
                    double tol_tp = kDefaultTol.tp);

  int d_in = 0;
  int d_out = 0;
  std::vector<Matrix> kraus;
  bool trace_preserving = false;

  int size() const { return static_cast<int>(kraus.size()); }
};

// Single operator V: H_A -> H_B (x) H_C with the B factor major.
struct StinespringOperator {
  StinespringOperator(int dim_b, int dim_c, Matrix op);

  int d_A = 0;
  int d_B = 0;
  int d_C = 0;
  Matrix v;  // (d_B*d_C) x d_A

  // V^*V = I within tol; holds exactly when both induced maps are channels.
  bool is_isometry(double tol = kDefaultTol.tp) const;
};

// Block matrix [Phi(E_jk)]_{jk}; canonical identifier of a CP map. With this
// normalization a map is trace preserving iff the partial trace over the
// output factor is the identity, and rank = minimal environment dimension.
struct ChoiMatrix {
  ChoiMatrix(int din, int dout, Matrix matrix);

  int d_in = 0;
  int d_out = 0;
  Matrix m;  // (d_in*d_out) x (d_in*d_out), index (j, a) = j*d_out + a

  int rank(double tol_rank = kDefaultTol.rank) const;
};

enum class WitnessKind { isometry, partial_isometry };

// Partial isometry W between environment spaces; W^*W and WW^* are
// orthogonal projections.
struct EquivalenceWitness {
  Matrix w;
  WitnessKind kind = WitnessKind::partial_isometry;
};

// Sum of V rho V^*. The output is normalized iff the map is trace preserving
// and the input is.
DensityMatrix apply(const KrausMap& phi, const DensityMatrix& rho);

// Same action on a raw matrix, no validation.
Matrix apply_matrix(const KrausMap& phi, const Matrix& rho);

// Dual (Heisenberg-picture) action: sum of V^* X V.
Matrix dual_apply(const KrausMap& phi, const Matrix& x);

// Stacks the Kraus operators into V: H_A -> H_B (x) H_C with d_C = number of
// operators, so that slicing the C factor in the canonical basis returns the
// original list and the two partial traces of V rho V^* realize the map and
// its complement.
StinespringOperator kraus_to_stinespring(const KrausMap& phi);

// side = Keep::B: Kraus list of the B-side map, indexed by the C basis
// (inverse of kraus_to_stinespring). side = Keep::C: Kraus list of the
// environment-side map, indexed by the B basis.
KrausMap stinespring_to_kraus(const StinespringOperator& v, Keep side);

// Reorders V: H_A -> H_B (x) H_C into H_A -> H_C (x) H_B.
StinespringOperator swap_output_factors(const StinespringOperator& v);

// V1 (x) V2 with the output factors regrouped as (B1 B2) (x) (C1 C2), so the
// result dilates the tensor of the B-side maps with environment C1 (x) C2.
StinespringOperator tensor_dilations(const StinespringOperator& v1,
                                     const StinespringOperator& v2);

// Linear recombination V'_i = sum_j mixing(i, j) V_j of a Kraus list; an
// isometric mixing matrix leaves the map unchanged.
KrausMap recombine_kraus(const KrausMap& phi, const Matrix& mixing);

ChoiMatrix choi(const KrausMap& phi);

// Eigendecomposition of the Choi matrix; returns rank-many operators ordered
// by descending eigenvalue (ties broken lexicographically on the eigenvector
// entries). Throws NotCPError on an eigenvalue below -tol_rank * scale.
KrausMap choi_to_kraus(const ChoiMatrix& c, double tol_rank = kDefaultTol.rank);

// All pairwise tensor products of the Kraus lists (left index major).
KrausMap tensor(const KrausMap& phi1, const KrausMap& phi2);

// Frobenius norm of the Choi-matrix difference; the canonical equality test.
double choi_residual(const KrausMap& phi1, const KrausMap& phi2);

// Max over a seeded probe set of random states of the operator norm of
// Phi(U_in rho U_in^*) - U_out Phi(rho) U_out^*.
double check_covariance(const KrausMap& phi, const Matrix& u_in,
                        const Matrix& u_out, int probes = 8,
                        std::uint64_t seed = kDefaultSeed);

}  // namespace chancomp
