#pragma once

#include "chancomp/channel.hpp"

namespace chancomp {

// Environment-side map in product form: rho -> S (rho (x) I_B) S^* with
// S: H_A (x) H_B -> H_C. Related to a Stinespring operator V by
// <conj(psi_B) (x) psi_C | V psi_A> = <psi_C | S (psi_A (x) psi_B)>,
// conjugation taken in the canonical basis. For trace-preserving maps
// Tr_B S^*S = I_A.
struct SForm {
  SForm(int dim_a, int dim_b, Matrix matrix);

  int d_A = 0;
  int d_B = 0;
  int d_C = 0;
  Matrix s;  // d_C x (d_A*d_B)
};

// Complementary CP map: rho -> [Tr V_a rho V_b^*]_{ab}, realized by the
// Kraus list (V~_j)_a = <e_j| V_a. Output dimension = number of Kraus
// operators of the input; the trace-preserving property carries over.
// Applying it twice reproduces the original Kraus list.
KrausMap complement(const KrausMap& phi);

// Kraus list of minimal cardinality (= Choi rank) with the same Choi matrix;
// the operators are linearly independent. Idempotent.
KrausMap minimal_form(const KrausMap& phi, double tol_rank = kDefaultTol.rank);

struct WitnessResult {
  EquivalenceWitness witness;      // W: H_C(first) -> H_C(second)
  double residual = 0;             // ||v2 - (I_B (x) W) v1||_F
  double forward_choi_residual = 0;   // Choi of W (side-C of v1) W^* vs v2
  double backward_choi_residual = 0;  // Choi of W^* (side-C of v2) W vs v1
};

// Solves v2 = (I_B (x) W) v1 in least squares via the Gram system on the
// side-B Kraus operators of v1 (pseudo-inverse with relative cutoff
// tol_rank). Requires both operators to dilate the same side-B map within
// tol (Choi residual check; NotSameChannelError otherwise). For minimal v1
// the solution is exact and W is the unique connecting partial isometry;
// both conjugation residuals are reported rather than assumed zero.
WitnessResult equivalence_witness(const StinespringOperator& v1,
                                  const StinespringOperator& v2,
                                  double tol = 1e-9,
                                  double tol_rank = kDefaultTol.rank);

// Witness between complement(base) and a candidate complement of `base`
// built by any other route. The candidate's own complement must reproduce
// `base` within tol (that is what "complementary to base" means concretely);
// NotSameChannelError otherwise.
WitnessResult complement_witness(const KrausMap& base,
                                 const KrausMap& candidate, double tol = 1e-9,
                                 double tol_rank = kDefaultTol.rank);

// Complements twice and witnesses the result against the original map.
// Never throws on valid maps; a failed solve surfaces as a large residual.
WitnessResult double_complement_check(const KrausMap& phi);

// Entrywise transcription between the two dilation pictures.
SForm s_form(const StinespringOperator& v);
StinespringOperator s_form_to_stinespring(const SForm& s);

// Kraus list {S (I_A (x) |e_b>)} of the map rho -> S (rho (x) I_B) S^*.
KrausMap s_to_channel(const SForm& s);

}  // namespace chancomp
