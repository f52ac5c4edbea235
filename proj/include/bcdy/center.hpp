// Central series of the vacuum module: the symmetrized trace series, its
// alternative staggered form, the binomially weighted combination divisible
// by a power of the deformation parameter, the braiding fixed-point check on
// the tensor square, the operator-valued series on the module, and the
// centrality sweeps.
#pragma once

#include "bcdy/brauer.hpp"
#include "bcdy/engine.hpp"

namespace bcdy {

enum class ShiftOrder {
  staggered_up,    // leg i evaluated at u - (m-i) h (orthogonal convention)
  staggered_down,  // leg i evaluated at u - (i-1) h
};

struct CentralSeries {
  int m = 0;
  int hord = 0;
  UFamily coeffs;           // u-power -> module element
  std::string points_desc;  // evaluation point pattern
};

// Trace of the symmetrizer against the ordered creation-series product at
// the staggered points, applied to the vacuum. The default order follows the
// family convention (up for orthogonal, down for symplectic).
CentralSeries build_t_plus(YangianEngine& eng, int m);
CentralSeries build_t_plus(YangianEngine& eng, int m, ShiftOrder order);

struct Witness {
  std::string where;
  std::string value;
};

struct CheckOutcome {
  bool pass = false;
  long probes = 0;
  std::vector<Witness> witnesses;  // nonzero discrepancies, if any
};

// t_ij(v) X = delta_ij X for every coefficient of the series, all i, j and
// all extractable powers. Requires D >= U + K - 1 so the degree cap cannot
// hide admissible words.
CheckOutcome verify_centrality(YangianEngine& eng, const CentralSeries& ts);

// Ascending- and descending-shift constructions agree (orthogonal case).
CheckOutcome verify_alternative_form(YangianEngine& eng, int m);

struct PhiSeries {
  int m = 0;
  int hord = 0;  // remaining precision after dividing by h^m
  UFamily coeffs;
  std::vector<Rat> b;  // weights b_0..b_m used in the combination
};

// h^{-m} sum_k b_k T^+_k(u) with b_k = (-1)^k a_{k+1}..a_m binom(m,k), built
// in the staggered-down form. Divisibility by h^m is verified and a failure
// is a hard error.
PhiSeries build_phi(YangianEngine& eng, int m);

// classical_limit(Phi_{m,0}) equals the classical trace-polynomial constant
// term of weight m.
CheckOutcome compare_classical(YangianEngine& eng, Straightener& st, int m);

// Braiding fixed point on the tensor square at k = m = 1: applying the
// explicit braiding expression to T^+_1(u) (x) T^+_1(v) reproduces the input,
// coefficientwise in both series variables and the auxiliary variable.
// `degenerate_control` replaces all R-matrix factors by the identity.
CheckOutcome verify_smap_fixed(YangianEngine& eng, bool degenerate_control = false);

// Operator series on the module: trace of the symmetrizer against the
// creation product at the staggered points times the inverse annihilation
// product shifted by -h kappa. Returned as the action on one module element,
// a Laurent family in the series variable.
UFamily t_operator_apply(YangianEngine& eng, int m, const ModuleElement& x);

// Commutators of the operator series with the generator modes t^{(+-r)}_{ij}
// vanish on all basis words of degree <= maxdeg.
CheckOutcome verify_completed_centrality(YangianEngine& eng, int m, int r, int maxdeg);

// Pairwise products of low modes of the central series, normal-formed in
// either order, agree: the commutativity probe for the generated subalgebra.
CheckOutcome verify_commutativity_probe(YangianEngine& eng);

}  // namespace bcdy
