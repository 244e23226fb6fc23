#pragma once

// Central characters of the class: closed formulas, operator-side q-traces,
// the type D invariant tau^- and Weyl-orbit independence.

#include "qgclass/qoperator.hpp"

namespace qgclass {

struct CharacterValue {
  int k = 0;  // power of Q; -1 marks tau^-
  Scalar value;
  std::string provenance;  // "formula" or "operator"
};

/// sum_i x_i^k prod_{alpha > 0} [lambda+rho+eps_i, alpha] / [lambda+rho, alpha]
/// with [mu, alpha] = q^{(mu,alpha)} - q^{-(mu,alpha)}.  RegularityError when
/// lambda + rho lies on a wall.
CharacterValue chi_tau_formula(const RootDatum& D, const WeightSpec& spec, int k);

/// sum_j q^{2(rho,eps_j)} <w_j (x) v, Q^k (w_j (x) v)> on the highest vector.
/// Needs Q on every block of w_j (x) v_lambda.
CharacterValue chi_tau_operator(const QOperator& Q, int k);

/// The same partial trace on w_j (x) f_a v for the first a with f_a v != 0;
/// ConsistencyError if the result is not a multiple of f_a v.
CharacterValue chi_tau_operator_lowered(const QOperator& Q, int k);

/// prod_i (q^{2(lambda+rho,eps_i)} - q^{-2(lambda+rho,eps_i)}), series D only.
CharacterValue chi_tau_minus_formula(const RootDatum& D, const WeightSpec& spec);

/// Nontrivial signed permutations valid for the series that keep R_k^+
/// positive, in a fixed order, at most count of them.
std::vector<SignedPerm> weyl_samples(const RootDatum& D, const WeightSpec& spec, std::size_t count);

/// chi(tau_k) for k = 1..kmax and the multisets {x_i : i in I_k} agree for
/// spec and its shifted image.
CheckList weyl_orbit_compare(const RootDatum& D, const WeightSpec& spec, const SignedPerm& sigma, int kmax,
                             const std::string& tag);

/// Formula against operator for k = 0..kmax, with the lowered-vector
/// centrality spot check.
CheckList character_checks(const QOperator& Q, int kmax, const std::string& tag);

/// tau^- changes sign under each single eps_i inversion and is fixed by
/// products of two.
CheckList tau_minus_checks(const RootDatum& D, const WeightSpec& spec, const std::string& tag);

}  // namespace qgclass
