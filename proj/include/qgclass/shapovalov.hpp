#pragma once

// Root vectors f_ij, the reduced Shapovalov inverse and the singular vectors
// that cut out generalized parabolic Verma modules.

#include "qgclass/verma.hpp"

#include <map>

namespace qgclass {

/// f_ij in U_q(g_-) for i < j (0-based), for every pair whose weight
/// eps_i - eps_j fits under the algebra cutoff.
class RootElements {
 public:
  RootElements(const GradedBasis& U, const PosetData& poset);

  const GradedBasis& algebra() const { return U_; }
  const PosetData& poset() const { return poset_; }
  bool has(int i, int j) const { return memo_.count({i, j}) != 0; }
  const Element& f(int i, int j) const;

 private:
  const Element& build(int i, int j);

  const GradedBasis& U_;
  const PosetData& poset_;
  std::map<std::pair<int, int>, Element> memo_;
};

/// Shapovalov data specialized at a weight.
class Shapovalov {
 public:
  Shapovalov(const RootElements& R, const WeightSpec& spec);

  const RootElements& roots() const { return R_; }
  const WeightSpec& spec() const { return spec_; }
  const RootDatum& datum() const { return R_.algebra().datum(); }

  Scalar q_eta(int i, int j) const;     // q^{eta_ij} at lambda
  Scalar eta_bracket(int i, int j) const;  // [eta_ij]_q at lambda
  /// A^j_m at lambda; RegularityError when q^{2 eta_mj} = 1.
  Scalar A(int m, int j) const;
  Scalar normalizer(int i, int j) const;  // q^{eta_ij - rho~_i + rho~_j}

  Element fhat(int i, int j) const;
  Element fcheck(int i, int j) const;
  /// Routes (i, m...) from i to j with at least one intermediate node and
  /// their coefficients in fhat_ij [eta_ij]_q, -q^{rho~_j - rho~_i} prod A^j_m.
  std::vector<std::pair<std::vector<int>, Scalar>> corrections(int i, int j) const;

 private:
  Rational rho_tilde(int i) const;

  const RootElements& R_;
  WeightSpec spec_;
};

struct SingularGenerator {
  Weight alpha;
  int i = 0, j = 0;        // pair used
  bool fallback = false;   // first pair vanished
  Element vec;
};

/// fcheck_ij v_lambda for every alpha in Pi_k^+ with height <= max_height,
/// rescaled so that the first nonzero coordinate is 1.
std::vector<SingularGenerator> singular_generators(const Shapovalov& S, int max_height);

/// Quotient M^k_lambda truncated at depth.
VermaModule parabolic_module(const GradedBasis& U, const Shapovalov& S, int depth, Exec exec = Exec::parallel);

/// Singular columns, e-on-f identity, singular vectors of k, classical limit,
/// and the (flag only) symmetry fcheck_ij ~ fcheck_j'i'.
CheckList shapovalov_checks(const Shapovalov& S, const VermaModule& plain, const TensorSpace* T, const std::string& tag);

}  // namespace qgclass
