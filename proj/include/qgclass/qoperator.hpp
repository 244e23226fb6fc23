#pragma once

// The invariant operator Q = (pi (x) id)(R_21 R) on C^N (x) M, assembled from
// the canonical element of the Hopf pairing, and checks of its spectrum.

#include "qgclass/verma.hpp"

#include <map>

namespace qgclass {

class NonGenericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One point of the finite convention set for R.  The pairing recursion
/// strips a letter from the lowering word and pairs it with each matching
/// letter of the raising word:
///   <y f_a, x> = c_a sum_t q^{twist (alpha_a, wt x_{>t})} <y, x \ x_t>
/// (strip_last, after); the mirrored variants take the first letter of y
/// and/or the prefix weight x_{<t}.  c_a = c_sign / d_a.  The Cartan factor
/// q^{cartan_sign (eps_m, mu)} multiplies the canonical element on the left
/// (output weights) or on the right (input weights).
struct QConvention {
  bool strip_last = true;
  int twist = 1;
  bool after = true;
  int c_sign = 1;
  int cartan_sign = 1;
  bool cartan_left = true;

  std::string to_string() const;
};

std::vector<QConvention> q_conventions();

/// Largest height of eps_l - eps_r; the algebra cutoff the pairing table needs.
int pairing_height(const RootDatum& D);

/// <y, x> for a lowering word y and a raising word x (letters of f and e).
Scalar hopf_pairing(const RootDatum& D, const QConvention& c, const Word& y, const Word& x);

/// Gram matrices of the pairing on normal words, for every weight
/// eps_l - eps_r (l < r in the representation order).
class PairingTable {
 public:
  struct Entry {
    RootCoords mu;
    int comp = 0;  // GradedBasis component
    Matrix gram;   // gram(k, l) = <y_k, x_l>
    Matrix inverse;
  };

  PairingTable(const GradedBasis& U, const NaturalRep& rep, const QConvention& c);
  const std::vector<Entry>& entries() const { return entries_; }

 private:
  std::vector<Entry> entries_;
};

class QOperator {
 public:
  /// Blocks of height <= max_height of T.
  QOperator(const TensorSpace& T, const QConvention& c, int max_height, Exec exec = Exec::parallel);

  const TensorSpace& space() const { return T_; }
  const QConvention& convention() const { return conv_; }
  int max_height() const { return max_height_; }
  bool has(int idx) const { return T_.block(idx).height <= max_height_; }
  const Matrix& block(int idx) const { return Q_[static_cast<std::size_t>(idx)]; }
  /// (pi (x) id) R and (pi (x) id) R_21 on a block.
  const Matrix& r(int idx) const { return R_[static_cast<std::size_t>(idx)]; }
  const Matrix& r21(int idx) const { return R21_[static_cast<std::size_t>(idx)]; }

 private:
  const TensorSpace& T_;
  QConvention conv_;
  int max_height_;
  std::vector<Matrix> R_, R21_, Q_;
};

/// x_j = q^{2(lambda+rho, eps_j) - 2(rho, eps_1) + |eps_j|^2 - |eps_1|^2}.
Scalar eigenvalue_x(const RootDatum& D, const WeightSpec& spec, int j);

/// R Delta = Delta^op R, R_21 Delta^op = Delta R_21 on blocks <= height, and
/// Q(w_j (x) v_lambda) has w_j-coefficient q^{2(eps_j, lambda)}.
bool convention_passes(const QOperator& Q, int height);

/// First convention passing the selection test and then the interior
/// intertwining check; ConsistencyError if none does.  T must be built one
/// level beyond D.
QOperator build_Q(const TensorSpace& T, int D, Exec exec = Exec::parallel);

/// Q Delta(u) = Delta(u) Q on blocks of height <= D, one record per generator.
CheckList q_intertwining_checks(const QOperator& Q, int D, const std::string& tag);

/// Weight-preserving operator on blocks <= D commuting with Delta(e_a),
/// Delta(f_a) and with w_j-coefficient q^{2(eps_j, lambda)} on w_j (x) v_lambda.
/// NonGenericError unless the solution is unique.
std::vector<Matrix> commutant_oracle(const TensorSpace& T, int D);

/// Graded eigenvalues against x_j and Q V_j in V_j, on blocks <= D.
CheckList graded_eigenvalue_checks(const QOperator& Q, const std::vector<Subspace>& V, int D, const std::string& tag);

/// prod_{j in I_k} (Q - x_j) = 0 on blocks <= D; reports which factors are
/// redundant.
CheckList minpoly_checks(const QOperator& Q, int D, const std::string& tag);

}  // namespace qgclass
