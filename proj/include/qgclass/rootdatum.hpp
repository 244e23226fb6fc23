#pragma once

// Root systems of types B, C, D, the natural representation and the
// index posets on I = {1..N}.  Indices are 0-based internally.

#include "qgclass/check.hpp"
#include "qgclass/linalg.hpp"
#include "qgclass/scalars.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace qgclass {

class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised for torus points or weights outside the regular locus.
class RegularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Series { B, C, D };

Series parse_series(const std::string& s);
char series_letter(Series s);

/// Weight in epsilon coordinates (eps_1..eps_n).
using Weight = std::vector<Rational>;
/// Element of the root lattice in simple-root coordinates.
using RootCoords = std::vector<int>;

Weight operator+(const Weight& a, const Weight& b);
Weight operator-(const Weight& a, const Weight& b);
Weight operator*(const Rational& c, const Weight& a);
std::string weight_string(const Weight& w);

struct SerreTerm {
  Scalar coef;
  std::vector<int> word;
};

/// sum_k coef_k * word_k with all words of the same weight.
struct SerreRelation {
  int a = 0;
  int b = 0;
  RootCoords weight;
  std::vector<SerreTerm> terms;
};

class RootDatum {
 public:
  RootDatum(Series series, int rank);

  Series series() const { return series_; }
  int rank() const { return n_; }
  int N() const { return N_; }
  std::string name() const;

  const std::vector<Weight>& simple() const { return simple_; }
  const std::vector<Weight>& positive() const { return positive_; }
  const Weight& rho() const { return rho_; }

  Rational inner(const Weight& a, const Weight& b) const;
  Weight eps(int i) const;  // weight of w_i, 0-based
  int prime(int i) const { return N_ - 1 - i; }

  /// Simple-root coordinates; throws ConsistencyError off the root lattice.
  RootCoords coords(const Weight& w) const;
  Weight from_coords(const RootCoords& c) const;
  bool in_cone(const Weight& w) const;  // in Z_+ Pi
  int height(const Weight& w) const;

  /// v-exponent e with q_alpha = v^e, i.e. e = (alpha, alpha).
  int qa_exp(int a) const;
  /// Denominator of [e_a, f_a] = (K_a - K_a^{-1}) / d_a.
  const Scalar& d(int a) const { return d_[static_cast<std::size_t>(a)]; }
  int cartan(int a, int b) const;

  const std::vector<SerreRelation>& serre() const { return serre_; }

 private:
  Series series_;
  int n_;
  int N_;
  std::vector<Weight> simple_;
  std::vector<Weight> positive_;
  Weight rho_;
  std::vector<std::vector<Rational>> inverse_;  // eps -> simple coordinates
  std::vector<Scalar> d_;
  std::vector<SerreRelation> serre_;
};

/// Gaussian q-integer [m]_{v^e}.
Scalar qint(int m, int e);
Scalar qbinom(int m, int k, int e);

/// pi(e_a) = sum over P(alpha_a) of e_{lr}; pi(f_a) its transpose.
class NaturalRep {
 public:
  explicit NaturalRep(const RootDatum& datum);

  const std::vector<std::pair<int, int>>& pairs(int a) const {
    return pairs_[static_cast<std::size_t>(a)];
  }
  /// All (l, r) with eps_l - eps_r = beta.
  std::vector<std::pair<int, int>> pairs_of(const Weight& beta) const;
  /// Generator label of the arrow l -> r, or -1.
  int arrow(int l, int r) const;

  Matrix e_matrix(int a) const;
  Matrix f_matrix(int a) const;
  Matrix k_matrix(int a) const;  // q^{h_alpha}
  Matrix kinv_matrix(int a) const;
  /// Index m with (word) w_l = w_m, the rightmost letter acting first, or -1
  /// when the word kills w_l.  Generators map basis vectors to basis vectors.
  int word_action(const std::vector<int>& word, int l, bool raising) const;

  const RootDatum& datum() const { return datum_; }

 private:
  const RootDatum& datum_;
  std::vector<std::vector<std::pair<int, int>>> pairs_;
};

/// The order on I generated by the representation diagram.
class PosetData {
 public:
  explicit PosetData(const NaturalRep& rep);

  bool leq(int i, int j) const { return reach_[static_cast<std::size_t>(i * N_ + j)]; }
  bool less(int i, int j) const { return i != j && leq(i, j); }
  /// Letters of psi^{ij} in path order from i (type D fork passes through n).
  const std::vector<int>& principal(int i, int j) const;
  int distance(int i, int j) const { return static_cast<int>(principal(i, j).size()); }
  /// All strict chains i = m_1 < ... < m_k < j (chain entries exclude j).
  std::vector<std::vector<int>> routes(int i, int j) const;
  /// Elements k with i <= k < j.
  std::vector<int> interval(int i, int j) const;
  int N() const { return N_; }

 private:
  int N_;
  std::vector<char> reach_;
  std::vector<std::vector<int>> principal_;
};

struct SignedPerm {
  std::vector<int> perm;  // sigma(eps_i) = sign_i * eps_{perm_i}
  std::vector<int> sign;

  static SignedPerm identity(int n);
  bool is_identity() const;
  int flips() const;
  Weight apply(const Weight& w) const;
  SignedPerm compose(const SignedPerm& other) const;  // this after other
  std::string to_string() const;
};

/// lambda = lambda0/hbar + lambda1 with s_i = exp((lambda0, eps_i)).
struct WeightSpec {
  TorusConstants torus;
  Weight lambda1;

  std::vector<Weight> Rk;   // positive roots of k
  std::vector<Weight> Pik;  // simple roots of k
  Weight rho_k;
  std::vector<int> Ik;      // minimal elements of the k-order, 0-based
  bool pseudo_levi = false;

  bool generic() const { return Rk.empty(); }
  bool in_Ik(int i) const;
  /// q^{(lambda, mu)}.
  Scalar power(const Weight& mu) const;
  std::string label() const;
};

/// Compute the stabilizer data.  With validate=false the lambda1 condition is
/// not enforced (used to build deliberately degenerate modules in tests).
WeightSpec stabilizer_from_spec(const RootDatum& datum, const TorusConstants& s, const Weight& lambda1,
                                bool validate = true);
/// lambda1 = mu_bar + rho_k - rho for mu_bar orthogonal to R_k.
WeightSpec spec_from_mu_bar(const RootDatum& datum, const TorusConstants& s, const Weight& mu_bar);

/// Shifted action lambda -> sigma(lambda + rho) - rho.  allow_odd permits odd
/// sign counts in type D (orthogonal-group reflections used by property tests).
WeightSpec weyl_shifted(const RootDatum& datum, const SignedPerm& sigma, const WeightSpec& spec,
                        bool allow_odd = false, bool validate = true);
void validate_signed_perm(const RootDatum& datum, const SignedPerm& sigma, bool allow_odd = false);

/// i <. j relative to k.
bool k_less(const RootDatum& datum, const WeightSpec& spec, int i, int j);

std::string index_name(const RootDatum& datum, int i);  // 1-based, primes for i > N/2
std::string describe(const RootDatum& datum, const WeightSpec* spec);

/// Defining relations of the quantum group on the natural representation.
CheckList natural_rep_checks(const RootDatum& datum);

}  // namespace qgclass
