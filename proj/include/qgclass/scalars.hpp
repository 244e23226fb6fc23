#pragma once

// Exact coefficient field for the kernel: rational functions in one formal
// variable v (q = v^2) with Gaussian-rational coefficients.

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qgclass {

class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Rational = mpq_class;

/// Gaussian rational a + b*i.  Torus constants with s^2 = -1 need the i.
class Coef {
 public:
  Coef() = default;
  Coef(long v) : re_(v) {}  // NOLINT
  Coef(Rational re) : re_(std::move(re)) {}  // NOLINT
  Coef(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

  static Coef imaginary_unit() { return {0, 1}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return is_real() && re_ == 1; }

  Coef operator-() const { return {-re_, -im_}; }
  Coef& operator+=(const Coef& o);
  Coef& operator-=(const Coef& o);
  Coef& operator*=(const Coef& o);
  Coef& operator/=(const Coef& o);
  Coef inverse() const;
  Coef conj() const { return {re_, -im_}; }

  friend Coef operator+(Coef a, const Coef& b) { return a += b; }
  friend Coef operator-(Coef a, const Coef& b) { return a -= b; }
  friend Coef operator*(Coef a, const Coef& b) { return a *= b; }
  friend Coef operator/(Coef a, const Coef& b) { return a /= b; }
  friend bool operator==(const Coef& a, const Coef& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  /// "p/q", "i", "-3/2*i", "1/2+3*i".
  std::string to_string() const;
  static Coef parse(std::string_view text);

 private:
  Rational re_;
  Rational im_;
};

Coef pow(const Coef& base, long exponent);

/// Laurent polynomial in v, stored sparsely as ascending (exponent, coefficient)
/// pairs with no zero coefficients.
class Poly {
 public:
  struct Term {
    int exp;
    Coef coef;
  };

  Poly() = default;
  Poly(Coef c);  // NOLINT
  static Poly monomial(Coef c, int exp);
  static Poly from_terms(std::vector<Term> terms);  // unsorted input allowed

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.size() == 1 && terms_[0].exp == 0; }
  bool is_one() const { return is_constant() && terms_[0].coef.is_one(); }
  bool is_monomial() const { return terms_.size() == 1; }
  int low() const { return terms_.front().exp; }
  int high() const { return terms_.back().exp; }
  const Coef& lead() const { return terms_.back().coef; }
  const Coef& trail() const { return terms_.front().coef; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(const Coef& c) const;
  Poly shifted(int k) const;  // multiply by v^k
  friend bool operator==(const Poly& a, const Poly& b);

  Coef evaluate(const Coef& v0) const;  // v0 != 0 unless low() >= 0
  std::string to_string() const;

 private:
  std::vector<Term> terms_;
};

/// Ordinary-polynomial helpers (low() >= 0 assumed).
Poly poly_gcd(const Poly& a, const Poly& b);           // monic, gcd(0,0)=0
Poly poly_exact_div(const Poly& a, const Poly& b);     // throws if remainder
void poly_divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem);

/// Reduced fraction num/den.  num is Laurent, den is an ordinary monic
/// polynomial with nonzero constant term; gcd(num, den) = 1.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long c) : num_(Coef(c)) {}  // NOLINT
  Scalar(Coef c) : num_(std::move(c)) {}  // NOLINT
  Scalar(Poly p) : num_(std::move(p)) {}  // NOLINT
  Scalar(Poly num, Poly den);

  static Scalar v_power(int k) { return Scalar(Poly::monomial(Coef(1), k)); }
  static Scalar monomial(Coef c, int k) { return Scalar(Poly::monomial(std::move(c), k)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return den_.is_one() && num_.is_one(); }
  bool is_laurent() const { return den_.is_one(); }
  /// c * v^k with c a Gaussian rational.
  bool is_monomial() const { return den_.is_one() && num_.is_monomial(); }

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  Scalar inverse() const;
  Scalar pow(int e) const;

  /// Total size, used as a pivot-selection heuristic.
  std::size_t complexity() const { return num_.size() + 2 * (den_.size() - 1); }

  /// "P" or "(P)/(Q)" with P, Q integer-coefficient polynomials in v.
  std::string to_string() const;
  static Scalar parse(std::string_view text);

 private:
  static Scalar make_reduced(Poly num, Poly den);
  Poly num_;
  Poly den_{Coef(1)};
};

/// [z]_q with q = v^2 for z = twice_z / 2.
Scalar qnum(int twice_z);

/// q^e = v^{2e}; 2e must be an integer.
Scalar q_power(const Rational& e);

/// x(v0); throws PoleError when the denominator vanishes at v0.
Coef evaluate_at(const Scalar& x, const Coef& v0);

/// Torus point: s_i = exp((lambda0, eps_i)) for i = 1..n.
struct TorusConstants {
  std::vector<Coef> s;
};

/// q^{(lambda, mu)} = prod_i s_i^{mu_i} * v^{2 (lambda1, mu)} for mu in eps
/// coordinates.  mu_i and 2(lambda1, mu) must be integers.
Scalar lambda_power(std::span<const Rational> mu, const TorusConstants& torus,
                    std::span<const Rational> lambda1);

}  // namespace qgclass
