#include "qgclass/scalars.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <sstream>

namespace qgclass {

// ---------------------------------------------------------------- Coef

Coef& Coef::operator+=(const Coef& o) {
  re_ += o.re_;
  if (!o.is_real()) im_ += o.im_;
  return *this;
}

Coef& Coef::operator-=(const Coef& o) {
  re_ -= o.re_;
  if (!o.is_real()) im_ -= o.im_;
  return *this;
}

Coef& Coef::operator*=(const Coef& o) {
  if (is_real() && o.is_real()) {
    re_ *= o.re_;
    return *this;
  }
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

Coef Coef::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero coefficient");
  if (is_real()) return Coef(Rational(1) / re_);
  Rational norm = re_ * re_ + im_ * im_;
  return {re_ / norm, -im_ / norm};
}

Coef& Coef::operator/=(const Coef& o) {
  if (o.is_real()) {
    if (sgn(o.re_) == 0) throw std::domain_error("division by zero coefficient");
    re_ /= o.re_;
    if (!is_real()) im_ /= o.re_;
    return *this;
  }
  return *this *= o.inverse();
}

namespace {

std::string rational_string(const Rational& r) { return r.get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ParseError("empty rational");
  if (s.front() == '+') s.erase(0, 1);
  auto ok = std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-';
  });
  if (!ok) throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational r;
  if (r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + std::string(text) + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

// Imaginary part text: "i", "3*i", "3/2*i" (sign handled by caller).
Rational parse_imag(std::string_view text) {
  if (text == "i") return 1;
  if (text.size() > 2 && text.substr(text.size() - 2) == "*i")
    return parse_rational(text.substr(0, text.size() - 2));
  throw ParseError("malformed imaginary part '" + std::string(text) + "'");
}

}  // namespace

std::string Coef::to_string() const {
  if (is_real()) return rational_string(re_);
  std::string imag;
  Rational a = abs(im_);
  imag = (a == 1) ? "i" : rational_string(a) + "*i";
  if (sgn(re_) == 0) return (sgn(im_) < 0 ? "-" : "") + imag;
  return rational_string(re_) + (sgn(im_) < 0 ? "-" : "+") + imag;
}

Coef Coef::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty coefficient");
  if (s.back() != 'i') return Coef(parse_rational(s));
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) {
    bool neg = s.front() == '-';
    std::string_view body(s);
    if (neg || s.front() == '+') body.remove_prefix(1);
    Rational im = parse_imag(body);
    return {0, neg ? Rational(-im) : im};
  }
  Rational re = parse_rational(std::string_view(s).substr(0, split));
  bool neg = s[split] == '-';
  Rational im = parse_imag(std::string_view(s).substr(split + 1));
  return {re, neg ? Rational(-im) : im};
}

Coef pow(const Coef& base, long exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  Coef result(1);
  Coef b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    exponent >>= 1;
    if (exponent) b *= b;
  }
  return result;
}

// ---------------------------------------------------------------- Poly

Poly::Poly(Coef c) {
  if (!c.is_zero()) terms_.push_back({0, std::move(c)});
}

Poly Poly::monomial(Coef c, int exp) {
  Poly p;
  if (!c.is_zero()) p.terms_.push_back({exp, std::move(c)});
  return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exp < b.exp; });
  Poly p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().exp == t.exp) {
      p.terms_.back().coef += t.coef;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coef.is_zero()) p.terms_.pop_back();
  return p;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& t : p.terms_) t.coef = -t.coef;
  return p;
}

namespace {

template <bool Subtract>
std::vector<Poly::Term> merge_terms(std::span<const Poly::Term> a, std::span<const Poly::Term> b) {
  std::vector<Poly::Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].exp < b[j].exp)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].exp < a[i].exp) {
      out.push_back({b[j].exp, Subtract ? -b[j].coef : b[j].coef});
      ++j;
    } else {
      Coef c = Subtract ? a[i].coef - b[j].coef : a[i].coef + b[j].coef;
      if (!c.is_zero()) out.push_back({a[i].exp, std::move(c)});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  terms_ = merge_terms<false>(terms_, o.terms_);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.is_zero()) return *this;
  terms_ = merge_terms<true>(terms_, o.terms_);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly p;
  if (a.is_zero() || b.is_zero()) return p;
  if (a.is_monomial()) {
    p.terms_.reserve(b.size());
    for (const auto& t : b.terms_) p.terms_.push_back({t.exp + a.terms_[0].exp, t.coef * a.terms_[0].coef});
    return p;
  }
  if (b.is_monomial()) return b * a;
  const int lo = a.low() + b.low();
  const int hi = a.high() + b.high();
  std::vector<Coef> acc(static_cast<std::size_t>(hi - lo + 1));
  std::vector<char> touched(acc.size(), 0);
  for (const auto& x : a.terms_) {
    for (const auto& y : b.terms_) {
      auto k = static_cast<std::size_t>(x.exp + y.exp - lo);
      if (touched[k]) {
        acc[k] += x.coef * y.coef;
      } else {
        acc[k] = x.coef * y.coef;
        touched[k] = 1;
      }
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k)
    if (touched[k] && !acc[k].is_zero()) p.terms_.push_back({static_cast<int>(k) + lo, std::move(acc[k])});
  return p;
}

Poly Poly::scaled(const Coef& c) const {
  if (c.is_zero()) return {};
  Poly p = *this;
  for (auto& t : p.terms_) t.coef *= c;
  return p;
}

Poly Poly::shifted(int k) const {
  Poly p = *this;
  for (auto& t : p.terms_) t.exp += k;
  return p;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (a.terms_[i].exp != b.terms_[i].exp || !(a.terms_[i].coef == b.terms_[i].coef)) return false;
  return true;
}

Coef Poly::evaluate(const Coef& v0) const {
  Coef sum;
  if (terms_.empty()) return sum;
  if (v0.is_zero()) {
    if (low() < 0) throw PoleError("Laurent polynomial evaluated at v = 0");
    return terms_.front().exp == 0 ? terms_.front().coef : Coef();
  }
  for (const auto& t : terms_) sum += t.coef * pow(v0, t.exp);
  return sum;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const Coef& c = it->coef;
    bool negative = c.is_real() && sgn(c.re()) < 0;
    Coef mag = negative ? -c : c;
    if (!first) os << (negative ? "-" : "+");
    else if (negative) os << "-";
    first = false;
    std::string cs = mag.is_real() ? mag.to_string() : "(" + mag.to_string() + ")";
    if (it->exp == 0) {
      os << cs;
      continue;
    }
    if (!mag.is_one()) os << cs << "*";
    os << "v";
    if (it->exp != 1) os << "^" << it->exp;
  }
  return os.str();
}

// ---------------------------------------------------------------- dense helpers

namespace {

using Dense = std::vector<Coef>;

Dense to_dense(const Poly& p) {
  Dense d(static_cast<std::size_t>(p.high() + 1));
  for (const auto& t : p.terms()) d[static_cast<std::size_t>(t.exp)] = t.coef;
  return d;
}

Poly from_dense(Dense& d) {
  std::vector<Poly::Term> terms;
  for (std::size_t k = 0; k < d.size(); ++k)
    if (!d[k].is_zero()) terms.push_back({static_cast<int>(k), std::move(d[k])});
  return Poly::from_terms(std::move(terms));
}

void trim(Dense& d) {
  while (!d.empty() && d.back().is_zero()) d.pop_back();
}

void dense_divmod(Dense a, const Dense& b, Dense& q, Dense& r) {
  trim(a);
  const std::size_t db = b.size() - 1;
  const Coef lead_inv = b.back().inverse();
  if (a.size() < b.size()) {
    q.clear();
    r = std::move(a);
    return;
  }
  q.assign(a.size() - db, Coef());
  for (std::size_t k = a.size(); k-- > db;) {
    if (a[k].is_zero()) continue;
    Coef f = a[k] * lead_inv;
    for (std::size_t t = 0; t <= db; ++t)
      if (!b[t].is_zero()) a[k - db + t] -= f * b[t];
    q[k - db] = std::move(f);
  }
  a.resize(db);
  trim(a);
  r = std::move(a);
}

}  // namespace

void poly_divmod(const Poly& a, const Poly& b, Poly& quot, Poly& rem) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (!a.is_zero() && a.low() < 0) throw ConsistencyError("poly_divmod needs ordinary polynomials");
  if (a.is_zero()) {
    quot = Poly();
    rem = Poly();
    return;
  }
  Dense q, r;
  dense_divmod(to_dense(a), to_dense(b), q, r);
  quot = from_dense(q);
  rem = from_dense(r);
}

Poly poly_exact_div(const Poly& a, const Poly& b) {
  if (b.is_monomial()) {
    return a.shifted(-b.low()).scaled(b.lead().inverse());
  }
  Poly q, r;
  poly_divmod(a, b, q, r);
  if (!r.is_zero()) throw ConsistencyError("inexact polynomial division");
  return q;
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero()) return {};
  if (a.is_zero()) return b.scaled(b.lead().inverse());
  if (b.is_zero()) return a.scaled(a.lead().inverse());
  if (a.is_constant() || b.is_constant()) return Poly(Coef(1));
  Dense x = to_dense(a), y = to_dense(b);
  if (x.size() < y.size()) std::swap(x, y);
  auto make_monic = [](Dense& d) {
    Coef inv = d.back().inverse();
    for (auto& c : d) c *= inv;
  };
  make_monic(y);
  while (!y.empty()) {
    Dense q, r;
    dense_divmod(std::move(x), y, q, r);
    x = std::move(y);
    y = std::move(r);
    if (!y.empty()) make_monic(y);
  }
  make_monic(x);
  return from_dense(x);
}

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(Poly num, Poly den) { *this = make_reduced(std::move(num), std::move(den)); }

Scalar Scalar::make_reduced(Poly num, Poly den) {
  if (den.is_zero()) throw std::domain_error("zero denominator");
  Scalar s;
  if (num.is_zero()) return s;
  const int k = den.low();
  if (k != 0) {
    den = den.shifted(-k);
    num = num.shifted(-k);
  }
  if (den.is_constant()) {
    s.num_ = num.scaled(den.lead().inverse());
    return s;
  }
  const int nl = num.low();
  Poly np = nl != 0 ? num.shifted(-nl) : num;
  Poly g = poly_gcd(np, den);
  if (!g.is_one()) {
    np = poly_exact_div(np, g);
    den = poly_exact_div(den, g);
  }
  Coef inv = den.lead().inverse();
  s.num_ = np.shifted(nl).scaled(inv);
  s.den_ = den.scaled(inv);
  return s;
}

Scalar Scalar::operator-() const {
  Scalar s = *this;
  s.num_ = -s.num_;
  return s;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (o.den_.is_one()) {
    num_ += o.num_ * den_;
    if (num_.is_zero()) den_ = Poly(Coef(1));
    return *this;
  }
  if (den_.is_one()) {
    num_ = num_ * o.den_ + o.num_;
    den_ = o.den_;
    if (num_.is_zero()) den_ = Poly(Coef(1));
    return *this;
  }
  if (den_ == o.den_) {
    *this = make_reduced(num_ + o.num_, den_);
    return *this;
  }
  Poly g = poly_gcd(den_, o.den_);
  Poly b1 = poly_exact_div(den_, g);
  Poly d1 = poly_exact_div(o.den_, g);
  *this = make_reduced(num_ * d1 + o.num_ * b1, b1 * o.den_);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_zero()) return *this = Scalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ = num_ * o.num_;
    return *this;
  }
  if (num_.is_monomial() && o.num_.is_monomial()) {
    num_ = num_ * o.num_;
    den_ = den_ * o.den_;
    return *this;
  }
  *this = make_reduced(num_ * o.num_, den_ * o.den_);
  return *this;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero scalar");
  return make_reduced(den_, num_);
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  Scalar r(1), b = *this;
  while (e > 0) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

namespace {

// Integer-coefficient rendering of num/den.
void integralize(Poly& num, Poly& den) {
  mpz_class lcm = 1;
  auto absorb = [&](const Poly& p) {
    for (const auto& t : p.terms()) {
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coef.re().get_den_mpz_t());
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), t.coef.im().get_den_mpz_t());
    }
  };
  absorb(num);
  absorb(den);
  Coef scale{Rational(lcm)};
  num = num.scaled(scale);
  den = den.scaled(scale);
  mpz_class g = 0;
  auto content = [&](const Poly& p) {
    for (const auto& t : p.terms()) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.re().get_num_mpz_t());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coef.im().get_num_mpz_t());
    }
  };
  content(num);
  content(den);
  if (g != 0 && g != 1) {
    Coef inv{Rational(1, 1) / Rational(g)};
    num = num.scaled(inv);
    den = den.scaled(inv);
  }
}

std::size_t find_top_level_fraction(std::string_view s) {
  int depth = 0;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    if (s[k] == '(') ++depth;
    if (s[k] == ')') --depth;
    if (depth == 0 && s[k] == ')' && s[k + 1] == '/') return k + 1;
  }
  return std::string_view::npos;
}

Poly parse_poly(std::string_view s) {
  std::vector<Poly::Term> terms;
  std::size_t pos = 0;
  if (s.empty()) throw ParseError("empty polynomial");
  while (pos < s.size()) {
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') {
      negative = s[pos] == '-';
      ++pos;
    }
    std::size_t end = pos;
    int depth = 0;
    while (end < s.size()) {
      char c = s[end];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == '+' || c == '-') && end > pos && s[end - 1] != '^') break;
      ++end;
    }
    std::string_view term = s.substr(pos, end - pos);
    if (term.empty()) throw ParseError("empty term in polynomial");
    Coef coef(1);
    int exp = 0;
    std::string_view rest = term;
    if (rest.front() == '(') {
      auto close = rest.find(')');
      if (close == std::string_view::npos) throw ParseError("unbalanced parenthesis");
      coef = Coef::parse(rest.substr(1, close - 1));
      rest.remove_prefix(close + 1);
      if (!rest.empty()) {
        if (rest.front() != '*') throw ParseError("expected '*' after coefficient");
        rest.remove_prefix(1);
      }
    } else if (rest.front() != 'v') {
      auto star = rest.find('*');
      coef = Coef::parse(rest.substr(0, star));
      rest = star == std::string_view::npos ? std::string_view() : rest.substr(star + 1);
    }
    if (!rest.empty()) {
      if (rest.front() != 'v') throw ParseError("expected 'v' in term '" + std::string(term) + "'");
      rest.remove_prefix(1);
      exp = 1;
      if (!rest.empty()) {
        if (rest.front() != '^') throw ParseError("expected '^' in term '" + std::string(term) + "'");
        rest.remove_prefix(1);
        try {
          std::size_t used = 0;
          exp = std::stoi(std::string(rest), &used);
          if (used != rest.size()) throw ParseError("trailing characters in exponent");
        } catch (const std::logic_error&) {
          throw ParseError("malformed exponent in '" + std::string(term) + "'");
        }
      }
    }
    terms.push_back({exp, negative ? -coef : coef});
    pos = end;
  }
  return Poly::from_terms(std::move(terms));
}

}  // namespace

std::string Scalar::to_string() const {
  if (is_zero()) return "0";
  Poly num = num_, den = den_;
  if (num.low() < 0) {
    const int k = -num.low();
    num = num.shifted(k);
    den = den.shifted(k);
  }
  integralize(num, den);
  if (den.is_one()) return num.to_string();
  return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

Scalar Scalar::parse(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  auto bar = find_top_level_fraction(s);
  if (bar != std::string_view::npos) {
    std::string_view sv(s);
    std::string_view left = sv.substr(0, bar), right = sv.substr(bar + 1);
    if (left.size() < 2 || left.front() != '(' || right.size() < 2 || right.front() != '(' ||
        right.back() != ')')
      throw ParseError("malformed fraction '" + s + "'");
    Poly den = parse_poly(right.substr(1, right.size() - 2));
    if (den.is_zero()) throw ParseError("zero denominator in '" + s + "'");
    return Scalar(parse_poly(left.substr(1, left.size() - 2)), den);
  }
  return Scalar(parse_poly(s));
}

// ---------------------------------------------------------------- constructors

Scalar qnum(int twice_z) {
  Poly num = Poly::monomial(Coef(1), twice_z) - Poly::monomial(Coef(1), -twice_z);
  Poly den = Poly::monomial(Coef(1), 2) - Poly::monomial(Coef(1), -2);
  return Scalar(std::move(num), std::move(den));
}

Scalar q_power(const Rational& e) {
  Rational twice = 2 * e;
  if (twice.get_den() != 1) throw ConsistencyError("q-exponent " + e.get_str() + " is not in (1/2)Z");
  return Scalar::v_power(static_cast<int>(twice.get_num().get_si()));
}

Coef evaluate_at(const Scalar& x, const Coef& v0) {
  Coef d = x.den().evaluate(v0);
  if (d.is_zero()) throw PoleError("pole at v = " + v0.to_string());
  return x.num().evaluate(v0) / d;
}

Scalar lambda_power(std::span<const Rational> mu, const TorusConstants& torus,
                    std::span<const Rational> lambda1) {
  if (mu.size() != torus.s.size() || mu.size() != lambda1.size())
    throw ConsistencyError("lambda_power: dimension mismatch");
  Coef c(1);
  Rational pairing = 0;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (sgn(mu[i]) == 0) continue;
    if (mu[i].get_den() != 1) throw ConsistencyError("lambda_power: non-integral torus exponent");
    c *= pow(torus.s[i], mu[i].get_num().get_si());
    pairing += mu[i] * lambda1[i];
  }
  Rational twice = 2 * pairing;
  if (twice.get_den() != 1) throw ConsistencyError("lambda_power: non-integral v-exponent");
  return Scalar::monomial(c, static_cast<int>(twice.get_num().get_si()));
}

}  // namespace qgclass
