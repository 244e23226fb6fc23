#include "qgclass/rootdatum.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace qgclass {

Series parse_series(const std::string& s) {
  if (s == "B" || s == "b") return Series::B;
  if (s == "C" || s == "c") return Series::C;
  if (s == "D" || s == "d") return Series::D;
  throw SpecError("unsupported series '" + s + "' (expected B, C or D)");
}

char series_letter(Series s) {
  switch (s) {
    case Series::B: return 'B';
    case Series::C: return 'C';
    case Series::D: return 'D';
  }
  return '?';
}

Weight operator+(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Weight operator-(const Weight& a, const Weight& b) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Weight operator*(const Rational& c, const Weight& a) {
  Weight r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

std::string weight_string(const Weight& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + w[i].get_str();
  return s + ")";
}

namespace {

Weight unit(int n, int i, long c = 1) {
  Weight w(static_cast<std::size_t>(n));
  w[static_cast<std::size_t>(i)] = c;
  return w;
}

std::string root_string(const Weight& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) == 0) continue;
    Rational a = abs(w[i]);
    if (sgn(w[i]) < 0) s += "-";
    else if (!s.empty()) s += "+";
    if (a != 1) s += a.get_str();
    s += "e" + std::to_string(i + 1);
  }
  return s.empty() ? "0" : s;
}

std::vector<std::vector<Rational>> invert(std::vector<std::vector<Rational>> m) {
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) throw ConsistencyError("singular simple-root matrix");
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Rational piv = m[c][c];
    for (std::size_t k = 0; k < n; ++k) {
      m[c][k] /= piv;
      inv[c][k] /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[c][k];
        inv[r][k] -= f * inv[c][k];
      }
    }
  }
  return inv;
}

}  // namespace

// ---------------------------------------------------------------- q-numbers

Scalar qint(int m, int e) {
  if (m == 0) return {};
  Poly num = Poly::monomial(Coef(1), m * e) - Poly::monomial(Coef(1), -m * e);
  Poly den = Poly::monomial(Coef(1), e) - Poly::monomial(Coef(1), -e);
  return Scalar(std::move(num), std::move(den));
}

Scalar qbinom(int m, int k, int e) {
  if (k < 0 || k > m) return {};
  Scalar r(1);
  for (int t = 0; t < k; ++t) r = r * qint(m - t, e) / qint(t + 1, e);
  return r;
}

// ---------------------------------------------------------------- RootDatum

RootDatum::RootDatum(Series series, int rank) : series_(series), n_(rank) {
  if (rank < 1 || (series == Series::D && rank < 2) || rank > 8)
    throw SpecError(std::string("unsupported rank ") + std::to_string(rank) + " for series " +
                    series_letter(series));
  N_ = series == Series::B ? 2 * n_ + 1 : 2 * n_;
  for (int i = 0; i + 1 < n_; ++i) simple_.push_back(unit(n_, i) - unit(n_, i + 1));
  switch (series) {
    case Series::B: simple_.push_back(unit(n_, n_ - 1)); break;
    case Series::C: simple_.push_back(unit(n_, n_ - 1, 2)); break;
    case Series::D: simple_.push_back(unit(n_, n_ - 2) + unit(n_, n_ - 1)); break;
  }
  for (int i = 0; i < n_; ++i) {
    for (int j = i + 1; j < n_; ++j) {
      positive_.push_back(unit(n_, i) - unit(n_, j));
      positive_.push_back(unit(n_, i) + unit(n_, j));
    }
    if (series == Series::B) positive_.push_back(unit(n_, i));
    if (series == Series::C) positive_.push_back(unit(n_, i, 2));
  }
  std::vector<std::vector<Rational>> m;
  for (const auto& a : simple_) m.push_back(a);
  inverse_ = invert(m);
  std::stable_sort(positive_.begin(), positive_.end(), [this](const Weight& a, const Weight& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return coords(a) > coords(b);
  });
  rho_ = Weight(static_cast<std::size_t>(n_));
  for (const auto& a : positive_) rho_ = rho_ + a;
  rho_ = Rational(1, 2) * rho_;

  for (int a = 0; a < n_; ++a) {
    const int e = qa_exp(a);
    const int de = (series_ == Series::B && a == n_ - 1) ? 2 : e;
    d_.push_back(Scalar::v_power(de) - Scalar::v_power(-de));
  }
  for (int a = 0; a < n_; ++a) {
    for (int b = 0; b < n_; ++b) {
      if (a == b) continue;
      const int m = 1 - cartan(a, b);
      SerreRelation rel;
      rel.a = a;
      rel.b = b;
      rel.weight.assign(static_cast<std::size_t>(n_), 0);
      rel.weight[static_cast<std::size_t>(a)] = m;
      rel.weight[static_cast<std::size_t>(b)] += 1;
      for (int k = 0; k <= m; ++k) {
        SerreTerm t;
        t.coef = qbinom(m, k, qa_exp(a));
        if (k % 2) t.coef = -t.coef;
        t.word.assign(static_cast<std::size_t>(m - k), a);
        t.word.push_back(b);
        t.word.insert(t.word.end(), static_cast<std::size_t>(k), a);
        rel.terms.push_back(std::move(t));
      }
      serre_.push_back(std::move(rel));
    }
  }
}

std::string RootDatum::name() const { return std::string(1, series_letter(series_)) + std::to_string(n_); }

Rational RootDatum::inner(const Weight& a, const Weight& b) const {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Weight RootDatum::eps(int i) const {
  if (i < 0 || i >= N_) throw ConsistencyError("index out of range");
  if (i < n_) return unit(n_, i);
  if (series_ == Series::B && i == n_) return Weight(static_cast<std::size_t>(n_));
  return unit(n_, N_ - 1 - i, -1);
}

RootCoords RootDatum::coords(const Weight& w) const {
  RootCoords c(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a) {
    Rational x = 0;
    for (int i = 0; i < n_; ++i) x += w[static_cast<std::size_t>(i)] * inverse_[static_cast<std::size_t>(i)][static_cast<std::size_t>(a)];
    if (x.get_den() != 1) throw ConsistencyError("weight " + weight_string(w) + " is not in the root lattice");
    c[static_cast<std::size_t>(a)] = static_cast<int>(x.get_num().get_si());
  }
  return c;
}

Weight RootDatum::from_coords(const RootCoords& c) const {
  Weight w(static_cast<std::size_t>(n_));
  for (int a = 0; a < n_; ++a)
    if (c[static_cast<std::size_t>(a)] != 0) w = w + Rational(c[static_cast<std::size_t>(a)]) * simple_[static_cast<std::size_t>(a)];
  return w;
}

bool RootDatum::in_cone(const Weight& w) const {
  try {
    auto c = coords(w);
    return std::all_of(c.begin(), c.end(), [](int x) { return x >= 0; });
  } catch (const ConsistencyError&) {
    return false;
  }
}

int RootDatum::height(const Weight& w) const {
  auto c = coords(w);
  int h = 0;
  for (int x : c) h += x;
  return h;
}

int RootDatum::qa_exp(int a) const {
  const auto& al = simple_[static_cast<std::size_t>(a)];
  return static_cast<int>(inner(al, al).get_num().get_si());
}

int RootDatum::cartan(int a, int b) const {
  const auto& x = simple_[static_cast<std::size_t>(a)];
  const auto& y = simple_[static_cast<std::size_t>(b)];
  Rational c = 2 * inner(x, y) / inner(x, x);
  return static_cast<int>(c.get_num().get_si());
}

// ---------------------------------------------------------------- NaturalRep

NaturalRep::NaturalRep(const RootDatum& datum) : datum_(datum) {
  for (int a = 0; a < datum.rank(); ++a) pairs_.push_back(pairs_of(datum.simple()[static_cast<std::size_t>(a)]));
}

std::vector<std::pair<int, int>> NaturalRep::pairs_of(const Weight& beta) const {
  std::vector<std::pair<int, int>> out;
  for (int l = 0; l < datum_.N(); ++l)
    for (int r = 0; r < datum_.N(); ++r)
      if (datum_.eps(l) - datum_.eps(r) == beta) out.emplace_back(l, r);
  return out;
}

int NaturalRep::arrow(int l, int r) const {
  for (int a = 0; a < datum_.rank(); ++a)
    for (auto [x, y] : pairs(a))
      if (x == l && y == r) return a;
  return -1;
}

Matrix NaturalRep::e_matrix(int a) const {
  Matrix m(static_cast<std::size_t>(datum_.N()), static_cast<std::size_t>(datum_.N()));
  for (auto [l, r] : pairs(a)) m(static_cast<std::size_t>(l), static_cast<std::size_t>(r)) = Scalar(1);
  return m;
}

Matrix NaturalRep::f_matrix(int a) const {
  Matrix m(static_cast<std::size_t>(datum_.N()), static_cast<std::size_t>(datum_.N()));
  for (auto [l, r] : pairs(a)) m(static_cast<std::size_t>(r), static_cast<std::size_t>(l)) = Scalar(1);
  return m;
}

Matrix NaturalRep::k_matrix(int a) const {
  Matrix m(static_cast<std::size_t>(datum_.N()), static_cast<std::size_t>(datum_.N()));
  for (int i = 0; i < datum_.N(); ++i)
    m(static_cast<std::size_t>(i), static_cast<std::size_t>(i)) =
        q_power(datum_.inner(datum_.eps(i), datum_.simple()[static_cast<std::size_t>(a)]));
  return m;
}

Matrix NaturalRep::kinv_matrix(int a) const {
  Matrix m = k_matrix(a);
  for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = m(i, i).inverse();
  return m;
}

int NaturalRep::word_action(const std::vector<int>& word, int l, bool raising) const {
  int cur = l;
  for (auto it = word.rbegin(); it != word.rend() && cur >= 0; ++it) {
    int next = -1;
    for (auto [x, y] : pairs(*it)) {
      if (raising && y == cur) next = x;
      if (!raising && x == cur) next = y;
    }
    cur = next;
  }
  return cur;
}

// ---------------------------------------------------------------- PosetData

PosetData::PosetData(const NaturalRep& rep) : N_(rep.datum().N()) {
  const auto sz = static_cast<std::size_t>(N_);
  std::vector<std::vector<std::pair<int, int>>> succ(sz);  // (target, label)
  for (int a = 0; a < rep.datum().rank(); ++a)
    for (auto [l, r] : rep.pairs(a)) succ[static_cast<std::size_t>(l)].emplace_back(r, a);
  for (auto& s : succ) std::sort(s.begin(), s.end());

  reach_.assign(sz * sz, 0);
  principal_.assign(sz * sz, {});
  for (int i = 0; i < N_; ++i) {
    // Depth-first, smallest successor first: the first path found to each
    // node is the principal one (type D: through n rather than n').
    std::vector<int> path;
    std::function<void(int)> dfs = [&](int cur) {
      const auto key = static_cast<std::size_t>(i * N_ + cur);
      if (reach_[key]) return;
      reach_[key] = 1;
      principal_[key] = path;
      for (auto [nxt, label] : succ[static_cast<std::size_t>(cur)]) {
        path.push_back(label);
        dfs(nxt);
        path.pop_back();
      }
    };
    dfs(i);
  }
}

const std::vector<int>& PosetData::principal(int i, int j) const {
  if (!leq(i, j)) throw ConsistencyError("principal monomial requested for incomparable pair");
  return principal_[static_cast<std::size_t>(i * N_ + j)];
}

std::vector<std::vector<int>> PosetData::routes(int i, int j) const {
  std::vector<std::vector<int>> out;
  if (!less(i, j)) return out;
  std::vector<int> chain{i};
  std::function<void(int)> extend = [&](int last) {
    out.push_back(chain);
    for (int m = 0; m < N_; ++m) {
      if (less(last, m) && less(m, j)) {
        chain.push_back(m);
        extend(m);
        chain.pop_back();
      }
    }
  };
  extend(i);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> PosetData::interval(int i, int j) const {
  std::vector<int> out;
  for (int k = 0; k < N_; ++k)
    if (leq(i, k) && less(k, j)) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------- SignedPerm

SignedPerm SignedPerm::identity(int n) {
  SignedPerm s;
  for (int i = 0; i < n; ++i) {
    s.perm.push_back(i);
    s.sign.push_back(1);
  }
  return s;
}

bool SignedPerm::is_identity() const {
  for (std::size_t i = 0; i < perm.size(); ++i)
    if (perm[i] != static_cast<int>(i) || sign[i] != 1) return false;
  return true;
}

int SignedPerm::flips() const {
  return static_cast<int>(std::count(sign.begin(), sign.end(), -1));
}

Weight SignedPerm::apply(const Weight& w) const {
  Weight out(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) out[static_cast<std::size_t>(perm[i])] = sign[i] * w[i];
  return out;
}

SignedPerm SignedPerm::compose(const SignedPerm& other) const {
  SignedPerm r;
  for (std::size_t i = 0; i < other.perm.size(); ++i) {
    const auto t = static_cast<std::size_t>(other.perm[i]);
    r.perm.push_back(perm[t]);
    r.sign.push_back(other.sign[i] * sign[t]);
  }
  return r;
}

std::string SignedPerm::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) s += ",";
    s += (sign[i] < 0 ? "-" : "") + std::to_string(perm[i] + 1);
  }
  return s + "]";
}

// ---------------------------------------------------------------- WeightSpec

bool WeightSpec::in_Ik(int i) const { return std::find(Ik.begin(), Ik.end(), i) != Ik.end(); }

Scalar WeightSpec::power(const Weight& mu) const { return lambda_power(mu, torus, lambda1); }

std::string WeightSpec::label() const {
  std::string s = "s=[";
  for (std::size_t i = 0; i < torus.s.size(); ++i) s += (i ? "," : "") + torus.s[i].to_string();
  s += "] lambda1=" + weight_string(lambda1);
  return s;
}

namespace {

bool torus_trivial(const TorusConstants& t, const Weight& root) {
  Coef c(1);
  for (std::size_t i = 0; i < root.size(); ++i) {
    if (sgn(root[i]) == 0) continue;
    c *= pow(t.s[i], 2 * root[i].get_num().get_si());
  }
  return c.is_one();
}

bool reachable_in_k(const RootDatum& datum, const WeightSpec& spec, int i, int j) {
  std::vector<char> seen(static_cast<std::size_t>(datum.N()), 0);
  std::vector<int> stack{i};
  while (!stack.empty()) {
    int l = stack.back();
    stack.pop_back();
    for (int r = 0; r < datum.N(); ++r) {
      if (seen[static_cast<std::size_t>(r)]) continue;
      Weight diff = datum.eps(l) - datum.eps(r);
      if (std::find(spec.Rk.begin(), spec.Rk.end(), diff) == spec.Rk.end()) continue;
      seen[static_cast<std::size_t>(r)] = 1;
      stack.push_back(r);
    }
  }
  return seen[static_cast<std::size_t>(j)] != 0;
}

}  // namespace

bool k_less(const RootDatum& datum, const WeightSpec& spec, int i, int j) {
  return i != j && reachable_in_k(datum, spec, i, j);
}

WeightSpec stabilizer_from_spec(const RootDatum& datum, const TorusConstants& s, const Weight& lambda1,
                                bool validate) {
  const auto n = static_cast<std::size_t>(datum.rank());
  if (s.s.size() != n) throw SpecError("expected " + std::to_string(n) + " torus constants");
  if (lambda1.size() != n) throw SpecError("expected " + std::to_string(n) + " coordinates of lambda1");
  for (const auto& c : s.s)
    if (c.is_zero()) throw RegularityError("torus constant s_i = 0 is not a torus point");
  for (const auto& x : lambda1)
    if (Rational(2 * x).get_den() != 1) throw SpecError("lambda1 coordinates must lie in (1/2)Z");

  WeightSpec spec;
  spec.torus = s;
  spec.lambda1 = lambda1;
  for (const auto& a : datum.positive())
    if (torus_trivial(s, a)) spec.Rk.push_back(a);
  for (const auto& a : spec.Rk) {
    bool decomposable = false;
    for (const auto& b : spec.Rk)
      if (std::find(spec.Rk.begin(), spec.Rk.end(), a - b) != spec.Rk.end()) decomposable = true;
    if (!decomposable) spec.Pik.push_back(a);
  }
  spec.rho_k = Weight(n);
  for (const auto& a : spec.Rk) spec.rho_k = spec.rho_k + a;
  spec.rho_k = Rational(1, 2) * spec.rho_k;

  if (validate) {
    Weight shifted = lambda1 - (spec.rho_k - datum.rho());
    for (const auto& a : spec.Rk) {
      if (sgn(datum.inner(shifted, a)) != 0) {
        throw RegularityError("lambda1 is not in C*_{k,reg}: (lambda1 - rho_k + rho, " + root_string(a) +
                              ") = " + datum.inner(shifted, a).get_str() + " must vanish on R_k");
      }
    }
  }

  for (int i = 0; i < datum.N(); ++i) {
    bool minimal = true;
    for (int l = 0; l < datum.N() && minimal; ++l)
      if (k_less(datum, spec, l, i)) minimal = false;
    if (minimal) spec.Ik.push_back(i);
  }

  bool plus = datum.series() == Series::B, minus = false;
  for (const auto& c : s.s) {
    Coef sq = c * c;
    if (sq.is_one()) plus = true;
    if (sq == Coef(-1)) minus = true;
  }
  spec.pseudo_levi = plus && minus;
  return spec;
}

WeightSpec spec_from_mu_bar(const RootDatum& datum, const TorusConstants& s, const Weight& mu_bar) {
  WeightSpec probe = stabilizer_from_spec(datum, s, mu_bar, false);
  for (const auto& a : probe.Rk)
    if (sgn(datum.inner(mu_bar, a)) != 0)
      throw RegularityError("mu_bar is not orthogonal to R_k (fails on " + root_string(a) + ")");
  return stabilizer_from_spec(datum, s, mu_bar + probe.rho_k - datum.rho());
}

void validate_signed_perm(const RootDatum& datum, const SignedPerm& sigma, bool allow_odd) {
  const auto n = static_cast<std::size_t>(datum.rank());
  if (sigma.perm.size() != n || sigma.sign.size() != n) throw SpecError("signed permutation has wrong length");
  std::vector<int> sorted = sigma.perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < n; ++i)
    if (sorted[i] != static_cast<int>(i)) throw SpecError("not a permutation: " + sigma.to_string());
  for (int x : sigma.sign)
    if (x != 1 && x != -1) throw SpecError("signs must be +1 or -1");
  if (datum.series() == Series::D && !allow_odd && sigma.flips() % 2 != 0)
    throw SpecError("type D Weyl elements need an even number of sign changes: " + sigma.to_string());
}

WeightSpec weyl_shifted(const RootDatum& datum, const SignedPerm& sigma, const WeightSpec& spec, bool allow_odd,
                        bool validate) {
  validate_signed_perm(datum, sigma, allow_odd);
  TorusConstants t;
  t.s.resize(spec.torus.s.size());
  for (std::size_t i = 0; i < sigma.perm.size(); ++i) {
    const Coef& c = spec.torus.s[i];
    t.s[static_cast<std::size_t>(sigma.perm[i])] = sigma.sign[i] > 0 ? c : c.inverse();
  }
  Weight l1 = sigma.apply(spec.lambda1 + datum.rho()) - datum.rho();
  return stabilizer_from_spec(datum, t, l1, validate);
}

// ---------------------------------------------------------------- text

std::string index_name(const RootDatum& datum, int i) {
  if (i < datum.rank() || (datum.series() == Series::B && i == datum.rank())) return std::to_string(i + 1);
  return std::to_string(datum.N() - i) + "'";
}

std::string describe(const RootDatum& datum, const WeightSpec* spec) {
  std::ostringstream os;
  NaturalRep rep(datum);
  PosetData poset(rep);
  os << "algebra " << datum.name() << " N=" << datum.N() << "\n";
  os << "simple roots:";
  for (const auto& a : datum.simple()) os << " " << root_string(a);
  os << "\npositive roots:";
  for (const auto& a : datum.positive()) os << " " << root_string(a);
  os << "\nrho = " << weight_string(datum.rho()) << "\n";
  os << "representation diagram (f-arrows):\n";
  for (int a = 0; a < datum.rank(); ++a) {
    os << "  f" << a + 1 << ":";
    for (auto [l, r] : rep.pairs(a)) os << " w" << index_name(datum, l) << "->w" << index_name(datum, r);
    os << "\n";
  }
  os << "incomparable pairs:";
  bool any = false;
  for (int i = 0; i < datum.N(); ++i)
    for (int j = i + 1; j < datum.N(); ++j)
      if (!poset.leq(i, j)) {
        os << " (" << index_name(datum, i) << "," << index_name(datum, j) << ")";
        any = true;
      }
  os << (any ? "\n" : " none\n");
  if (spec) {
    os << "spec " << spec->label() << "\n";
    os << "R_k+:";
    for (const auto& a : spec->Rk) os << " " << root_string(a);
    os << (spec->Rk.empty() ? " empty\n" : "\n");
    os << "Pi_k+:";
    for (const auto& a : spec->Pik) os << " " << root_string(a);
    os << (spec->Pik.empty() ? " empty\n" : "\n");
    os << "rho_k = " << weight_string(spec->rho_k) << "\n";
    os << "I_k:";
    for (int i : spec->Ik) os << " " << index_name(datum, i);
    os << "\nbar I_k:";
    for (int i = 0; i < datum.N(); ++i)
      if (!spec->in_Ik(i)) os << " " << index_name(datum, i);
    os << "\ntype: " << (spec->generic() ? "generic" : spec->pseudo_levi ? "pseudo-Levi" : "Levi") << "\n";
  }
  return os.str();
}

// ---------------------------------------------------------------- relation suite

namespace {

Matrix word_matrix(const std::vector<int>& word, const std::vector<Matrix>& gens, std::size_t dim) {
  Matrix m = Matrix::identity(dim);
  for (int a : word) m = multiply(m, gens[static_cast<std::size_t>(a)]);
  return m;
}

}  // namespace

CheckList natural_rep_checks(const RootDatum& datum) {
  CheckList out;
  NaturalRep rep(datum);
  const auto N = static_cast<std::size_t>(datum.N());
  const int n = datum.rank();
  std::vector<Matrix> E, F, K, Kinv;
  for (int a = 0; a < n; ++a) {
    E.push_back(rep.e_matrix(a));
    F.push_back(rep.f_matrix(a));
    K.push_back(rep.k_matrix(a));
    Kinv.push_back(rep.kinv_matrix(a));
  }
  const std::string suite = "natrep";
  const std::string tag = datum.name();

  std::string bad;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      Scalar c = q_power(datum.inner(datum.simple()[static_cast<std::size_t>(a)], datum.simple()[static_cast<std::size_t>(b)]));
      Matrix ke = multiply(multiply(K[static_cast<std::size_t>(a)], E[static_cast<std::size_t>(b)]), Kinv[static_cast<std::size_t>(a)]);
      Matrix kf = multiply(multiply(K[static_cast<std::size_t>(a)], F[static_cast<std::size_t>(b)]), Kinv[static_cast<std::size_t>(a)]);
      if (!(ke - E[static_cast<std::size_t>(b)].scaled(c)).is_zero() ||
          !(kf - F[static_cast<std::size_t>(b)].scaled(c.inverse())).is_zero())
        bad += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
    }
  }
  out.push_back(make_check(suite, tag + " cartan-conjugation", "q^{h_a} e_{+-b} q^{-h_a} = q^{+-(a,b)} e_{+-b}", bad.empty()));
  if (!bad.empty()) out.back().with("failing", bad);

  bad.clear();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const auto ua = static_cast<std::size_t>(a), ub = static_cast<std::size_t>(b);
      Matrix comm = multiply(E[ua], F[ub]) - multiply(F[ub], E[ua]);
      if (a == b) comm -= (K[ua] - Kinv[ua]).scaled(datum.d(a).inverse());
      if (!comm.is_zero()) bad += " (" + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
    }
  }
  out.push_back(make_check(suite, tag + " commutator", "[e_a,f_b] = delta_ab [h_a]_q/[(a,a)/2]_q (B: [e_n,f_n]=[h_n]_q)",
                           bad.empty()));
  if (!bad.empty()) out.back().with("failing", bad);

  for (int side = 0; side < 2; ++side) {
    bad.clear();
    const auto& gens = side == 0 ? E : F;
    for (const auto& rel : datum.serre()) {
      Matrix sum(N, N);
      for (const auto& t : rel.terms) sum += word_matrix(t.word, gens, N).scaled(t.coef);
      if (!sum.is_zero()) bad += " (" + std::to_string(rel.a + 1) + "," + std::to_string(rel.b + 1) + ")";
    }
    out.push_back(make_check(suite, tag + (side == 0 ? " serre-raising" : " serre-lowering"), "q-Serre relations",
                             bad.empty()));
    out.back().with("relations", std::to_string(datum.serre().size()));
    if (!bad.empty()) out.back().with("failing", bad);
  }

  bool zero_one = true;
  for (int a = 0; a < n; ++a)
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        const Scalar& x = E[static_cast<std::size_t>(a)](i, j);
        if (!(x.is_zero() || x.is_one())) zero_one = false;
      }
  out.push_back(make_check(suite, tag + " q-independence", "pi(e_a), pi(f_a) are 0/1 matrices", zero_one));
  return out;
}

}  // namespace qgclass
