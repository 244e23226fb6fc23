#include "qgclass/shapovalov.hpp"

#include <algorithm>

namespace qgclass {

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

Scalar q_minus_qinv() { return Scalar::v_power(2) - Scalar::v_power(-2); }

bool proportional(const Vec& a, const Vec& b) {
  Echelon e(a.size());
  e.insert(a);
  return e.contains(b);
}

std::vector<std::pair<int, int>> pairs_of(const RootDatum& D, const Weight& alpha) {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < D.N(); ++i)
    for (int j = 0; j < D.N(); ++j)
      if (D.eps(i) - D.eps(j) == alpha) out.emplace_back(i, j);
  return out;
}

}  // namespace

// ------------------------------------------------------------ RootElements

RootElements::RootElements(const GradedBasis& U, const PosetData& poset) : U_(U), poset_(poset) {
  const RootDatum& D = U.datum();
  for (int i = 0; i < D.N(); ++i)
    for (int j = 0; j < D.N(); ++j)
      if (poset.less(i, j) && D.height(D.eps(i) - D.eps(j)) <= U.cutoff()) build(i, j);
}

const Element& RootElements::f(int i, int j) const {
  auto it = memo_.find({i, j});
  if (it == memo_.end())
    throw ConsistencyError("f_" + std::to_string(i + 1) + "," + std::to_string(j + 1) + " not available at this cutoff");
  return it->second;
}

// Formulas use 1-based indices I < J; x' = N + 1 - x.
const Element& RootElements::build(int i, int j) {
  if (auto it = memo_.find({i, j}); it != memo_.end()) return it->second;
  const RootDatum& D = U_.datum();
  const int n = D.rank();
  const int N = D.N();
  const Series s = D.series();
  const int I = i + 1, J = j + 1;
  auto F = [&](int a, int b) { return build(a - 1, b - 1); };
  auto gen = [&](int k) { return U_.generator(k - 1); };
  auto pr = [&](int x) { return N + 1 - x; };
  const int up = s == Series::B ? n + 1 : n;

  Element out;
  if (J <= up) {
    out = J == I + 1 ? gen(I) : U_.qcommutator(gen(J - 1), F(I, J - 1), 1);
  } else if (I >= pr(up)) {
    const int j0 = pr(I), i0 = pr(J);
    out = j0 == i0 + 1 ? gen(i0) : U_.qcommutator(F(I + 1, J), gen(j0 - 1), 1);
  } else {
    const int j0 = pr(J);
    const int delta = I == j0 ? 1 : 0;
    const Scalar back = q_power(-delta);
    switch (s) {
      case Series::B:
        out = U_.scale(U_.qcommutator(F(n + 1, J), F(I, n + 1), delta), back);
        break;
      case Series::C:
        if (I == n && j0 == n)
          out = U_.scale(gen(n), qnum(4));
        else if (j0 == n)
          out = U_.qcommutator(gen(n), F(I, n), 2);
        else if (I == n)
          out = U_.qcommutator(F(pr(n), J), gen(n), 2);
        else
          out = U_.scale(U_.qcommutator(F(n, J), F(I, n), 1 + delta), back);
        break;
      case Series::D:
        if (I == n && j0 == n) throw ConsistencyError("f_nn' requested in type D");
        if ((I == n - 1 && j0 == n) || (I == n && j0 == n - 1))
          out = gen(n);
        else if (j0 == n)
          out = U_.qcommutator(gen(n), F(I, n - 1), 1);
        else if (I == n)
          out = U_.qcommutator(F(pr(n - 1), J), gen(n), 1);
        else
          out = U_.scale(U_.qcommutator(F(n, J), F(I, n), 1 + delta), back);
        break;
    }
  }
  if (out.weight != D.coords(D.eps(i) - D.eps(j)))
    throw ConsistencyError("root vector f_" + std::to_string(I) + "," + std::to_string(J) + " has the wrong weight");
  return memo_.emplace(std::make_pair(i, j), std::move(out)).first->second;
}

// ------------------------------------------------------------ Shapovalov

Shapovalov::Shapovalov(const RootElements& R, const WeightSpec& spec) : R_(R), spec_(spec) {}

Rational Shapovalov::rho_tilde(int i) const {
  const RootDatum& D = datum();
  return D.inner(D.rho(), D.eps(i)) + D.inner(D.eps(i), D.eps(i)) / 2;
}

Scalar Shapovalov::q_eta(int i, int j) const {
  const RootDatum& D = datum();
  const Weight mu = D.eps(i) - D.eps(j);
  const Rational shift = D.inner(D.rho(), mu) - D.inner(mu, mu) / 2;
  return spec_.power(mu) * q_power(shift);
}

Scalar Shapovalov::eta_bracket(int i, int j) const {
  Scalar x = q_eta(i, j);
  return (x - x.inverse()) / q_minus_qinv();
}

Scalar Shapovalov::A(int m, int j) const {
  Scalar x = q_eta(m, j);
  Scalar den = x * x - Scalar(1);
  if (den.is_zero())
    throw RegularityError("A^" + index_name(datum(), j) + "_" + index_name(datum(), m) + " has a pole at " +
                          spec_.label());
  return -q_minus_qinv() / den;
}

Scalar Shapovalov::normalizer(int i, int j) const { return q_eta(i, j) * q_power(rho_tilde(j) - rho_tilde(i)); }

namespace {

Element route_product(const RootElements& R, const std::vector<int>& route, int j) {
  Element x = R.f(route[0], route.size() > 1 ? route[1] : j);
  for (std::size_t t = 1; t < route.size(); ++t)
    x = R.algebra().multiply(x, R.f(route[t], t + 1 < route.size() ? route[t + 1] : j));
  return x;
}

}  // namespace

Element Shapovalov::fhat(int i, int j) const {
  if (i == j) return R_.algebra().unit();
  const PosetData& P = R_.poset();
  if (!P.less(i, j)) throw ConsistencyError("fhat_ij needs i < j");
  const Scalar norm = normalizer(i, j);
  Element out{datum().coords(datum().eps(i) - datum().eps(j)), {}};
  for (const auto& route : P.routes(i, j)) {
    Scalar c = norm;
    for (int m : route) c *= A(m, j);
    Element x = route_product(R_, route, j);
    if (out.coords.empty()) out.coords.assign(x.coords.size(), Scalar());
    axpy(out.coords, c, x.coords);
  }
  return out;
}

Element Shapovalov::fcheck(int i, int j) const {
  if (i == j) return R_.algebra().unit();
  const PosetData& P = R_.poset();
  if (!P.less(i, j)) throw ConsistencyError("fcheck_ij needs i < j");
  const Scalar norm = normalizer(i, j);
  const auto interval = P.interval(i, j);
  Element out{datum().coords(datum().eps(i) - datum().eps(j)), {}};
  for (const auto& route : P.routes(i, j)) {
    Scalar c = norm;
    for (int k : interval) {
      if (std::find(route.begin(), route.end(), k) != route.end())
        c *= -q_eta(k, j).inverse();
      else
        c *= eta_bracket(k, j);
    }
    Element x = route_product(R_, route, j);
    if (out.coords.empty()) out.coords.assign(x.coords.size(), Scalar());
    axpy(out.coords, c, x.coords);
  }
  return out;
}

std::vector<std::pair<std::vector<int>, Scalar>> Shapovalov::corrections(int i, int j) const {
  std::vector<std::pair<std::vector<int>, Scalar>> out;
  const Scalar lead = -q_power(rho_tilde(j) - rho_tilde(i));
  for (const auto& route : R_.poset().routes(i, j)) {
    if (route.size() < 2) continue;
    Scalar c = lead;
    for (std::size_t t = 1; t < route.size(); ++t) c *= A(route[t], j);
    out.emplace_back(route, std::move(c));
  }
  return out;
}

// ------------------------------------------------------------ quotients

std::vector<SingularGenerator> singular_generators(const Shapovalov& S, int max_height) {
  const RootDatum& D = S.datum();
  std::vector<SingularGenerator> out;
  for (const auto& alpha : S.spec().Pik) {
    if (D.height(alpha) > max_height) continue;
    const auto pairs = pairs_of(D, alpha);
    bool found = false;
    for (std::size_t p = 0; p < pairs.size() && !found; ++p) {
      auto [i, j] = pairs[p];
      if (!S.roots().poset().less(i, j)) continue;
      Element x = S.fcheck(i, j);
      auto lead = std::find_if(x.coords.begin(), x.coords.end(), [](const Scalar& c) { return !c.is_zero(); });
      if (lead == x.coords.end()) continue;
      x.coords = scaled(x.coords, lead->inverse());
      out.push_back({alpha, i, j, p > 0, std::move(x)});
      found = true;
    }
    if (!found)
      throw DegenerateSingularVector("fcheck vanishes for every pair of root " + weight_string(alpha) + " at " +
                                     S.spec().label());
  }
  return out;
}

VermaModule parabolic_module(const GradedBasis& U, const Shapovalov& S, int depth, Exec exec) {
  if (S.spec().generic()) return VermaModule(U, S.spec(), depth, nullptr, exec);
  std::vector<Element> gens;
  for (auto& g : singular_generators(S, depth)) gens.push_back(std::move(g.vec));
  return VermaModule(U, S.spec(), depth, &gens, exec);
}

// ------------------------------------------------------------ checks

CheckList shapovalov_checks(const Shapovalov& S, const VermaModule& M, const TensorSpace* T, const std::string& tag) {
  CheckList out;
  const std::string suite = "shapovalov";
  const RootDatum& D = S.datum();
  const PosetData& P = S.roots().poset();
  const WeightSpec& spec = S.spec();
  const int N = D.N();
  const int depth = M.depth();
  if (M.is_quotient()) throw ConsistencyError("shapovalov checks run on M_lambda");

  auto fits = [&](int i, int j) { return D.height(D.eps(i) - D.eps(j)) <= depth; };
  auto comp_of = [&](int i, int j) { return M.find(D.coords(D.eps(i) - D.eps(j))); };

  if (T && spec.generic()) {
    std::string bad;
    int tested = 0;
    try {
      for (int j = 0; j < N; ++j) {
        const int bj = T->block_of_index(j);
        if (bj < 0 || T->block(bj).height > depth) continue;
        Vec col(T->block(bj).dim);
        for (const auto& part : T->block(bj).parts) {
          if (!P.leq(part.m, j)) continue;
          axpy(col, Scalar(1), T->embed(bj, part.m, S.fhat(part.m, j).coords));
        }
        ++tested;
        for (int a = 0; a < D.rank(); ++a)
          if (T->down(bj, a) >= 0 && !is_zero(matvec(T->dE(bj, a), col))) {
            bad += " " + index_name(D, j) + "/e" + std::to_string(a + 1);
          }
      }
      out.push_back(make_check(suite, tag + " singular-columns", "sum_i w_i (x) fhat_ij v_lambda is singular", bad.empty()));
      out.back().with("columns", std::to_string(tested));
      if (!bad.empty()) out.back().with("failing", bad);
    } catch (const RegularityError& e) {
      out.push_back(make_check(suite, tag + " singular-columns", "sum_i w_i (x) fhat_ij v_lambda is singular", false));
      out.back().with("error", e.what());
    }
  }

  {
    // The bracket factor is prod [eta_kj] over k in [i,j) minus [r,j); it is
    // the single [eta_ij] except at the type D fork, where n' also drops out.
    const NaturalRep rep(D);
    std::string bad, literal;
    int tested = 0;
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        if (!P.less(i, j) || !fits(i, j)) continue;
        const int idx = comp_of(i, j);
        const Vec x = S.fcheck(i, j).coords;
        for (int a = 0; a < D.rank(); ++a) {
          const int sub = M.below(idx, a);
          if (sub < 0) continue;
          const Vec lhs = matvec(M.E(idx, a), x);
          Vec rhs(M.dim(sub)), rhs_literal(M.dim(sub));
          for (const auto& [l, r] : rep.pairs(a)) {
            if (l != i || !P.leq(r, j)) continue;
            const Weight& alpha = D.simple()[uz(a)];
            const Scalar c = -q_power(-D.inner(alpha, D.eps(i)));
            Scalar factor(1);
            for (int k : P.interval(i, j))
              if (!P.leq(r, k) || k == j) factor *= S.eta_bracket(k, j);
            const Vec f = S.fcheck(r, j).coords;
            axpy(rhs, c * factor, f);
            axpy(rhs_literal, c * S.eta_bracket(i, j), f);
          }
          ++tested;
          Vec d = lhs, dl = lhs;
          axpy(d, Scalar(-1), rhs);
          axpy(dl, Scalar(-1), rhs_literal);
          const std::string where = " (" + index_name(D, i) + "," + index_name(D, j) + ";e" + std::to_string(a + 1) + ")";
          if (!is_zero(d)) bad += where;
          if (!is_zero(dl)) literal += where;
        }
      }
    }
    out.push_back(make_check(suite, tag + " e-on-f", "e_a fcheck_ij v = -q^{-(a,eps_i)} prod[eta_kj] fcheck_rj v", bad.empty()));
    out.back().with("instances", std::to_string(tested));
    if (!bad.empty()) out.back().with("failing", bad);
    CheckRecord r = make_check(suite, tag + " e-on-f-single-bracket", "same with the factor [eta_ij] alone", true);
    if (!literal.empty()) r.status = Status::flagged;
    if (!literal.empty()) r.with("differs", literal);
    out.push_back(std::move(r));
  }

  if (!spec.generic()) {
    try {
      const auto gens = singular_generators(S, depth);
      for (const auto& g : gens) {
        bool ok = true;
        std::string why;
        try {
          verify_singular(M, g.vec);
        } catch (const DegenerateSingularVector& e) {
          ok = false;
          why = e.what();
        }
        out.push_back(make_check(suite, tag + " singular " + weight_string(g.alpha), "fcheck_ij v_lambda is singular", ok));
        out.back().with("pair", index_name(D, g.i) + "," + index_name(D, g.j));
        out.back().with("fallback", g.fallback ? "yes" : "no");
        if (!ok) out.back().with("error", why);
      }
    } catch (const DegenerateSingularVector& e) {
      out.push_back(make_check(suite, tag + " singular", "fcheck_ij v_lambda is singular", false));
      out.back().with("error", e.what());
    }

    for (const auto& alpha : spec.Pik) {
      std::string bad, element;
      int count = 0;
      for (auto [i, j] : pairs_of(D, alpha)) {
        if (!P.less(i, j)) continue;
        const std::string where = index_name(D, i) + "," + index_name(D, j);
        try {
          const auto corr = S.corrections(i, j);
          Vec sum;
          for (const auto& [route, c] : corr) {
            ++count;
            try {
              if (!evaluate_at(c, Coef(1)).is_zero()) bad += " nonzero@" + where;
            } catch (const PoleError&) {
              bad += " pole@" + where;
            }
            if (D.height(alpha) > S.roots().algebra().cutoff()) continue;
            const Element x = route_product(S.roots(), route, j);
            if (sum.empty()) sum.assign(x.coords.size(), Scalar());
            axpy(sum, c, x.coords);
          }
          std::string lim = "0";
          try {
            for (const auto& c : sum)
              if (!evaluate_at(c, Coef(1)).is_zero()) lim = "nonzero";
          } catch (const PoleError&) {
            lim = "pole";
          }
          if (sum.empty() && !corr.empty()) lim = "beyond-cutoff";
          element += " " + where + ":" + lim;
        } catch (const RegularityError&) {
          bad += " singular-A@" + where;
          element += " " + where + ":undefined";
        }
      }
      out.push_back(make_check(suite, tag + " classical-limit " + weight_string(alpha),
                               "route corrections vanish at q = 1 with nonzero denominators", bad.empty()));
      out.back().with("corrections", std::to_string(count));
      out.back().with("correction_sum_at_1", element.empty() ? "none" : element);
      if (!bad.empty()) out.back().with("failing", bad);
    }

    for (const auto& alpha : spec.Pik) {
      if (D.height(alpha) > depth) continue;
      const auto pairs = pairs_of(D, alpha);
      if (pairs.size() != 2) continue;
      auto [i, j] = pairs[0];
      if (i == D.prime(j)) continue;
      const Vec a = S.fcheck(i, j).coords;
      const Vec b = S.fcheck(D.prime(j), D.prime(i)).coords;
      const bool ok = is_zero(a) || is_zero(b) || (proportional(a, b) && proportional(b, a));
      CheckRecord r = make_check(suite, tag + " mirror " + weight_string(alpha), "fcheck_ij v ~ fcheck_j'i' v", true);
      if (!ok) r.status = Status::flagged;
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace qgclass
