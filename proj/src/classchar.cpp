#include "qgclass/classchar.hpp"

#include <algorithm>
#include <numeric>

namespace qgclass {

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

Scalar antisym(const Scalar& x) { return x - x.inverse(); }

// q^{(lambda + rho + shift, alpha)}
Scalar shifted_power(const RootDatum& D, const WeightSpec& spec, const Weight& shift, const Weight& alpha) {
  return spec.power(alpha) * q_power(D.inner(D.rho() + shift, alpha));
}

std::vector<std::string> x_multiset(const RootDatum& D, const WeightSpec& spec) {
  std::vector<std::string> out;
  for (int i : spec.Ik) out.push_back(eigenvalue_x(D, spec, i).to_string());
  std::sort(out.begin(), out.end());
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
  return s;
}

Scalar trace_weight(const RootDatum& D, int j) { return q_power(2 * D.inner(D.rho(), D.eps(j))); }

bool has_lowered(const VermaModule& M) {
  const RootDatum& D = M.datum();
  for (int a = 0; a < D.rank(); ++a) {
    RootCoords c(uz(D.rank()), 0);
    c[uz(a)] = 1;
    const int comp = M.find(c);
    if (comp >= 0 && M.dim(comp) > 0) return true;
  }
  return false;
}

Vec apply_power(const QOperator& Q, int idx, Vec v, int k) {
  if (!Q.has(idx)) throw ConsistencyError("Q is not built on the block of a trace vector");
  for (int t = 0; t < k; ++t) v = matvec(Q.block(idx), v);
  return v;
}

}  // namespace

CharacterValue chi_tau_formula(const RootDatum& D, const WeightSpec& spec, int k) {
  const Weight zero(uz(D.rank()));
  std::vector<Scalar> den;
  for (const auto& a : D.positive()) {
    Scalar d = antisym(shifted_power(D, spec, zero, a));
    if (d.is_zero()) throw RegularityError("lambda + rho lies on the wall of " + weight_string(a));
    den.push_back(std::move(d));
  }
  Scalar sum;
  for (int i = 0; i < D.N(); ++i) {
    Scalar term = eigenvalue_x(D, spec, i).pow(k);
    for (std::size_t r = 0; r < den.size() && !term.is_zero(); ++r)
      term *= antisym(shifted_power(D, spec, D.eps(i), D.positive()[r])) / den[r];
    sum += term;
  }
  return {k, sum, "formula"};
}

CharacterValue chi_tau_operator(const QOperator& Q, int k) {
  const TensorSpace& T = Q.space();
  const RootDatum& D = T.module().datum();
  Scalar sum;
  for (int j = 0; j < D.N(); ++j) {
    const int b = T.block_of_index(j);
    if (b < 0) throw ConsistencyError("trace vector w_" + index_name(D, j) + " beyond module depth");
    const Vec y = apply_power(Q, b, T.generator(j), k);
    sum += trace_weight(D, j) * y[T.part(b, j)->offset];
  }
  return {k, sum, "operator"};
}

CharacterValue chi_tau_operator_lowered(const QOperator& Q, int k) {
  const TensorSpace& T = Q.space();
  const VermaModule& M = T.module();
  const RootDatum& D = M.datum();
  int a = 0;
  int comp = -1;
  for (; a < D.rank(); ++a) {
    RootCoords c(uz(D.rank()), 0);
    c[uz(a)] = 1;
    comp = M.find(c);
    if (comp >= 0 && M.dim(comp) > 0) break;
  }
  if (a == D.rank()) throw ConsistencyError("no lowered vector f_a v survives");
  Scalar sum;
  for (int j = 0; j < D.N(); ++j) {
    RootCoords delta = T.delta_of_index(j);
    delta[uz(a)] += 1;
    const int b = T.find(delta);
    if (b < 0) throw ConsistencyError("lowered trace vector beyond module depth");
    const auto* p = T.part(b, j);
    Vec x(p->dim);
    x[0] = Scalar(1);
    if (p->dim != 1) throw ConsistencyError("lowered trace vector is not one-dimensional");
    const Vec y = apply_power(Q, b, T.embed(b, j, x), k);
    sum += trace_weight(D, j) * y[p->offset];
  }
  return {k, sum, "operator"};
}

CharacterValue chi_tau_minus_formula(const RootDatum& D, const WeightSpec& spec) {
  if (D.series() != Series::D) throw SpecError("tau^- exists in series D only");
  Scalar prod(1);
  for (int i = 0; i < D.rank(); ++i) {
    const Weight e = D.eps(i);
    prod *= antisym(spec.power(Rational(2) * e) * q_power(2 * D.inner(D.rho(), e)));
  }
  return {-1, prod, "formula"};
}

namespace {

bool keeps_positive(const RootDatum& D, const WeightSpec& spec, const SignedPerm& s) {
  const auto& pos = D.positive();
  for (const auto& a : spec.Rk)
    if (std::find(pos.begin(), pos.end(), s.apply(a)) == pos.end()) return false;
  return true;
}

}  // namespace

// sigma keeping R_k^+ positive come first; their images are again normalized
// specs. The rest are usable when the formula is defined at the image.
std::vector<SignedPerm> weyl_samples(const RootDatum& D, const WeightSpec& spec, std::size_t count) {
  const int n = D.rank();
  std::vector<SignedPerm> out;
  for (int pass = 0; pass < 2 && out.size() < count; ++pass) {
    std::vector<int> perm(uz(n));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1u << n) && out.size() < count; ++mask) {
        SignedPerm s;
        s.perm = perm;
        for (int i = 0; i < n; ++i) s.sign.push_back((mask >> i) & 1u ? -1 : 1);
        if (s.is_identity()) continue;
        try {
          validate_signed_perm(D, s);
        } catch (const SpecError&) {
          continue;
        }
        if (keeps_positive(D, spec, s) != (pass == 0)) continue;
        if (pass == 1) {
          try {
            chi_tau_formula(D, weyl_shifted(D, s, spec, false, false), 1);
          } catch (const RegularityError&) {
            continue;
          }
        }
        out.push_back(std::move(s));
      }
    } while (out.size() < count && std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

CheckList weyl_orbit_compare(const RootDatum& D, const WeightSpec& spec, const SignedPerm& sigma, int kmax,
                             const std::string& tag) {
  const bool normalized = keeps_positive(D, spec, sigma);
  const WeightSpec image = weyl_shifted(D, sigma, spec, false, normalized);
  CheckList out;
  const std::string name = tag + " sigma=" + sigma.to_string();
  for (int k = 1; k <= kmax; ++k) {
    const Scalar a = chi_tau_formula(D, spec, k).value, b = chi_tau_formula(D, image, k).value;
    out.push_back(make_check("weyl", name + " chi k=" + std::to_string(k), "chi(tau_k) is independent of the orbit point", a == b)
                      .with("value", a.to_string())
                      .with("image_value", b.to_string()));
  }
  if (!normalized) {
    CheckRecord r = make_check("weyl", name + " eigenvalues", "{x_i : i in I_k} is independent of the orbit point", true);
    r.status = Status::skipped;
    out.push_back(r.with("image", image.label()).with("reason", "the image moves R_k^+ out of R^+, so lambda1 is not normalized"));
    return out;
  }
  const auto xa = x_multiset(D, spec), xb = x_multiset(D, image);
  out.push_back(make_check("weyl", name + " eigenvalues", "{x_i : i in I_k} is independent of the orbit point", xa == xb)
                    .with("image", image.label())
                    .with("x", join(xa))
                    .with("image_x", join(xb)));
  return out;
}

CheckList character_checks(const QOperator& Q, int kmax, const std::string& tag) {
  const auto& M = Q.space().module();
  CheckList out;
  for (int k = 0; k <= kmax; ++k) {
    const Scalar op = chi_tau_operator(Q, k).value;
    if (k == 0) {
      Scalar qdim;
      for (int j = 0; j < M.datum().N(); ++j) qdim += trace_weight(M.datum(), j);
      out.push_back(make_check("character", tag + " qdim", "Tr_q(id) is the q-dimension of C^N", op == qdim)
                        .with("value", op.to_string()));
      continue;
    }
    const Scalar f = chi_tau_formula(M.datum(), M.spec(), k).value;
    out.push_back(make_check("character", tag + " tau k=" + std::to_string(k), "operator q-trace equals the closed formula", op == f)
                      .with("operator", op.to_string())
                      .with("formula", f.to_string()));
    if (!has_lowered(M)) {
      CheckRecord r = make_check("character", tag + " central k=" + std::to_string(k), "the q-trace acts by the same scalar on f_a v", true);
      r.status = Status::skipped;
      out.push_back(r.with("reason", "the module is one-dimensional"));
      continue;
    }
    const Scalar low = chi_tau_operator_lowered(Q, k).value;
    out.push_back(make_check("character", tag + " central k=" + std::to_string(k), "the q-trace acts by the same scalar on f_a v", low == op)
                      .with("lowered", low.to_string()));
  }
  return out;
}

CheckList tau_minus_checks(const RootDatum& D, const WeightSpec& spec, const std::string& tag) {
  const Scalar base = chi_tau_minus_formula(D, spec).value;
  const int n = D.rank();
  CheckList out;
  std::size_t bad_odd = 0, bad_even = 0;
  for (int i = 0; i < n; ++i) {
    SignedPerm s = SignedPerm::identity(n);
    s.sign[uz(i)] = -1;
    const Scalar v = chi_tau_minus_formula(D, weyl_shifted(D, s, spec, true, false)).value;
    if (!(v == -base)) ++bad_odd;
    for (int j = i + 1; j < n; ++j) {
      SignedPerm t = s;
      t.sign[uz(j)] = -1;
      const Scalar w = chi_tau_minus_formula(D, weyl_shifted(D, t, spec, false, false)).value;
      if (!(w == base)) ++bad_even;
    }
  }
  out.push_back(make_check("character", tag + " tau-minus odd", "one eps_i inversion negates chi(tau^-)", bad_odd == 0)
                    .with("value", base.to_string())
                    .with("violations", std::to_string(bad_odd)));
  out.push_back(make_check("character", tag + " tau-minus even", "two inversions fix chi(tau^-)", bad_even == 0)
                    .with("violations", std::to_string(bad_even)));
  return out;
}

}  // namespace qgclass
