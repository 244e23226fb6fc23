#include "qgclass/qoperator.hpp"

#include <algorithm>

namespace qgclass {

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

using Memo = std::map<std::pair<Word, Word>, Scalar>;

Scalar pairing_rec(const RootDatum& D, const QConvention& c, const Word& y, const Word& x, Memo& memo) {
  if (y.size() != x.size()) return Scalar(0);
  if (y.empty()) return Scalar(1);
  const auto key = std::make_pair(y, x);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int a = c.strip_last ? y.back() : y.front();
  const Word rest = c.strip_last ? Word(y.begin(), y.end() - 1) : Word(y.begin() + 1, y.end());
  const Weight& alpha = D.simple()[uz(a)];
  Scalar sum;
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x[t] != a) continue;
    Rational e = 0;
    for (std::size_t u = 0; u < x.size(); ++u)
      if (c.after ? u > t : u < t) e += D.inner(alpha, D.simple()[uz(x[u])]);
    Word shorter = x;
    shorter.erase(shorter.begin() + static_cast<std::ptrdiff_t>(t));
    const Scalar sub = pairing_rec(D, c, rest, shorter, memo);
    if (!sub.is_zero()) sum += q_power(c.twist * e) * sub;
  }
  sum *= Scalar(c.c_sign) / D.d(a);
  memo.emplace(key, sum);
  return sum;
}

// Action of a raising word on module component comp, as a matrix, or
// out = -1 when the word leaves the cone.
Matrix raise_matrix(const VermaModule& M, const Word& w, int comp, int& out) {
  Matrix m = Matrix::identity(M.dim(comp));
  int cur = comp;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int next = M.below(cur, *it);
    if (next < 0) {
      out = -1;
      return {};
    }
    m = multiply_serial(M.E(cur, *it), m);
    cur = next;
  }
  out = cur;
  return m;
}

Matrix lower_matrix(const VermaModule& M, const Word& w, int comp, int& out) {
  Matrix m = Matrix::identity(M.dim(comp));
  int cur = comp;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int next = M.above(cur, *it);
    if (next < 0) throw ConsistencyError("lowering beyond module depth");
    m = multiply_serial(M.F(next, *it), m);
    cur = next;
  }
  out = cur;
  return m;
}

void add_block(Matrix& dst, std::size_t r0, std::size_t c0, const Matrix& src, const Scalar& c) {
  for (std::size_t i = 0; i < src.rows(); ++i)
    for (std::size_t j = 0; j < src.cols(); ++j)
      if (!src(i, j).is_zero()) dst(r0 + i, c0 + j) += c * src(i, j);
}

// Cartan factor on w_m (x) M[comp].
Scalar cartan_factor(const VermaModule& M, const QConvention& c, int m, int comp) {
  return M.cartan(comp, M.datum().eps(m)).pow(c.cartan_sign);
}

// (pi (x) id) of the canonical element times the Cartan factor.  transposed
// selects R_21: raising on C^N, lowering on M.
Matrix r_block(const TensorSpace& T, const PairingTable& P, const QConvention& c, int idx, bool transposed) {
  const VermaModule& M = T.module();
  const GradedBasis& U = M.algebra();
  const auto& blk = T.block(idx);
  Matrix out(blk.dim, blk.dim);
  for (const auto& p : blk.parts) {
    const Scalar in = c.cartan_left ? Scalar(1) : cartan_factor(M, c, p.m, p.comp);
    // identity term
    {
      const Scalar f = c.cartan_left ? cartan_factor(M, c, p.m, p.comp) : in;
      for (std::size_t k = 0; k < p.dim; ++k) out(p.offset + k, p.offset + k) += f;
    }
    for (const auto& e : P.entries()) {
      const auto& words = U.comp(uz(e.comp)).basis;
      const std::size_t n = words.size();
      if (!transposed) {
        // y_k on C^N (lowering), x_l on M (raising)
        std::vector<Matrix> X(n);
        std::vector<int> xo(n, -1);
        bool any = false;
        for (std::size_t l = 0; l < n; ++l) {
          X[l] = raise_matrix(M, words[l], p.comp, xo[l]);
          any = any || xo[l] >= 0;
        }
        if (!any) continue;
        for (std::size_t k = 0; k < n; ++k) {
          const int m2 = T.rep().word_action(words[k], p.m, false);
          if (m2 < 0) continue;
          for (std::size_t l = 0; l < n; ++l) {
            if (xo[l] < 0 || e.inverse(l, k).is_zero()) continue;
            const auto* q = T.part(idx, m2);
            if (!q || q->comp != xo[l]) throw ConsistencyError("R term left its weight block");
            Scalar f = e.inverse(l, k) * in;
            if (c.cartan_left) f *= cartan_factor(M, c, m2, q->comp);
            add_block(out, q->offset, p.offset, X[l], f);
          }
        }
      } else {
        // x_l on C^N (raising), y_k on M (lowering)
        std::vector<int> m2(n);
        bool any = false;
        for (std::size_t l = 0; l < n; ++l) {
          m2[l] = T.rep().word_action(words[l], p.m, true);
          any = any || m2[l] >= 0;
        }
        if (!any) continue;
        for (std::size_t k = 0; k < n; ++k) {
          Matrix Y;
          int yo = -1;
          for (std::size_t l = 0; l < n; ++l) {
            if (m2[l] < 0 || e.inverse(l, k).is_zero()) continue;
            if (yo < 0) Y = lower_matrix(M, words[k], p.comp, yo);
            const auto* q = T.part(idx, m2[l]);
            if (!q || q->comp != yo) throw ConsistencyError("R_21 term left its weight block");
            Scalar f = e.inverse(l, k) * in;
            if (c.cartan_left) f *= cartan_factor(M, c, m2[l], q->comp);
            add_block(out, q->offset, p.offset, Y, f);
          }
        }
      }
    }
  }
  return out;
}

template <class Body>
void for_blocks(std::size_t count, Exec exec, Body body) {
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

// Number of blocks of height <= h (blocks are sorted by height).
std::size_t blocks_upto(const TensorSpace& T, int h) {
  std::size_t n = 0;
  while (n < T.size() && T.block(static_cast<int>(n)).height <= h) ++n;
  return n;
}

bool commutes(const Matrix& left_after, const Matrix& act_before, const Matrix& act_after, const Matrix& right_before) {
  // left_after * act_before == act_after * right_before
  return multiply_serial(left_after, act_before) == multiply_serial(act_after, right_before);
}

std::vector<int> eigen_indices(const TensorSpace& T) {
  const auto& M = T.module();
  std::vector<int> out;
  for (int j = 0; j < M.datum().N(); ++j)
    if (!M.is_quotient() || M.spec().in_Ik(j)) out.push_back(j);
  return out;
}

}  // namespace

std::string QConvention::to_string() const {
  return std::string("strip=") + (strip_last ? "last" : "first") + " twist=" + (twist > 0 ? "+" : "-") +
         " side=" + (after ? "after" : "before") + " c=" + (c_sign > 0 ? "+" : "-") + "1/d cartan=" +
         (cartan_sign > 0 ? "+" : "-") + (cartan_left ? "left" : "right");
}

std::vector<QConvention> q_conventions() {
  std::vector<QConvention> out;
  for (int cs : {1, -1})
    for (bool left : {true, false})
      for (int sign : {1, -1})
        for (int tw : {-1, 1})
          for (bool last : {true, false})
            for (bool after : {true, false}) out.push_back({last, tw, after, sign, cs, left});
  return out;
}

int pairing_height(const RootDatum& D) {
  int h = 0;
  for (int l = 0; l < D.N(); ++l)
    for (int r = 0; r < D.N(); ++r)
      if (D.in_cone(D.eps(l) - D.eps(r))) h = std::max(h, D.height(D.eps(l) - D.eps(r)));
  return h;
}

Scalar hopf_pairing(const RootDatum& D, const QConvention& c, const Word& y, const Word& x) {
  Memo memo;
  return pairing_rec(D, c, y, x, memo);
}

PairingTable::PairingTable(const GradedBasis& U, const NaturalRep& rep, const QConvention& c) {
  const RootDatum& D = U.datum();
  std::vector<RootCoords> seen;
  for (int l = 0; l < D.N(); ++l)
    for (int r = 0; r < D.N(); ++r) {
      const Weight mu = D.eps(l) - D.eps(r);
      if (l == r || !D.in_cone(mu)) continue;
      const RootCoords coords = D.coords(mu);
      if (std::find(seen.begin(), seen.end(), coords) != seen.end()) continue;
      seen.push_back(coords);
    }
  (void)rep;
  std::sort(seen.begin(), seen.end());
  Memo memo;
  for (const auto& mu : seen) {
    Entry e;
    e.mu = mu;
    e.comp = U.find(mu);
    const auto& words = U.comp(uz(e.comp)).basis;
    e.gram = Matrix(words.size(), words.size());
    for (std::size_t k = 0; k < words.size(); ++k)
      for (std::size_t l = 0; l < words.size(); ++l) e.gram(k, l) = pairing_rec(D, c, words[k], words[l], memo);
    if (rank(e.gram) != words.size()) throw ConsistencyError("degenerate Hopf pairing at weight of height " + std::to_string(U.comp(uz(e.comp)).height));
    e.inverse = inverse(e.gram);
    entries_.push_back(std::move(e));
  }
}

QOperator::QOperator(const TensorSpace& T, const QConvention& c, int max_height, Exec exec)
    : T_(T), conv_(c), max_height_(max_height) {
  const PairingTable P(T.module().algebra(), T.rep(), c);
  const std::size_t n = blocks_upto(T, max_height);
  R_.resize(T.size());
  R21_.resize(T.size());
  Q_.resize(T.size());
  for_blocks(n, exec, [&](std::size_t i) {
    const int idx = static_cast<int>(i);
    R_[i] = r_block(T, P, c, idx, false);
    R21_[i] = r_block(T, P, c, idx, true);
    Q_[i] = exec == Exec::parallel ? multiply(R21_[i], R_[i]) : multiply_serial(R21_[i], R_[i]);
  });
}

Scalar eigenvalue_x(const RootDatum& D, const WeightSpec& spec, int j) {
  const Weight& rho = D.rho();
  const Weight e1 = D.eps(0), ej = D.eps(j);
  const Rational ex = 2 * D.inner(rho, ej) - 2 * D.inner(rho, e1) + D.inner(ej, ej) - D.inner(e1, e1);
  return spec.power(Rational(2) * ej) * q_power(ex);
}

bool convention_passes(const QOperator& Q, int height) {
  const TensorSpace& T = Q.space();
  const auto& M = T.module();
  const int n = M.datum().rank();
  const std::size_t count = blocks_upto(T, height);
  for (std::size_t i = 0; i < count; ++i) {
    const int idx = static_cast<int>(i);
    for (int a = 0; a < n; ++a) {
      const int lo = T.down(idx, a);
      if (lo >= 0) {
        const Matrix e = T.dE(idx, a), eo = T.dE_op(idx, a);
        if (!commutes(Q.r(lo), e, eo, Q.r(idx))) return false;
        if (!commutes(Q.r21(lo), eo, e, Q.r21(idx))) return false;
      }
      const int hi = T.up(idx, a);
      if (hi >= 0 && T.block(hi).height <= height) {
        const Matrix f = T.dF(idx, a), fo = T.dF_op(idx, a);
        if (!commutes(Q.r(hi), f, fo, Q.r(idx))) return false;
        if (!commutes(Q.r21(hi), fo, f, Q.r21(idx))) return false;
      }
    }
  }
  for (int j = 0; j < M.datum().N(); ++j) {
    const int b = T.block_of_index(j);
    if (b < 0 || T.block(b).height > height) continue;
    const Vec y = matvec(Q.block(b), T.generator(j));
    const std::size_t at = T.part(b, j)->offset;
    if (!(y[at] == M.spec().power(Rational(2) * M.datum().eps(j)))) return false;
    if (j == 0 && !(scaled(T.generator(0), y[at]) == y)) return false;
  }
  return true;
}

QOperator build_Q(const TensorSpace& T, int D, Exec exec) {
  const int top = T.module().depth();
  if (top < D + 1) throw ConsistencyError("build_Q needs the module one level beyond the interior depth");
  const int probe = std::min(3, top);
  for (const auto& c : q_conventions()) {
    {
      const QOperator small(T, c, probe, exec);
      if (!convention_passes(small, probe)) continue;
    }
    QOperator Q(T, c, top, exec);
    if (all_passed(q_intertwining_checks(Q, D, "select"))) return Q;
  }
  throw ConsistencyError("no R-matrix convention yields an intertwiner");
}

CheckList q_intertwining_checks(const QOperator& Q, int D, const std::string& tag) {
  const TensorSpace& T = Q.space();
  const int n = T.module().datum().rank();
  const std::size_t count = blocks_upto(T, D);
  CheckList out;
  for (int a = 0; a < n; ++a) {
    std::size_t bad_e = 0, bad_f = 0, tested = 0;
    std::string first;
    for (std::size_t i = 0; i < count; ++i) {
      const int idx = static_cast<int>(i);
      const int lo = T.down(idx, a), hi = T.up(idx, a);
      if (lo >= 0 && !commutes(Q.block(lo), T.dE(idx, a), T.dE(idx, a), Q.block(idx))) {
        if (first.empty()) first = "e at height " + std::to_string(T.block(idx).height);
        ++bad_e;
      }
      if (hi >= 0 && Q.has(hi) && !commutes(Q.block(hi), T.dF(idx, a), T.dF(idx, a), Q.block(idx))) {
        if (first.empty()) first = "f at height " + std::to_string(T.block(idx).height);
        ++bad_f;
      }
      ++tested;
    }
    auto r = make_check("qop", tag + " intertwining a=" + std::to_string(a + 1), "Q commutes with Delta(e_a), Delta(f_a)",
                        bad_e + bad_f == 0);
    r.with("blocks", std::to_string(tested)).with("nonzero_residues", std::to_string(bad_e + bad_f));
    if (!first.empty()) r.with("first_failure", first);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Matrix> commutant_oracle(const TensorSpace& T, int D) {
  const auto& M = T.module();
  const int n = M.datum().rank();
  const std::size_t count = blocks_upto(T, D);
  std::vector<std::size_t> off(count + 1, 0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = T.block(static_cast<int>(i)).dim;
    off[i + 1] = off[i] + d * d;
  }
  const std::size_t t_col = off[count];
  const std::size_t unknowns = t_col + 1;
  auto var = [&](std::size_t blk, std::size_t r, std::size_t c) {
    return off[blk] + r * T.block(static_cast<int>(blk)).dim + c;
  };
  std::vector<Vec> rows;
  // X_to A - A X_from = 0 for A : from -> to.
  auto relation = [&](std::size_t from, std::size_t to, const Matrix& A) {
    const std::size_t df = T.block(static_cast<int>(from)).dim, dt = T.block(static_cast<int>(to)).dim;
    for (std::size_t r = 0; r < dt; ++r)
      for (std::size_t c = 0; c < df; ++c) {
        Vec row(unknowns);
        for (std::size_t k = 0; k < dt; ++k)
          if (!A(k, c).is_zero()) row[var(to, r, k)] += A(k, c);
        for (std::size_t k = 0; k < df; ++k)
          if (!A(r, k).is_zero()) row[var(from, k, c)] -= A(r, k);
        if (!is_zero(row)) rows.push_back(std::move(row));
      }
  };
  for (std::size_t i = 0; i < count; ++i) {
    const int idx = static_cast<int>(i);
    for (int a = 0; a < n; ++a) {
      const int lo = T.down(idx, a), hi = T.up(idx, a);
      if (lo >= 0) relation(i, uz(lo), T.dE(idx, a));
      if (hi >= 0 && uz(hi) < count) relation(i, uz(hi), T.dF(idx, a));
    }
  }
  for (int j = 0; j < M.datum().N(); ++j) {
    const int b = T.block_of_index(j);
    if (b < 0 || uz(b) >= count) continue;
    const std::size_t at = T.part(b, j)->offset;
    Vec row(unknowns);
    row[var(uz(b), at, at)] = Scalar(1);
    row[t_col] = -M.spec().power(Rational(2) * M.datum().eps(j));
    rows.push_back(std::move(row));
  }
  Matrix A(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) A(r, c) = rows[r][c];
  const auto null = nullspace(A);
  if (null.size() != 1 || null[0][t_col].is_zero())
    throw NonGenericError("commutant is not pinned down by the normalization (solution dimension " +
                          std::to_string(null.size()) + ")");
  const Vec x = scaled(null[0], null[0][t_col].inverse());
  std::vector<Matrix> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t d = T.block(static_cast<int>(i)).dim;
    out[i] = Matrix(d, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) out[i](r, c) = x[var(i, r, c)];
  }
  return out;
}

CheckList graded_eigenvalue_checks(const QOperator& Q, const std::vector<Subspace>& V, int D, const std::string& tag) {
  const TensorSpace& T = Q.space();
  const auto& M = T.module();
  const RootDatum& Dt = M.datum();
  CheckList out;
  for (int j : eigen_indices(T)) {
    const int b = T.block_of_index(j);
    if (b < 0 || T.block(b).height > D) continue;
    const Echelon& prev = V[uz(j)].blocks[uz(b)];
    const Vec g = prev.reduce(T.generator(j));
    const std::string name = tag + " eigenvalue " + index_name(Dt, j);
    if (is_zero(g)) {
      auto r = make_check("qop", name, "graded piece vanishes; nothing to compare", true);
      r.status = Status::skipped;
      out.push_back(std::move(r));
      continue;
    }
    const Vec y = prev.reduce(matvec(Q.block(b), T.generator(j)));
    std::size_t lead = 0;
    while (g[lead].is_zero()) ++lead;
    const Scalar c = y[lead] / g[lead];
    const Scalar x = eigenvalue_x(Dt, M.spec(), j);
    const bool scalar = scaled(g, c) == y;
    auto r = make_check("qop", name, "Q acts on w_j (x) v_lambda mod V_{j-1} by x_j", scalar && c == x);
    r.with("observed", scalar ? c.to_string() : "not a scalar").with("x_j", x.to_string());
    out.push_back(std::move(r));
  }
  const std::size_t count = blocks_upto(T, D);
  std::size_t bad = 0;
  for (std::size_t j = 1; j < V.size(); ++j)
    for (std::size_t i = 0; i < count; ++i)
      for (const auto& row : V[j].blocks[i].rows())
        if (!V[j].blocks[i].contains(matvec(Q.block(static_cast<int>(i)), row))) ++bad;
  out.push_back(make_check("qop", tag + " filtration-preserved", "Q V_j is contained in V_j", bad == 0)
                    .with("violations", std::to_string(bad)));
  return out;
}

CheckList minpoly_checks(const QOperator& Q, int D, const std::string& tag) {
  const TensorSpace& T = Q.space();
  const auto& M = T.module();
  const std::vector<int> idx_set = eigen_indices(T);
  const std::size_t count = blocks_upto(T, D);
  std::vector<Scalar> x;
  for (int j : idx_set) x.push_back(eigenvalue_x(M.datum(), M.spec(), j));
  auto product = [&](std::size_t blk, std::size_t skip) {
    const Matrix& q = Q.block(static_cast<int>(blk));
    Matrix p = Matrix::identity(q.rows());
    for (std::size_t t = 0; t < x.size(); ++t) {
      if (t == skip) continue;
      Matrix f = q;
      for (std::size_t d = 0; d < q.rows(); ++d) f(d, d) -= x[t];
      p = multiply(f, p);
    }
    return p;
  };
  std::size_t bad = 0;
  for (std::size_t i = 0; i < count; ++i)
    if (!product(i, x.size()).is_zero()) ++bad;
  std::string redundant;
  for (std::size_t t = 0; t < x.size(); ++t) {
    bool vanishes = true;
    for (std::size_t i = 0; i < count && vanishes; ++i) vanishes = product(i, t).is_zero();
    if (vanishes) redundant += (redundant.empty() ? "" : ",") + index_name(M.datum(), idx_set[t]);
  }
  std::string factors;
  for (int j : idx_set) factors += (factors.empty() ? "" : ",") + index_name(M.datum(), j);
  auto r = make_check("qop", tag + " minimal-polynomial", "prod_{j in I_k} (Q - x_j) = 0", bad == 0);
  r.with("factors", factors).with("blocks", std::to_string(count)).with("nonzero_blocks", std::to_string(bad));
  r.with("redundant_factors", redundant.empty() ? "none" : redundant);
  return {r};
}

}  // namespace qgclass
