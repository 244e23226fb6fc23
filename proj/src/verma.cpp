#include "qgclass/verma.hpp"

#include <algorithm>
#include <map>

namespace qgclass {

namespace {

std::size_t uz(int x) { return static_cast<std::size_t>(x); }

// Consecutive runs of equal height in a height-sorted index range.
template <class HeightOf, class Body>
void by_height(std::size_t count, HeightOf height_of, Exec exec, Body body) {
  std::size_t start = 0;
  while (start < count) {
    std::size_t end = start;
    while (end < count && height_of(end) == height_of(start)) ++end;
    const auto n = static_cast<std::ptrdiff_t>(end - start);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t k = 0; k < n; ++k) body(start + static_cast<std::size_t>(k));
    } else {
      for (std::ptrdiff_t k = 0; k < n; ++k) body(start + static_cast<std::size_t>(k));
    }
    start = end;
  }
}

Vec unit_vec(std::size_t n, std::size_t k) {
  Vec v(n);
  v[k] = Scalar(1);
  return v;
}

}  // namespace

// ------------------------------------------------------------ VermaModule

VermaModule::VermaModule(const GradedBasis& U, const WeightSpec& spec, int depth, const std::vector<Element>* generators,
                         Exec exec)
    : U_(U), spec_(spec), depth_(depth), quotient_(generators != nullptr) {
  if (depth < 0) throw SpecError("module depth must be nonnegative");
  if (depth > U.cutoff()) throw ConsistencyError("module depth exceeds algebra cutoff");
  std::size_t count = 0;
  while (count < U.size() && U.comp(count).height <= depth) ++count;
  comps_.resize(count);
  for (std::size_t i = 0; i < count; ++i) comps_[i].dim = U.comp(i).dim();
  auto height_of = [&](std::size_t i) { return U.comp(i).height; };
  by_height(count, height_of, exec, [&](std::size_t i) { build_e(static_cast<int>(i)); });
  if (!quotient_) return;

  std::vector<Element> gens;
  for (const auto& g : *generators) {
    int h = 0;
    for (int x : g.weight) h += x;
    if (h > depth) continue;
    if (U.find(g.weight) < 0) throw ConsistencyError("singular vector outside the cone");
    verify_singular(*this, g);
    gens.push_back(g);
  }
  plain_e_.resize(count);
  for (std::size_t i = 0; i < count; ++i) plain_e_[i] = comps_[i].E;
  by_height(count, height_of, exec, [&](std::size_t i) { build_kernel(static_cast<int>(i), gens); });
  for (std::size_t i = 0; i < count; ++i) comps_[i].dim = comps_[i].free.size();
  by_height(count, height_of, exec, [&](std::size_t i) { project_actions(static_cast<int>(i)); });
}

int VermaModule::find(const RootCoords& beta) const {
  int h = 0;
  for (int x : beta) {
    if (x < 0) return -1;
    h += x;
  }
  if (h > depth_) throw ConsistencyError("weight of height " + std::to_string(h) + " beyond module depth");
  return U_.find(beta);
}

int VermaModule::above(int idx, int a) const {
  RootCoords b = beta(idx);
  b[uz(a)] += 1;
  if (U_.comp(uz(idx)).height + 1 > depth_) return -1;
  return U_.find(b);
}

const Matrix& VermaModule::F(int idx, int a) const {
  if (quotient_) return comps_[uz(idx)].F[uz(a)];
  return U_.comp(uz(idx)).left[uz(a)];
}

const Matrix& VermaModule::E(int idx, int a) const { return comps_[uz(idx)].E[uz(a)]; }

Scalar VermaModule::cartan(int idx, const Weight& mu) const {
  return spec_.power(mu) * q_power(-datum().inner(datum().from_coords(beta(idx)), mu));
}

const Echelon* VermaModule::kernel(int idx) const {
  const auto& k = comps_[uz(idx)].kernel;
  return k ? &*k : nullptr;
}

Vec VermaModule::project(int idx, const Vec& u) const {
  if (!quotient_) return u;
  const Comp& c = comps_[uz(idx)];
  Vec r = c.kernel->reduce(u);
  Vec out(c.free.size());
  for (std::size_t k = 0; k < c.free.size(); ++k) out[k] = std::move(r[c.free[k]]);
  return out;
}

void VermaModule::build_e(int idx) {
  const auto& uc = U_.comp(uz(idx));
  const int n = datum().rank();
  Comp& c = comps_[uz(idx)];
  c.E.assign(uz(n), Matrix());
  for (int a = 0; a < n; ++a) {
    const int tgt = uc.below[uz(a)];
    c.E[uz(a)] = Matrix(tgt < 0 ? 0 : U_.comp(uz(tgt)).dim(), uc.dim());
  }
  if (uc.height == 0) return;
  std::vector<std::map<Word, std::size_t>> lookup(uz(n));
  for (int b = 0; b < n; ++b) {
    const int sub = uc.below[uz(b)];
    if (sub < 0) continue;
    const auto& sc = U_.comp(uz(sub));
    for (std::size_t k = 0; k < sc.dim(); ++k) lookup[uz(b)][sc.basis[k]] = k;
  }
  for (std::size_t col = 0; col < uc.dim(); ++col) {
    const Word& w = uc.basis[col];
    const int b = w[0];
    const int sub = uc.below[uz(b)];
    const std::size_t k = lookup[uz(b)].at(Word(w.begin() + 1, w.end()));
    const Weight gamma = datum().from_coords(U_.comp(uz(sub)).beta);
    for (int a = 0; a < n; ++a) {
      const int tgt = uc.below[uz(a)];
      if (tgt < 0) continue;
      Vec y(U_.comp(uz(tgt)).dim());
      const int sub_tgt = U_.comp(uz(sub)).below[uz(a)];
      if (sub_tgt >= 0) y = matvec(U_.comp(uz(tgt)).left[uz(b)], comps_[uz(sub)].E[uz(a)].column(k));
      if (a == b) {
        const Weight& alpha = datum().simple()[uz(a)];
        Scalar x = spec_.power(alpha) * q_power(-datum().inner(gamma, alpha));
        y[k] += (x - x.inverse()) / datum().d(a);
      }
      c.E[uz(a)].set_column(col, y);
    }
  }
}

void VermaModule::build_kernel(int idx, const std::vector<Element>& gens) {
  const auto& uc = U_.comp(uz(idx));
  Comp& c = comps_[uz(idx)];
  Echelon K(uc.dim());
  for (std::size_t a = 0; a < uc.below.size(); ++a) {
    const int sub = uc.below[a];
    if (sub < 0) continue;
    for (const auto& row : comps_[uz(sub)].kernel->rows()) {
      if (K.full()) break;
      K.insert(matvec(uc.left[a], row));
    }
  }
  for (const auto& g : gens)
    if (g.weight == uc.beta) K.insert(g.coords);
  c.free = K.free_columns();
  c.kernel = std::move(K);
}

void VermaModule::project_actions(int idx) {
  const auto& uc = U_.comp(uz(idx));
  Comp& c = comps_[uz(idx)];
  const std::size_t n = uc.below.size();
  c.F.assign(n, Matrix());
  std::vector<Matrix> E(n);
  for (std::size_t a = 0; a < n; ++a) {
    const int sub = uc.below[a];
    if (sub < 0) {
      c.F[a] = Matrix(c.free.size(), 0);
      E[a] = Matrix(0, c.free.size());
      continue;
    }
    const Comp& s = comps_[uz(sub)];
    Matrix F(c.free.size(), s.free.size());
    for (std::size_t k = 0; k < s.free.size(); ++k) F.set_column(k, project(idx, uc.left[a].column(s.free[k])));
    c.F[a] = std::move(F);
    Matrix Eq(s.free.size(), c.free.size());
    for (std::size_t k = 0; k < c.free.size(); ++k)
      Eq.set_column(k, project(sub, plain_e_[uz(idx)][a].column(c.free[k])));
    E[a] = std::move(Eq);
  }
  c.E = std::move(E);
}

bool VermaModule::kernel_e_invariant() const {
  if (!quotient_) return true;
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    const auto& uc = U_.comp(i);
    for (std::size_t a = 0; a < uc.below.size(); ++a) {
      const int sub = uc.below[a];
      if (sub < 0) continue;
      for (const auto& row : comps_[i].kernel->rows())
        if (!comps_[uz(sub)].kernel->contains(matvec(plain_e_[i][a], row))) return false;
    }
  }
  return true;
}

Vec VermaModule::lower(const Word& y, int idx, Vec x, int& out_idx) const {
  int cur = idx;
  for (auto it = y.rbegin(); it != y.rend(); ++it) {
    const int next = above(cur, *it);
    if (next < 0) throw ConsistencyError("lowering beyond module depth");
    x = matvec(F(next, *it), x);
    cur = next;
  }
  out_idx = cur;
  return x;
}

Vec VermaModule::raise(const Word& w, int idx, Vec v, int& out_idx) const {
  int cur = idx;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    const int next = below(cur, *it);
    if (next < 0) {
      out_idx = -1;
      return {};
    }
    v = matvec(E(cur, *it), v);
    cur = next;
  }
  out_idx = cur;
  return v;
}

void verify_singular(const VermaModule& M, const Element& g) {
  const int idx = M.algebra().find(g.weight);
  if (is_zero(g.coords)) throw DegenerateSingularVector("zero singular vector generator");
  // Raising in M_lambda: e_a acts through the plain e-matrices, which coincide
  // with E() before the quotient is formed.
  for (int a = 0; a < M.datum().rank(); ++a) {
    const int sub = M.below(idx, a);
    if (sub < 0) continue;
    if (!is_zero(matvec(M.E(idx, a), g.coords)))
      throw DegenerateSingularVector("vector of weight lambda - " + weight_string(M.datum().from_coords(g.weight)) +
                                     " is not annihilated by e_" + std::to_string(a + 1));
  }
}

CheckList module_relation_checks(const VermaModule& M, const std::string& tag) {
  CheckList out;
  const std::string suite = "module";
  const int n = M.datum().rank();
  std::string bad;
  std::size_t tested = 0;
  const auto count = static_cast<int>(M.algebra().size());
  for (int idx = 0; idx < count; ++idx) {
    if (M.algebra().comp(uz(idx)).height >= M.depth()) break;
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        // [e_a, f_b] on component idx.
        const int up = M.above(idx, b);
        const int lhs_tgt = M.below(up, a);
        if (lhs_tgt < 0) continue;
        Matrix ef = multiply(M.E(up, a), M.F(up, b));
        const int down = M.below(idx, a);
        if (down >= 0) ef -= multiply(M.F(M.above(down, b), b), M.E(idx, a));
        if (a == b) {
          const Weight& alpha = M.datum().simple()[uz(a)];
          Scalar x = M.cartan(idx, alpha);
          ef -= Matrix::identity(M.dim(idx)).scaled((x - x.inverse()) / M.datum().d(a));
        }
        ++tested;
        if (!ef.is_zero()) bad += " (" + std::to_string(idx) + "," + std::to_string(a + 1) + "," + std::to_string(b + 1) + ")";
      }
    }
  }
  out.push_back(make_check(suite, tag + " commutator", "[e_a,f_b] = delta_ab (K_a - K_a^-1)/d_a on M", bad.empty()));
  out.back().with("blocks", std::to_string(tested));
  if (!bad.empty()) out.back().with("failing", bad);

  bad.clear();
  for (int idx = 0; idx < count && M.algebra().comp(uz(idx)).height <= M.depth(); ++idx) {
    for (const auto& rel : M.datum().serre()) {
      for (std::size_t col = 0; col < M.dim(idx); ++col) {
        Vec sum;
        for (const auto& t : rel.terms) {
          int o = -1;
          Vec y = M.raise(t.word, idx, unit_vec(M.dim(idx), col), o);
          if (o < 0) continue;
          if (sum.empty()) sum.assign(y.size(), Scalar());
          axpy(sum, t.coef, y);
        }
        if (!sum.empty() && !is_zero(sum)) bad += " (" + std::to_string(idx) + ")";
      }
    }
  }
  out.push_back(make_check(suite, tag + " serre-raising", "q-Serre relations for e on M", bad.empty()));
  if (!bad.empty()) out.back().with("failing", bad);

  if (M.is_quotient()) {
    out.push_back(make_check(suite, tag + " kernel-invariance", "e_a maps the kernel into itself", M.kernel_e_invariant()));
  }
  return out;
}

// ------------------------------------------------------------ TensorSpace

TensorSpace::TensorSpace(const VermaModule& M, const NaturalRep& rep, Exec exec) : M_(M), rep_(rep) {
  const RootDatum& D = M.datum();
  const int N = D.N();
  std::vector<RootCoords> shift;
  for (int m = 0; m < N; ++m) shift.push_back(D.coords(D.eps(0) - D.eps(m)));
  std::size_t count = 0;
  while (count < M.algebra().size() && M.algebra().comp(count).height <= M.depth()) ++count;
  blocks_.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    Block& b = blocks_[i];
    b.delta = M.beta(static_cast<int>(i));
    b.height = M.algebra().comp(i).height;
    for (int m = 0; m < N; ++m) {
      RootCoords beta = b.delta;
      bool ok = true;
      for (std::size_t k = 0; k < beta.size(); ++k) {
        beta[k] -= shift[uz(m)][k];
        if (beta[k] < 0) ok = false;
      }
      if (!ok) continue;
      const int comp = M.find(beta);
      b.parts.push_back({m, comp, b.dim, M.dim(comp)});
      b.dim += M.dim(comp);
    }
  }
  const int n = D.rank();
  dE_.assign(count, std::vector<Matrix>(uz(n)));
  dF_.assign(count, std::vector<Matrix>(uz(n)));
  auto body = [&](std::size_t i) {
    for (int a = 0; a < n; ++a) {
      dE_[i][uz(a)] = build_dE(static_cast<int>(i), a);
      dF_[i][uz(a)] = build_dF(static_cast<int>(i), a);
    }
  };
  if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(count); ++i) body(static_cast<std::size_t>(i));
  } else {
    for (std::size_t i = 0; i < count; ++i) body(i);
  }
}

int TensorSpace::find(const RootCoords& delta) const {
  int h = 0;
  for (int x : delta) {
    if (x < 0) return -1;
    h += x;
  }
  if (h > M_.depth()) return -1;
  return M_.algebra().find(delta);
}

RootCoords TensorSpace::delta_of_index(int j) const {
  const RootDatum& D = M_.datum();
  return D.coords(D.eps(0) - D.eps(j));
}

int TensorSpace::block_of_index(int j) const { return find(delta_of_index(j)); }

const TensorSpace::Part* TensorSpace::part(int idx, int m) const {
  for (const auto& p : blocks_[uz(idx)].parts)
    if (p.m == m) return &p;
  return nullptr;
}

int TensorSpace::down(int idx, int a) const { return M_.below(idx, a); }

int TensorSpace::up(int idx, int a) const { return M_.above(idx, a); }

Vec TensorSpace::embed(int idx, int m, const Vec& x) const {
  const Part* p = part(idx, m);
  if (!p) throw ConsistencyError("no part w_" + std::to_string(m + 1) + " in this block");
  if (x.size() != p->dim) throw ConsistencyError("embed: dimension mismatch");
  Vec v(blocks_[uz(idx)].dim);
  std::copy(x.begin(), x.end(), v.begin() + static_cast<std::ptrdiff_t>(p->offset));
  return v;
}

Vec TensorSpace::generator(int j) const {
  const int idx = block_of_index(j);
  if (idx < 0) throw ConsistencyError("generator w_" + std::to_string(j + 1) + " beyond depth");
  return embed(idx, j, unit_vec(1, 0));
}

Matrix TensorSpace::build_dE(int idx, int a) const {
  const Block& src = blocks_[uz(idx)];
  const int tgt = down(idx, a);
  if (tgt < 0) return Matrix(0, src.dim);
  const Block& dst = blocks_[uz(tgt)];
  Matrix out(dst.dim, src.dim);
  const RootDatum& D = M_.datum();
  const Weight& alpha = D.simple()[uz(a)];
  for (const auto& p : src.parts) {
    for (const auto& [l, r] : rep_.pairs(a)) {
      if (r != p.m) continue;
      const Part* q = part(tgt, l);
      for (std::size_t k = 0; k < p.dim; ++k) out(q->offset + k, p.offset + k) = Scalar(1);
    }
    const int sub = M_.below(p.comp, a);
    if (sub < 0) continue;
    const Part* q = part(tgt, p.m);
    const Scalar c = q_power(D.inner(D.eps(p.m), alpha));
    const Matrix& E = M_.E(p.comp, a);
    for (std::size_t i = 0; i < E.rows(); ++i)
      for (std::size_t k = 0; k < E.cols(); ++k)
        if (!E(i, k).is_zero()) out(q->offset + i, p.offset + k) += c * E(i, k);
  }
  return out;
}

Matrix TensorSpace::build_dF(int idx, int a) const {
  const Block& src = blocks_[uz(idx)];
  const int tgt = up(idx, a);
  if (tgt < 0) return Matrix(0, src.dim);
  const Block& dst = blocks_[uz(tgt)];
  Matrix out(dst.dim, src.dim);
  const Weight& alpha = M_.datum().simple()[uz(a)];
  for (const auto& p : src.parts) {
    for (const auto& [l, r] : rep_.pairs(a)) {
      if (l != p.m) continue;
      const Part* q = part(tgt, r);
      const Scalar c = M_.cartan(p.comp, alpha).inverse();
      for (std::size_t k = 0; k < p.dim; ++k) out(q->offset + k, p.offset + k) = c;
    }
    const int sup = M_.above(p.comp, a);
    const Part* q = part(tgt, p.m);
    const Matrix& F = M_.F(sup, a);
    for (std::size_t i = 0; i < F.rows(); ++i)
      for (std::size_t k = 0; k < F.cols(); ++k)
        if (!F(i, k).is_zero()) out(q->offset + i, p.offset + k) += F(i, k);
  }
  return out;
}

Matrix TensorSpace::dE_op(int idx, int a) const {
  const Block& src = blocks_[uz(idx)];
  const int tgt = down(idx, a);
  if (tgt < 0) return Matrix(0, src.dim);
  Matrix out(blocks_[uz(tgt)].dim, src.dim);
  const Weight& alpha = M_.datum().simple()[uz(a)];
  for (const auto& p : src.parts) {
    for (const auto& [l, r] : rep_.pairs(a)) {
      if (r != p.m) continue;
      const Part* q = part(tgt, l);
      const Scalar c = M_.cartan(p.comp, alpha);
      for (std::size_t k = 0; k < p.dim; ++k) out(q->offset + k, p.offset + k) = c;
    }
    if (M_.below(p.comp, a) < 0) continue;
    const Part* q = part(tgt, p.m);
    const Matrix& E = M_.E(p.comp, a);
    for (std::size_t i = 0; i < E.rows(); ++i)
      for (std::size_t k = 0; k < E.cols(); ++k)
        if (!E(i, k).is_zero()) out(q->offset + i, p.offset + k) += E(i, k);
  }
  return out;
}

Matrix TensorSpace::dF_op(int idx, int a) const {
  const Block& src = blocks_[uz(idx)];
  const int tgt = up(idx, a);
  if (tgt < 0) return Matrix(0, src.dim);
  Matrix out(blocks_[uz(tgt)].dim, src.dim);
  const RootDatum& D = M_.datum();
  const Weight& alpha = D.simple()[uz(a)];
  for (const auto& p : src.parts) {
    for (const auto& [l, r] : rep_.pairs(a)) {
      if (l != p.m) continue;
      const Part* q = part(tgt, r);
      for (std::size_t k = 0; k < p.dim; ++k) out(q->offset + k, p.offset + k) = Scalar(1);
    }
    const Part* q = part(tgt, p.m);
    const Scalar c = q_power(-D.inner(D.eps(p.m), alpha));
    const Matrix& F = M_.F(M_.above(p.comp, a), a);
    for (std::size_t i = 0; i < F.rows(); ++i)
      for (std::size_t k = 0; k < F.cols(); ++k)
        if (!F(i, k).is_zero()) out(q->offset + i, p.offset + k) += c * F(i, k);
  }
  return out;
}

// ------------------------------------------------------------ closure

Subspace submodule_closure(const TensorSpace& T, const std::vector<std::pair<int, Vec>>& gens, int max_height,
                           const Subspace* base, Exec exec) {
  Subspace S;
  if (base) {
    S = *base;
    if (base->max_height != max_height) throw ConsistencyError("closure: base truncated at a different height");
  } else {
    S.blocks.reserve(T.size());
    for (std::size_t i = 0; i < T.size(); ++i) S.blocks.emplace_back(T.block(static_cast<int>(i)).dim);
  }
  S.max_height = max_height;
  S.fresh.assign(T.size(), {});
  const int n = T.module().datum().rank();

  std::vector<std::pair<int, Vec>> stack(gens.rbegin(), gens.rend());
  while (!stack.empty()) {
    auto [idx, v] = std::move(stack.back());
    stack.pop_back();
    if (T.block(idx).height > max_height) throw ConsistencyError("closure generator above truncation height");
    if (!S.blocks[uz(idx)].insert(v)) continue;
    for (int a = n - 1; a >= 0; --a) {
      if (T.down(idx, a) < 0) continue;
      Vec y = matvec(T.dE(idx, a), v);
      if (!is_zero(y)) stack.emplace_back(T.down(idx, a), std::move(y));
    }
    S.fresh[uz(idx)].push_back(std::move(v));
  }

  std::size_t count = 0;
  while (count < T.size() && T.block(static_cast<int>(count)).height <= max_height) ++count;
  auto height_of = [&](std::size_t i) { return T.block(static_cast<int>(i)).height; };
  by_height(count, height_of, exec, [&](std::size_t i) {
    const int idx = static_cast<int>(i);
    Echelon& ech = S.blocks[i];
    for (int a = 0; a < n && !ech.full(); ++a) {
      const int lo = T.down(idx, a);
      if (lo < 0) continue;
      for (const auto& x : S.fresh[uz(lo)]) {
        if (ech.full()) break;
        Vec y = matvec(T.dF(lo, a), x);
        if (ech.insert(y)) S.fresh[i].push_back(std::move(y));
      }
    }
  });
  return S;
}

std::vector<Subspace> standard_filtration(const TensorSpace& T, int max_height, Exec exec) {
  std::vector<Subspace> V;
  V.push_back(submodule_closure(T, {}, max_height, nullptr, exec));
  const int N = T.module().datum().N();
  for (int j = 0; j < N; ++j) {
    const int idx = T.block_of_index(j);
    std::vector<std::pair<int, Vec>> gens;
    if (idx >= 0 && T.block(idx).height <= max_height) gens.emplace_back(idx, T.generator(j));
    V.push_back(submodule_closure(T, gens, max_height, &V.back(), exec));
  }
  return V;
}

// ------------------------------------------------------------ checks

namespace {

std::string pair_name(const RootDatum& D, int i, int j) { return index_name(D, i) + "," + index_name(D, j); }

bool proportional(const Vec& a, const Vec& b) {
  Echelon e(a.size());
  e.insert(a);
  return e.contains(b);
}

}  // namespace

CheckList filtration_checks(const TensorSpace& T, const std::vector<Subspace>& V, int depth, const std::string& tag) {
  CheckList out;
  const std::string suite = "filtration";
  const VermaModule& M = T.module();
  const RootDatum& D = M.datum();
  const WeightSpec& spec = M.spec();
  const int N = D.N();
  const PosetData poset(T.rep());
  const GradedBasis& U = M.algebra();

  auto in_range = [&](int j) {
    const int idx = T.block_of_index(j);
    return idx >= 0 && T.block(idx).height <= depth;
  };

  if (!M.is_quotient()) {
    for (int j = 1; j < N; ++j) {
      if (!in_range(j)) continue;
      const int bj = T.block_of_index(j);
      const Echelon& prev = V[uz(j)].blocks[uz(bj)];
      for (int i = 0; i < j; ++i) {
        if (!poset.less(i, j)) continue;
        const Word& psi = poset.principal(i, j);
        const Element principal = U.rewrite(psi);
        const TensorSpace::Part* p = T.part(bj, i);
        if (!p) throw ConsistencyError("principal part missing");
        // Non-principal orderings of the same letters.
        Word perm = psi;
        std::sort(perm.begin(), perm.end());
        std::size_t tried = 0, members = 0;
        std::string bad;
        do {
          if (perm == psi) continue;
          Element x = U.rewrite(perm);
          if (is_zero(x.coords) || proportional(principal.coords, x.coords)) continue;
          ++tried;
          if (prev.contains(T.embed(bj, i, M.project(p->comp, x.coords))))
            ++members;
          else if (bad.size() < 200)
            bad += " " + word_string(perm);
        } while (std::next_permutation(perm.begin(), perm.end()));
        out.push_back(make_check(suite, tag + " nonprincipal " + pair_name(D, i, j),
                                 "w_i (x) psi v in V_{j-1} for non-principal orderings psi", members == tried));
        out.back().with("orderings", std::to_string(tried));
        if (!bad.empty()) out.back().with("outside", bad);

        // Principal diagonal coefficient.
        Vec x = prev.reduce(T.embed(bj, i, M.project(p->comp, principal.coords)));
        Vec g = prev.reduce(T.generator(j));
        std::size_t piv = 0;
        while (piv < g.size() && g[piv].is_zero()) ++piv;
        if (piv == g.size()) {
          out.push_back(make_check(suite, tag + " principal " + pair_name(D, i, j), "c_ij is a nonzero monomial", false));
          out.back().with("reason", "w_j (x) v_lambda already in V_{j-1}");
          continue;
        }
        Scalar c = x[piv] / g[piv];
        Vec rem = x;
        axpy(rem, -c, g);
        const bool collinear = is_zero(rem);
        out.push_back(make_check(suite, tag + " principal " + pair_name(D, i, j), "c_ij is a nonzero monomial",
                                 collinear && !c.is_zero() && c.is_monomial()));
        out.back().with("c", collinear ? c.to_string() : "not collinear");
        if (!collinear) continue;
        Scalar predicted(1);
        int cur = i;
        for (int letter : psi) {
          int nxt = -1;
          for (const auto& [l, r] : T.rep().pairs(letter))
            if (l == cur) nxt = r;
          const Weight mu = D.eps(nxt) - D.eps(j);
          const Weight& alpha = D.simple()[uz(letter)];
          predicted *= -(spec.power(alpha) * q_power(-D.inner(mu, alpha))).inverse();
          cur = nxt;
        }
        CheckRecord r = make_check(suite, tag + " principal-sign " + pair_name(D, i, j),
                                   "c_ij against the iterated coproduct prediction", true);
        if (!(predicted == c)) r.status = Status::flagged;
        r.with("predicted", predicted.to_string()).with("observed", c.to_string());
        out.push_back(std::move(r));
      }
    }
  } else {
    for (int j = 0; j < N; ++j) {
      if (spec.in_Ik(j) || !in_range(j)) continue;
      const int bj = T.block_of_index(j);
      out.push_back(make_check(suite, tag + " collapse " + index_name(D, j),
                               "w_j (x) v_bar in V_{j-1} for j outside I_k",
                               V[uz(j)].blocks[uz(bj)].contains(T.generator(j))));
    }
    std::string survive;
    for (int j = 0; j < N; ++j) {
      if (!spec.in_Ik(j) || !in_range(j)) continue;
      const int bj = T.block_of_index(j);
      survive += " " + index_name(D, j) + (V[uz(j)].blocks[uz(bj)].contains(T.generator(j)) ? ":vanishes" : ":survives");
    }
    CheckRecord r = make_check(suite, tag + " survival", "graded pieces for j in I_k (observed only)", true);
    r.with("pieces", survive.empty() ? "none in range" : survive);
    out.push_back(std::move(r));
  }

  // Graded dimensions of V_j / V_{j-1}.
  std::string bad;
  bool full = true;
  for (std::size_t b = 0; b < T.size(); ++b) {
    const auto& blk = T.block(static_cast<int>(b));
    if (blk.height > depth) break;
    if (V.back().dim(static_cast<int>(b)) != blk.dim) full = false;
    for (int j = 0; j < N; ++j) {
      const std::size_t got = V[uz(j + 1)].dim(static_cast<int>(b)) - V[uz(j)].dim(static_cast<int>(b));
      std::size_t want;
      if (M.is_quotient()) {
        if (spec.in_Ik(j)) continue;
        want = 0;
      } else {
        const TensorSpace::Part* p = T.part(static_cast<int>(b), j);
        want = p ? U.comp(uz(p->comp)).dim() : 0;
      }
      if (got != want) bad += " (" + std::to_string(b) + "," + index_name(D, j) + ")";
    }
  }
  out.push_back(make_check(suite, tag + " graded-dimensions",
                           M.is_quotient() ? "V_j = V_{j-1} for j outside I_k and V_N is everything"
                                           : "dim V_j/V_{j-1} = dim M at the shifted weight",
                           bad.empty() && full));
  if (!full) out.back().with("reason", "V_N is not the whole tensor space");
  if (!bad.empty()) out.back().with("failing", bad);
  return out;
}

}  // namespace qgclass
