#include "qgclass/uqtri.hpp"

#include <algorithm>
#include <functional>

namespace qgclass {

std::string word_string(const Word& w, char letter) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "*" : "") + std::string(1, letter) + std::to_string(w[i] + 1);
  return s;
}

GradedBasis::GradedBasis(const RootDatum& datum, int cutoff, Exec exec) : datum_(datum), cutoff_(cutoff) {
  if (cutoff < 0) throw SpecError("cutoff height must be nonnegative");
  const int n = datum.rank();
  std::vector<RootCoords> weights;
  RootCoords cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> gen = [&](int pos, int left) {
    if (pos == n) {
      weights.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[static_cast<std::size_t>(pos)] = k;
      gen(pos + 1, left - k);
    }
    cur[static_cast<std::size_t>(pos)] = 0;
  };
  gen(0, cutoff);
  auto height = [](const RootCoords& c) {
    int h = 0;
    for (int x : c) h += x;
    return h;
  };
  std::sort(weights.begin(), weights.end(), [&](const RootCoords& a, const RootCoords& b) {
    int ha = height(a), hb = height(b);
    if (ha != hb) return ha < hb;
    return a < b;
  });
  comps_.resize(weights.size());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    comps_[i].beta = weights[i];
    comps_[i].height = height(weights[i]);
    index_[weights[i]] = static_cast<int>(i);
  }
  std::size_t start = 0;
  while (start < comps_.size()) {
    std::size_t end = start;
    while (end < comps_.size() && comps_[end].height == comps_[start].height) ++end;
    const auto count = static_cast<std::ptrdiff_t>(end - start);
    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::ptrdiff_t k = 0; k < count; ++k) build_component(start + static_cast<std::size_t>(k));
    } else {
      for (std::ptrdiff_t k = 0; k < count; ++k) build_component(start + static_cast<std::size_t>(k));
    }
    start = end;
  }
}

int GradedBasis::find(const RootCoords& beta) const {
  int h = 0;
  for (int x : beta) {
    if (x < 0) return -1;
    h += x;
  }
  if (h > cutoff_) throw ConsistencyError("weight of height " + std::to_string(h) + " exceeds cutoff " + std::to_string(cutoff_));
  return index_.at(beta);
}

std::size_t GradedBasis::dim(const RootCoords& beta) const {
  int idx = find(beta);
  return idx < 0 ? 0 : comps_[static_cast<std::size_t>(idx)].dim();
}

RootCoords GradedBasis::weight_of(const Word& w) const {
  RootCoords c(static_cast<std::size_t>(datum_.rank()), 0);
  for (int a : w) c[static_cast<std::size_t>(a)] += 1;
  return c;
}

void GradedBasis::build_component(std::size_t idx) {
  Component& c = comps_[idx];
  const int n = datum_.rank();
  c.below.assign(static_cast<std::size_t>(n), -1);
  c.left.assign(static_cast<std::size_t>(n), Matrix());
  if (c.height == 0) {
    c.basis = {Word{}};
    return;
  }
  struct Candidate {
    int a;
    std::size_t k;
    Word word;
  };
  std::vector<Candidate> cand;
  std::vector<std::size_t> offset(static_cast<std::size_t>(n), 0);
  for (int a = 0; a < n; ++a) {
    RootCoords b = c.beta;
    b[static_cast<std::size_t>(a)] -= 1;
    int j = find(b);
    c.below[static_cast<std::size_t>(a)] = j;
    offset[static_cast<std::size_t>(a)] = cand.size();
    if (j < 0) continue;
    const auto& sub = comps_[static_cast<std::size_t>(j)];
    for (std::size_t k = 0; k < sub.dim(); ++k) {
      Word w{a};
      w.insert(w.end(), sub.basis[k].begin(), sub.basis[k].end());
      cand.push_back({a, k, std::move(w)});
    }
  }
  const std::size_t m = cand.size();
  // Column position: lex-descending words, so RREF pivots are leading words.
  std::vector<std::size_t> order(m);
  for (std::size_t i = 0; i < m; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return cand[x].word > cand[y].word; });
  std::vector<std::size_t> pos(m);
  for (std::size_t p = 0; p < m; ++p) pos[order[p]] = p;

  Echelon ech(m);
  for (const auto& rel : datum_.serre()) {
    RootCoords rest = c.beta;
    bool fits = true;
    for (int a = 0; a < n; ++a) {
      rest[static_cast<std::size_t>(a)] -= rel.weight[static_cast<std::size_t>(a)];
      if (rest[static_cast<std::size_t>(a)] < 0) fits = false;
    }
    if (!fits) continue;
    const int target = find(rest);
    const auto& tc = comps_[static_cast<std::size_t>(target)];
    for (std::size_t k = 0; k < tc.dim() && !ech.full(); ++k) {
      Vec v(m);
      for (const auto& t : rel.terms) {
        const int a0 = t.word[0];
        Word tail(t.word.begin() + 1, t.word.end());
        Vec x(tc.dim());
        x[k] = Scalar(1);
        int out = target;
        x = left_multiply(tail, target, std::move(x), out);
        if (out != c.below[static_cast<std::size_t>(a0)]) throw ConsistencyError("Serre rewrite landed in wrong weight");
        for (std::size_t j = 0; j < x.size(); ++j)
          if (!x[j].is_zero()) v[pos[offset[static_cast<std::size_t>(a0)] + j]] += t.coef * x[j];
      }
      ech.insert(std::move(v));
    }
  }

  std::vector<std::size_t> free = ech.free_columns();  // ascending position = descending word
  std::reverse(free.begin(), free.end());
  std::vector<long> basis_index(m, -1);
  for (std::size_t b = 0; b < free.size(); ++b) {
    basis_index[free[b]] = static_cast<long>(b);
    c.basis.push_back(cand[order[free[b]]].word);
  }
  std::vector<long> row_of(m, -1);
  const auto piv = ech.pivots();
  for (std::size_t r = 0; r < piv.size(); ++r) row_of[piv[r]] = static_cast<long>(r);

  for (int a = 0; a < n; ++a) {
    const int j = c.below[static_cast<std::size_t>(a)];
    if (j < 0) continue;
    const auto& sub = comps_[static_cast<std::size_t>(j)];
    Matrix L(c.dim(), sub.dim());
    for (std::size_t k = 0; k < sub.dim(); ++k) {
      const std::size_t p = pos[offset[static_cast<std::size_t>(a)] + k];
      if (basis_index[p] >= 0) {
        L(static_cast<std::size_t>(basis_index[p]), k) = Scalar(1);
      } else {
        const Vec& row = ech.rows()[static_cast<std::size_t>(row_of[p])];
        for (std::size_t f : free)
          if (!row[f].is_zero()) L(static_cast<std::size_t>(basis_index[f]), k) = -row[f];
      }
    }
    c.left[static_cast<std::size_t>(a)] = std::move(L);
  }
}

Vec GradedBasis::left_multiply(const Word& u, int idx, Vec x, int& out_idx) const {
  int cur = idx;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    RootCoords b = comps_[static_cast<std::size_t>(cur)].beta;
    b[static_cast<std::size_t>(*it)] += 1;
    int next = find(b);
    x = matvec(comps_[static_cast<std::size_t>(next)].left[static_cast<std::size_t>(*it)], x);
    cur = next;
  }
  out_idx = cur;
  return x;
}

Element GradedBasis::rewrite(const Word& w) const {
  int out = 0;
  Vec x = left_multiply(w, 0, Vec{Scalar(1)}, out);
  return {comps_[static_cast<std::size_t>(out)].beta, std::move(x)};
}

Element GradedBasis::unit() const { return {comps_[0].beta, Vec{Scalar(1)}}; }

Element GradedBasis::generator(int a) const { return rewrite(Word{a}); }

Element GradedBasis::multiply(const Element& a, const Element& b) const {
  RootCoords w = a.weight;
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += b.weight[i];
  const int target = find(w);
  if (target < 0) throw ConsistencyError("negative weight in multiply");
  Element out{w, Vec(comps_[static_cast<std::size_t>(target)].dim())};
  const int ia = find(a.weight);
  const int ib = find(b.weight);
  const auto& ca = comps_[static_cast<std::size_t>(ia)];
  for (std::size_t k = 0; k < ca.dim(); ++k) {
    if (a.coords[k].is_zero()) continue;
    int dst = 0;
    Vec y = left_multiply(ca.basis[k], ib, b.coords, dst);
    axpy(out.coords, a.coords[k], y);
  }
  return out;
}

Element GradedBasis::add(const Element& a, const Element& b) const {
  if (a.weight != b.weight) throw ConsistencyError("adding elements of different weights");
  Element out = a;
  axpy(out.coords, Scalar(1), b.coords);
  return out;
}

Element GradedBasis::scale(const Element& a, const Scalar& c) const { return {a.weight, scaled(a.coords, c)}; }

Element GradedBasis::qcommutator(const Element& a, const Element& b, const Rational& c) const {
  Element ab = multiply(a, b);
  Element ba = multiply(b, a);
  axpy(ab.coords, -q_power(c), ba.coords);
  return ab;
}

std::string GradedBasis::to_string(const Element& x) const {
  const auto& c = comps_[static_cast<std::size_t>(find(x.weight))];
  std::string s;
  for (std::size_t k = 0; k < c.dim(); ++k) {
    if (x.coords[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + x.coords[k].to_string() + ")*" + word_string(c.basis[k]);
  }
  return s.empty() ? "0" : s;
}

}  // namespace qgclass
