#include <doctest.h>

#include "qgclass/shapovalov.hpp"

using namespace qgclass;

namespace {

long partitions(const std::vector<RootCoords>& roots, std::size_t from, RootCoords beta) {
  bool zero = true;
  for (int x : beta) {
    if (x < 0) return 0;
    zero = zero && x == 0;
  }
  if (zero) return 1;
  long total = 0;
  for (std::size_t r = from; r < roots.size(); ++r) {
    RootCoords rest = beta;
    for (std::size_t k = 0; k < rest.size(); ++k) rest[k] -= roots[r][k];
    total += partitions(roots, r, rest);
  }
  return total;
}

WeightSpec spec_mu0(const RootDatum& D, std::vector<Coef> s) {
  return spec_from_mu_bar(D, TorusConstants{std::move(s)}, Weight(static_cast<std::size_t>(D.rank()), 0));
}

struct Fixture {
  RootDatum D;
  NaturalRep rep;
  PosetData poset;
  GradedBasis U;
  RootElements R;
  Fixture(Series s, int n, int cutoff) : D(s, n), rep(D), poset(rep), U(D, cutoff), R(U, poset) {}
};

}  // namespace

TEST_CASE("plain Verma module relations") {
  Fixture f(Series::C, 2, 5);
  const VermaModule M(f.U, spec_mu0(f.D, {2, 3}), 4);
  for (const auto& c : module_relation_checks(M, "plain")) {
    CAPTURE(c.name);
    CHECK(c.status == Status::pass);
  }
  // M_lambda is free over U^-
  for (std::size_t idx = 0; idx < f.U.size(); ++idx)
    if (f.U.comp(idx).height <= 4) CHECK(M.dim(static_cast<int>(idx)) == f.U.comp(idx).dim());
}

TEST_CASE("generalized parabolic dimensions") {
  // dim M^k[lambda - beta] counts partitions into roots outside R_k
  struct Case {
    Series s;
    int n;
    std::vector<Coef> t;
  };
  const std::vector<Case> cases = {{Series::C, 2, {2, 2}},
                                   {Series::C, 2, {1, Coef::imaginary_unit()}},
                                   {Series::B, 2, {2, 2}},
                                   {Series::D, 3, {2, 2, 3}}};
  for (const auto& c : cases) {
    Fixture f(c.s, c.n, 5);
    const auto spec = spec_mu0(f.D, c.t);
    CAPTURE(f.D.name());
    CAPTURE(spec.label());
    const Shapovalov S(f.R, spec);
    const VermaModule Mk = parabolic_module(f.U, S, 4);
    CHECK(Mk.kernel_e_invariant());
    std::vector<RootCoords> outside;
    for (const auto& a : f.D.positive())
      if (std::find(spec.Rk.begin(), spec.Rk.end(), a) == spec.Rk.end()) outside.push_back(f.D.coords(a));
    for (std::size_t idx = 0; idx < f.U.size(); ++idx) {
      if (f.U.comp(idx).height > 4) continue;
      CHECK(static_cast<long>(Mk.dim(static_cast<int>(idx))) == partitions(outside, 0, f.U.comp(idx).beta));
    }
    for (const auto& r : module_relation_checks(Mk, "quotient")) CHECK(r.status == Status::pass);
  }
}

TEST_CASE("standard filtration exhausts the tensor product") {
  Fixture f(Series::B, 2, 5);
  const VermaModule M(f.U, spec_mu0(f.D, {2, 3}), 4);
  const TensorSpace T(M, f.rep);
  const auto V = standard_filtration(T, 3);
  CHECK(V.size() == static_cast<std::size_t>(f.D.N() + 1));
  for (std::size_t b = 0; b < T.size(); ++b) {
    if (T.block(static_cast<int>(b)).height > 3) continue;
    CHECK(V.back().dim(static_cast<int>(b)) == T.block(static_cast<int>(b)).dim);
    CHECK(V.front().dim(static_cast<int>(b)) == 0);
    for (std::size_t j = 1; j < V.size(); ++j) CHECK(V[j - 1].dim(static_cast<int>(b)) <= V[j].dim(static_cast<int>(b)));
  }
  for (const auto& c : filtration_checks(T, V, 3, "plain")) {
    CAPTURE(c.name);
    CHECK(c.status != Status::fail);
  }
}

TEST_CASE("coproduct is a homomorphism on the tensor product") {
  Fixture f(Series::C, 2, 5);
  const VermaModule M(f.U, spec_mu0(f.D, {2, 3}), 4);
  const TensorSpace T(M, f.rep);
  // [Delta e_a, Delta f_b] = delta_ab [Delta K_a] on every block with both paths defined
  for (std::size_t b = 0; b < T.size(); ++b) {
    const int idx = static_cast<int>(b);
    if (T.block(idx).height > 3) continue;
    for (int a = 0; a < f.D.rank(); ++a) {
      for (int c = 0; c < f.D.rank(); ++c) {
        if (a == c) continue;
        const int up = T.up(idx, c), down = T.down(idx, a);
        if (up < 0 || down < 0) continue;
        const int mid = T.down(up, a);
        REQUIRE(mid == T.up(down, c));
        const Matrix ef = multiply(T.dE(up, a), T.dF(idx, c));
        const Matrix fe = multiply(T.dF(down, c), T.dE(idx, a));
        CHECK(ef == fe);
      }
    }
  }
}
