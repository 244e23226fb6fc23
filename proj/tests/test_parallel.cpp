#include <doctest.h>

#include "qgclass/qoperator.hpp"
#include "qgclass/shapovalov.hpp"

#include <omp.h>

#include <random>

using namespace qgclass;

// Each OpenMP kernel against its serial reference, with more threads than
// cores so that scheduling actually interleaves.

namespace {

struct Threads {
  int saved;
  explicit Threads(int n) : saved(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved); }
};

WeightSpec spec_mu0(const RootDatum& D, std::vector<Coef> s) {
  return spec_from_mu_bar(D, TorusConstants{std::move(s)}, Weight(static_cast<std::size_t>(D.rank()), 0));
}

bool same_subspace(const Subspace& a, const Subspace& b) {
  if (a.blocks.size() != b.blocks.size()) return false;
  for (std::size_t i = 0; i < a.blocks.size(); ++i)
    if (a.blocks[i].rows() != b.blocks[i].rows()) return false;
  return true;
}

}  // namespace

TEST_CASE("matrix product") {
  Threads t(4);
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> c(-3, 3), e(-3, 3);
  Matrix a(7, 9), b(9, 5);
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t j = 0; j < 9; ++j) a(i, j) = Scalar::monomial(Coef(c(rng)), e(rng));
  for (std::size_t i = 0; i < 9; ++i)
    for (std::size_t j = 0; j < 5; ++j) b(i, j) = Scalar::monomial(Coef(c(rng)), e(rng)) + Scalar(1);
  CHECK(multiply(a, b) == multiply_serial(a, b));
}

TEST_CASE("graded basis") {
  Threads t(4);
  const RootDatum D(Series::D, 4);
  const GradedBasis P(D, 5, Exec::parallel), S(D, 5, Exec::serial);
  REQUIRE(P.size() == S.size());
  for (std::size_t i = 0; i < P.size(); ++i) {
    CHECK(P.comp(i).beta == S.comp(i).beta);
    CHECK(P.comp(i).basis == S.comp(i).basis);
    for (std::size_t a = 0; a < P.comp(i).left.size(); ++a) CHECK(P.comp(i).left[a] == S.comp(i).left[a]);
  }
}

TEST_CASE("modules, filtration and Q") {
  Threads t(4);
  const RootDatum D(Series::C, 2);
  const NaturalRep rep(D);
  const PosetData poset(rep);
  const GradedBasis U(D, 6);
  const RootElements R(U, poset);
  const auto spec = spec_mu0(D, {2, 2});
  const Shapovalov S(R, spec);
  const VermaModule Mp = parabolic_module(U, S, 5, Exec::parallel), Ms = parabolic_module(U, S, 5, Exec::serial);
  for (std::size_t i = 0; i < U.size(); ++i) {
    const int idx = static_cast<int>(i);
    if (U.comp(i).height > 5) continue;
    REQUIRE(Mp.dim(idx) == Ms.dim(idx));
    for (int a = 0; a < D.rank(); ++a)
      if (Mp.below(idx, a) >= 0) {
        CHECK(Mp.E(idx, a) == Ms.E(idx, a));
        CHECK(Mp.F(idx, a) == Ms.F(idx, a));
      }
  }
  const TensorSpace Tp(Mp, rep, Exec::parallel), Ts(Ms, rep, Exec::serial);
  REQUIRE(Tp.size() == Ts.size());
  for (std::size_t b = 0; b < Tp.size(); ++b)
    for (int a = 0; a < D.rank(); ++a) {
      CHECK(Tp.dE(static_cast<int>(b), a) == Ts.dE(static_cast<int>(b), a));
      CHECK(Tp.dF(static_cast<int>(b), a) == Ts.dF(static_cast<int>(b), a));
    }
  const auto Vp = standard_filtration(Tp, 4, Exec::parallel), Vs = standard_filtration(Ts, 4, Exec::serial);
  REQUIRE(Vp.size() == Vs.size());
  for (std::size_t j = 0; j < Vp.size(); ++j) CHECK(same_subspace(Vp[j], Vs[j]));
  const QOperator Qp = build_Q(Tp, 4, Exec::parallel), Qs = build_Q(Ts, 4, Exec::serial);
  CHECK(Qp.convention().to_string() == Qs.convention().to_string());
  for (std::size_t b = 0; b < Tp.size(); ++b)
    if (Qp.has(static_cast<int>(b))) CHECK(Qp.block(static_cast<int>(b)) == Qs.block(static_cast<int>(b)));
}
