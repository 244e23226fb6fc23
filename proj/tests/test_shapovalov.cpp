#include <doctest.h>

#include "qgclass/shapovalov.hpp"

using namespace qgclass;

namespace {

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

const CheckRecord* find_check(const CheckList& l, const std::string& needle) {
  for (const auto& c : l)
    if (c.name.find(needle) != std::string::npos) return &c;
  return nullptr;
}

std::string witness(const CheckRecord& c, const std::string& key) {
  for (const auto& [k, v] : c.witness)
    if (k == key) return v;
  return {};
}

}  // namespace

TEST_CASE("root vectors have the weight eps_i - eps_j") {
  Fixture f(Series::B, 2, 4);
  for (int i = 0; i < f.D.N(); ++i)
    for (int j = i + 1; j < f.D.N(); ++j) {
      if (!f.R.has(i, j)) continue;
      const Element& e = f.R.f(i, j);
      CHECK(e.weight == f.D.coords(f.D.eps(i) - f.D.eps(j)));
      CHECK(!is_zero(e.coords));
    }
}

TEST_CASE("generic columns are singular") {
  for (auto [series, n, s] : std::vector<std::tuple<Series, int, std::vector<Coef>>>{
           {Series::C, 2, {2, 3}}, {Series::B, 2, {2, 3}}, {Series::D, 3, {2, 3, 5}}}) {
    Fixture f(series, n, 2 * n + 1);
    CAPTURE(f.D.name());
    const auto spec = spec_mu0(f.D, s);
    const Shapovalov S(f.R, spec);
    const int depth = f.D.N() - 1;
    const VermaModule M(f.U, spec, depth);
    const TensorSpace T(M, f.rep);
    const auto checks = shapovalov_checks(S, M, &T, "g");
    const auto* cols = find_check(checks, "singular-columns");
    REQUIRE(cols);
    CHECK(cols->status == Status::pass);
    const auto* eof = find_check(checks, "e-on-f");
    REQUIRE(eof);
    CHECK(eof->status == Status::pass);
  }
}

TEST_CASE("A^j_m vanishes at v = 1 across blocks") {
  Fixture f(Series::C, 2, 4);
  const Shapovalov S(f.R, spec_mu0(f.D, {2, 3}));
  for (int m = 0; m < f.D.N(); ++m)
    for (int j = 0; j < f.D.N(); ++j)
      if (f.poset.less(m, j)) CHECK(evaluate_at(S.A(m, j), Coef(1)).is_zero());
}

TEST_CASE("A has a pole on a Levi wall") {
  Fixture f(Series::C, 2, 4);
  const Shapovalov S(f.R, spec_mu0(f.D, {2, 2}));
  CHECK_THROWS_AS(S.A(0, 1), RegularityError);
  CHECK(S.eta_bracket(0, 1).is_zero());
}

TEST_CASE("Levi and pseudo-Levi singular vectors") {
  for (auto [series, n, s] : std::vector<std::tuple<Series, int, std::vector<Coef>>>{
           {Series::C, 2, {2, 2}},
           {Series::C, 2, {1, Coef::imaginary_unit()}},
           {Series::B, 2, {2, 2}},
           {Series::D, 4, {2, 2, 3, 5}}}) {
    Fixture f(series, n, 2 * n);
    const auto spec = spec_mu0(f.D, s);
    CAPTURE(spec.label());
    const Shapovalov S(f.R, spec);
    const VermaModule M(f.U, spec, 2 * n - 1);
    const auto gens = singular_generators(S, 2 * n - 1);
    CHECK(gens.size() == spec.Pik.size());
    for (const auto& g : gens) CHECK_NOTHROW(verify_singular(M, g.vec));
    for (const auto& c : shapovalov_checks(S, M, nullptr, "k")) {
      CAPTURE(c.name);
      if (c.name.find("classical-limit") != std::string::npos || c.name.find("singular") != std::string::npos)
        CHECK(c.status == Status::pass);
    }
  }
}

TEST_CASE("classical limit breaks where eps_i and eps_i' share an eigenvalue") {
  // B2 with s = (i, i): x = diag(-1,-1,1,-1,-1) has centralizer so(4), and the
  // route 2 < 2' < 1' meets equal eigenvalues although 2 eps_2 is not a root
  Fixture f(Series::B, 2, 4);
  const auto spec = spec_mu0(f.D, {Coef::imaginary_unit(), Coef::imaginary_unit()});
  const Shapovalov S(f.R, spec);
  const VermaModule M(f.U, spec, 3);
  const auto checks = shapovalov_checks(S, M, nullptr, "k");
  const auto* c = find_check(checks, "classical-limit (1, 1)");
  REQUIRE(c);
  CHECK(c->status == Status::fail);
  CHECK(witness(*c, "failing").find("singular-A@2,1'") != std::string::npos);
  const auto* cl = find_check(checks, "classical-limit (1, -1)");
  REQUIRE(cl);
  CHECK(cl->status == Status::pass);
}
