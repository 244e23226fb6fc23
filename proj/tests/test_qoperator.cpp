#include <doctest.h>

#include "qgclass/qoperator.hpp"
#include "qgclass/shapovalov.hpp"

using namespace qgclass;

namespace {

WeightSpec spec_mu0(const RootDatum& D, std::vector<Coef> s) {
  return spec_from_mu_bar(D, TorusConstants{std::move(s)}, Weight(static_cast<std::size_t>(D.rank()), 0));
}

struct Fixture {
  RootDatum D;
  NaturalRep rep;
  GradedBasis U;
  WeightSpec spec;
  VermaModule M;
  TensorSpace T;
  Fixture(Series s, int n, std::vector<Coef> t, int depth)
      : D(s, n),
        rep(D),
        U(D, std::max(depth + 2, pairing_height(D))),
        spec(spec_mu0(D, std::move(t))),
        M(U, spec, depth + 1),
        T(M, rep) {}
};

void all_pass(const CheckList& l) {
  for (const auto& c : l) {
    CAPTURE(c.name);
    CHECK(c.status == Status::pass);
  }
}

}  // namespace

TEST_CASE("pairing on generators") {
  const RootDatum D(Series::B, 2);
  const QConvention c = q_conventions().front();
  for (int a = 0; a < 2; ++a) {
    CHECK(hopf_pairing(D, c, {a}, {a}) == Scalar(c.c_sign) / D.d(a));
    CHECK(hopf_pairing(D, c, {a}, {1 - a}).is_zero());
  }
  CHECK(hopf_pairing(D, c, {0, 1}, {0}).is_zero());
  CHECK(hopf_pairing(D, c, {}, {}).is_one());
}

TEST_CASE("pairing height") {
  CHECK(pairing_height(RootDatum(Series::B, 2)) == 4);
  CHECK(pairing_height(RootDatum(Series::C, 2)) == 3);
  CHECK(pairing_height(RootDatum(Series::D, 4)) == 6);
}

TEST_CASE("Gram matrices are invertible") {
  const RootDatum D(Series::B, 2);
  const NaturalRep rep(D);
  const GradedBasis U(D, pairing_height(D));
  const PairingTable P(U, rep, q_conventions().front());
  bool saw_mixed = false;
  for (const auto& e : P.entries()) {
    CHECK(multiply(e.gram, e.inverse) == Matrix::identity(e.gram.rows()));
    if (e.mu == RootCoords{1, 1}) {
      saw_mixed = true;
      CHECK(e.gram.rows() == 2);
    }
  }
  CHECK(saw_mixed);
}

TEST_CASE("rank one: build_Q intertwines and equals the oracle") {
  for (auto series : {Series::C, Series::B}) {
    Fixture f(series, 1, {2}, 4);
    const QOperator Q = build_Q(f.T, 4);
    all_pass(q_intertwining_checks(Q, 4, "p"));
    const auto X = commutant_oracle(f.T, 4);
    REQUIRE(!X.empty());
    for (std::size_t i = 0; i < X.size(); ++i) CHECK(X[i] == Q.block(static_cast<int>(i)));
  }
}

TEST_CASE("normalization on w_1 (x) v") {
  Fixture f(Series::C, 2, {2, 3}, 2);
  const QOperator Q = build_Q(f.T, 2);
  const int b = f.T.block_of_index(0);
  const Vec y = matvec(Q.block(b), f.T.generator(0));
  CHECK(y == scaled(f.T.generator(0), f.spec.power(Rational(2) * f.D.eps(0))));
  CHECK(eigenvalue_x(f.D, f.spec, 0) == f.spec.power(Rational(2) * f.D.eps(0)));
  CHECK(convention_passes(Q, 2));
}

TEST_CASE("degenerate point: the commutant is not unique") {
  Fixture f(Series::C, 1, {1}, 3);  // k = g, lambda = 0
  CHECK_THROWS_AS(commutant_oracle(f.T, 3), NonGenericError);
}

TEST_CASE("spectrum on plain and Levi modules") {
  for (auto [series, t] : std::vector<std::pair<Series, std::vector<Coef>>>{
           {Series::C, {2, 3}}, {Series::C, {2, 2}}, {Series::B, {2, 2}}}) {
    Fixture f(series, 2, t, 3);
    CAPTURE(f.spec.label());
    const QOperator Q = build_Q(f.T, 3);
    all_pass(q_intertwining_checks(Q, 3, "p"));
    all_pass(graded_eigenvalue_checks(Q, standard_filtration(f.T, 3), 3, "p"));
    all_pass(minpoly_checks(Q, 3, "p"));
    if (f.spec.generic()) continue;
    const NaturalRep rep(f.D);
    const PosetData poset(rep);
    const RootElements R(f.U, poset);
    const Shapovalov S(R, f.spec);
    const VermaModule Mk = parabolic_module(f.U, S, 4);
    const TensorSpace Tk(Mk, rep);
    const QOperator Qk = build_Q(Tk, 3);
    all_pass(graded_eigenvalue_checks(Qk, standard_filtration(Tk, 3), 3, "k"));
    const auto mp = minpoly_checks(Qk, 3, "k");
    all_pass(mp);
  }
}

TEST_CASE("build_Q needs one level of buffer") {
  Fixture f(Series::C, 1, {2}, 2);
  CHECK_THROWS(build_Q(f.T, 3));
}
