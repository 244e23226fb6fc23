#include <doctest.h>

#include "qgclass/classchar.hpp"

using namespace qgclass;

namespace {

WeightSpec spec_mu0(const RootDatum& D, std::vector<Coef> s) {
  return spec_from_mu_bar(D, TorusConstants{std::move(s)}, Weight(static_cast<std::size_t>(D.rank()), 0));
}

// chi(tau_k) on C1 by hand, L = q^{(lambda, eps_1)}.
Scalar c1_oracle(const Scalar& L, int k) {
  const Scalar q = Scalar::v_power(2);
  auto br = [](const Scalar& x) { return x - x.inverse(); };
  const Scalar den = br(L * L * q * q);
  return L.pow(2 * k) * br(L * L * q.pow(4)) / den + (L.inverse().pow(2 * k) * q.pow(-4 * k)) * br(L * L) / den;
}

}  // namespace

TEST_CASE("C1 closed formula against a hand expansion") {
  const RootDatum D(Series::C, 1);
  for (int s : {2, 5}) {
    const auto spec = spec_mu0(D, {s});
    const Scalar L = spec.power({1});
    for (int k = 0; k <= 3; ++k) CHECK(chi_tau_formula(D, spec, k).value == c1_oracle(L, k));
  }
}

TEST_CASE("formula equals operator trace") {
  for (auto [series, n, s] : std::vector<std::tuple<Series, int, std::vector<Coef>>>{
           {Series::C, 1, {2}}, {Series::B, 1, {3}}, {Series::C, 2, {2, 2}}}) {
    const RootDatum D(series, n);
    const NaturalRep rep(D);
    const int depth = pairing_height(D) + 1;
    const GradedBasis U(D, depth + 2);
    const auto spec = spec_mu0(D, s);
    const VermaModule M(U, spec, depth + 1);
    const TensorSpace T(M, rep);
    const QOperator Q = build_Q(T, depth);
    const auto checks = character_checks(Q, 3, "p");
    CHECK(checks.size() == 7);
    for (const auto& c : checks) {
      CAPTURE(c.name);
      CHECK(c.status == Status::pass);
    }
  }
}

TEST_CASE("q-dimension of the natural representation") {
  const RootDatum D(Series::C, 1);
  const NaturalRep rep(D);
  const GradedBasis U(D, 4);
  const VermaModule M(U, spec_mu0(D, {2}), 3);
  const TensorSpace T(M, rep);
  const QOperator Q = build_Q(T, 2);
  CHECK(chi_tau_operator(Q, 0).value == Scalar::v_power(4) + Scalar::v_power(-4));
}

TEST_CASE("wall point raises") {
  const RootDatum D(Series::C, 1);
  const auto spec = stabilizer_from_spec(D, TorusConstants{{1}}, {-1}, false);
  CHECK_THROWS_AS(chi_tau_formula(D, spec, 1), RegularityError);
}

TEST_CASE("tau minus") {
  const RootDatum D4(Series::D, 4);
  for (const auto& s : std::vector<std::vector<Coef>>{{2, 3, 5, 7}, {2, 2, 3, 5}}) {
    for (const auto& c : tau_minus_checks(D4, spec_mu0(D4, s), "t")) {
      CAPTURE(c.name);
      CHECK(c.status == Status::pass);
    }
  }
  const RootDatum C2(Series::C, 2);
  CHECK_THROWS_AS(chi_tau_minus_formula(C2, spec_mu0(C2, {2, 3})), SpecError);
}

TEST_CASE("Weyl samples") {
  const RootDatum C2(Series::C, 2);
  const auto gen = weyl_samples(C2, spec_mu0(C2, {2, 3}), 5);
  CHECK(gen.size() == 5);
  const auto levi = spec_mu0(C2, {2, 2});
  const auto ls = weyl_samples(C2, levi, 10);
  CHECK(ls.size() >= 3);
  const auto positive = [&](const SignedPerm& s) {
    return std::find(C2.positive().begin(), C2.positive().end(), s.apply(levi.Rk.front())) != C2.positive().end();
  };
  CHECK(std::is_partitioned(ls.begin(), ls.end(), positive));
  CHECK(positive(ls.front()));
  for (const auto& s : ls) {
    CHECK(!s.is_identity());
    for (const auto& c : weyl_orbit_compare(C2, levi, s, 3, "w")) CHECK(c.status != Status::fail);
  }
  const auto pseudo = spec_mu0(C2, {1, Coef::imaginary_unit()});
  const auto ps = weyl_samples(C2, pseudo, 3);
  CHECK(ps.size() == 3);
  for (const auto& s : ps)
    for (const auto& c : weyl_orbit_compare(C2, pseudo, s, 3, "p")) CHECK(c.status != Status::fail);
  CHECK(weyl_samples(RootDatum(Series::C, 1), spec_mu0(RootDatum(Series::C, 1), {2}), 3).size() == 1);
}

TEST_CASE("orbit independence of chi for any sigma") {
  const RootDatum C2(Series::C, 2);
  SignedPerm swap = SignedPerm::identity(2);
  std::swap(swap.perm[0], swap.perm[1]);
  SignedPerm flip = SignedPerm::identity(2);
  flip.sign[1] = -1;
  for (const auto& spec : {spec_mu0(C2, {2, 2}), spec_mu0(C2, {2, 3})}) {
    for (const auto& s : {swap, flip}) {
      const auto image = weyl_shifted(C2, s, spec, false, false);
      for (int k = 1; k <= 3; ++k) CHECK(chi_tau_formula(C2, spec, k).value == chi_tau_formula(C2, image, k).value);
    }
  }
}
