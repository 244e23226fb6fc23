#include "qgclass/suite.hpp"

#include "qgclass/classchar.hpp"
#include "qgclass/shapovalov.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <memory>

namespace qgclass {

namespace {

std::string error_kind(const std::exception& e) {
  if (dynamic_cast<const RegularityError*>(&e)) return "RegularityError";
  if (dynamic_cast<const DegenerateSingularVector*>(&e)) return "DegenerateSingularVector";
  if (dynamic_cast<const NonGenericError*>(&e)) return "NonGenericError";
  if (dynamic_cast<const PoleError*>(&e)) return "PoleError";
  if (dynamic_cast<const SpecError*>(&e)) return "SpecError";
  if (dynamic_cast<const ConsistencyError*>(&e)) return "ConsistencyError";
  if (dynamic_cast<const ParseError*>(&e)) return "ParseError";
  return "error";
}

CheckRecord error_record(const std::string& suite, const std::string& name, const std::exception& e) {
  auto r = make_check(suite, name, "construction completes", false);
  r.with("error", error_kind(e)).with("message", e.what());
  return r;
}

CheckRecord skipped(const std::string& suite, const std::string& why) {
  auto r = make_check(suite, "skipped", "depends on a failed construction", true);
  r.status = Status::skipped;
  r.with("reason", why);
  return r;
}

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

struct QBundle {
  std::unique_ptr<VermaModule> M;
  std::unique_ptr<TensorSpace> T;
  std::unique_ptr<QOperator> Q;
};

}  // namespace

Command parse_command(const std::string& name) {
  static const std::map<std::string, Command> names = {
      {"describe", Command::describe}, {"singular", Command::singular}, {"filtration", Command::filtration},
      {"qop", Command::qop},           {"character", Command::character}, {"weyl", Command::weyl},
      {"verify-all", Command::verify_all}};
  auto it = names.find(name);
  if (it == names.end()) throw SpecError("unknown command '" + name + "'");
  return it->second;
}

long kostant_count(const RootDatum& D, const RootCoords& beta) {
  std::vector<RootCoords> roots;
  for (const auto& a : D.positive()) roots.push_back(D.coords(a));
  std::map<std::pair<RootCoords, std::size_t>, long> memo;
  std::function<long(const RootCoords&, std::size_t)> count = [&](const RootCoords& b, std::size_t i) -> long {
    if (i == roots.size()) {
      for (int x : b)
        if (x != 0) return 0;
      return 1;
    }
    const auto key = std::make_pair(b, i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    long total = 0;
    RootCoords cur = b;
    while (true) {
      total += count(cur, i + 1);
      bool ok = true;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        cur[k] -= roots[i][k];
        if (cur[k] < 0) ok = false;
      }
      if (!ok) break;
    }
    memo.emplace(key, total);
    return total;
  };
  return count(beta, 0);
}

CheckList pbw_checks(const GradedBasis& U, int height) {
  std::size_t tested = 0;
  std::string first;
  for (std::size_t i = 0; i < U.size(); ++i) {
    const auto& c = U.comp(i);
    if (c.height > height) break;
    ++tested;
    const long k = kostant_count(U.datum(), c.beta);
    if (static_cast<long>(c.dim()) != k && first.empty()) {
      first = weight_string(U.datum().from_coords(c.beta)) + " dim=" + std::to_string(c.dim()) + " kostant=" + std::to_string(k);
    }
  }
  auto r = make_check("pbw", "dimensions to height " + std::to_string(height), "Serre quotient dimension equals the Kostant count",
                      first.empty());
  r.with("weights", std::to_string(tested));
  if (!first.empty()) r.with("first_mismatch", first);
  return {r};
}

CheckList run_case(const CaseConfig& c0, const RunOptions& opt) {
  CaseConfig c = c0;
  if (opt.depth) c.depth = *opt.depth;
  if (opt.kmax) c.kmax = *opt.kmax;
  CheckList out;
  auto emit = [&](CheckList recs, double ms) {
    for (auto& r : recs) {
      r.name.erase(0, r.name.find_first_not_of(' '));
      r.subject = c.name;
      r.time_ms = ms;
      out.push_back(std::move(r));
    }
  };
  auto wanted = [&](const std::string& suite) {
    switch (opt.command) {
      case Command::verify_all: return c.runs(suite);
      case Command::singular: return suite == "shapovalov";
      case Command::filtration: return suite == "filtration";
      case Command::qop: return suite == "qop";
      case Command::character: return suite == "character";
      case Command::weyl: return suite == "weyl";
      case Command::describe: return false;
    }
    return false;
  };
  auto skip_rest = [&](const std::string& why) {
    CheckList recs;
    for (const auto& s : kSuites)
      if (wanted(s)) recs.push_back(skipped(s, why));
    emit(std::move(recs), 0);
  };

  auto t0 = Clock::now();
  std::unique_ptr<RootDatum> D;
  std::unique_ptr<WeightSpec> spec;
  try {
    D = std::make_unique<RootDatum>(c.series, c.rank);
    spec = std::make_unique<WeightSpec>(make_spec(*D, c));
    for (const auto& sigma : c.weyl) validate_signed_perm(*D, sigma);
  } catch (const std::exception& e) {
    const std::string kind = error_kind(e);
    const bool expected = (c.expect_error == "regularity" && kind == "RegularityError") || (c.expect_error == "spec" && kind == "SpecError");
    if (!c.expect_error.empty()) {
      auto r = make_check("config", "typed error", "a non-regular or invalid case is rejected with a typed error", expected);
      r.with("error", kind).with("message", e.what()).with("expected", c.expect_error);
      emit({r}, ms_since(t0));
      return out;
    }
    emit({error_record("config", "spec", e)}, ms_since(t0));
    skip_rest(kind);
    return out;
  }
  if (!c.expect_error.empty()) {
    auto r = make_check("config", "typed error", "a non-regular or invalid case is rejected with a typed error", false);
    r.with("error", "none").with("expected", c.expect_error);
    emit({r}, ms_since(t0));
    return out;
  }

  if (opt.command == Command::describe) {
    auto r = make_check("describe", "summary", "root datum and stabilizer data", true);
    r.with("text", describe(*D, spec.get()));
    emit({r}, ms_since(t0));
    return out;
  }

  const NaturalRep rep(*D);
  const PosetData poset(rep);

  if (wanted("natural")) {
    t0 = Clock::now();
    auto recs = natural_rep_checks(*D);
    emit(std::move(recs), ms_since(t0));
  }
  if (wanted("pbw")) {
    t0 = Clock::now();
    try {
      const GradedBasis Up(*D, c.pbw_height, opt.exec);
      auto recs = pbw_checks(Up, c.pbw_height);
      emit(std::move(recs), ms_since(t0));
    } catch (const std::exception& e) {
      emit({error_record("pbw", "construction", e)}, ms_since(t0));
    }
  }

  const bool need_algebra = wanted("shapovalov") || wanted("filtration") || wanted("qop") || wanted("character");
  if (!need_algebra && !wanted("weyl")) return out;

  const int bound = pairing_height(*D);
  const int char_depth = std::max(c.depth, bound + 1);
  int cutoff = std::max(c.depth + 2, bound);
  if (wanted("character") && c.character_operator) cutoff = std::max(cutoff, char_depth + 2);

  std::unique_ptr<GradedBasis> U;
  std::unique_ptr<RootElements> R;
  std::unique_ptr<Shapovalov> S;
  std::string algebra_error;
  if (need_algebra) {
    t0 = Clock::now();
    try {
      U = std::make_unique<GradedBasis>(*D, cutoff, opt.exec);
      R = std::make_unique<RootElements>(*U, poset);
      S = std::make_unique<Shapovalov>(*R, *spec);
    } catch (const std::exception& e) {
      emit({error_record("config", "algebra", e)}, ms_since(t0));
      algebra_error = error_kind(e);
    }
  }

  // Module at depth d (plain or quotient), cached.
  std::map<std::pair<bool, int>, std::unique_ptr<VermaModule>> modules;
  auto module = [&](bool quotient, int depth) -> const VermaModule& {
    auto& slot = modules[{quotient, depth}];
    if (!slot) {
      if (quotient)
        slot = std::make_unique<VermaModule>(parabolic_module(*U, *S, depth, opt.exec));
      else
        slot = std::make_unique<VermaModule>(*U, *spec, depth, nullptr, opt.exec);
    }
    return *slot;
  };
  std::map<std::pair<bool, int>, QBundle> qcache;
  auto q_of = [&](bool quotient, int interior) -> const QOperator& {
    QBundle& b = qcache[{quotient, interior}];
    if (!b.Q) {
      b.T = std::make_unique<TensorSpace>(module(quotient, interior + 1), rep, opt.exec);
      b.Q = std::make_unique<QOperator>(build_Q(*b.T, interior, opt.exec));
    }
    return *b.Q;
  };
  std::vector<bool> kinds{false};
  if (!spec->generic()) kinds.push_back(true);
  auto kind_name = [](bool quotient) { return std::string(quotient ? "quotient" : "plain"); };

  if (wanted("shapovalov")) {
    t0 = Clock::now();
    if (!algebra_error.empty()) {
      emit({skipped("shapovalov", algebra_error)}, 0);
    } else {
      try {
        const VermaModule& M = module(false, c.depth);
        std::unique_ptr<TensorSpace> T;
        if (spec->generic()) T = std::make_unique<TensorSpace>(M, rep, opt.exec);
        auto recs = shapovalov_checks(*S, M, T.get(), "");
        emit(std::move(recs), ms_since(t0));
      } catch (const std::exception& e) {
        emit({error_record("shapovalov", "construction", e)}, ms_since(t0));
      }
    }
  }

  if (wanted("filtration")) {
    for (bool quotient : kinds) {
      t0 = Clock::now();
      if (!algebra_error.empty()) {
        emit({skipped("filtration", algebra_error)}, 0);
        break;
      }
      try {
        const VermaModule& M = module(quotient, c.depth);
        CheckList recs = module_relation_checks(M, kind_name(quotient));
        const TensorSpace T(M, rep, opt.exec);
        const auto V = standard_filtration(T, c.depth, opt.exec);
        for (auto& r : filtration_checks(T, V, c.depth, kind_name(quotient))) recs.push_back(std::move(r));
        emit(std::move(recs), ms_since(t0));
      } catch (const std::exception& e) {
        emit({error_record("filtration", kind_name(quotient) + " construction", e)}, ms_since(t0));
      }
    }
  }

  if (wanted("qop")) {
    for (bool quotient : kinds) {
      t0 = Clock::now();
      if (!algebra_error.empty()) {
        emit({skipped("qop", algebra_error)}, 0);
        break;
      }
      const std::string tag = kind_name(quotient);
      try {
        const QOperator& Q = q_of(quotient, c.depth);
        CheckList recs;
        recs.push_back(make_check("qop", tag + " convention", "an R-matrix convention yields an intertwiner", true)
                           .with("convention", Q.convention().to_string()));
        for (auto& r : q_intertwining_checks(Q, c.depth, tag)) recs.push_back(std::move(r));
        if (c.oracle) {
          try {
            const auto X = commutant_oracle(Q.space(), c.depth);
            std::size_t differ = 0;
            for (std::size_t i = 0; i < X.size(); ++i)
              if (!(X[i] == Q.block(static_cast<int>(i)))) ++differ;
            recs.push_back(make_check("qop", tag + " oracle", "build_Q equals the commutant solution", differ == 0)
                               .with("blocks", std::to_string(X.size()))
                               .with("differing_blocks", std::to_string(differ)));
          } catch (const NonGenericError& e) {
            recs.push_back(error_record("qop", tag + " oracle", e));
          }
        }
        const auto V = standard_filtration(Q.space(), c.depth, opt.exec);
        for (auto& r : graded_eigenvalue_checks(Q, V, c.depth, tag)) recs.push_back(std::move(r));
        for (auto& r : minpoly_checks(Q, c.depth, tag)) recs.push_back(std::move(r));
        emit(std::move(recs), ms_since(t0));
      } catch (const std::exception& e) {
        emit({error_record("qop", tag + " construction", e)}, ms_since(t0));
      }
    }
  }

  if (wanted("character")) {
    t0 = Clock::now();
    CheckList recs;
    try {
      for (int k = 1; k <= c.kmax; ++k) {
        const auto v = chi_tau_formula(*D, *spec, k);
        recs.push_back(make_check("character", "formula k=" + std::to_string(k), "closed formula evaluates", true)
                           .with("value", v.value.to_string()));
      }
      if (D->series() == Series::D) {
        recs.push_back(make_check("character", "tau-minus", "closed formula evaluates", true)
                           .with("value", chi_tau_minus_formula(*D, *spec).value.to_string()));
        for (auto& r : tau_minus_checks(*D, *spec, "")) recs.push_back(std::move(r));
      }
    } catch (const std::exception& e) {
      recs.push_back(error_record("character", "formula", e));
    }
    emit(std::move(recs), ms_since(t0));
    if (c.character_operator) {
      for (bool quotient : kinds) {
        t0 = Clock::now();
        if (!algebra_error.empty()) {
          emit({skipped("character", algebra_error)}, 0);
          break;
        }
        try {
          const QOperator& Q = q_of(quotient, char_depth);
          emit(character_checks(Q, c.kmax, kind_name(quotient)), ms_since(t0));
        } catch (const std::exception& e) {
          emit({error_record("character", kind_name(quotient) + " operator", e)}, ms_since(t0));
        }
      }
    }
  }

  if (wanted("weyl")) {
    t0 = Clock::now();
    CheckList recs;
    const auto sigmas = c.weyl.empty() ? weyl_samples(*D, *spec, static_cast<std::size_t>(c.weyl_count)) : c.weyl;
    recs.push_back(make_check("weyl", "samples", "nontrivial Weyl elements preserving R_k^+", !sigmas.empty())
                       .with("requested", std::to_string(c.weyl.empty() ? c.weyl_count : static_cast<int>(c.weyl.size())))
                       .with("available", std::to_string(sigmas.size())));
    for (const auto& sigma : sigmas) {
      try {
        for (auto& r : weyl_orbit_compare(*D, *spec, sigma, c.kmax, "")) recs.push_back(std::move(r));
      } catch (const std::exception& e) {
        recs.push_back(error_record("weyl", "sigma=" + sigma.to_string(), e));
      }
    }
    emit(std::move(recs), ms_since(t0));
  }
  return out;
}

CheckList run_config(const RunConfig& cfg, const RunOptions& opt) {
  CheckList out;
  for (const auto& c : cfg.cases) {
    auto recs = run_case(c, opt);
    out.insert(out.end(), std::make_move_iterator(recs.begin()), std::make_move_iterator(recs.end()));
  }
  return out;
}

}  // namespace qgclass
