// Parallel kernels against their serial references.  On a single core the
// two should be close; the gap on more cores is what this measures.

#include "qgclass/qoperator.hpp"

#include <benchmark/benchmark.h>

using namespace qgclass;

namespace {

struct Fixture {
  RootDatum D{Series::C, 2};
  NaturalRep rep{D};
  WeightSpec spec = spec_from_mu_bar(D, TorusConstants{{Coef(2), Coef(3)}}, {0, 0});
};

Exec exec_of(const benchmark::State& st) { return st.range(0) ? Exec::parallel : Exec::serial; }

void BM_GradedBasis(benchmark::State& st) {
  const RootDatum D(Series::D, 4);
  for (auto _ : st) {
    GradedBasis U(D, 6, exec_of(st));
    benchmark::DoNotOptimize(U.size());
  }
}

void BM_Module(benchmark::State& st) {
  Fixture f;
  const GradedBasis U(f.D, 8);
  for (auto _ : st) {
    VermaModule M(U, f.spec, 8, nullptr, exec_of(st));
    benchmark::DoNotOptimize(M.depth());
  }
}

void BM_Filtration(benchmark::State& st) {
  Fixture f;
  const GradedBasis U(f.D, 7);
  const VermaModule M(U, f.spec, 6);
  const TensorSpace T(M, f.rep);
  for (auto _ : st) {
    auto V = standard_filtration(T, 6, exec_of(st));
    benchmark::DoNotOptimize(V.size());
  }
}

void BM_QOperator(benchmark::State& st) {
  Fixture f;
  const GradedBasis U(f.D, 7);
  const VermaModule M(U, f.spec, 6);
  const TensorSpace T(M, f.rep);
  const QConvention c = q_conventions().front();
  for (auto _ : st) {
    QOperator Q(T, c, 6, exec_of(st));
    benchmark::DoNotOptimize(Q.max_height());
  }
}

void BM_Multiply(benchmark::State& st) {
  const std::size_t n = 40;
  Matrix a(n, n), b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = Scalar::v_power(static_cast<int>(i + j) % 5) + Scalar(static_cast<long>(i));
      b(i, j) = Scalar(Poly(Coef(1)), Poly::from_terms({{0, Coef(1)}, {1, Coef(static_cast<long>(j % 3 + 1))}}));
    }
  for (auto _ : st) {
    Matrix c = st.range(0) ? multiply(a, b) : multiply_serial(a, b);
    benchmark::DoNotOptimize(c.rows());
  }
}

}  // namespace

BENCHMARK(BM_GradedBasis)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Module)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Filtration)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_QOperator)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Multiply)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
