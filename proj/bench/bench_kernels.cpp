// Kernel timings: the exhaustive rule-validity sweep and the bounded model
// oracle in serial vs parallel, and saturation growth on the circular
// premise family.
#include <benchmark/benchmark.h>

#include "syllog/calculus.hpp"
#include "syllog/hardness.hpp"
#include "syllog/oracle.hpp"
#include "syllog/rules.hpp"

using namespace syllog;

static void BM_RuleValidity(benchmark::State& st) {
  for (auto _ : st) {
    RuleValidityReport rep =
        checkRuleValidity(rulesHStarDagger(), 2, 2, static_cast<int>(st.range(0)));
    benchmark::DoNotOptimize(rep.allValid);
  }
}
BENCHMARK(BM_RuleValidity)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_OracleCounterModel(benchmark::State& st) {
  GammaInstance g = gammaFamily(5);
  for (auto _ : st) {
    OracleConfig cfg;
    cfg.maxSize = 6;
    cfg.jobs = static_cast<int>(st.range(0));
    OracleResult r = boundedCounterModel(g.premises, g.goal, cfg);
    benchmark::DoNotOptimize(r.found);
  }
}
BENCHMARK(BM_OracleCounterModel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

static void BM_SaturateGamma(benchmark::State& st) {
  GammaInstance g = gammaFamily(static_cast<int>(st.range(0)));
  for (auto _ : st) {
    std::vector<Formula> out = saturate(g.premises, rulesH());
    benchmark::DoNotOptimize(out.size());
  }
}
BENCHMARK(BM_SaturateGamma)->Arg(5)->Arg(10)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
