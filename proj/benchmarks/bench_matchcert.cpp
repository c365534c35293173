// Microbenchmarks for the hot paths: certification, stable-set enumeration,
// exact linear algebra and the representation constructions.  All inputs are
// deterministic so runs are comparable across machines and revisions.

#include <benchmark/benchmark.h>

#include <vector>

#include "matchcert/certify.hpp"
#include "matchcert/linear.hpp"
#include "matchcert/poa.hpp"
#include "matchcert/represent.hpp"
#include "matchcert/stable.hpp"

using namespace matchcert;

namespace {

CardinalMarket fixed_market(int n) {
  DetRng rng(1000u + static_cast<unsigned>(n));
  return random_cardinal_market(n, rng);
}

// Cyclic lists: men shift forward, women shift backward, so every one of the
// n shift matchings is stable.  Exercises enumeration on a fat lattice.
OrdinalMarket cyclic_market(int n) {
  OrdinalMarket o;
  o.men_prefs.resize(n);
  o.women_prefs.resize(n);
  for (int i = 0; i < n; ++i) {
    for (int r = 0; r < n; ++r) {
      o.men_prefs[i].push_back((i + r) % n);
      o.women_prefs[i].push_back((i + 1 + r) % n);
    }
  }
  return o;
}

LinearSystem fixed_system(int vars, int rows) {
  DetRng rng(42);
  LinearSystem sys;
  sys.num_vars = vars;
  sys.lower_bounds.assign(vars, std::nullopt);
  for (int j = 0; j < vars; ++j) sys.lower_bounds[j] = Rational(0);
  for (int r = 0; r < rows; ++r) {
    std::vector<Rational> a(vars);
    for (int j = 0; j < vars; ++j) a[j] = Rational(rng.uniform_int(-9, 9), 7);
    sys.add_row(std::move(a), Rel::Le, Rational(rng.uniform_int(1, 20)));
  }
  return sys;
}

void BM_CertifyAll(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CardinalMarket m = fixed_market(n);
  const Matching sigma = Matching::identity(n);
  for (auto _ : state) benchmark::DoNotOptimize(certify_all(m, sigma));
}
BENCHMARK(BM_CertifyAll)->Arg(3)->Arg(5)->Arg(8);

void BM_EnumerateStable(benchmark::State& state) {
  const OrdinalMarket o = cyclic_market(static_cast<int>(state.range(0)));
  for (auto _ : state)
    benchmark::DoNotOptimize(enumerate_stable(o, EnumMethod::Rotations));
}
BENCHMARK(BM_EnumerateStable)->Arg(8)->Arg(16)->Arg(32);

void BM_LpFeasible(benchmark::State& state) {
  const int vars = static_cast<int>(state.range(0));
  const LinearSystem sys = fixed_system(vars, 2 * vars);
  for (auto _ : state) benchmark::DoNotOptimize(lp_feasible(sys));
}
BENCHMARK(BM_LpFeasible)->Arg(6)->Arg(12)->Arg(24);

void BM_Assignment(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DetRng rng(7);
  RMat w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = Rational(rng.uniform_int(-1000, 1000), 1000);
  for (auto _ : state) benchmark::DoNotOptimize(max_weight_assignment_hungarian(w));
}
BENCHMARK(BM_Assignment)->Arg(8)->Arg(16)->Arg(32);

void BM_NoTradeRepresentation(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  DetRng rng(11);
  const OrdinalMarket o = random_ordinal_market(n, rng);
  const Matching target = deferred_acceptance(o, ProposingSide::Men);
  for (auto _ : state) benchmark::DoNotOptimize(no_trade_representation(o, target));
}
BENCHMARK(BM_NoTradeRepresentation)->Arg(4)->Arg(6);

void BM_ExpEnclosure(benchmark::State& state) {
  const Rational x(-3, 2);
  const int terms = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(exp_enclosure(x, terms));
}
BENCHMARK(BM_ExpEnclosure)->Arg(8)->Arg(32);

void BM_WelfareGap(benchmark::State& state) {
  PoaConfig cfg;
  cfg.n = static_cast<int>(state.range(0));
  cfg.g = 2;
  cfg.prize = Rational(10);
  cfg.eps = Rational(1, 100);
  const CardinalMarket m = poa_market(cfg);
  for (auto _ : state) benchmark::DoNotOptimize(welfare_gap(m, cfg.eps));
}
BENCHMARK(BM_WelfareGap)->Arg(4)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
