#include <optional>
#include <vector>

#include "doctest.h"
#include "matchcert/linear.hpp"
#include "matchcert/rng.hpp"

using namespace matchcert;

namespace {

std::vector<Rational> rvec(std::vector<long> v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

// Random system mixing relations, free and bounded variables.
LinearSystem random_system(DetRng& rng, int vars, int rows) {
  LinearSystem sys;
  sys.num_vars = vars;
  sys.lower_bounds.assign(vars, std::nullopt);
  for (int j = 0; j < vars; ++j)
    if (rng.uniform_int(0, 1) == 0) sys.lower_bounds[j] = Rational(rng.uniform_int(-3, 0));
  for (int r = 0; r < rows; ++r) {
    std::vector<Rational> a(vars);
    for (int j = 0; j < vars; ++j) a[j] = Rational(rng.uniform_int(-4, 4));
    const Rel rel = static_cast<Rel>(rng.uniform_int(0, 2));
    sys.add_row(std::move(a), rel, Rational(rng.uniform_int(-6, 6)));
  }
  return sys;
}

}  // namespace

TEST_CASE("feasible system returns a checked witness") {
  LinearSystem sys;
  sys.num_vars = 2;
  sys.lower_bounds = {Rational(0), Rational(0)};
  sys.add_row(rvec({1, 1}), Rel::Le, Rational(4));
  sys.add_row(rvec({1, -1}), Rel::Ge, Rational(-2));

  FeasibilityResult res = lp_feasible(sys);
  CHECK(res.feasible);
  CHECK(witness_valid(sys, res.witness));
}

TEST_CASE("equality rows and free variables") {
  // x + y = 3, x - y = 1 with both free: unique solution (2, 1).
  LinearSystem sys;
  sys.num_vars = 2;
  sys.add_row(rvec({1, 1}), Rel::Eq, Rational(3));
  sys.add_row(rvec({1, -1}), Rel::Eq, Rational(1));
  FeasibilityResult res = lp_feasible(sys);
  REQUIRE(res.feasible);
  CHECK(res.witness[0] == Rational(2));
  CHECK(res.witness[1] == Rational(1));
  CHECK(witness_valid(sys, res.witness));
}

TEST_CASE("infeasible system returns a checked contradiction") {
  LinearSystem sys;
  sys.num_vars = 1;
  sys.add_row(rvec({1}), Rel::Ge, Rational(5));
  sys.add_row(rvec({1}), Rel::Le, Rational(3));
  FeasibilityResult res = lp_feasible(sys);
  CHECK_FALSE(res.feasible);
  CHECK(farkas_valid(sys, res.farkas));
}

TEST_CASE("witness and farkas checkers reject wrong certificates") {
  LinearSystem sys;
  sys.num_vars = 1;
  sys.lower_bounds = {Rational(0)};
  sys.add_row(rvec({1}), Rel::Le, Rational(2));

  CHECK(witness_valid(sys, {Rational(1)}));
  CHECK_FALSE(witness_valid(sys, {Rational(3)}));   // violates the row
  CHECK_FALSE(witness_valid(sys, {Rational(-1)}));  // violates the bound

  FarkasCertificate junk;
  junk.row_mult = {Rational(1)};
  junk.bound_mult = {Rational(0)};
  CHECK_FALSE(farkas_valid(sys, junk));  // system is feasible, nothing combines to 0 > 0
}

TEST_CASE("optimize solves a textbook corner") {
  // max x + y subject to x + 2y <= 4, 3x + y <= 6, x, y >= 0
  LinearSystem sys;
  sys.num_vars = 2;
  sys.lower_bounds = {Rational(0), Rational(0)};
  sys.add_row(rvec({1, 2}), Rel::Le, Rational(4));
  sys.add_row(rvec({3, 1}), Rel::Le, Rational(6));

  LpResult res = lp_optimize(sys, rvec({1, 1}), /*maximize=*/true);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == Rational(14, 5));
  CHECK(res.x[0] == Rational(8, 5));
  CHECK(res.x[1] == Rational(6, 5));
  CHECK(witness_valid(sys, res.x));
}

TEST_CASE("optimize reports unbounded and infeasible correctly") {
  LinearSystem open;
  open.num_vars = 1;
  open.add_row(rvec({1}), Rel::Ge, Rational(0));
  CHECK(lp_optimize(open, rvec({1}), true).status == LpStatus::Unbounded);
  // Minimizing the same direction is bounded at the constraint.
  LpResult res = lp_optimize(open, rvec({1}), false);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == Rational(0));

  LinearSystem closed;
  closed.num_vars = 1;
  closed.add_row(rvec({1}), Rel::Ge, Rational(2));
  closed.add_row(rvec({1}), Rel::Le, Rational(1));
  LpResult bad = lp_optimize(closed, rvec({1}), true);
  CHECK(bad.status == LpStatus::Infeasible);
  CHECK(farkas_valid(closed, bad.farkas));
}

TEST_CASE("optimize ties out exactly on degenerate data") {
  // All-zero objective: any feasible point is optimal with value 0.
  LinearSystem sys;
  sys.num_vars = 2;
  sys.lower_bounds = {Rational(1), Rational(1)};
  sys.add_row(rvec({1, 1}), Rel::Le, Rational(3));
  LpResult res = lp_optimize(sys, rvec({0, 0}), true);
  REQUIRE(res.status == LpStatus::Optimal);
  CHECK(res.value == Rational(0));
  CHECK(witness_valid(sys, res.x));
}

TEST_CASE("every random system yields a valid witness or a valid refutation") {
  DetRng rng(31337);
  int feasible_count = 0, infeasible_count = 0;
  for (int trial = 0; trial < 120; ++trial) {
    const int vars = static_cast<int>(rng.uniform_int(1, 4));
    const int rows = static_cast<int>(rng.uniform_int(1, 5));
    LinearSystem sys = random_system(rng, vars, rows);
    FeasibilityResult res = lp_feasible(sys);
    if (res.feasible) {
      ++feasible_count;
      CHECK(witness_valid(sys, res.witness));
    } else {
      ++infeasible_count;
      CHECK(farkas_valid(sys, res.farkas));
    }
  }
  // The mix must exercise both branches for the test to mean anything.
  CHECK(feasible_count > 10);
  CHECK(infeasible_count > 10);
}

TEST_CASE("difference constraints produce potentials or a negative cycle") {
  DifferenceConstraints ok;
  ok.num_vars = 3;
  ok.arcs = {{0, 1, Rational(2)}, {1, 2, Rational(-1)}, {0, 2, Rational(5)}};
  DifferenceResult res = difference_constraints_solve(ok);
  REQUIRE(res.feasible);
  for (const auto& arc : ok.arcs) {
    CHECK(res.potentials[arc.to] - res.potentials[arc.from] <= arc.w);
  }

  DifferenceConstraints bad;
  bad.num_vars = 2;
  bad.arcs = {{0, 1, Rational(-3)}, {1, 0, Rational(2)}};
  DifferenceResult neg = difference_constraints_solve(bad);
  REQUIRE_FALSE(neg.feasible);
  REQUIRE(neg.negative_cycle.size() >= 2);
}

TEST_CASE("random difference systems are self-certifying") {
  DetRng rng(808);
  auto min_arc = [](const DifferenceConstraints& g, int from, int to) {
    std::optional<Rational> best;
    for (const auto& a : g.arcs)
      if (a.from == from && a.to == to && (!best || a.w < *best)) best = a.w;
    REQUIRE(best.has_value());
    return *best;
  };
  for (int trial = 0; trial < 60; ++trial) {
    DifferenceConstraints g;
    g.num_vars = static_cast<int>(rng.uniform_int(2, 5));
    const int arcs = static_cast<int>(rng.uniform_int(1, 8));
    for (int a = 0; a < arcs; ++a) {
      int from = static_cast<int>(rng.uniform_int(0, g.num_vars - 1));
      int to = static_cast<int>(rng.uniform_int(0, g.num_vars - 1));
      if (from == to) continue;
      g.arcs.push_back({from, to, Rational(rng.uniform_int(-3, 4))});
    }
    DifferenceResult res = difference_constraints_solve(g);
    if (res.feasible) {
      for (const auto& arc : g.arcs)
        CHECK(res.potentials[arc.to] - res.potentials[arc.from] <= arc.w);
    } else {
      const auto& cyc = res.negative_cycle;
      REQUIRE(cyc.size() >= 2);
      Rational total(0);
      for (std::size_t t = 0; t < cyc.size(); ++t)
        total += min_arc(g, cyc[t], cyc[(t + 1) % cyc.size()]);
      CHECK(total < Rational(0));
    }
  }
}

TEST_CASE("assignment solvers agree and refuse oversized exhaustive runs") {
  RMat w(3, 3);
  long vals[3][3] = {{1, 2, 3}, {2, 4, 6}, {3, 6, 9}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w(i, j) = Rational(vals[i][j]);
  AssignmentResult ex = max_weight_assignment_exhaustive(w);
  CHECK(ex.value == Rational(14));
  CHECK(ex.sigma == Matching::identity(3));
  AssignmentResult hu = max_weight_assignment_hungarian(w);
  CHECK(hu.value == ex.value);

  CHECK_THROWS_AS(max_weight_assignment_exhaustive(RMat(9, 9, Rational(0))), SizeLimitError);
}

TEST_CASE("hungarian matches the exhaustive oracle on random instances") {
  DetRng rng(4242);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 6));
    RMat w(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        w(i, j) = Rational(rng.uniform_int(-50, 50), rng.uniform_int(1, 9));
    AssignmentResult ex = max_weight_assignment_exhaustive(w);
    AssignmentResult hu = max_weight_assignment_hungarian(w);
    CHECK(ex.value == hu.value);
    // The dispatcher must return the same optimum too.
    CHECK(max_weight_assignment(w).value == ex.value);
    // hu.sigma must attain hu.value
    Rational attained(0);
    for (int i = 0; i < n; ++i) attained += w(i, hu.sigma.woman_of(i));
    CHECK(attained == hu.value);
  }
}

TEST_CASE("strictly positive solutions and their refutations") {
  RMat identity2(2, 2, Rational(0));
  identity2(0, 0) = identity2(1, 1) = Rational(1);
  PositiveSolutionResult yes = positive_solution_exists(identity2);
  CHECK(yes.exists);
  for (const auto& xi : yes.x) CHECK(xi >= Rational(1));

  RMat balance(2, 2, Rational(0));  // x1 >= x2 and x2 >= x1: any equal pair works
  balance(0, 0) = Rational(1);
  balance(0, 1) = Rational(-1);
  balance(1, 0) = Rational(-1);
  balance(1, 1) = Rational(1);
  CHECK(positive_solution_exists(balance).exists);

  RMat never(1, 2, Rational(0));  // -x1 - x2 >= 0 contradicts positivity
  never(0, 0) = never(0, 1) = Rational(-1);
  PositiveSolutionResult no = positive_solution_exists(never);
  CHECK_FALSE(no.exists);
  CHECK(motzkin_pair_valid(never, no.y, no.z));
}

TEST_CASE("motzkin checker rejects malformed pairs") {
  RMat never(1, 1, Rational(-1));
  PositiveSolutionResult no = positive_solution_exists(never);
  REQUIRE_FALSE(no.exists);
  REQUIRE(motzkin_pair_valid(never, no.y, no.z));

  auto z0 = no.z;
  for (auto& zi : z0) zi = Rational(0);
  CHECK_FALSE(motzkin_pair_valid(never, no.y, z0));  // z must not vanish

  auto yneg = no.y;
  yneg[0] = Rational(-1);
  CHECK_FALSE(motzkin_pair_valid(never, yneg, no.z));  // y must stay nonnegative
}

TEST_CASE("positive-solution decisions are self-certifying on random matrices") {
  DetRng rng(5150);
  int hits = 0, misses = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int rows = static_cast<int>(rng.uniform_int(1, 4));
    const int cols = static_cast<int>(rng.uniform_int(1, 4));
    RMat a(rows, cols);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) a(i, j) = Rational(rng.uniform_int(-3, 3));
    PositiveSolutionResult res = positive_solution_exists(a);
    if (res.exists) {
      ++hits;
      REQUIRE(static_cast<int>(res.x.size()) == cols);
      for (int i = 0; i < rows; ++i) {
        Rational dot(0);
        for (int j = 0; j < cols; ++j) dot += a(i, j) * res.x[j];
        CHECK(dot >= Rational(0));
      }
      for (const auto& xj : res.x) CHECK(xj >= Rational(1));
    } else {
      ++misses;
      CHECK(motzkin_pair_valid(a, res.y, res.z));
    }
  }
  CHECK(hits > 5);
  CHECK(misses > 5);
}
