#pragma once

#include <optional>
#include <vector>

#include "matchcert/market.hpp"
#include "matchcert/matrix.hpp"
#include "matchcert/rational.hpp"

namespace matchcert {

// ---------------------------------------------------------------------------
// Linear systems over rational variables
// ---------------------------------------------------------------------------

enum class Rel { Le, Ge, Eq };

// A finite system of linear constraints.  Variables may carry an optional
// lower bound; variables without one are free.  (Upper bounds are expressed
// as rows.)
struct LinearSystem {
  struct Row {
    std::vector<Rational> a;
    Rel rel;
    Rational b;
  };

  int num_vars = 0;
  std::vector<Row> rows;
  // empty, or one entry per variable
  std::vector<std::optional<Rational>> lower_bounds;

  void add_row(std::vector<Rational> a, Rel rel, Rational b);
  std::optional<Rational> lower_bound(int var) const;
  void validate() const;
};

// Infeasibility certificate: nonnegative multipliers that combine the system
// into the contradiction 0 > 0.  Conventions:
//   * row_mult[i] applies to row i oriented as ">=" (Le rows are negated
//     first); it must be >= 0 for Le/Ge rows and may have any sign for Eq
//     rows.
//   * bound_mult[j] applies to the bound x_j >= lb_j and must be >= 0
//     (zero for free variables).
// Validity means: sum_i row_mult[i] * a_i + sum_j bound_mult[j] * e_j = 0
// componentwise while the same combination of right-hand sides is > 0.
struct FarkasCertificate {
  std::vector<Rational> row_mult;
  std::vector<Rational> bound_mult;
};

struct FeasibilityResult {
  bool feasible = false;
  std::vector<Rational> witness;  // satisfies every row and bound
  FarkasCertificate farkas;       // filled when infeasible
};

// Exact two-phase simplex (Bland's rule, so no cycling).
FeasibilityResult lp_feasible(const LinearSystem& sys);

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> x;
  Rational value;
  FarkasCertificate farkas;  // filled when infeasible
};

LpResult lp_optimize(const LinearSystem& sys, const std::vector<Rational>& cost, bool maximize);

// Certificate checkers: straight substitution, sharing no state with the
// solver.
bool witness_valid(const LinearSystem& sys, const std::vector<Rational>& x);
bool farkas_valid(const LinearSystem& sys, const FarkasCertificate& cert);

// ---------------------------------------------------------------------------
// Difference constraints x_to - x_from <= w, solved by Bellman-Ford
// ---------------------------------------------------------------------------

struct DifferenceConstraints {
  struct Arc {
    int from, to;
    Rational w;
  };
  int num_vars = 0;
  std::vector<Arc> arcs;
};

struct DifferenceResult {
  bool feasible = false;
  std::vector<Rational> potentials;  // one per variable when feasible
  // vertices of a negative cycle, in order (closing arc implied)
  std::vector<int> negative_cycle;
};

DifferenceResult difference_constraints_solve(const DifferenceConstraints& g);

// ---------------------------------------------------------------------------
// Maximum-weight perfect assignment
// ---------------------------------------------------------------------------

struct AssignmentResult {
  Matching sigma;
  Rational value;
};

// Exhaustive oracle; refuses n > 8.
AssignmentResult max_weight_assignment_exhaustive(const RMat& w);
// Hungarian algorithm with exact potentials; any n.
AssignmentResult max_weight_assignment_hungarian(const RMat& w);
// Dispatch: exhaustive up to n = 8, Hungarian beyond.
AssignmentResult max_weight_assignment(const RMat& w);

// ---------------------------------------------------------------------------
// Strictly positive solutions of A x >= 0 (transposition theorem)
// ---------------------------------------------------------------------------

// Decides whether some x > 0 satisfies A x >= 0.  Scaling makes this the
// same as feasibility of { A x >= 0, x >= 1 }, so one exact LP call settles
// it.  When no such x exists the dual pair (y, z) comes back:
//   y >= 0, z >= 0, z != 0, y^T A + z^T = 0.
struct PositiveSolutionResult {
  bool exists = false;
  std::vector<Rational> x;  // witness with every component >= 1
  std::vector<Rational> y;  // one multiplier per row of A
  std::vector<Rational> z;  // one multiplier per column of A, not all zero
};

PositiveSolutionResult positive_solution_exists(const RMat& A);
bool motzkin_pair_valid(const RMat& A, const std::vector<Rational>& y,
                        const std::vector<Rational>& z);

}  // namespace matchcert
