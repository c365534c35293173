#include "matchcert/certify.hpp"

#include <algorithm>
#include <deque>
#include <utility>

#include "matchcert/linear.hpp"

namespace matchcert {

const char* concept_name(SolutionConcept c) {
  switch (c) {
    case SolutionConcept::NoTrade:
      return "no-trade-stable";
    case SolutionConcept::Ntu:
      return "ntu-stable";
    case SolutionConcept::Tu:
      return "tu-stable";
    case SolutionConcept::ExAnte:
      return "ex-ante-pareto";
    case SolutionConcept::ExPost:
      return "ex-post-pareto";
  }
  throw InternalError("unknown solution concept");
}

ConceptVerdict is_no_trade_stable(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  ConceptVerdict out{SolutionConcept::NoTrade, true, {}, "pairwise-scan"};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i != k && (d.R(i, k) + d.S(i, k)).sign() < 0) {
        out.holds = false;
        out.certificate = PairViolation{i, d.original_woman(k)};
        return out;
      }
    }
  }
  // The zero transfer vector already supports every pair, which is precisely
  // what makes the matching stable without trade.
  out.certificate = TransferVector{std::vector<Rational>(n, Rational(0))};
  return out;
}

ConceptVerdict is_ntu_stable(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  ConceptVerdict out{SolutionConcept::Ntu, true, {}, "pairwise-scan"};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i != k && d.R(i, k).sign() < 0 && d.S(i, k).sign() < 0) {
        out.holds = false;
        out.certificate = BlockingPair{i, d.original_woman(k)};
        return out;
      }
    }
  }
  return out;
}

ConceptVerdict is_tu_stable(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  // Transfers exist iff the difference constraints T_k - T_i <= R(i,k)+S(i,k)
  // admit a solution; a negative cycle is a rematch that raises total surplus.
  DifferenceConstraints g;
  g.num_vars = n;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k) g.arcs.push_back({i, k, d.R(i, k) + d.S(i, k)});
  DifferenceResult res = difference_constraints_solve(g);
  ConceptVerdict out{SolutionConcept::Tu, res.feasible, {}, "difference-constraints"};
  if (res.feasible)
    out.certificate = TransferVector{std::move(res.potentials)};
  else
    out.certificate = ImprovingCycle{std::move(res.negative_cycle)};
  return out;
}

namespace {

// Feasibility of the scaled-potential system
//   v_k - v_i <= lambda_i * R(i,k) + mu_k * S(i,k)     (lambda, mu >= 1)
// or, when `s` is null, of the single-scale variant using matrix `r` alone.
// Returns the witness split into (v, lambda, mu); mu stays empty without `s`.
std::optional<AfriatWitness> scaling_witness(const RMat& r, const RMat* s) {
  const int n = r.rows();
  const int nv = s ? 3 * n : 2 * n;
  LinearSystem sys;
  sys.num_vars = nv;
  sys.lower_bounds.assign(nv, std::nullopt);
  for (int i = n; i < nv; ++i) sys.lower_bounds[i] = Rational(1);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      std::vector<Rational> a(nv, Rational(0));
      a[k] += 1;
      a[i] -= 1;
      a[n + i] -= r(i, k);
      if (s) a[2 * n + k] -= (*s)(i, k);
      sys.add_row(std::move(a), Rel::Le, Rational(0));
    }
  }
  FeasibilityResult fr = lp_feasible(sys);
  if (!fr.feasible) return std::nullopt;
  AfriatWitness w;
  w.v.assign(fr.witness.begin(), fr.witness.begin() + n);
  w.lambda.assign(fr.witness.begin() + n, fr.witness.begin() + 2 * n);
  if (s) w.mu.assign(fr.witness.begin() + 2 * n, fr.witness.end());
  return w;
}

}  // namespace

ConceptVerdict is_ex_ante_pareto(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  // Look for the best lottery improvement directly.  pi ranges over doubly
  // stochastic matrices in couple indexing, x_i / y_k are the agents' expected
  // gains over the matching, forced nonnegative:
  //   maximize  sum x + sum y
  //   x_i + sum_k pi(i,k) R(i,k) = 0        (man i's gain)
  //   y_k + sum_i pi(i,k) S(i,k) = 0        (woman k's gain)
  //   pi doubly stochastic, pi, x, y >= 0.
  // The matching itself (pi = identity) is feasible with value 0, so the
  // optimum is positive exactly when some lottery dominates.
  const int npi = n * n;
  LinearSystem sys;
  sys.num_vars = npi + 2 * n;
  sys.lower_bounds.assign(sys.num_vars, Rational(0));
  auto pivar = [n](int i, int k) { return i * n + k; };
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> a(sys.num_vars, Rational(0));
    a[npi + i] = 1;
    for (int k = 0; k < n; ++k) a[pivar(i, k)] = d.R(i, k);
    sys.add_row(std::move(a), Rel::Eq, Rational(0));
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> a(sys.num_vars, Rational(0));
    a[npi + n + k] = 1;
    for (int i = 0; i < n; ++i) a[pivar(i, k)] = d.S(i, k);
    sys.add_row(std::move(a), Rel::Eq, Rational(0));
  }
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> a(sys.num_vars, Rational(0));
    for (int k = 0; k < n; ++k) a[pivar(i, k)] = 1;
    sys.add_row(std::move(a), Rel::Eq, Rational(1));
  }
  for (int k = 0; k < n; ++k) {
    std::vector<Rational> a(sys.num_vars, Rational(0));
    for (int i = 0; i < n; ++i) a[pivar(i, k)] = 1;
    sys.add_row(std::move(a), Rel::Eq, Rational(1));
  }
  std::vector<Rational> cost(sys.num_vars, Rational(0));
  for (int v = npi; v < sys.num_vars; ++v) cost[v] = 1;
  LpResult lp = lp_optimize(sys, cost, /*maximize=*/true);
  if (lp.status != LpStatus::Optimal)
    throw InternalError("lottery improvement program must attain an optimum");
  if (lp.value.sign() < 0) throw InternalError("lottery improvement value cannot be negative");

  ConceptVerdict out{SolutionConcept::ExAnte, lp.value.is_zero(), {}, "improvement-lp"};
  if (!out.holds) {
    FractionalMatching f;
    f.pi = RMat(n, n, Rational(0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) f.pi(i, d.original_woman(k)) = lp.x[pivar(i, k)];
    f.validate();
    out.certificate = DominatingLottery{std::move(f)};
    return out;
  }
  // A zero optimum is equivalent, by LP duality, to the scaled-potential
  // system being solvable; solve it to hand the caller a checkable witness.
  std::optional<AfriatWitness> w = scaling_witness(d.R, &d.S);
  if (!w) throw InternalError("zero improvement value but no scaled potentials found");
  out.certificate = std::move(*w);
  out.method = "improvement-lp+scaling-lp";
  return out;
}

namespace {

// Strongly connected components of the directed graph adj, Tarjan's
// algorithm run with an explicit stack.  Returns component ids.
std::vector<int> scc_ids(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
  std::vector<char> on_stack(n, 0);
  int next_index = 0, next_comp = 0;
  struct Frame {
    int v;
    std::size_t edge;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < adj[f.v].size()) {
        int w = adj[f.v][f.edge++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
          } while (w != f.v);
          ++next_comp;
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return comp;
}

}  // namespace

ConceptVerdict is_ex_post_pareto(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  // Rematch digraph: an arc i -> k means man i and couple k's woman both
  // weakly prefer each other to their partners (R and S both <= 0).  The
  // matching is dominated exactly when a cycle of such arcs contains one on
  // which both strictly prefer, i.e. a strict arc inside a strongly connected
  // component.
  auto q = [&d](int i, int k) { return rmax(d.R(i, k), d.S(i, k)); };
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k && q(i, k).sign() <= 0) adj[i].push_back(k);
  const std::vector<int> comp = scc_ids(adj);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k || comp[i] != comp[k] || q(i, k).sign() >= 0) continue;
      // Close the cycle: shortest arc path k -> i inside the component.
      std::vector<int> prev(n, -1);
      std::deque<int> bfs{k};
      prev[k] = k;
      while (!bfs.empty()) {
        int v = bfs.front();
        bfs.pop_front();
        if (v == i) break;
        for (int w : adj[v]) {
          if (comp[w] != comp[i] || prev[w] != -1) continue;
          prev[w] = v;
          bfs.push_back(w);
        }
      }
      if (prev[i] == -1) throw InternalError("strict arc in a component but no return path");
      std::vector<int> cycle{i};
      for (int v = i; v != k; v = prev[v]) cycle.push_back(prev[v]);
      std::reverse(cycle.begin() + 1, cycle.end());
      ConceptVerdict out{SolutionConcept::ExPost, false, {}, "cycle-graph"};
      out.certificate = ImprovingCycle{std::move(cycle)};
      return out;
    }
  }
  RMat qmat(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k) qmat(i, k) = q(i, k);
  std::optional<AfriatWitness> w = scaling_witness(qmat, nullptr);
  if (!w) throw InternalError("no strict arc in any component but scaled potentials infeasible");
  ConceptVerdict out{SolutionConcept::ExPost, true, {}, "cycle-graph+scaling-lp"};
  out.certificate = std::move(*w);
  return out;
}

CertifyAllResult certify_all(const CardinalMarket& m, const Matching& sigma) {
  CertifyAllResult res;
  res.verdicts.push_back(is_no_trade_stable(m, sigma));
  res.verdicts.push_back(is_ntu_stable(m, sigma));
  res.verdicts.push_back(is_tu_stable(m, sigma));
  res.verdicts.push_back(is_ex_ante_pareto(m, sigma));
  res.verdicts.push_back(is_ex_post_pareto(m, sigma));
  for (const ConceptVerdict& v : res.verdicts) res.pattern.push_back(v.holds ? 'T' : 'F');

  const bool no_trade = res.verdicts[0].holds, ntu = res.verdicts[1].holds,
             tu = res.verdicts[2].holds, ex_ante = res.verdicts[3].holds,
             ex_post = res.verdicts[4].holds;
  auto require = [&res](bool from, bool to, const char* what) {
    if (from && !to)
      throw ImplicationViolationError(std::string("verdict pattern ") + res.pattern +
                                      " breaks the implication " + what);
  };
  require(no_trade, tu, "no-trade-stable => tu-stable");
  require(no_trade, ntu, "no-trade-stable => ntu-stable");
  require(tu, ex_ante, "tu-stable => ex-ante-pareto");
  require(ex_ante, ex_post, "ex-ante-pareto => ex-post-pareto");
  require(ntu, ex_post, "ntu-stable => ex-post-pareto");
  if (m.n() == 2 && !has_ties(m)) {
    require(ex_post, ex_ante, "ex-post-pareto => ex-ante-pareto (two couples, no ties)");
    require(ntu, ex_ante, "ntu-stable => ex-ante-pareto (two couples, no ties)");
  }
  return res;
}

}  // namespace matchcert
