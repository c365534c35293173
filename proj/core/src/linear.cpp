#include "matchcert/linear.hpp"

#include <algorithm>
#include <numeric>

#include "matchcert/errors.hpp"

namespace matchcert {

// ===========================================================================
// LinearSystem basics
// ===========================================================================

void LinearSystem::add_row(std::vector<Rational> a, Rel rel, Rational b) {
  if (static_cast<int>(a.size()) != num_vars) {
    throw Error("LinearSystem: row width does not match num_vars");
  }
  rows.push_back(Row{std::move(a), rel, std::move(b)});
}

std::optional<Rational> LinearSystem::lower_bound(int var) const {
  if (lower_bounds.empty()) return std::nullopt;
  return lower_bounds[static_cast<std::size_t>(var)];
}

void LinearSystem::validate() const {
  if (num_vars <= 0) throw Error("LinearSystem: no variables");
  if (!lower_bounds.empty() && static_cast<int>(lower_bounds.size()) != num_vars) {
    throw Error("LinearSystem: lower_bounds size mismatch");
  }
  for (const auto& r : rows) {
    if (static_cast<int>(r.a.size()) != num_vars) {
      throw Error("LinearSystem: row width mismatch");
    }
  }
}

// ===========================================================================
// Certificate checkers (plain substitution)
// ===========================================================================

bool witness_valid(const LinearSystem& sys, const std::vector<Rational>& x) {
  if (static_cast<int>(x.size()) != sys.num_vars) return false;
  for (int j = 0; j < sys.num_vars; ++j) {
    if (auto lb = sys.lower_bound(j); lb && x[j] < *lb) return false;
  }
  for (const auto& row : sys.rows) {
    Rational lhs = 0;
    for (int j = 0; j < sys.num_vars; ++j) lhs += row.a[j] * x[j];
    switch (row.rel) {
      case Rel::Le: if (!(lhs <= row.b)) return false; break;
      case Rel::Ge: if (!(lhs >= row.b)) return false; break;
      case Rel::Eq: if (lhs != row.b) return false; break;
    }
  }
  return true;
}

bool farkas_valid(const LinearSystem& sys, const FarkasCertificate& cert) {
  const int m = static_cast<int>(sys.rows.size());
  if (static_cast<int>(cert.row_mult.size()) != m) return false;
  if (static_cast<int>(cert.bound_mult.size()) != sys.num_vars) return false;

  for (int i = 0; i < m; ++i) {
    if (sys.rows[i].rel != Rel::Eq && cert.row_mult[i] < 0) return false;
  }
  for (int j = 0; j < sys.num_vars; ++j) {
    if (cert.bound_mult[j] < 0) return false;
    if (!sys.lower_bound(j) && !cert.bound_mult[j].is_zero()) return false;
  }

  // Combine rows oriented to ">=": the variable coefficients must cancel and
  // the right-hand sides must sum to something strictly positive.
  std::vector<Rational> combo(sys.num_vars, 0);
  Rational rhs = 0;
  for (int i = 0; i < m; ++i) {
    const auto& row = sys.rows[i];
    const Rational sign = row.rel == Rel::Le ? Rational(-1) : Rational(1);
    const Rational mult = cert.row_mult[i] * sign;
    if (mult.is_zero()) continue;
    for (int j = 0; j < sys.num_vars; ++j) combo[j] += mult * row.a[j];
    rhs += mult * row.b;
  }
  for (int j = 0; j < sys.num_vars; ++j) {
    if (!cert.bound_mult[j].is_zero()) {
      combo[j] += cert.bound_mult[j];
      rhs += cert.bound_mult[j] * *sys.lower_bound(j);
    }
  }
  for (int j = 0; j < sys.num_vars; ++j) {
    if (!combo[j].is_zero()) return false;
  }
  return rhs > 0;
}

// ===========================================================================
// Exact two-phase simplex
// ===========================================================================

namespace {

struct ColInfo {
  enum Kind { Structural, Slack, Artificial } kind;
  int var = -1;   // Structural: variable index
  int sign = 1;   // Structural: +1, or -1 for the negative half of a free var
  int row = -1;   // Slack/Artificial: owning row
};

class Simplex {
 public:
  explicit Simplex(const LinearSystem& sys) : sys_(sys) { build(); }

  // Phase 1.  True means a basic feasible solution is at hand; false means
  // the system is infeasible and farkas() holds a verified certificate.
  bool phase1();

  // Phase 2 for min c^T x; call only after phase1() returned true.
  enum class RunStatus { Optimal, Unbounded };
  RunStatus phase2(const std::vector<Rational>& cost);

  std::vector<Rational> extract_x() const;
  const FarkasCertificate& farkas() const { return farkas_; }

 private:
  void build();
  RunStatus run(bool allow_artificials);
  void pivot(int enter, int r);
  void set_cost_row(const std::vector<Rational>& col_cost);
  void extract_farkas();
  void drive_out_artificials();

  const LinearSystem& sys_;
  int n_cols_ = 0;
  std::vector<ColInfo> cols_;
  std::vector<std::vector<int>> var_cols_;  // variable -> its structural columns
  std::vector<int> slack_col_, art_col_;    // per original row, -1 if absent
  std::vector<int> flip_;                   // per original row: +-1
  std::vector<int> slack_dir_;              // pre-flip slack coefficient (+1 Le, -1 Ge, 0 Eq)

  std::vector<std::vector<Rational>> T_;    // current tableau rows
  std::vector<Rational> bcol_;
  std::vector<int> basis_;                  // column basic in each tableau row
  std::vector<Rational> cr_;                // reduced costs for the current phase
  Rational obj_;

  FarkasCertificate farkas_;
};

void Simplex::build() {
  const int nv = sys_.num_vars;
  const int m = static_cast<int>(sys_.rows.size());

  var_cols_.assign(nv, {});
  for (int v = 0; v < nv; ++v) {
    if (sys_.lower_bound(v)) {
      var_cols_[v] = {static_cast<int>(cols_.size())};
      cols_.push_back({ColInfo::Structural, v, +1, -1});
    } else {
      var_cols_[v] = {static_cast<int>(cols_.size()), static_cast<int>(cols_.size()) + 1};
      cols_.push_back({ColInfo::Structural, v, +1, -1});
      cols_.push_back({ColInfo::Structural, v, -1, -1});
    }
  }

  slack_col_.assign(m, -1);
  art_col_.assign(m, -1);
  flip_.assign(m, 1);
  slack_dir_.assign(m, 0);

  // shifted right-hand sides and orientation flips
  std::vector<Rational> bprime(m);
  for (int i = 0; i < m; ++i) {
    const auto& row = sys_.rows[i];
    Rational b = row.b;
    for (int v = 0; v < nv; ++v) {
      if (auto lb = sys_.lower_bound(v)) b -= row.a[v] * *lb;
    }
    bprime[i] = b;
    flip_[i] = b < 0 ? -1 : 1;
    slack_dir_[i] = row.rel == Rel::Le ? 1 : (row.rel == Rel::Ge ? -1 : 0);
    if (row.rel != Rel::Eq) {
      slack_col_[i] = static_cast<int>(cols_.size());
      cols_.push_back({ColInfo::Slack, -1, 1, i});
    }
    // the slack can start in the basis only if its post-flip coefficient is +1
    if (slack_dir_[i] * flip_[i] != 1) {
      art_col_[i] = static_cast<int>(cols_.size());
      cols_.push_back({ColInfo::Artificial, -1, 1, i});
    }
  }
  n_cols_ = static_cast<int>(cols_.size());

  T_.assign(m, std::vector<Rational>(n_cols_, 0));
  bcol_.resize(m);
  basis_.resize(m);
  for (int i = 0; i < m; ++i) {
    const auto& row = sys_.rows[i];
    const Rational f(flip_[i]);
    for (int v = 0; v < nv; ++v) {
      if (row.a[v].is_zero()) continue;
      for (int c : var_cols_[v]) {
        T_[i][c] = f * Rational(cols_[c].sign) * row.a[v];
      }
    }
    if (slack_col_[i] >= 0) T_[i][slack_col_[i]] = f * Rational(slack_dir_[i]);
    if (art_col_[i] >= 0) T_[i][art_col_[i]] = 1;
    bcol_[i] = f * bprime[i];
    basis_[i] = art_col_[i] >= 0 ? art_col_[i] : slack_col_[i];
  }
}

void Simplex::set_cost_row(const std::vector<Rational>& col_cost) {
  cr_ = col_cost;
  obj_ = 0;
  for (std::size_t i = 0; i < T_.size(); ++i) {
    const Rational& cb = col_cost[basis_[i]];
    if (cb.is_zero()) continue;
    obj_ += cb * bcol_[i];
    for (int j = 0; j < n_cols_; ++j) {
      if (!T_[i][j].is_zero()) cr_[j] -= cb * T_[i][j];
    }
  }
}

void Simplex::pivot(int enter, int r) {
  const Rational p = T_[r][enter];
  if (p.is_zero()) throw InternalError("pivot on a zero element");
  if (p != 1) {
    for (int j = 0; j < n_cols_; ++j) {
      if (!T_[r][j].is_zero()) T_[r][j] /= p;
    }
    bcol_[r] /= p;
  }
  for (std::size_t i = 0; i < T_.size(); ++i) {
    if (static_cast<int>(i) == r) continue;
    const Rational f = T_[i][enter];
    if (f.is_zero()) continue;
    for (int j = 0; j < n_cols_; ++j) {
      if (!T_[r][j].is_zero()) T_[i][j] -= f * T_[r][j];
    }
    bcol_[i] -= f * bcol_[r];
  }
  const Rational d = cr_[enter];
  if (!d.is_zero()) {
    obj_ += d * bcol_[r];
    for (int j = 0; j < n_cols_; ++j) {
      if (!T_[r][j].is_zero()) cr_[j] -= d * T_[r][j];
    }
  }
  basis_[r] = enter;
}

Simplex::RunStatus Simplex::run(bool allow_artificials) {
  const int m = static_cast<int>(T_.size());
  for (;;) {
    // Bland: lowest-index column with a negative reduced cost
    int enter = -1;
    for (int j = 0; j < n_cols_; ++j) {
      if (!allow_artificials && cols_[j].kind == ColInfo::Artificial) continue;
      if (cr_[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return RunStatus::Optimal;

    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (T_[i][enter] > 0) {
        Rational ratio = bcol_[i] / T_[i][enter];
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
    }
    if (leave < 0) return RunStatus::Unbounded;
    pivot(enter, leave);
  }
}

bool Simplex::phase1() {
  bool any_artificial = false;
  for (int c = 0; c < n_cols_; ++c) {
    if (cols_[c].kind == ColInfo::Artificial) any_artificial = true;
  }
  if (!any_artificial) return true;

  std::vector<Rational> cost(n_cols_, 0);
  for (int c = 0; c < n_cols_; ++c) {
    if (cols_[c].kind == ColInfo::Artificial) cost[c] = 1;
  }
  set_cost_row(cost);
  if (run(true) != RunStatus::Optimal) {
    throw InternalError("phase 1 cannot be unbounded");  // costs are bounded below by 0
  }
  if (obj_ > 0) {
    extract_farkas();
    return false;
  }
  drive_out_artificials();
  return true;
}

void Simplex::drive_out_artificials() {
  // Any artificial still basic sits at value zero; swap it for a structural
  // or slack column, or drop the row as redundant if none has a nonzero
  // coefficient.
  for (int i = static_cast<int>(T_.size()) - 1; i >= 0; --i) {
    if (cols_[basis_[i]].kind != ColInfo::Artificial) continue;
    int enter = -1;
    for (int j = 0; j < n_cols_; ++j) {
      if (cols_[j].kind == ColInfo::Artificial) continue;
      if (!T_[i][j].is_zero()) {
        enter = j;
        break;
      }
    }
    if (enter >= 0) {
      pivot(enter, i);
    } else {
      T_.erase(T_.begin() + i);
      bcol_.erase(bcol_.begin() + i);
      basis_.erase(basis_.begin() + i);
    }
  }
}

Simplex::RunStatus Simplex::phase2(const std::vector<Rational>& cost) {
  std::vector<Rational> col_cost(n_cols_, 0);
  for (int c = 0; c < n_cols_; ++c) {
    if (cols_[c].kind == ColInfo::Structural) {
      col_cost[c] = Rational(cols_[c].sign) * cost[cols_[c].var];
    }
  }
  set_cost_row(col_cost);
  return run(false);
}

std::vector<Rational> Simplex::extract_x() const {
  std::vector<Rational> val(n_cols_, 0);
  for (std::size_t i = 0; i < T_.size(); ++i) val[basis_[i]] = bcol_[i];
  std::vector<Rational> x(sys_.num_vars, 0);
  for (int v = 0; v < sys_.num_vars; ++v) {
    if (auto lb = sys_.lower_bound(v)) x[v] = *lb;
    for (int c : var_cols_[v]) x[v] += Rational(cols_[c].sign) * val[c];
  }
  return x;
}

void Simplex::extract_farkas() {
  const int m = static_cast<int>(sys_.rows.size());
  // Simplex multipliers of the phase-1 optimum, one per standardized row.
  std::vector<Rational> z(m);
  for (int i = 0; i < m; ++i) {
    if (art_col_[i] >= 0) {
      z[i] = Rational(1) - cr_[art_col_[i]];
    } else {
      // reduced cost of the slack: 0 - z_i * (flip * dir)
      z[i] = -cr_[slack_col_[i]] * Rational(flip_[i]) * Rational(slack_dir_[i]);
    }
  }

  farkas_.row_mult.assign(m, 0);
  farkas_.bound_mult.assign(sys_.num_vars, 0);
  std::vector<Rational> w(m);  // multiplier on the unflipped shifted row
  for (int i = 0; i < m; ++i) {
    w[i] = Rational(flip_[i]) * z[i];
    farkas_.row_mult[i] = sys_.rows[i].rel == Rel::Le ? -w[i] : w[i];
  }
  for (int v = 0; v < sys_.num_vars; ++v) {
    Rational colsum = 0;
    for (int i = 0; i < m; ++i) {
      if (!sys_.rows[i].a[v].is_zero()) colsum += w[i] * sys_.rows[i].a[v];
    }
    if (sys_.lower_bound(v)) {
      farkas_.bound_mult[v] = -colsum;
    } else if (!colsum.is_zero()) {
      throw InternalError("Farkas extraction: free column does not cancel");
    }
  }
  if (!farkas_valid(sys_, farkas_)) {
    throw InternalError("Farkas extraction produced an invalid certificate");
  }
}

}  // namespace

FeasibilityResult lp_feasible(const LinearSystem& sys) {
  sys.validate();
  FeasibilityResult res;
  Simplex s(sys);
  if (!s.phase1()) {
    res.feasible = false;
    res.farkas = s.farkas();
    return res;
  }
  res.feasible = true;
  res.witness = s.extract_x();
  if (!witness_valid(sys, res.witness)) {
    throw InternalError("simplex produced an invalid feasibility witness");
  }
  return res;
}

LpResult lp_optimize(const LinearSystem& sys, const std::vector<Rational>& cost, bool maximize) {
  sys.validate();
  if (static_cast<int>(cost.size()) != sys.num_vars) {
    throw Error("lp_optimize: cost size mismatch");
  }
  LpResult res;
  Simplex s(sys);
  if (!s.phase1()) {
    res.status = LpStatus::Infeasible;
    res.farkas = s.farkas();
    return res;
  }
  std::vector<Rational> c = cost;
  if (maximize) {
    for (auto& v : c) v = -v;
  }
  if (s.phase2(c) == Simplex::RunStatus::Unbounded) {
    res.status = LpStatus::Unbounded;
    return res;
  }
  res.status = LpStatus::Optimal;
  res.x = s.extract_x();
  if (!witness_valid(sys, res.x)) {
    throw InternalError("simplex optimum violates the constraints");
  }
  res.value = 0;
  for (int j = 0; j < sys.num_vars; ++j) res.value += cost[j] * res.x[j];
  return res;
}

// ===========================================================================
// Difference constraints
// ===========================================================================

DifferenceResult difference_constraints_solve(const DifferenceConstraints& g) {
  const int n = g.num_vars;
  DifferenceResult res;
  for (const auto& arc : g.arcs) {
    if (arc.from < 0 || arc.from >= n || arc.to < 0 || arc.to >= n) {
      throw Error("difference constraint arc out of range");
    }
  }

  // Implicit super source: all distances start at zero, so one extra sweep
  // past convergence can only mean a negative cycle.
  std::vector<Rational> dist(n, 0);
  std::vector<int> parent(n, -1);  // arc index that last improved the vertex
  int last_updated = -1;
  bool changed = true;
  for (int pass = 0; pass < n + 1 && changed; ++pass) {
    changed = false;
    for (std::size_t a = 0; a < g.arcs.size(); ++a) {
      const auto& arc = g.arcs[a];
      if (dist[arc.from] + arc.w < dist[arc.to]) {
        dist[arc.to] = dist[arc.from] + arc.w;
        parent[arc.to] = static_cast<int>(a);
        last_updated = arc.to;
        changed = true;
      }
    }
  }
  if (changed) {
    // The (n+1)-th sweep still relaxed something.  Walking n parent links
    // from the last updated vertex lands inside a cycle of the parent graph;
    // collect it from there.
    int probe = last_updated;
    for (int k = 0; k < n; ++k) {
      if (parent[probe] < 0) throw InternalError("parent walk left the relaxed region");
      probe = g.arcs[parent[probe]].from;
    }
    std::vector<int> cycle;
    int v = probe;
    do {
      cycle.push_back(v);
      if (parent[v] < 0 || static_cast<int>(cycle.size()) > n) {
        throw InternalError("parent walk did not close into a cycle");
      }
      v = g.arcs[parent[v]].from;
    } while (v != probe);
    std::reverse(cycle.begin(), cycle.end());

    Rational total = 0;
    for (std::size_t k = 0; k < cycle.size(); ++k) {
      const int f = cycle[k], t = cycle[(k + 1) % cycle.size()];
      bool found = false;
      Rational best;
      for (const auto& arc : g.arcs) {
        if (arc.from == f && arc.to == t && (!found || arc.w < best)) {
          best = arc.w;
          found = true;
        }
      }
      if (!found) throw InternalError("negative cycle uses a missing arc");
      total += best;
    }
    if (!(total < 0)) throw InternalError("extracted cycle is not negative");
    res.feasible = false;
    res.negative_cycle = std::move(cycle);
    return res;
  }

  for (const auto& arc : g.arcs) {
    if (!(dist[arc.to] - dist[arc.from] <= arc.w)) {
      throw InternalError("difference potentials violate an arc");
    }
  }
  res.feasible = true;
  res.potentials = std::move(dist);
  return res;
}

// ===========================================================================
// Assignment
// ===========================================================================

AssignmentResult max_weight_assignment_exhaustive(const RMat& w) {
  const int n = w.rows();
  if (n > 8) throw SizeLimitError("exhaustive assignment limited to n <= 8");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<int> best_perm;
  Rational best;
  bool first = true;
  do {
    Rational v = 0;
    for (int i = 0; i < n; ++i) v += w(i, perm[i]);
    if (first || v > best) {
      best = v;
      best_perm = perm;
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return {Matching(best_perm), best};
}

AssignmentResult max_weight_assignment_hungarian(const RMat& w) {
  const int n = w.rows();
  // Minimize the negated weights; classic potential/augmenting-path scheme,
  // exact because every comparison is rational.
  auto cost = [&](int i, int j) { return -w(i, j); };

  std::vector<Rational> u(n + 1, 0), v(n + 1, 0), minv(n + 1, 0);
  std::vector<int> p(n + 1, -1), way(n + 1, 0);
  std::vector<char> inf(n + 1), used(n + 1);

  for (int i = 0; i < n; ++i) {
    p[n] = i;  // column n is the virtual start
    int j0 = n;
    std::fill(minv.begin(), minv.end(), Rational(0));
    std::fill(inf.begin(), inf.end(), 1);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      bool have_delta = false;
      Rational delta;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        const Rational cur = cost(i0, j) - u[i0] - v[j];
        if (inf[j] || cur < minv[j]) {
          minv[j] = cur;
          inf[j] = 0;
          way[j] = j0;
        }
        if (!inf[j] && (!have_delta || minv[j] < delta)) {
          delta = minv[j];
          j1 = j;
          have_delta = true;
        }
      }
      if (!have_delta) throw InternalError("assignment: no augmenting step");
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else if (!inf[j]) {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != -1);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != n);
  }

  std::vector<int> sigma(n);
  for (int j = 0; j < n; ++j) sigma[p[j]] = j;
  Matching mu{sigma};
  Rational value = 0;
  for (int i = 0; i < n; ++i) value += w(i, mu.woman_of(i));
  return {std::move(mu), value};
}

AssignmentResult max_weight_assignment(const RMat& w) {
  if (w.rows() != w.cols()) throw Error("assignment matrix must be square");
  return w.rows() <= 8 ? max_weight_assignment_exhaustive(w)
                       : max_weight_assignment_hungarian(w);
}

// ===========================================================================
// Strictly positive solutions of A x >= 0
// ===========================================================================

PositiveSolutionResult positive_solution_exists(const RMat& A) {
  const int rows = A.rows(), cols = A.cols();
  if (rows == 0 || cols == 0) throw Error("positive_solution_exists: empty matrix");

  // Homogeneity lets us replace "x > 0" with "x >= 1".
  LinearSystem sys;
  sys.num_vars = cols;
  sys.lower_bounds.assign(cols, Rational(1));
  for (int i = 0; i < rows; ++i) {
    std::vector<Rational> a(cols);
    for (int j = 0; j < cols; ++j) a[j] = A(i, j);
    sys.add_row(std::move(a), Rel::Ge, 0);
  }

  PositiveSolutionResult res;
  FeasibilityResult f = lp_feasible(sys);
  if (f.feasible) {
    res.exists = true;
    res.x = std::move(f.witness);
    return res;
  }
  res.exists = false;
  res.y = std::move(f.farkas.row_mult);
  res.z = std::move(f.farkas.bound_mult);
  // cosmetic: scale the certificate so its largest entry is 1
  Rational top = 0;
  for (const auto& v : res.y) top = rmax(top, v);
  for (const auto& v : res.z) top = rmax(top, v);
  if (top > 0) {
    for (auto& v : res.y) v /= top;
    for (auto& v : res.z) v /= top;
  }
  if (!motzkin_pair_valid(A, res.y, res.z)) {
    throw InternalError("positive_solution_exists: invalid dual pair");
  }
  return res;
}

bool motzkin_pair_valid(const RMat& A, const std::vector<Rational>& y,
                        const std::vector<Rational>& z) {
  const int rows = A.rows(), cols = A.cols();
  if (static_cast<int>(y.size()) != rows || static_cast<int>(z.size()) != cols) return false;
  for (const auto& v : y) {
    if (v < 0) return false;
  }
  bool z_nonzero = false;
  for (const auto& v : z) {
    if (v < 0) return false;
    if (v > 0) z_nonzero = true;
  }
  if (!z_nonzero) return false;
  for (int j = 0; j < cols; ++j) {
    Rational s = z[j];
    for (int i = 0; i < rows; ++i) s += y[i] * A(i, j);
    if (!s.is_zero()) return false;
  }
  return true;
}

}  // namespace matchcert
