#include "matchcert/poa.hpp"

#include <algorithm>
#include <utility>

#include "matchcert/linear.hpp"
#include "matchcert/stable.hpp"

namespace matchcert {

namespace {

Rational int_pow(long base, int exp) {
  Rational out(1);
  for (int i = 0; i < exp; ++i) out *= Rational(base);
  return out;
}

}  // namespace

void PoaConfig::validate() const {
  if (n < 4 || n % 2 != 0) throw InvalidConfigError("market size must be even and at least 4");
  if (g < 1) throw InvalidConfigError("decay exponent must be at least 1");
  const Rational ng = int_pow(n, g);
  if (!(prize > Rational(n - 2) / ng))
    throw InvalidConfigError("prize must exceed the second-best payoff (n-2)/n^g");
  if (eps.sign() <= 0 || eps > Rational(1, 2 * n))
    throw InvalidConfigError("weight floor must lie in (0, 1/(2n)]");
}

OrdinalMarket poa_preferences(int n) {
  if (n < 4 || n % 2 != 0) throw InvalidConfigError("market size must be even and at least 4");
  const int n1 = n - 1, half = n / 2;
  auto wrap = [n1](int x) { return (x - 1) % n1 + 1; };  // 1-based cycle over 1..n-1
  OrdinalMarket o;
  o.men_prefs.assign(n, {});
  o.women_prefs.assign(n, {});
  // Men 1..n-1 cycle through women 1..n-1 starting at their own index; the
  // last woman is slotted just past the middle.  Man n starts from woman n-1.
  for (int l = 1; l <= n1; ++l) {
    std::vector<int>& p = o.men_prefs[l - 1];
    for (int pos = 1; pos <= n1; ++pos) p.push_back(wrap(l + pos - 1) - 1);
    p.insert(p.begin() + half, n - 1);
  }
  {
    std::vector<int>& p = o.men_prefs[n - 1];
    p.push_back(n - 2);
    for (int j = 1; j <= half - 1; ++j) p.push_back(j - 1);
    p.push_back(n - 1);
    for (int j = half; j <= n - 2; ++j) p.push_back(j - 1);
  }
  // Women 1..n-1 cycle through men starting one past their own index; woman n
  // takes the men in order with man n slotted just past the middle.
  for (int l = 1; l <= n1; ++l) {
    std::vector<int>& p = o.women_prefs[l - 1];
    for (int pos = 1; pos <= n1; ++pos) p.push_back(wrap(l + pos) - 1);
    p.insert(p.begin() + half, n - 1);
  }
  {
    std::vector<int>& p = o.women_prefs[n - 1];
    for (int i = 1; i <= half; ++i) p.push_back(i - 1);
    p.push_back(n - 1);
    for (int i = half + 1; i <= n1; ++i) p.push_back(i - 1);
  }
  o.validate();
  return o;
}

Matching poa_predicted_stable(int n) {
  const int n1 = n - 1, half = n / 2;
  auto wrap = [n1](int x) { return (x - 1) % n1 + 1; };
  std::vector<int> sigma(n);
  for (int l = 1; l <= n1; ++l) sigma[l - 1] = wrap(l + half - 1) - 1;
  sigma[n - 1] = n - 1;
  return Matching(std::move(sigma));
}

CardinalMarket poa_market(const PoaConfig& config) {
  config.validate();
  const int n = config.n;
  const OrdinalMarket o = poa_preferences(n);
  const Rational ng = int_pow(n, config.g);
  auto payoff = [&](int rank) {  // 0-based rank within a preference list
    return rank == 0 ? config.prize : Rational(n - 1 - rank) / ng;
  };
  CardinalMarket m;
  m.U = RMat(n, n, Rational(0));
  m.V = RMat(n, n, Rational(0));
  const auto mr = o.men_ranks(), wr = o.women_ranks();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      m.U(i, j) = payoff(mr[i][j]);
      m.V(i, j) = payoff(wr[j][i]);
    }
  m.validate();
  if (!represents(m, o)) throw InternalError("payoff schedule broke the preference lists");
  return m;
}

GapReport welfare_gap(const CardinalMarket& m, const Rational& eps) {
  m.validate();
  const int n = m.n();
  if (eps.sign() <= 0 || eps > Rational(1, 2 * n))
    throw InvalidConfigError("weight floor must lie in (0, 1/(2n)]");

  GapReport rep;
  rep.n = n;

  // Numerator: minimize sum p + sum q subject to
  //   p_i + q_j >= alpha_i U(i,j) + beta_j V(i,j)   for every pair,
  //   alpha, beta >= eps,  sum alpha + sum beta = 1.
  // For fixed weights the inner minimum equals the max-weight assignment
  // value, so the optimum is the worst such value over admissible weights.
  const int np = 0, nq = n, na = 2 * n, nb = 3 * n, nv = 4 * n;
  LinearSystem sys;
  sys.num_vars = nv;
  sys.lower_bounds.assign(nv, std::nullopt);
  for (int v = na; v < nv; ++v) sys.lower_bounds[v] = eps;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      std::vector<Rational> a(nv, Rational(0));
      a[np + i] = 1;
      a[nq + j] = 1;
      a[na + i] = -m.U(i, j);
      a[nb + j] = -m.V(i, j);
      sys.add_row(std::move(a), Rel::Ge, Rational(0));
    }
  }
  {
    std::vector<Rational> a(nv, Rational(0));
    for (int v = na; v < nv; ++v) a[v] = 1;
    sys.add_row(std::move(a), Rel::Eq, Rational(1));
  }
  std::vector<Rational> cost(nv, Rational(0));
  for (int v = 0; v < 2 * n; ++v) cost[v] = 1;
  const LpResult lp = lp_optimize(sys, cost, /*maximize=*/false);
  if (lp.status != LpStatus::Optimal)
    throw InternalError("welfare floor program must attain an optimum");
  rep.numerator = lp.value;
  rep.alpha.assign(lp.x.begin() + na, lp.x.begin() + nb);
  rep.beta.assign(lp.x.begin() + nb, lp.x.end());

  RMat w(n, n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = rep.alpha[i] * m.U(i, j) + rep.beta[j] * m.V(i, j);
  AssignmentResult best = max_weight_assignment(w);
  if (best.value != rep.numerator)
    throw InternalError("assignment under the minimizing weights missed the program value");
  rep.optimal = std::move(best.sigma);

  // Denominator: the kindest admissible weighting of the best stable
  // matching.  On the weight simplex slice the maximum sits at a vertex:
  // floor weight eps everywhere, the slack on the largest payoff.
  const StableSet stable = enumerate_stable(ordinal_of(m));
  rep.stable_count = stable.size();
  bool first = true;
  for (const Matching& mu : stable.matchings) {
    const auto [pm, pw] = matching_payoffs(m, mu);
    Rational total(0), top = pm[0];
    for (const Rational& x : pm) {
      total += x;
      top = rmax(top, x);
    }
    for (const Rational& x : pw) {
      total += x;
      top = rmax(top, x);
    }
    const Rational value = eps * total + (Rational(1) - Rational(2 * n) * eps) * top;
    if (first || value > rep.denominator) {
      rep.denominator = value;
      rep.best_stable = mu;
      rep.best_stable_men = pm;
      rep.best_stable_women = pw;
      first = false;
    }
  }
  if (rep.denominator.sign() <= 0)
    throw InvalidConfigError("stable welfare is not positive; the gap ratio is undefined");
  rep.ratio = rep.numerator / rep.denominator;
  return rep;
}

std::vector<GapReport> gap_growth_table(const std::vector<int>& sizes, int g,
                                        const Rational& prize, const Rational& eps) {
  std::vector<GapReport> out;
  for (int n : sizes) {
    PoaConfig config{n, g, prize, eps};
    config.validate();
    GapReport rep = welfare_gap(poa_market(config), eps);
    // Guaranteed floor: matching every woman to her first choice is worth at
    // least eps*(n-1)*prize >= eps*n*prize/2, while no stable payoff beats
    // max(1/(2 n^{g-1}), (n/2-1)/n^g).
    const Rational ng = int_pow(n, g);
    const Rational stable_cap = rmax(Rational(n) / (ng * Rational(2)), Rational(n / 2 - 1) / ng);
    const Rational floor = (eps * Rational(n) * prize / Rational(2)) / stable_cap;
    if (rep.ratio < floor) throw InternalError("welfare gap fell below its guaranteed floor");
    out.push_back(std::move(rep));
  }
  return out;
}

}  // namespace matchcert
