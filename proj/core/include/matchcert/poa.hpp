#pragma once

#include <vector>

#include "matchcert/market.hpp"

namespace matchcert {

// Family of markets whose stable outcomes waste almost all achievable
// welfare.  Preferences are cyclic shifts arranged so that exactly one
// matching is stable and it hands everybody a mid-list partner, while
// utilities concentrate nearly everything on first choices: a top match pays
// `prize`, every later rank r pays (n-1-r)/n^g.  Larger n or g widens the
// gap between stable welfare and what transfers could reach.
struct PoaConfig {
  int n = 4;        // couples; even, at least 4
  int g = 2;        // decay exponent, at least 1
  Rational prize;   // payoff of a first choice; must exceed (n-2)/n^g
  Rational eps;     // smallest admissible welfare weight, 0 < eps <= 1/(2n)

  void validate() const;  // throws InvalidConfigError
};

// The preference lists alone (strict), and the matching they force.
OrdinalMarket poa_preferences(int n);
Matching poa_predicted_stable(int n);

CardinalMarket poa_market(const PoaConfig& config);

// How much welfare the stable outcomes of a strict market leave on the
// table.  Welfare weights range over the simplex slice {alpha, beta >= eps,
// sum = 1}:
//   numerator    min over weights of the best matching's weighted welfare
//                (one linear program; its optimum is met exactly by a
//                max-weight assignment under the minimizing weights)
//   denominator  max over weights and stable matchings of weighted welfare
//                (vertex formula: eps * sum + (1 - 2n*eps) * max payoff)
// A large ratio means even the luckiest stable matching under the kindest
// weights cannot approach what transfers would deliver.
struct GapReport {
  int n = 0;
  Rational numerator, denominator, ratio;
  std::vector<Rational> alpha, beta;  // minimizing weights (men, women)
  Matching optimal;                   // max-weight assignment under them
  int stable_count = 0;
  Matching best_stable;               // stable matching attaining the denominator
  std::vector<Rational> best_stable_men, best_stable_women;  // its payoffs
};
GapReport welfare_gap(const CardinalMarket& m, const Rational& eps);

// One report per size, each checked against the guaranteed floor
//   ratio >= (eps * n * prize / 2) / max(1/(2 n^{g-1}), (n/2 - 1)/n^g).
std::vector<GapReport> gap_growth_table(const std::vector<int>& sizes, int g,
                                        const Rational& prize, const Rational& eps);

}  // namespace matchcert
