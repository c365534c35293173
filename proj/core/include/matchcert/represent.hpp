#pragma once

#include <vector>

#include "matchcert/market.hpp"
#include "matchcert/matrix.hpp"

namespace matchcert {

// Rigorous rational bounds on e^x: the argument is halved into [-1/2, 1/2],
// enclosed by a Taylor partial sum with an explicit tail bound, then the
// interval is squared back up.  More terms give tighter bounds.
struct Interval {
  Rational lo, hi;

  Rational width() const { return hi - lo; }
  Rational mid() const { return (lo + hi) / Rational(2); }
};
Interval exp_enclosure(const Rational& x, int terms);

// Builds cardinal utilities that induce exactly the given strict ordinal
// preferences and make the target matching stable without trade: every
// matched pair's joint payoff weakly dominates what any man/woman swap could
// produce.  Matched partners are worth exactly -1/2 to each other; losses
// steepen exponentially down the preference lists, so any swap hurts the
// losing side more than it helps the gaining side.  Throws NotStableError
// when the target is not stable, since such utilities then cannot exist.
CardinalMarket no_trade_representation(const OrdinalMarket& o, const Matching& target);

// Same goal by a different route, available exactly when the target is
// "isolated": every other stable matching is unanimously better or
// unanimously worse for the men.  Utilities count stable matchings -- a man
// values a woman by how many stable outcomes she weakly beats for him, a
// woman values a man by how many he strictly beats -- and small rational
// offsets break the count ties in preference order without disturbing
// stability.  Throws NotMemberError when the target is not stable and
// NotIsolatedError when it is stable but not isolated.
CardinalMarket isolated_representation(const OrdinalMarket& o, const Matching& target);

// Decides whether strictly positive per-agent weights can rescale a cardinal
// market so that the given matching becomes stable without trade.  The
// weights must satisfy one homogeneous inequality per (man, woman) pair; when
// none exist, (y, z) certify that via the transposition identity
// y^T A + z = 0 with y >= 0, z >= 0 and z != 0.
struct WeightingResult {
  bool exists = false;
  std::vector<Rational> men_weights, women_weights;  // filled when exists
  RMat rows;                // the inequality system, one row per (man, woman) pair
  std::vector<Rational> y;  // row multipliers of the impossibility proof
  std::vector<Rational> z;  // column multipliers, not all zero
};
WeightingResult weighted_no_trade_weights(const CardinalMarket& m, const Matching& sigma);

}  // namespace matchcert
