#include <cmath>
#include <vector>

#include "doctest.h"
#include "matchcert/certify.hpp"
#include "matchcert/linear.hpp"
#include "matchcert/represent.hpp"
#include "matchcert/stable.hpp"

using namespace matchcert;

namespace {

OrdinalMarket crossed2() {
  OrdinalMarket o;
  o.men_prefs = {{0, 1}, {1, 0}};
  o.women_prefs = {{1, 0}, {0, 1}};
  return o;
}

OrdinalMarket aligned3() {
  OrdinalMarket o;
  o.men_prefs = {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}};
  o.women_prefs = {{2, 1, 0}, {2, 1, 0}, {2, 1, 0}};
  return o;
}

// Two independent 2x2 blocks, each with two stable outcomes.  Every stable
// matching of the product shares a block with some other one, so none of the
// four is isolated.
OrdinalMarket two_blocks4() {
  OrdinalMarket o;
  o.men_prefs = {{0, 1, 2, 3}, {1, 0, 2, 3}, {2, 3, 0, 1}, {3, 2, 0, 1}};
  o.women_prefs = {{1, 0, 2, 3}, {0, 1, 2, 3}, {3, 2, 0, 1}, {2, 3, 0, 1}};
  return o;
}

}  // namespace

TEST_CASE("interval helpers are exact") {
  Interval iv{Rational(1, 4), Rational(3, 4)};
  CHECK(iv.width() == Rational(1, 2));
  CHECK(iv.mid() == Rational(1, 2));
}

TEST_CASE("exp enclosure of zero is the point interval [1, 1]") {
  Interval iv = exp_enclosure(Rational(0), 8);
  CHECK(iv.lo == Rational(1));
  CHECK(iv.hi == Rational(1));
}

TEST_CASE("exp enclosures bracket the true exponential tightly") {
  // e is between 2.718281 and 2.718282.
  Interval e1 = exp_enclosure(Rational(1), 30);
  CHECK(e1.lo > Rational(2718281, 1000000));
  CHECK(e1.hi < Rational(2718282, 1000000));

  // 1/e is between 0.367879 and 0.367880.
  Interval em1 = exp_enclosure(Rational(-1), 30);
  CHECK(em1.lo > Rational(367879, 1000000));
  CHECK(em1.hi < Rational(367880, 1000000));

  // e^{5/2} is between 12.182 and 12.183.
  Interval e52 = exp_enclosure(Rational(5, 2), 30);
  CHECK(e52.lo > Rational(12182, 1000));
  CHECK(e52.hi < Rational(12183, 1000));

  // Even for a large negative argument the bounds stay positive.
  Interval deep = exp_enclosure(Rational(-20), 12);
  CHECK(deep.lo > Rational(0));
  CHECK(deep.hi < Rational(1, 1000000));
}

TEST_CASE("exp enclosure bounds agree with floating point") {
  for (long num : {-7L, -3L, -1L, 1L, 2L, 9L}) {
    const Rational x(num, 3);
    Interval iv = exp_enclosure(x, 24);
    const double truth = std::exp(x.to_double());
    CHECK(iv.lo.to_double() <= truth * (1 + 1e-9));
    CHECK(iv.hi.to_double() >= truth * (1 - 1e-9));
    CHECK(iv.lo < iv.hi);
  }
}

TEST_CASE("more terms never widen an enclosure, few terms are clamped") {
  const Rational x(7, 5);
  Interval coarse = exp_enclosure(x, 1);  // behaves like the minimum, 4 terms
  Interval fine = exp_enclosure(x, 20);
  CHECK(coarse.lo <= fine.lo);
  CHECK(fine.hi <= coarse.hi);
  CHECK(fine.width() < coarse.width());
  Interval clamped = exp_enclosure(x, 4);
  CHECK(clamped.lo == coarse.lo);
  CHECK(clamped.hi == coarse.hi);
}

TEST_CASE("trade-free representation for a two-stable-matching market") {
  OrdinalMarket o = crossed2();
  for (const Matching& target :
       {Matching::identity(2), Matching(std::vector<int>{1, 0})}) {
    CardinalMarket rep = no_trade_representation(o, target);
    CHECK(represents(rep, o));
    CHECK(is_no_trade_stable(rep, target).holds);
    // Matched partners are worth exactly -1/2 to each other.
    for (int i = 0; i < 2; ++i) {
      CHECK(rep.U(i, target.woman_of(i)) == Rational(-1, 2));
      CHECK(rep.V(i, target.woman_of(i)) == Rational(-1, 2));
    }
  }
}

TEST_CASE("trade-free representation rejects blocked targets") {
  OrdinalMarket o = aligned3();
  CHECK_THROWS_AS(no_trade_representation(o, Matching::identity(3)), NotStableError);
  CHECK_THROWS_AS(no_trade_representation(o, Matching::identity(4)), InvalidMatchingError);
}

TEST_CASE("trade-free representation works at every stable matching") {
  DetRng rng(360);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    OrdinalMarket o = random_ordinal_market(n, rng);
    StableSet stable = enumerate_stable(o);
    for (const Matching& mu : stable.matchings) {
      CardinalMarket rep = no_trade_representation(o, mu);
      CHECK(represents(rep, o));
      CHECK(is_no_trade_stable(rep, mu).holds);
      CHECK_FALSE(has_ties(rep));
    }
  }
}

TEST_CASE("count representation covers all isolated matchings at once") {
  OrdinalMarket o = crossed2();
  StableSet stable = enumerate_stable(o);
  REQUIRE(stable.size() == 2);
  CardinalMarket rep = isolated_representation(o, stable.matchings[0]);
  CHECK(represents(rep, o));
  // Both stable matchings are isolated here, and the same utilities make
  // each of them stable without trade.
  for (const Matching& mu : stable.matchings) {
    REQUIRE(is_isolated(o, mu, stable));
    CHECK(is_no_trade_stable(rep, mu).holds);
  }
  // Stably matched pairs all add up to the stable-set size; no pair beats it.
  for (const Matching& mu : stable.matchings)
    for (int i = 0; i < o.n(); ++i) {
      const int w = mu.woman_of(i);
      CHECK(rep.U(i, w) + rep.V(i, w) == Rational(stable.size()));
    }
  for (int i = 0; i < o.n(); ++i)
    for (int w = 0; w < o.n(); ++w)
      CHECK(rep.U(i, w) + rep.V(i, w) <= Rational(stable.size()));
}

TEST_CASE("count representation of a lone stable matching") {
  OrdinalMarket o = aligned3();
  StableSet stable = enumerate_stable(o);
  REQUIRE(stable.size() == 1);
  CardinalMarket rep = isolated_representation(o, stable.matchings[0]);
  CHECK(represents(rep, o));
  CHECK(is_no_trade_stable(rep, stable.matchings[0]).holds);
}

TEST_CASE("count representation refuses non-members and non-isolated targets") {
  OrdinalMarket o = two_blocks4();
  StableSet stable = enumerate_stable(o);
  REQUIRE(stable.size() == 4);  // product of two independent blocks
  for (const Matching& mu : stable.matchings) {
    CHECK_FALSE(is_isolated(o, mu, stable));
    CHECK_THROWS_AS(isolated_representation(o, mu), NotIsolatedError);
  }
  // An unstable matching is rejected as a non-member before isolation is
  // even considered: matching men to their last choices cannot be stable.
  Matching unstable(std::vector<int>{3, 2, 1, 0});
  REQUIRE_FALSE(stable.contains(unstable));
  CHECK_THROWS_AS(isolated_representation(o, unstable), NotMemberError);
}

TEST_CASE("random isolated matchings get working count representations") {
  DetRng rng(271828);
  int built = 0;
  for (int trial = 0; trial < 40 && built < 12; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    OrdinalMarket o = random_ordinal_market(n, rng);
    StableSet stable = enumerate_stable(o);
    for (const Matching& mu : stable.matchings) {
      if (!is_isolated(o, mu, stable)) continue;
      CardinalMarket rep = isolated_representation(o, mu);
      CHECK(represents(rep, o));
      CHECK(is_no_trade_stable(rep, mu).holds);
      ++built;
    }
  }
  CHECK(built >= 12);  // the sweep must actually exercise the construction
}

TEST_CASE("weights can fix a market that needs transfers") {
  // At the identity this market is stable but not trade-free; positive
  // per-agent weights restore the no-trade inequalities.
  CardinalMarket m;
  m.U = RMat(3, 3);
  m.V = RMat(3, 3);
  const long u[3][3] = {{0, 2, 1}, {1, 2, 0}, {1, 0, 2}};
  const long v[3][3] = {{2, 1, 0}, {1, 2, 0}, {0, 1, 2}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      m.U(i, j) = Rational(u[i][j]);
      m.V(i, j) = Rational(v[i][j]);
    }
  const Matching id = Matching::identity(3);
  REQUIRE_FALSE(is_no_trade_stable(m, id).holds);

  WeightingResult res = weighted_no_trade_weights(m, id);
  REQUIRE(res.exists);
  REQUIRE(static_cast<int>(res.men_weights.size()) == 3);
  REQUIRE(static_cast<int>(res.women_weights.size()) == 3);
  CardinalMarket scaled = m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      CHECK(res.men_weights[i] > Rational(0));
      scaled.U(i, j) *= res.men_weights[i];
      scaled.V(i, j) *= res.women_weights[j];
    }
  CHECK(is_no_trade_stable(scaled, id).holds);
  CHECK(res.rows.rows() == 9);
  CHECK(res.rows.cols() == 6);
}

TEST_CASE("blocked matchings admit no weights, with a checkable refutation") {
  CardinalMarket m;
  m.U = RMat(2, 2);
  m.V = RMat(2, 2);
  const long uv[2][2] = {{0, -2}, {1, 0}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      m.U(i, j) = Rational(uv[i][j]);
      m.V(i, j) = Rational(uv[i][j]);
    }
  WeightingResult res = weighted_no_trade_weights(m, Matching::identity(2));
  REQUIRE_FALSE(res.exists);
  CHECK(motzkin_pair_valid(res.rows, res.y, res.z));
}

TEST_CASE("already trade-free markets accept the unit weights") {
  OrdinalMarket o = crossed2();
  Matching target = Matching::identity(2);
  CardinalMarket rep = no_trade_representation(o, target);
  WeightingResult res = weighted_no_trade_weights(rep, target);
  CHECK(res.exists);
}
