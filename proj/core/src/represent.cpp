#include "matchcert/represent.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <utility>

#include "matchcert/certify.hpp"
#include "matchcert/linear.hpp"
#include "matchcert/stable.hpp"

namespace matchcert {

Interval exp_enclosure(const Rational& x, int terms) {
  if (terms < 4) terms = 4;
  // Halve the argument into [-1/2, 1/2]; there the Taylor tail obeys
  // |e^y - T_N(y)| <= 2 |y|^{N+1} / (N+1)! and the enclosure stays positive.
  Rational y = x;
  int halvings = 0;
  const Rational half(1, 2);
  while (y.abs() > half) {
    y /= 2;
    ++halvings;
  }
  Rational sum(1), term(1);
  for (int m = 1; m <= terms; ++m) {
    term *= y;
    term /= m;
    sum += term;
  }
  Rational tail = term.abs() * y.abs() * Rational(2) / Rational(terms + 1);
  Interval e{sum - tail, sum + tail};
  if (e.lo.sign() <= 0) throw InternalError("exp enclosure lost positivity");
  for (int h = 0; h < halvings; ++h) e = {e.lo * e.lo, e.hi * e.hi};
  return e;
}

CardinalMarket no_trade_representation(const OrdinalMarket& o, const Matching& target) {
  o.validate();
  const int n = o.n();
  if (target.n() != n) throw InvalidMatchingError("matching size does not fit the market");
  if (!is_stable(o, target))
    throw NotStableError("target matching is blocked; stability without trade requires stability");

  const auto mr = o.men_ranks();
  const auto wr = o.women_ranks();
  // Seed gains measured in rank steps, couples relabelled so couple k owns
  // woman target(k): rbar is what man i gains switching to couple k's woman,
  // sbar what she gains taking him.  Stability forbids both being positive.
  Mat<long> rbar(n, n, 0), sbar(n, n, 0);
  long min_loss = 1;
  bool seen_loss = false;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const int w = target.woman_of(k);
      rbar(i, k) = mr[i][target.woman_of(i)] - mr[i][w];
      sbar(i, k) = wr[w][k] - wr[w][i];
      for (long delta : {rbar(i, k), sbar(i, k)}) {
        if (delta == 0) continue;
        const long a = delta < 0 ? -delta : delta;
        min_loss = seen_loss ? std::min(min_loss, a) : a;
        seen_loss = true;
      }
    }
  }
  // Steepness that turns the smallest seed loss into an argument of size one:
  // the losing side of any swap then weighs at least e > 2, outweighing both
  // matched payoffs of 1/2 - 1 = -1/2 plus whatever the gaining side gets.
  const Rational t(1, min_loss);

  std::map<Rational, int> plan;  // exp argument -> Taylor terms to use
  plan.emplace(Rational(0), 4);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      plan.emplace(t * Rational(-rbar(i, k)), 8);
      plan.emplace(t * Rational(-sbar(i, k)), 8);
    }
  }
  // Refine until every enclosure is narrow, decisively on one side of the
  // thresholds 1/2 and 2, and disjoint from its neighbours, so that midpoints
  // order exactly like the true exponentials.
  const Rational quarter(1, 4), half(1, 2), two(2);
  std::map<Rational, Interval> enc;
  for (int round = 0;; ++round) {
    if (round > 64) throw InternalError("exp enclosures failed to separate");
    enc.clear();
    for (const auto& [a, terms] : plan) enc.emplace(a, exp_enclosure(a, terms));
    bool ok = true;
    auto widen = [&plan, &ok](const Rational& a) {
      plan[a] += 8;
      ok = false;
    };
    for (const auto& [a, iv] : enc) {
      if (a.is_zero()) continue;  // exactly [1, 1]
      if (iv.width() > quarter || !(iv.hi < half || iv.lo > half) ||
          !(iv.hi < two || iv.lo > two))
        widen(a);
    }
    for (auto it = enc.begin(); std::next(it) != enc.end(); ++it) {
      const auto jt = std::next(it);
      if (!(it->second.hi < jt->second.lo)) {
        widen(it->first);
        widen(jt->first);
      }
    }
    if (ok) break;
  }

  auto value = [&enc, &t](long gain) {
    return Rational(1, 2) - enc.at(t * Rational(-gain)).mid();
  };
  RMat U(n, n, Rational(0)), V(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const int w = target.woman_of(k);
      U(i, w) = value(rbar(i, k));
      V(i, w) = value(sbar(i, k));
    }
  }
  CardinalMarket out{std::move(U), std::move(V), o.men_labels, o.women_labels};
  out.validate();
  if (!represents(out, o))
    throw InternalError("constructed utilities disagree with the ordinal market");
  if (!is_no_trade_stable(out, target).holds)
    throw InternalError("constructed utilities are not stable without trade");
  return out;
}

CardinalMarket isolated_representation(const OrdinalMarket& o, const Matching& target) {
  o.validate();
  const int n = o.n();
  if (target.n() != n) throw InvalidMatchingError("matching size does not fit the market");
  const StableSet stable = enumerate_stable(o);
  if (!stable.contains(target)) throw NotMemberError("target matching is not stable");
  if (!is_isolated(o, target, stable))
    throw NotIsolatedError("some stable matching splits the men over the target");

  const auto mr = o.men_ranks();
  const auto wr = o.women_ranks();
  // Count backbone.  A man values a woman by how many stable outcomes she
  // weakly beats for him; a woman values a man by how many he strictly
  // beats.  Each stable matching then contributes exactly one point to every
  // pair it matches, so all stably matched pairs sum to the number of stable
  // matchings, while every other pair sums to at most that (a pair beating
  // this bound would block the corresponding stable matching).
  Mat<int> cu(n, n, 0), cv(n, n, 0);
  Mat<char> partner(n, n, 0);
  for (const Matching& nu : stable.matchings) {
    for (int i = 0; i < n; ++i) {
      const int w = nu.woman_of(i);
      partner(i, w) = 1;
      for (int j = 0; j < n; ++j)
        if (mr[i][j] <= mr[i][w]) ++cu(i, j);
    }
    for (int j = 0; j < n; ++j) {
      const int hers = nu.man_of(j);
      for (int i = 0; i < n; ++i)
        if (wr[j][i] < wr[j][hers]) ++cv(i, j);
    }
  }

  // Break count ties in preference order with offsets too small to reach the
  // next count: men get offsets in (0, 1/8], women in (-1/4, -1/8], partner
  // cells stay exact.  Any tied run holds at most one partner cell -- at its
  // bottom on the men's side, at its top on the women's -- so order is kept,
  // and offsets at non-partner cells add up to at most zero, which keeps
  // every pair sum at or below the stably matched level.
  const Rational band(1, 8);
  RMat U(n, n, Rational(0)), V(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const auto& prefs = o.men_prefs[i];
    for (int s = 0; s < n;) {
      int e = s;
      while (e + 1 < n && cu(i, prefs[e + 1]) == cu(i, prefs[s])) ++e;
      const int g = e - s;
      for (int p = s; p <= e; ++p) {
        const int j = prefs[p], q = p - s;
        Rational off(0);
        if (partner(i, j)) {
          if (q != g) throw InternalError("stable partner must close its count group");
        } else {
          off = band * Rational(g - q + 1, g + 1);
        }
        U(i, j) = Rational(cu(i, j)) + off;
      }
      s = e + 1;
    }
  }
  for (int j = 0; j < n; ++j) {
    const auto& prefs = o.women_prefs[j];
    for (int s = 0; s < n;) {
      int e = s;
      while (e + 1 < n && cv(prefs[e + 1], j) == cv(prefs[s], j)) ++e;
      const int g = e - s;
      for (int p = s; p <= e; ++p) {
        const int i = prefs[p], q = p - s;
        Rational off(0);
        if (partner(i, j)) {
          if (q != 0) throw InternalError("stable partner must open its count group");
        } else {
          off = -band - band * Rational(q, g + 1);
        }
        V(i, j) = Rational(cv(i, j)) + off;
      }
      s = e + 1;
    }
  }

  CardinalMarket out{std::move(U), std::move(V), o.men_labels, o.women_labels};
  out.validate();
  if (!represents(out, o))
    throw InternalError("count utilities disagree with the ordinal market");
  if (!is_no_trade_stable(out, target).holds)
    throw InternalError("count utilities are not stable without trade");
  return out;
}

WeightingResult weighted_no_trade_weights(const CardinalMarket& m, const Matching& sigma) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  // One inequality per (man, woman) pair, ordered row-major: the man's weight
  // scales his switching loss, the woman's weight scales hers; stability
  // without trade asks every weighted pair loss to be nonnegative.
  RMat rows(n * n, 2 * n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int w = 0; w < n; ++w) {
      const int k = sigma.man_of(w);
      rows(i * n + w, i) = d.R(i, k);
      rows(i * n + w, n + w) = d.S(i, k);
    }
  }
  PositiveSolutionResult ps = positive_solution_exists(rows);
  WeightingResult out;
  out.exists = ps.exists;
  out.rows = std::move(rows);
  if (ps.exists) {
    out.men_weights.assign(ps.x.begin(), ps.x.begin() + n);
    out.women_weights.assign(ps.x.begin() + n, ps.x.end());
    CardinalMarket scaled = m;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        scaled.U(i, j) *= out.men_weights[i];
        scaled.V(i, j) *= out.women_weights[j];
      }
    }
    if (!is_no_trade_stable(scaled, sigma).holds)
      throw InternalError("weights found but the rescaled market is unstable");
  } else {
    out.y = std::move(ps.y);
    out.z = std::move(ps.z);
  }
  return out;
}

}  // namespace matchcert
