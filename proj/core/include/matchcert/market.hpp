#pragma once

#include <string>
#include <utility>
#include <vector>

#include "matchcert/errors.hpp"
#include "matchcert/matrix.hpp"
#include "matchcert/rational.hpp"
#include "matchcert/rng.hpp"

namespace matchcert {

// A one-to-one matching between n men and n women, stored as the permutation
// sigma with man i matched to woman sigma[i].  Indices are 0-based inside the
// library; the JSON layer shifts to 1-based.
class Matching {
 public:
  Matching() = default;
  explicit Matching(std::vector<int> sigma);  // throws InvalidMatchingError
  static Matching identity(int n);

  int n() const { return static_cast<int>(sigma_.size()); }
  int woman_of(int man) const { return sigma_[man]; }
  int man_of(int woman) const { return inv_[woman]; }
  const std::vector<int>& perm() const { return sigma_; }

  friend bool operator==(const Matching& a, const Matching& b) { return a.sigma_ == b.sigma_; }
  friend bool operator!=(const Matching& a, const Matching& b) { return a.sigma_ != b.sigma_; }
  // lexicographic order on the permutation; used to sort stable sets
  friend bool operator<(const Matching& a, const Matching& b) { return a.sigma_ < b.sigma_; }

 private:
  std::vector<int> sigma_, inv_;
};

// Cardinal market: U(i,j) is the utility of man i matched with woman j and
// V(i,j) the utility of woman j matched with man i.  Labels are display-only.
struct CardinalMarket {
  RMat U, V;
  std::vector<std::string> men_labels, women_labels;  // may be empty

  int n() const { return U.rows(); }
  void validate() const;  // throws InvalidMarketError
  std::string man_label(int i) const;
  std::string woman_label(int j) const;
};

// Ordinal market: strict preference lists, most preferred first, 0-based.
struct OrdinalMarket {
  std::vector<std::vector<int>> men_prefs;    // men_prefs[i] lists women
  std::vector<std::vector<int>> women_prefs;  // women_prefs[j] lists men
  std::vector<std::string> men_labels, women_labels;

  int n() const { return static_cast<int>(men_prefs.size()); }
  void validate() const;  // each list a permutation, sizes consistent

  // ranks[i][w] = position of woman w in man i's list (0 = most preferred)
  std::vector<std::vector<int>> men_ranks() const;
  std::vector<std::vector<int>> women_ranks() const;
};

enum class TieBreak { None, LowerIndex };

// True when some agent is exactly indifferent between two potential partners.
bool has_ties(const CardinalMarket& m);

// Strict ordinal reading of a cardinal market.  With TieBreak::None any tie
// raises TiesPresentError; TieBreak::LowerIndex resolves ties towards the
// lower partner index.
OrdinalMarket ordinal_of(const CardinalMarket& m, TieBreak tb = TieBreak::None);

// Does the cardinal market induce exactly these ordinal preferences?
bool represents(const CardinalMarket& m, const OrdinalMarket& o);

// Surplus differences of a matching.  Couples are relabelled so that couple k
// stands for (man k, woman sigma(k)); in that indexing
//   R(i,k) = U(i, sigma(i)) - U(i, sigma(k))   what man i gives up switching to
//                                              couple k's woman
//   S(i,k) = V(k, sigma(k)) - V(i, sigma(k))   what that woman gives up taking him
// Both diagonals are zero.
struct SurplusDeltas {
  RMat R, S;
  Matching sigma;

  int n() const { return R.rows(); }
  // map a couple index back to the original woman index
  int original_woman(int couple) const { return sigma.woman_of(couple); }
};
SurplusDeltas surplus_deltas(const CardinalMarket& m, const Matching& sigma);

// Doubly stochastic matrix, i.e. a lottery over matchings.
struct FractionalMatching {
  RMat pi;

  int n() const { return pi.rows(); }
  void validate() const;  // entries >= 0, every row and column sums to 1
};
FractionalMatching degenerate(const Matching& sigma);

// Expected utilities under a lottery: (men's payoffs, women's payoffs).
std::pair<std::vector<Rational>, std::vector<Rational>> lottery_payoffs(
    const CardinalMarket& m, const FractionalMatching& f);

// Utilities of a pure matching, same shape as lottery_payoffs.
std::pair<std::vector<Rational>, std::vector<Rational>> matching_payoffs(
    const CardinalMarket& m, const Matching& sigma);

// Birkhoff-von Neumann: peel a doubly stochastic matrix into a convex
// combination of permutation matchings.  Greedy: repeatedly take a perfect
// matching on the support and subtract its minimum weight.
std::vector<std::pair<Rational, Matching>> birkhoff_decompose(const FractionalMatching& f);

// ---- random instances (audits, property tests) ----

// Entries are uniform rationals k/1000 with k drawn from [-2000, 2000].
CardinalMarket random_cardinal_market(int n, DetRng& rng);
// Same, rejection-sampled until the market has no ties.
CardinalMarket random_strict_cardinal_market(int n, DetRng& rng);
// Uniform random strict preference lists.
OrdinalMarket random_ordinal_market(int n, DetRng& rng);
// Uniform random permutation matching.
Matching random_matching(int n, DetRng& rng);

}  // namespace matchcert
