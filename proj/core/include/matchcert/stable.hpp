#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "matchcert/market.hpp"

namespace matchcert {

enum class ProposingSide { Men, Women };

// Gale-Shapley deferred acceptance; returns the proposing side's optimal
// stable matching.
Matching deferred_acceptance(const OrdinalMarket& m, ProposingSide side);

// Lexicographically first blocking pair (man, woman), if any.
std::optional<std::pair<int, int>> find_blocking_pair(const OrdinalMarket& m,
                                                      const Matching& sigma);
bool is_stable(const OrdinalMarket& m, const Matching& sigma);

enum class EnumMethod { Auto, BruteForce, Rotations };

struct StableSet {
  std::vector<Matching> matchings;  // sorted lexicographically by permutation
  int man_optimal_index = -1;
  int woman_optimal_index = -1;

  int size() const { return static_cast<int>(matchings.size()); }
  bool contains(const Matching& mu) const;
  int index_of(const Matching& mu) const;  // -1 when absent
};

// All stable matchings.  BruteForce scans every permutation (n <= 8);
// Rotations walks the lattice downward from the man-optimal matching by
// eliminating exposed rotations (n <= 64).  Auto picks by size.  Raises
// StableSetTooLargeError once more than max_count matchings appear.
StableSet enumerate_stable(const OrdinalMarket& m, EnumMethod method = EnumMethod::Auto,
                           std::size_t max_count = 100000);

// Lattice operations: each man takes his preferred (join) or less preferred
// (meet) of the two partners.  Both results are stable when the inputs are.
Matching lattice_join(const OrdinalMarket& m, const Matching& a, const Matching& b);
Matching lattice_meet(const OrdinalMarket& m, const Matching& a, const Matching& b);

// A stable matching is isolated when, against every other member of the
// stable set, all men strictly agree on which one they prefer (women then
// strictly agree the other way).  Throws NotMemberError if mu is not in the
// set.
bool is_isolated(const OrdinalMarket& m, const Matching& mu, const StableSet& stable);

}  // namespace matchcert
