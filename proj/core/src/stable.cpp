#include "matchcert/stable.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

#include "matchcert/errors.hpp"

namespace matchcert {

Matching deferred_acceptance(const OrdinalMarket& m, ProposingSide side) {
  m.validate();
  const int n = m.n();
  const auto& prop_prefs = side == ProposingSide::Men ? m.men_prefs : m.women_prefs;
  const auto recv_ranks = side == ProposingSide::Men ? m.women_ranks() : m.men_ranks();

  std::vector<int> next(n, 0);           // next position each proposer will try
  std::vector<int> held(n, -1);          // receiver -> proposer currently held
  std::vector<int> free_stack(n);
  std::iota(free_stack.begin(), free_stack.end(), 0);

  while (!free_stack.empty()) {
    const int p = free_stack.back();
    free_stack.pop_back();
    const int r = prop_prefs[p][next[p]++];
    if (held[r] == -1) {
      held[r] = p;
    } else if (recv_ranks[r][p] < recv_ranks[r][held[r]]) {
      free_stack.push_back(held[r]);
      held[r] = p;
    } else {
      free_stack.push_back(p);
    }
  }

  std::vector<int> sigma(n);
  if (side == ProposingSide::Men) {
    for (int w = 0; w < n; ++w) sigma[held[w]] = w;  // held[woman] = man
  } else {
    for (int man = 0; man < n; ++man) sigma[man] = held[man];  // held[man] = woman
  }
  return Matching(sigma);
}

std::optional<std::pair<int, int>> find_blocking_pair(const OrdinalMarket& m,
                                                      const Matching& sigma) {
  m.validate();
  const int n = m.n();
  if (sigma.n() != n) throw InvalidMatchingError("matching size does not fit the market");
  const auto mr = m.men_ranks();
  const auto wr = m.women_ranks();
  for (int i = 0; i < n; ++i) {
    for (int w = 0; w < n; ++w) {
      if (w == sigma.woman_of(i)) continue;
      if (mr[i][w] < mr[i][sigma.woman_of(i)] && wr[w][i] < wr[w][sigma.man_of(w)]) {
        return std::make_pair(i, w);
      }
    }
  }
  return std::nullopt;
}

bool is_stable(const OrdinalMarket& m, const Matching& sigma) {
  return !find_blocking_pair(m, sigma).has_value();
}

bool StableSet::contains(const Matching& mu) const { return index_of(mu) >= 0; }

int StableSet::index_of(const Matching& mu) const {
  const auto it = std::lower_bound(matchings.begin(), matchings.end(), mu);
  if (it != matchings.end() && *it == mu) {
    return static_cast<int>(it - matchings.begin());
  }
  return -1;
}

namespace {

StableSet finalize(std::vector<Matching> found, const OrdinalMarket& m) {
  std::sort(found.begin(), found.end());
  StableSet s;
  s.matchings = std::move(found);
  s.man_optimal_index = s.index_of(deferred_acceptance(m, ProposingSide::Men));
  s.woman_optimal_index = s.index_of(deferred_acceptance(m, ProposingSide::Women));
  if (s.man_optimal_index < 0 || s.woman_optimal_index < 0) {
    throw InternalError("enumeration missed an extreme stable matching");
  }
  return s;
}

std::vector<Matching> enumerate_brute(const OrdinalMarket& m, std::size_t max_count) {
  const int n = m.n();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Matching> found;
  do {
    Matching mu{perm};
    if (is_stable(m, mu)) {
      found.push_back(std::move(mu));
      if (found.size() > max_count) {
        throw StableSetTooLargeError("stable set exceeds the requested cap");
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return found;
}

// Successor data for rotation exposure: for man i matched in mu, s(i) is the
// first woman strictly below mu(i) on his list who prefers him to her current
// partner; next(i) is that woman's partner.
std::vector<int> rotation_successors(const OrdinalMarket& m, const Matching& mu,
                                     const std::vector<std::vector<int>>& mranks,
                                     const std::vector<std::vector<int>>& wranks) {
  const int n = m.n();
  std::vector<int> nxt(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int pos = mranks[i][mu.woman_of(i)] + 1; pos < n; ++pos) {
      const int w = m.men_prefs[i][pos];
      if (wranks[w][i] < wranks[w][mu.man_of(w)]) {
        nxt[i] = mu.man_of(w);
        break;
      }
    }
  }
  return nxt;
}

std::vector<std::vector<int>> exposed_rotations(const std::vector<int>& nxt) {
  const int n = static_cast<int>(nxt.size());
  // Cycles of the partial successor function are exactly the exposed
  // rotations.  Walk with colors to find each cycle once.
  std::vector<int> color(n, 0);  // 0 unseen, 1 on current walk, 2 done
  std::vector<std::vector<int>> rotations;
  for (int start = 0; start < n; ++start) {
    if (color[start] != 0) continue;
    std::vector<int> path;
    int v = start;
    while (v != -1 && color[v] == 0) {
      color[v] = 1;
      path.push_back(v);
      v = nxt[v];
    }
    if (v != -1 && color[v] == 1) {
      // found a new cycle; cut it out of the path
      auto it = std::find(path.begin(), path.end(), v);
      rotations.emplace_back(it, path.end());
    }
    for (int u : path) color[u] = 2;
  }
  // canonical order: start each cycle at its smallest man
  for (auto& rho : rotations) {
    const auto mn = std::min_element(rho.begin(), rho.end());
    std::rotate(rho.begin(), mn, rho.end());
  }
  std::sort(rotations.begin(), rotations.end());
  return rotations;
}

Matching eliminate_rotation(const Matching& mu, const std::vector<int>& rho) {
  // man rho[k] moves to the partner of man rho[k+1]
  std::vector<int> sigma = mu.perm();
  const std::size_t r = rho.size();
  for (std::size_t k = 0; k < r; ++k) {
    sigma[rho[k]] = mu.woman_of(rho[(k + 1) % r]);
  }
  return Matching(std::move(sigma));
}

std::vector<Matching> enumerate_rotations(const OrdinalMarket& m, std::size_t max_count) {
  const auto mranks = m.men_ranks();
  const auto wranks = m.women_ranks();
  const Matching top = deferred_acceptance(m, ProposingSide::Men);

  std::map<std::vector<int>, bool> seen;
  std::deque<Matching> queue;
  std::vector<Matching> found;
  seen[top.perm()] = true;
  queue.push_back(top);
  while (!queue.empty()) {
    Matching mu = std::move(queue.front());
    queue.pop_front();
    found.push_back(mu);
    if (found.size() > max_count) {
      throw StableSetTooLargeError("stable set exceeds the requested cap");
    }
    const auto nxt = rotation_successors(m, mu, mranks, wranks);
    for (const auto& rho : exposed_rotations(nxt)) {
      Matching succ = eliminate_rotation(mu, rho);
      if (!seen.emplace(succ.perm(), true).second) continue;
      queue.push_back(succ);
    }
  }
  return found;
}

}  // namespace

StableSet enumerate_stable(const OrdinalMarket& m, EnumMethod method, std::size_t max_count) {
  m.validate();
  const int n = m.n();
  if (method == EnumMethod::Auto) {
    method = n <= 8 ? EnumMethod::BruteForce : EnumMethod::Rotations;
  }
  if (method == EnumMethod::BruteForce && n > 8) {
    throw SizeLimitError("brute-force enumeration limited to n <= 8");
  }
  if (n > 64) {
    throw SizeLimitError("stable-set enumeration limited to n <= 64");
  }
  auto found = method == EnumMethod::BruteForce ? enumerate_brute(m, max_count)
                                                : enumerate_rotations(m, max_count);
  return finalize(std::move(found), m);
}

namespace {

Matching lattice_pick(const OrdinalMarket& m, const Matching& a, const Matching& b,
                      bool best) {
  m.validate();
  const int n = m.n();
  if (a.n() != n || b.n() != n) {
    throw InvalidMatchingError("matching size does not fit the market");
  }
  const auto mranks = m.men_ranks();
  std::vector<int> sigma(n);
  for (int i = 0; i < n; ++i) {
    const int wa = a.woman_of(i), wb = b.woman_of(i);
    const bool a_better = mranks[i][wa] < mranks[i][wb];
    sigma[i] = (a_better == best) ? wa : wb;
  }
  Matching out{std::move(sigma)};  // throws if the pointwise pick is not a matching
  if (!is_stable(m, out)) {
    throw NotStableError("lattice operation applied to unstable inputs");
  }
  return out;
}

}  // namespace

Matching lattice_join(const OrdinalMarket& m, const Matching& a, const Matching& b) {
  return lattice_pick(m, a, b, true);
}

Matching lattice_meet(const OrdinalMarket& m, const Matching& a, const Matching& b) {
  return lattice_pick(m, a, b, false);
}

bool is_isolated(const OrdinalMarket& m, const Matching& mu, const StableSet& stable) {
  m.validate();
  if (!stable.contains(mu)) {
    throw NotMemberError("matching is not a member of the stable set");
  }
  const auto mranks = m.men_ranks();
  const int n = m.n();
  for (const auto& other : stable.matchings) {
    if (other == mu) continue;
    // all men must strictly agree on mu vs other
    int dir = 0;  // +1: mu preferred, -1: other preferred
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      const int rm = mranks[i][mu.woman_of(i)], ro = mranks[i][other.woman_of(i)];
      if (rm == ro) {
        ok = false;  // same partner: nobody strictly prefers
      } else {
        const int d = rm < ro ? 1 : -1;
        if (dir == 0) dir = d;
        ok = dir == d;
      }
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace matchcert
