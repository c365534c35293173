#include "matchcert/market.hpp"

#include <algorithm>
#include <numeric>

namespace matchcert {

Matching::Matching(std::vector<int> sigma) : sigma_(std::move(sigma)) {
  const int n = static_cast<int>(sigma_.size());
  inv_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    const int w = sigma_[i];
    if (w < 0 || w >= n) {
      throw InvalidMatchingError("matching entry out of range: " + std::to_string(w + 1));
    }
    if (inv_[w] != -1) {
      throw InvalidMatchingError("matching is not a permutation: woman " +
                                 std::to_string(w + 1) + " appears twice");
    }
    inv_[w] = i;
  }
}

Matching Matching::identity(int n) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  return Matching(std::move(s));
}

void CardinalMarket::validate() const {
  const int n = U.rows();
  if (n == 0) throw InvalidMarketError("market has no agents");
  if (U.cols() != n || V.rows() != n || V.cols() != n) {
    throw InvalidMarketError("U and V must be square matrices of the same size");
  }
  if (!men_labels.empty() && static_cast<int>(men_labels.size()) != n) {
    throw InvalidMarketError("men labels must have exactly n entries");
  }
  if (!women_labels.empty() && static_cast<int>(women_labels.size()) != n) {
    throw InvalidMarketError("women labels must have exactly n entries");
  }
}

std::string CardinalMarket::man_label(int i) const {
  return men_labels.empty() ? "m" + std::to_string(i + 1) : men_labels[i];
}

std::string CardinalMarket::woman_label(int j) const {
  return women_labels.empty() ? "w" + std::to_string(j + 1) : women_labels[j];
}

void OrdinalMarket::validate() const {
  const int n = this->n();
  if (n == 0) throw InvalidMarketError("market has no agents");
  if (static_cast<int>(women_prefs.size()) != n) {
    throw InvalidMarketError("men_prefs and women_prefs must have the same length");
  }
  auto check_side = [n](const std::vector<std::vector<int>>& prefs, const char* side) {
    std::vector<char> seen(n);
    for (const auto& list : prefs) {
      if (static_cast<int>(list.size()) != n) {
        throw InvalidMarketError(std::string(side) + " preference list has wrong length");
      }
      std::fill(seen.begin(), seen.end(), 0);
      for (int x : list) {
        if (x < 0 || x >= n || seen[x]) {
          throw InvalidMarketError(std::string(side) +
                                   " preference list is not a permutation");
        }
        seen[x] = 1;
      }
    }
  };
  check_side(men_prefs, "man");
  check_side(women_prefs, "woman");
  if (!men_labels.empty() && static_cast<int>(men_labels.size()) != n) {
    throw InvalidMarketError("men labels must have exactly n entries");
  }
  if (!women_labels.empty() && static_cast<int>(women_labels.size()) != n) {
    throw InvalidMarketError("women labels must have exactly n entries");
  }
}

std::vector<std::vector<int>> OrdinalMarket::men_ranks() const {
  const int n = this->n();
  std::vector<std::vector<int>> rk(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    for (int pos = 0; pos < n; ++pos) rk[i][men_prefs[i][pos]] = pos;
  }
  return rk;
}

std::vector<std::vector<int>> OrdinalMarket::women_ranks() const {
  const int n = this->n();
  std::vector<std::vector<int>> rk(n, std::vector<int>(n));
  for (int j = 0; j < n; ++j) {
    for (int pos = 0; pos < n; ++pos) rk[j][women_prefs[j][pos]] = pos;
  }
  return rk;
}

bool has_ties(const CardinalMarket& m) {
  const int n = m.n();
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (m.U(i, a) == m.U(i, b)) return true;
      }
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        if (m.V(a, j) == m.V(b, j)) return true;
      }
    }
  }
  return false;
}

OrdinalMarket ordinal_of(const CardinalMarket& m, TieBreak tb) {
  m.validate();
  const int n = m.n();
  OrdinalMarket o;
  o.men_prefs.resize(n);
  o.women_prefs.resize(n);
  o.men_labels = m.men_labels;
  o.women_labels = m.women_labels;

  for (int i = 0; i < n; ++i) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return m.U(i, a) > m.U(i, b); });
    for (int pos = 0; pos + 1 < n; ++pos) {
      if (m.U(i, order[pos]) == m.U(i, order[pos + 1]) && tb == TieBreak::None) {
        throw TiesPresentError("man " + m.man_label(i) + " is indifferent between " +
                               m.woman_label(order[pos]) + " and " +
                               m.woman_label(order[pos + 1]));
      }
    }
    o.men_prefs[i] = std::move(order);
  }
  for (int j = 0; j < n; ++j) {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return m.V(a, j) > m.V(b, j); });
    for (int pos = 0; pos + 1 < n; ++pos) {
      if (m.V(order[pos], j) == m.V(order[pos + 1], j) && tb == TieBreak::None) {
        throw TiesPresentError("woman " + m.woman_label(j) + " is indifferent between " +
                               m.man_label(order[pos]) + " and " +
                               m.man_label(order[pos + 1]));
      }
    }
    o.women_prefs[j] = std::move(order);
  }
  return o;
}

bool represents(const CardinalMarket& m, const OrdinalMarket& o) {
  m.validate();
  o.validate();
  const int n = m.n();
  if (o.n() != n) return false;
  for (int i = 0; i < n; ++i) {
    for (int pos = 0; pos + 1 < n; ++pos) {
      if (!(m.U(i, o.men_prefs[i][pos]) > m.U(i, o.men_prefs[i][pos + 1]))) return false;
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int pos = 0; pos + 1 < n; ++pos) {
      if (!(m.V(o.women_prefs[j][pos], j) > m.V(o.women_prefs[j][pos + 1], j))) return false;
    }
  }
  return true;
}

SurplusDeltas surplus_deltas(const CardinalMarket& m, const Matching& sigma) {
  m.validate();
  const int n = m.n();
  if (sigma.n() != n) throw InvalidMatchingError("matching size does not fit the market");
  SurplusDeltas d;
  d.sigma = sigma;
  d.R = RMat(n, n);
  d.S = RMat(n, n);
  for (int i = 0; i < n; ++i) {
    const int wi = sigma.woman_of(i);
    for (int k = 0; k < n; ++k) {
      const int wk = sigma.woman_of(k);
      d.R(i, k) = m.U(i, wi) - m.U(i, wk);
      d.S(i, k) = m.V(k, wk) - m.V(i, wk);
    }
  }
  return d;
}

void FractionalMatching::validate() const {
  const int n = pi.rows();
  if (n == 0 || pi.cols() != n) throw InvalidMarketError("lottery matrix must be square");
  for (int i = 0; i < n; ++i) {
    Rational row_sum = 0, col_sum = 0;
    for (int j = 0; j < n; ++j) {
      if (pi(i, j) < 0) throw InvalidMarketError("lottery matrix has a negative entry");
      row_sum += pi(i, j);
      col_sum += pi(j, i);
    }
    if (row_sum != 1 || col_sum != 1) {
      throw InvalidMarketError("lottery matrix is not doubly stochastic");
    }
  }
}

FractionalMatching degenerate(const Matching& sigma) {
  const int n = sigma.n();
  FractionalMatching f;
  f.pi = RMat(n, n, 0);
  for (int i = 0; i < n; ++i) f.pi(i, sigma.woman_of(i)) = 1;
  return f;
}

std::pair<std::vector<Rational>, std::vector<Rational>> lottery_payoffs(
    const CardinalMarket& m, const FractionalMatching& f) {
  m.validate();
  f.validate();
  const int n = m.n();
  if (f.n() != n) throw InvalidMarketError("lottery size does not fit the market");
  std::vector<Rational> men(n, 0), women(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      men[i] += f.pi(i, j) * m.U(i, j);
      women[j] += f.pi(i, j) * m.V(i, j);
    }
  }
  return {std::move(men), std::move(women)};
}

std::pair<std::vector<Rational>, std::vector<Rational>> matching_payoffs(
    const CardinalMarket& m, const Matching& sigma) {
  m.validate();
  const int n = m.n();
  if (sigma.n() != n) throw InvalidMatchingError("matching size does not fit the market");
  std::vector<Rational> men(n), women(n);
  for (int i = 0; i < n; ++i) {
    const int w = sigma.woman_of(i);
    men[i] = m.U(i, w);
    women[w] = m.V(i, w);
  }
  return {std::move(men), std::move(women)};
}

namespace {

// Perfect matching on the support of `pi` via Kuhn's augmenting paths.
bool kuhn_try(int i, const RMat& pi, std::vector<int>& match_col, std::vector<char>& used) {
  const int n = pi.rows();
  for (int j = 0; j < n; ++j) {
    if (pi(i, j) > 0 && !used[j]) {
      used[j] = 1;
      if (match_col[j] == -1 || kuhn_try(match_col[j], pi, match_col, used)) {
        match_col[j] = i;
        return true;
      }
    }
  }
  return false;
}

}  // namespace

std::vector<std::pair<Rational, Matching>> birkhoff_decompose(const FractionalMatching& f) {
  f.validate();
  const int n = f.n();
  RMat pi = f.pi;
  std::vector<std::pair<Rational, Matching>> parts;
  Rational remaining = 1;
  while (remaining > 0) {
    std::vector<int> match_col(n, -1);
    for (int i = 0; i < n; ++i) {
      std::vector<char> used(n, 0);
      if (!kuhn_try(i, pi, match_col, used)) {
        // Birkhoff-von Neumann guarantees a perfect matching on the support
        // of any (scaled) doubly stochastic matrix.
        throw InternalError("no perfect matching on lottery support");
      }
    }
    std::vector<int> sigma(n);
    for (int j = 0; j < n; ++j) sigma[match_col[j]] = j;
    Matching mu{sigma};
    Rational w = pi(0, mu.woman_of(0));
    for (int i = 1; i < n; ++i) w = rmin(w, pi(i, mu.woman_of(i)));
    for (int i = 0; i < n; ++i) pi(i, mu.woman_of(i)) -= w;
    parts.emplace_back(w, mu);
    remaining -= w;
  }
  return parts;
}

CardinalMarket random_cardinal_market(int n, DetRng& rng) {
  CardinalMarket m;
  m.U = RMat(n, n);
  m.V = RMat(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.U(i, j) = Rational(rng.uniform_int(-2000, 2000), 1000);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m.V(i, j) = Rational(rng.uniform_int(-2000, 2000), 1000);
  }
  return m;
}

CardinalMarket random_strict_cardinal_market(int n, DetRng& rng) {
  for (;;) {
    CardinalMarket m = random_cardinal_market(n, rng);
    if (!has_ties(m)) return m;
  }
}

OrdinalMarket random_ordinal_market(int n, DetRng& rng) {
  OrdinalMarket o;
  o.men_prefs.resize(n);
  o.women_prefs.resize(n);
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  for (int i = 0; i < n; ++i) {
    o.men_prefs[i] = base;
    rng.shuffle(o.men_prefs[i]);
  }
  for (int j = 0; j < n; ++j) {
    o.women_prefs[j] = base;
    rng.shuffle(o.women_prefs[j]);
  }
  return o;
}

Matching random_matching(int n, DetRng& rng) {
  std::vector<int> s(n);
  std::iota(s.begin(), s.end(), 0);
  rng.shuffle(s);
  return Matching(std::move(s));
}

}  // namespace matchcert
