#include "matchcert/verify.hpp"

#include <algorithm>

#include "matchcert/linear.hpp"

namespace matchcert {

namespace {

VerifyResult fail(std::string reason) { return {false, std::move(reason)}; }
VerifyResult pass() { return {true, {}}; }

bool distinct_couples(const std::vector<int>& cycle, int n) {
  std::vector<char> seen(n, 0);
  for (int c : cycle) {
    if (c < 0 || c >= n || seen[c]) return false;
    seen[c] = 1;
  }
  return cycle.size() >= 2;
}

VerifyResult check_transfers(const SurplusDeltas& d, const TransferVector& t,
                             bool require_zero) {
  const int n = d.n();
  if (static_cast<int>(t.t.size()) != n) return fail("transfer vector has the wrong length");
  if (require_zero)
    for (const Rational& ti : t.t)
      if (!ti.is_zero()) return fail("no-trade certificate must use zero transfers");
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (i != k && t.t[k] - t.t[i] > d.R(i, k) + d.S(i, k))
        return fail("transfers fail at couple pair (" + std::to_string(i + 1) + "," +
                    std::to_string(k + 1) + ")");
  return pass();
}

VerifyResult check_scaled_potentials(const SurplusDeltas& d, const AfriatWitness& w,
                                     bool with_mu) {
  const int n = d.n();
  if (static_cast<int>(w.v.size()) != n || static_cast<int>(w.lambda.size()) != n)
    return fail("witness vectors have the wrong length");
  if (with_mu ? static_cast<int>(w.mu.size()) != n : !w.mu.empty())
    return fail("witness has the wrong number of scale vectors");
  for (const Rational& l : w.lambda)
    if (l.sign() <= 0) return fail("scales must be strictly positive");
  for (const Rational& mu : w.mu)
    if (mu.sign() <= 0) return fail("scales must be strictly positive");
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      Rational rhs = with_mu ? w.lambda[i] * d.R(i, k) + w.mu[k] * d.S(i, k)
                             : w.lambda[i] * rmax(d.R(i, k), d.S(i, k));
      if (w.v[k] - w.v[i] > rhs)
        return fail("potentials fail at couple pair (" + std::to_string(i + 1) + "," +
                    std::to_string(k + 1) + ")");
    }
  }
  return pass();
}

}  // namespace

VerifyResult verify_verdict(const CardinalMarket& m, const Matching& sigma,
                            const ConceptVerdict& verdict) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  const Certificate& c = verdict.certificate;

  switch (verdict.kind) {
    case SolutionConcept::NoTrade: {
      if (verdict.holds) {
        const auto* t = std::get_if<TransferVector>(&c);
        if (!t) return fail("no-trade verdict needs a transfer vector");
        return check_transfers(d, *t, /*require_zero=*/true);
      }
      const auto* p = std::get_if<PairViolation>(&c);
      if (!p) return fail("rejected no-trade verdict needs a pair violation");
      if (p->man < 0 || p->man >= n || p->woman < 0 || p->woman >= n)
        return fail("pair violation out of range");
      const int k = sigma.man_of(p->woman);
      if (k == p->man) return fail("pair violation names a matched couple");
      if ((d.R(p->man, k) + d.S(p->man, k)).sign() >= 0)
        return fail("named pair does not raise joint surplus");
      return pass();
    }

    case SolutionConcept::Ntu: {
      if (verdict.holds) {
        if (!std::holds_alternative<std::monostate>(c))
          return fail("accepted ntu verdict carries an unexpected certificate");
        for (int i = 0; i < n; ++i)
          for (int k = 0; k < n; ++k)
            if (i != k && d.R(i, k).sign() < 0 && d.S(i, k).sign() < 0)
              return fail("a blocking pair exists");
        return pass();
      }
      const auto* b = std::get_if<BlockingPair>(&c);
      if (!b) return fail("rejected ntu verdict needs a blocking pair");
      if (b->man < 0 || b->man >= n || b->woman < 0 || b->woman >= n)
        return fail("blocking pair out of range");
      const int k = sigma.man_of(b->woman);
      if (k == b->man) return fail("blocking pair names a matched couple");
      if (d.R(b->man, k).sign() >= 0 || d.S(b->man, k).sign() >= 0)
        return fail("named pair is not blocking");
      return pass();
    }

    case SolutionConcept::Tu: {
      if (verdict.holds) {
        const auto* t = std::get_if<TransferVector>(&c);
        if (!t) return fail("accepted tu verdict needs a transfer vector");
        return check_transfers(d, *t, /*require_zero=*/false);
      }
      const auto* cyc = std::get_if<ImprovingCycle>(&c);
      if (!cyc) return fail("rejected tu verdict needs an improving cycle");
      if (!distinct_couples(cyc->couples, n)) return fail("cycle is not a list of distinct couples");
      Rational total(0);
      const int p = static_cast<int>(cyc->couples.size());
      for (int t = 0; t < p; ++t) {
        const int a = cyc->couples[t], b = cyc->couples[(t + 1) % p];
        total += d.R(a, b) + d.S(a, b);
      }
      if (total.sign() >= 0) return fail("cycle does not raise total surplus");
      return pass();
    }

    case SolutionConcept::ExAnte: {
      if (verdict.holds) {
        const auto* w = std::get_if<AfriatWitness>(&c);
        if (!w) return fail("accepted ex-ante verdict needs scaled potentials");
        return check_scaled_potentials(d, *w, /*with_mu=*/true);
      }
      const auto* dom = std::get_if<DominatingLottery>(&c);
      if (!dom) return fail("rejected ex-ante verdict needs a dominating lottery");
      if (dom->pi.n() != n) return fail("lottery has the wrong size");
      try {
        dom->pi.validate();
      } catch (const InvalidMarketError&) {
        return fail("lottery is not doubly stochastic");
      }
      const auto [lm, lw] = lottery_payoffs(m, dom->pi);
      const auto [pm, pw] = matching_payoffs(m, sigma);
      bool strict = false;
      for (int i = 0; i < n; ++i) {
        if (lm[i] < pm[i]) return fail("lottery hurts a man");
        if (lm[i] > pm[i]) strict = true;
      }
      for (int j = 0; j < n; ++j) {
        if (lw[j] < pw[j]) return fail("lottery hurts a woman");
        if (lw[j] > pw[j]) strict = true;
      }
      if (!strict) return fail("lottery improves nobody strictly");
      return pass();
    }

    case SolutionConcept::ExPost: {
      if (verdict.holds) {
        const auto* w = std::get_if<AfriatWitness>(&c);
        if (!w) return fail("accepted ex-post verdict needs scaled potentials");
        return check_scaled_potentials(d, *w, /*with_mu=*/false);
      }
      const auto* cyc = std::get_if<ImprovingCycle>(&c);
      if (!cyc) return fail("rejected ex-post verdict needs an improving cycle");
      if (!distinct_couples(cyc->couples, n)) return fail("cycle is not a list of distinct couples");
      bool strict = false;
      const int p = static_cast<int>(cyc->couples.size());
      for (int t = 0; t < p; ++t) {
        const int a = cyc->couples[t], b = cyc->couples[(t + 1) % p];
        if (d.R(a, b).sign() > 0 || d.S(a, b).sign() > 0)
          return fail("someone on the cycle is worse off");
        if (d.R(a, b).sign() < 0 && d.S(a, b).sign() < 0) strict = true;
      }
      if (!strict) return fail("nobody on the cycle is strictly better off");
      return pass();
    }
  }
  return fail("unknown solution concept");
}

std::optional<std::vector<Rational>> verify_afriat_multipliers(const CardinalMarket& m,
                                                               const Matching& sigma,
                                                               const std::vector<Rational>& lambda,
                                                               const std::vector<Rational>& mu) {
  const SurplusDeltas d = surplus_deltas(m, sigma);
  const int n = d.n();
  if (static_cast<int>(lambda.size()) != n || (!mu.empty() && static_cast<int>(mu.size()) != n))
    throw InvalidConfigError("scale vectors must have one entry per couple");
  for (const Rational& l : lambda)
    if (l.sign() <= 0) throw InvalidConfigError("scales must be strictly positive");
  for (const Rational& s : mu)
    if (s.sign() <= 0) throw InvalidConfigError("scales must be strictly positive");

  DifferenceConstraints g;
  g.num_vars = n;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      if (i == k) continue;
      Rational w = mu.empty() ? lambda[i] * rmax(d.R(i, k), d.S(i, k))
                              : lambda[i] * d.R(i, k) + mu[k] * d.S(i, k);
      g.arcs.push_back({i, k, std::move(w)});
    }
  }
  DifferenceResult res = difference_constraints_solve(g);
  if (!res.feasible) return std::nullopt;
  return res.potentials;
}

}  // namespace matchcert
