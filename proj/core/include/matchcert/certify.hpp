#pragma once

#include <string>
#include <variant>
#include <vector>

#include "matchcert/market.hpp"

namespace matchcert {

// The five solution concepts this library certifies, ordered from the most
// demanding to the least.  Writing R(i,k) / S(i,k) for the surplus deltas of
// the matching under test (couples relabelled, see SurplusDeltas):
//
//   NoTrade : 0 <= R + S everywhere            (no pair gains in total)
//   Ntu     : 0 <= max(R, S) everywhere        (no pair gains pointwise)
//   Tu      : some transfer vector T has T_k - T_i <= R(i,k) + S(i,k)
//   ExAnte  : some v and positive scales l, m have
//             v_k - v_i <= l_i R(i,k) + m_k S(i,k)   (no dominating lottery)
//   ExPost  : max(R, S) is cyclically consistent      (no dominating rematch)
enum class SolutionConcept { NoTrade, Ntu, Tu, ExAnte, ExPost };

const char* concept_name(SolutionConcept c);

// ---- certificate payloads (original market indices, 0-based) ----

// A pair whose joint surplus beats its matched sum: disproves NoTrade.
struct PairViolation {
  int man, woman;
};

// A pair where both strictly gain: disproves Ntu.
struct BlockingPair {
  int man, woman;
};

// Per-couple transfers (couple k = man k and his partner).  Proves Tu when
// the transferred payoffs dominate every pair sum, and NoTrade when all
// transfers are zero.
struct TransferVector {
  std::vector<Rational> t;
};

// Couple indices c_0, ..., c_{p-1}: man c_k rematches with couple c_{k+1}'s
// woman.  Disproves Tu (cycle gains total surplus) or ExPost (every agent on
// the cycle weakly gains, some pair strictly).
struct ImprovingCycle {
  std::vector<int> couples;
};

// Scales and potentials satisfying the ExAnte system (mu empty: the ExPost
// system).
struct AfriatWitness {
  std::vector<Rational> v, lambda, mu;
};

// A lottery that every agent weakly prefers to the matching, someone
// strictly: disproves ExAnte.
struct DominatingLottery {
  FractionalMatching pi;
};

using Certificate = std::variant<std::monostate, PairViolation, BlockingPair, TransferVector,
                                 ImprovingCycle, AfriatWitness, DominatingLottery>;

struct ConceptVerdict {
  SolutionConcept kind;
  bool holds = false;
  Certificate certificate;
  std::string method;
};

ConceptVerdict is_no_trade_stable(const CardinalMarket& m, const Matching& sigma);
ConceptVerdict is_ntu_stable(const CardinalMarket& m, const Matching& sigma);
ConceptVerdict is_tu_stable(const CardinalMarket& m, const Matching& sigma);
ConceptVerdict is_ex_ante_pareto(const CardinalMarket& m, const Matching& sigma);
ConceptVerdict is_ex_post_pareto(const CardinalMarket& m, const Matching& sigma);

struct CertifyAllResult {
  std::vector<ConceptVerdict> verdicts;  // NoTrade, Ntu, Tu, ExAnte, ExPost
  std::string pattern;                   // e.g. "FTTTT", same order
};

// Runs all five certifiers and cross-checks the verdicts against the
// implication lattice
//     NoTrade => Tu => ExAnte => ExPost      NoTrade => Ntu => ExPost
// plus, for tie-free n == 2 markets, ExPost => ExAnte and Ntu => ExAnte.
// A pattern outside the lattice raises ImplicationViolationError.
CertifyAllResult certify_all(const CardinalMarket& m, const Matching& sigma);

}  // namespace matchcert
