#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matchcert/certify.hpp"
#include "matchcert/market.hpp"

namespace matchcert {

struct VerifyResult {
  bool ok = false;
  std::string reason;  // empty when ok

  explicit operator bool() const { return ok; }
};

// Re-checks a verdict from first principles, using only the market, the
// matching and the attached certificate -- never the code path that produced
// it.  Every check is a finite list of exact rational comparisons.
VerifyResult verify_verdict(const CardinalMarket& m, const Matching& sigma,
                            const ConceptVerdict& verdict);

// Given strictly positive scales (mu empty for the single-scale rematch
// system, both present for the lottery system), finds potentials v completing
// them, or nullopt when none exist.  Useful for auditing externally supplied
// scales whose stated potentials may be wrong.
std::optional<std::vector<Rational>> verify_afriat_multipliers(const CardinalMarket& m,
                                                               const Matching& sigma,
                                                               const std::vector<Rational>& lambda,
                                                               const std::vector<Rational>& mu);

}  // namespace matchcert
