#pragma once

#include <string>
#include <variant>
#include <vector>

#include "matchcert/certify.hpp"
#include "matchcert/market.hpp"
#include "matchcert/poa.hpp"
#include "matchcert/stable.hpp"
#include "matchcert/verify.hpp"

namespace matchcert {

// A market file holds either cardinal utilities or ordinal preference lists.
// All utilities travel as exact values: JSON integers or strings like "p/q"
// or "-1.25" (at most six decimals); floating point numbers are rejected so
// nothing is silently rounded.  Preference lists and all indices are 1-based
// on disk, 0-based in memory.
using MarketInput = std::variant<CardinalMarket, OrdinalMarket>;

MarketInput parse_market(const std::string& text);  // throws ParseError
MarketInput load_market(const std::string& path);

// Canonical JSON for a market; `generator` (when nonempty) records how the
// instance was produced.
std::string to_json(const CardinalMarket& m, const std::string& generator = "");
std::string to_json(const OrdinalMarket& o, const std::string& generator = "");

// 64-bit FNV-1a of the raw input bytes as 16 hex digits.  Reports embed it so
// an output can always be traced to its exact input.
std::string input_digest(const std::string& text);

// ---- deterministic reports: no timings, no environment, stable key order ----

// One verdict with its certificate, re-checked independently ("verified").
std::string verdict_json(const ConceptVerdict& v, const VerifyResult& check);

std::string certify_report(const CardinalMarket& m, const Matching& sigma,
                           const CertifyAllResult& result, const std::string& digest);
std::string enumerate_report(const OrdinalMarket& o, const StableSet& stable,
                             const std::vector<bool>& isolated, const std::string& digest);
std::string represent_report(const OrdinalMarket& o, const Matching& target,
                             const std::string& construction, const CardinalMarket& built,
                             const std::string& digest);
std::string poa_report(const std::vector<GapReport>& table, int g, const Rational& prize,
                       const Rational& eps);
std::string poa_csv(const std::vector<GapReport>& table);

struct AuditSummary {
  std::vector<int> sizes;
  int trials = 0;
  unsigned long long seed = 0;
  long certificates_checked = 0;
  std::vector<std::string> failure_notes;
};
std::string audit_report(const AuditSummary& a);

}  // namespace matchcert
