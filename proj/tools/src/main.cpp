#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matchcert/certify.hpp"
#include "matchcert/json_io.hpp"
#include "matchcert/market.hpp"
#include "matchcert/poa.hpp"
#include "matchcert/represent.hpp"
#include "matchcert/rng.hpp"
#include "matchcert/stable.hpp"
#include "matchcert/verify.hpp"

namespace {

using namespace matchcert;

struct GlobalOpts {
  bool json = false;
  std::string out;
  std::string tie_break;  // empty or "lower-index"

  TieBreak tb() const { return tie_break.empty() ? TieBreak::None : TieBreak::LowerIndex; }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const GlobalOpts& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw InvalidConfigError("cannot write " + g.out);
  f << text;
}

Matching parse_matching_arg(const std::string& arg, int n) {
  std::vector<int> sigma;
  std::stringstream ss(arg);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      sigma.push_back(std::stoi(part) - 1);
    } catch (const std::exception&) {
      throw InvalidMatchingError("--matching must be a comma-separated 1-based list like 3,1,2");
    }
  }
  if (static_cast<int>(sigma.size()) != n)
    throw InvalidMatchingError("--matching must list one woman per man (" + std::to_string(n) +
                               " entries)");
  return Matching(std::move(sigma));
}

std::string perm_text(const Matching& sigma) {
  std::string out = "(";
  for (int i = 0; i < sigma.n(); ++i) {
    if (i) out += ' ';
    out += std::to_string(sigma.woman_of(i) + 1);
  }
  return out + ")";
}

std::string certificate_text(const Certificate& c) {
  if (std::holds_alternative<std::monostate>(c)) return "-";
  if (const auto* p = std::get_if<PairViolation>(&c))
    return "pair violation: man " + std::to_string(p->man + 1) + " with woman " +
           std::to_string(p->woman + 1);
  if (const auto* b = std::get_if<BlockingPair>(&c))
    return "blocking pair: man " + std::to_string(b->man + 1) + " with woman " +
           std::to_string(b->woman + 1);
  if (const auto* t = std::get_if<TransferVector>(&c)) {
    std::string out = "transfers (";
    for (std::size_t i = 0; i < t->t.size(); ++i) {
      if (i) out += ", ";
      out += t->t[i].str();
    }
    return out + ")";
  }
  if (const auto* cyc = std::get_if<ImprovingCycle>(&c)) {
    std::string out = "improving cycle through couples (";
    for (std::size_t i = 0; i < cyc->couples.size(); ++i) {
      if (i) out += ' ';
      out += std::to_string(cyc->couples[i] + 1);
    }
    return out + ")";
  }
  if (const auto* w = std::get_if<AfriatWitness>(&c))
    return std::string("scaled potentials over ") + std::to_string(w->v.size()) + " couples";
  if (const auto* d = std::get_if<DominatingLottery>(&c))
    return "dominating lottery over " + std::to_string(d->pi.n()) + "x" +
           std::to_string(d->pi.n()) + " pairs";
  return "?";
}

const CardinalMarket& need_cardinal(const MarketInput& in, const char* cmd) {
  const auto* m = std::get_if<CardinalMarket>(&in);
  if (!m) throw InvalidConfigError(std::string(cmd) + " needs cardinal utilities, not lists");
  return *m;
}

OrdinalMarket as_ordinal(const MarketInput& in, TieBreak tb) {
  if (const auto* o = std::get_if<OrdinalMarket>(&in)) return *o;
  return ordinal_of(std::get<CardinalMarket>(in), tb);
}

int run_certify(const GlobalOpts& g, const std::string& market_path,
                const std::string& matching_arg) {
  const std::string text = slurp(market_path);
  const MarketInput input = parse_market(text);
  const CardinalMarket& m = need_cardinal(input, "certify");
  const Matching sigma = parse_matching_arg(matching_arg, m.n());
  const CertifyAllResult res = certify_all(m, sigma);
  bool sound = true;
  for (const ConceptVerdict& v : res.verdicts) sound = sound && verify_verdict(m, sigma, v).ok;
  if (g.json) {
    emit(g, certify_report(m, sigma, res, input_digest(text)));
  } else {
    std::ostringstream out;
    out << "n: " << m.n() << "  matching: " << perm_text(sigma) << "\n";
    out << "pattern: " << res.pattern << "\n";
    for (const ConceptVerdict& v : res.verdicts) {
      const VerifyResult check = verify_verdict(m, sigma, v);
      out << std::left << std::setw(16) << concept_name(v.kind) << std::setw(4)
          << (v.holds ? "yes" : "no") << std::setw(27) << v.method
          << certificate_text(v.certificate)
          << (check.ok ? "" : "  [CERTIFICATE REJECTED: " + check.reason + "]") << "\n";
    }
    emit(g, out.str());
  }
  if (!sound) {
    std::cerr << "error: a certificate failed independent verification\n";
    return 1;
  }
  return 0;
}

int run_enumerate(const GlobalOpts& g, const std::string& market_path) {
  const std::string text = slurp(market_path);
  const OrdinalMarket o = as_ordinal(parse_market(text), g.tb());
  const StableSet stable = enumerate_stable(o);
  std::vector<bool> isolated;
  for (const Matching& mu : stable.matchings) isolated.push_back(is_isolated(o, mu, stable));
  if (g.json) {
    emit(g, enumerate_report(o, stable, isolated, input_digest(text)));
    return 0;
  }
  std::ostringstream out;
  out << "stable matchings: " << stable.size() << " (man-optimal #"
      << stable.man_optimal_index + 1 << ", woman-optimal #" << stable.woman_optimal_index + 1
      << ")\n";
  for (int i = 0; i < stable.size(); ++i) {
    out << "#" << i + 1 << "  " << perm_text(stable.matchings[i]);
    if (i == stable.man_optimal_index) out << "  man-optimal";
    if (i == stable.woman_optimal_index) out << "  woman-optimal";
    if (isolated[i]) out << "  isolated";
    out << "\n";
  }
  emit(g, out.str());
  return 0;
}

int run_represent(const GlobalOpts& g, const std::string& market_path,
                  const std::string& construction, const std::string& target_arg) {
  const std::string text = slurp(market_path);
  const OrdinalMarket o = as_ordinal(parse_market(text), g.tb());
  Matching target;
  if (target_arg == "man-optimal")
    target = deferred_acceptance(o, ProposingSide::Men);
  else if (target_arg == "woman-optimal")
    target = deferred_acceptance(o, ProposingSide::Women);
  else
    target = parse_matching_arg(target_arg, o.n());
  const CardinalMarket built = construction == "no-trade" ? no_trade_representation(o, target)
                                                          : isolated_representation(o, target);
  if (g.json) {
    emit(g, represent_report(o, target, construction, built, input_digest(text)));
    return 0;
  }
  std::ostringstream out;
  out << "construction: " << construction << "\n";
  out << "target: " << perm_text(target) << "\n";
  out << "checks: represents=" << (represents(built, o) ? "yes" : "no")
      << " no-trade-stable=" << (is_no_trade_stable(built, target).holds ? "yes" : "no") << "\n";
  out << to_json(built, "represent --construction " + construction);
  emit(g, out.str());
  return 0;
}

int run_poa(const GlobalOpts& g, const std::vector<int>& sizes, int growth,
            const std::string& prize_arg, const std::string& eps_arg, bool csv) {
  const Rational prize = Rational::parse(prize_arg);
  const Rational eps = Rational::parse(eps_arg);
  const std::vector<GapReport> table = gap_growth_table(sizes, growth, prize, eps);
  if (csv) {
    emit(g, poa_csv(table));
    return 0;
  }
  if (g.json) {
    emit(g, poa_report(table, growth, prize, eps));
    return 0;
  }
  std::ostringstream out;
  out << "g=" << growth << " prize=" << prize.str() << " eps=" << eps.str() << "\n";
  out << "n  numerator  denominator  ratio  (approx)\n";
  for (const GapReport& r : table)
    out << r.n << "  " << r.numerator.str() << "  " << r.denominator.str() << "  "
        << r.ratio.str() << "  (" << r.ratio.to_double() << ")\n";
  emit(g, out.str());
  return 0;
}

int run_audit(const GlobalOpts& g, const std::vector<int>& sizes, int trials,
              unsigned long long seed) {
  if (trials < 1) throw InvalidConfigError("--trials must be positive");
  for (int n : sizes)
    if (n < 1 || n > 16) throw InvalidConfigError("--sizes entries must lie in 1..16");
  AuditSummary summary;
  summary.sizes = sizes;
  summary.trials = trials;
  summary.seed = seed;
  DetRng rng(seed);
  for (int t = 0; t < trials; ++t) {
    for (int n : sizes) {
      const CardinalMarket m = random_cardinal_market(n, rng);
      const Matching sigma = random_matching(n, rng);
      const std::string tag =
          "trial " + std::to_string(t) + " n " + std::to_string(n) + ": ";
      try {
        const CertifyAllResult res = certify_all(m, sigma);
        for (const ConceptVerdict& v : res.verdicts) {
          const VerifyResult check = verify_verdict(m, sigma, v);
          ++summary.certificates_checked;
          if (!check.ok)
            summary.failure_notes.push_back(tag + concept_name(v.kind) + ": " + check.reason);
        }
      } catch (const Error& e) {
        summary.failure_notes.push_back(tag + e.what());
      }
      if (summary.failure_notes.size() >= 20) break;
    }
    if (summary.failure_notes.size() >= 20) break;
  }
  if (g.json) {
    emit(g, audit_report(summary));
  } else {
    std::ostringstream out;
    out << "sizes:";
    for (int n : sizes) out << ' ' << n;
    out << "  trials: " << trials << "  seed: " << seed << "\n";
    out << "certificates checked: " << summary.certificates_checked << "\n";
    out << "failures: " << summary.failure_notes.size() << "\n";
    for (const std::string& note : summary.failure_notes) out << "  " << note << "\n";
    emit(g, out.str());
  }
  return summary.failure_notes.empty() ? 0 : 1;
}

int code_for(const Error& e) {
  if (dynamic_cast<const NotStableError*>(&e) || dynamic_cast<const NotMemberError*>(&e) ||
      dynamic_cast<const NotIsolatedError*>(&e))
    return 5;
  if (dynamic_cast<const TiesPresentError*>(&e)) return 4;
  if (dynamic_cast<const InvalidMatchingError*>(&e)) return 3;
  if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const InvalidConfigError*>(&e) ||
      dynamic_cast<const InvalidMarketError*>(&e) || dynamic_cast<const SizeLimitError*>(&e))
    return 2;
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact certificates for matching markets: which solution concepts hold, "
               "utilities that realize them, and the stable-versus-optimal welfare gap"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_flag("--json", g.json, "emit a JSON report");
  app.add_option("--out", g.out, "write the report to this file instead of stdout");
  app.add_option("--tie-break", g.tie_break,
                 "resolve exact utility ties when reading preferences from utilities")
      ->check(CLI::IsMember({"lower-index"}));

  std::string market_path, matching_arg, construction = "no-trade", target_arg = "man-optimal";
  std::string prize_arg = "10", eps_arg = "1/100";
  std::vector<int> poa_sizes{4, 6, 8}, audit_sizes{2, 3, 4, 5};
  int growth = 2, trials = 100;
  unsigned long long seed = 12345;
  bool csv = false;

  CLI::App* certify = app.add_subcommand(
      "certify", "which solution concepts does a matching satisfy, with certificates");
  certify->fallthrough();
  certify->add_option("--market", market_path, "cardinal market JSON file")->required();
  certify->add_option("--matching", matching_arg, "1-based partner per man, e.g. 3,1,2")
      ->required();

  CLI::App* enumerate =
      app.add_subcommand("enumerate-stable", "list every stable matching of the market");
  enumerate->fallthrough();
  enumerate->add_option("--market", market_path, "market JSON file (ordinal or cardinal)")
      ->required();

  CLI::App* represent = app.add_subcommand(
      "represent", "build utilities under which the target matching is stable without trade");
  represent->fallthrough();
  represent->add_option("--market", market_path, "market JSON file (ordinal or cardinal)")
      ->required();
  represent->add_option("--construction", construction, "no-trade or isolated")
      ->check(CLI::IsMember({"no-trade", "isolated"}));
  represent->add_option("--target", target_arg,
                        "man-optimal, woman-optimal, or a 1-based list like 3,1,2");

  CLI::App* poa = app.add_subcommand(
      "poa", "how far stable welfare falls below transfer-optimal welfare as markets grow");
  poa->fallthrough();
  poa->add_option("--n-list", poa_sizes, "market sizes, even and at least 4")->delimiter(',');
  poa->add_option("--g", growth, "payoff decay exponent");
  poa->add_option("--K", prize_arg, "payoff of a first choice (exact rational)");
  poa->add_option("--eps", eps_arg, "smallest admissible welfare weight (exact rational)");
  poa->add_flag("--csv", csv, "emit the table as CSV");

  CLI::App* audit = app.add_subcommand(
      "audit-implications",
      "random markets: check verdict implications and re-verify every certificate");
  audit->fallthrough();
  audit->add_option("--sizes", audit_sizes, "market sizes to sample")->delimiter(',');
  audit->add_option("--trials", trials, "instances per size");
  audit->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
    if (certify->parsed()) return run_certify(g, market_path, matching_arg);
    if (enumerate->parsed()) return run_enumerate(g, market_path);
    if (represent->parsed()) return run_represent(g, market_path, construction, target_arg);
    if (poa->parsed()) return run_poa(g, poa_sizes, growth, prize_arg, eps_arg, csv);
    if (audit->parsed()) return run_audit(g, audit_sizes, trials, seed);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
