#include "matchcert/json_io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace matchcert {

namespace {

using Json = nlohmann::ordered_json;

Json parse_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("not valid JSON: ") + e.what());
  }
}

Rational value_to_rational(const Json& e, const std::string& where) {
  if (e.is_number_integer()) return Rational(e.get<long>());
  if (e.is_string()) {
    try {
      return Rational::parse(e.get<std::string>());
    } catch (const ParseError& err) {
      throw ParseError(where + ": " + err.what());
    }
  }
  throw ParseError(where + ": utilities must be integers or exact strings like \"p/q\"; "
                           "floating point numbers are not accepted");
}

RMat matrix_from(const Json& j, const char* key, int n) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != n)
    throw ParseError(std::string(key) + " must be an array of " + std::to_string(n) + " rows");
  RMat m(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    const Json& row = j[key][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(std::string(key) + " row " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    for (int c = 0; c < n; ++c)
      m(i, c) = value_to_rational(row[c], std::string(key) + "[" + std::to_string(i + 1) + "][" +
                                              std::to_string(c + 1) + "]");
  }
  return m;
}

std::vector<std::vector<int>> prefs_from(const Json& j, const char* key, int n) {
  if (!j.contains(key) || !j[key].is_array() || static_cast<int>(j[key].size()) != n)
    throw ParseError(std::string(key) + " must be an array of " + std::to_string(n) + " lists");
  std::vector<std::vector<int>> prefs(n);
  for (int i = 0; i < n; ++i) {
    const Json& row = j[key][i];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw ParseError(std::string(key) + " list " + std::to_string(i + 1) + " must have " +
                       std::to_string(n) + " entries");
    for (const Json& e : row) {
      if (!e.is_number_integer())
        throw ParseError(std::string(key) + " entries must be 1-based integers");
      const long v = e.get<long>();
      if (v < 1 || v > n)
        throw ParseError(std::string(key) + " entries must lie in 1.." + std::to_string(n));
      prefs[i].push_back(static_cast<int>(v - 1));
    }
  }
  return prefs;
}

std::vector<std::string> labels_from(const Json& j, const char* key, int n) {
  if (!j.contains(key)) return {};
  if (!j[key].is_array() || static_cast<int>(j[key].size()) != n)
    throw ParseError(std::string(key) + " must list one label per agent");
  std::vector<std::string> out;
  for (const Json& e : j[key]) {
    if (!e.is_string()) throw ParseError(std::string(key) + " entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

int size_from(const Json& j) {
  if (!j.contains("n") || !j["n"].is_number_integer())
    throw ParseError("market needs an integer field n");
  const long n = j["n"].get<long>();
  if (n < 1 || n > 4096) throw ParseError("market size n must lie in 1..4096");
  return static_cast<int>(n);
}

Json rational_array(const std::vector<Rational>& xs) {
  Json out = Json::array();
  for (const Rational& x : xs) out.push_back(x.str());
  return out;
}

Json matrix_json(const RMat& m) {
  Json out = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j).str());
    out.push_back(std::move(row));
  }
  return out;
}

Json matching_json(const Matching& sigma) {
  Json out = Json::array();
  for (int i = 0; i < sigma.n(); ++i) out.push_back(sigma.woman_of(i) + 1);
  return out;
}

Json cardinal_json(const CardinalMarket& m, const std::string& generator) {
  Json j;
  j["type"] = "cardinal";
  j["n"] = m.n();
  if (!generator.empty()) j["generator"] = generator;
  if (!m.men_labels.empty()) j["men_labels"] = m.men_labels;
  if (!m.women_labels.empty()) j["women_labels"] = m.women_labels;
  j["U"] = matrix_json(m.U);
  j["V"] = matrix_json(m.V);
  return j;
}

Json ordinal_json(const OrdinalMarket& o, const std::string& generator) {
  Json j;
  j["type"] = "ordinal";
  j["n"] = o.n();
  if (!generator.empty()) j["generator"] = generator;
  if (!o.men_labels.empty()) j["men_labels"] = o.men_labels;
  if (!o.women_labels.empty()) j["women_labels"] = o.women_labels;
  Json mp = Json::array(), wp = Json::array();
  for (const auto& row : o.men_prefs) {
    Json r = Json::array();
    for (int w : row) r.push_back(w + 1);
    mp.push_back(std::move(r));
  }
  for (const auto& row : o.women_prefs) {
    Json r = Json::array();
    for (int m : row) r.push_back(m + 1);
    wp.push_back(std::move(r));
  }
  j["men_prefs"] = std::move(mp);
  j["women_prefs"] = std::move(wp);
  return j;
}

Json certificate_json(const Certificate& c) {
  Json j;
  if (std::holds_alternative<std::monostate>(c)) {
    j["type"] = "none";
  } else if (const auto* p = std::get_if<PairViolation>(&c)) {
    j["type"] = "pair-violation";
    j["man"] = p->man + 1;
    j["woman"] = p->woman + 1;
  } else if (const auto* b = std::get_if<BlockingPair>(&c)) {
    j["type"] = "blocking-pair";
    j["man"] = b->man + 1;
    j["woman"] = b->woman + 1;
  } else if (const auto* t = std::get_if<TransferVector>(&c)) {
    j["type"] = "transfers";
    j["t"] = rational_array(t->t);
  } else if (const auto* cyc = std::get_if<ImprovingCycle>(&c)) {
    j["type"] = "improving-cycle";
    Json couples = Json::array();
    for (int v : cyc->couples) couples.push_back(v + 1);
    j["couples"] = std::move(couples);
  } else if (const auto* w = std::get_if<AfriatWitness>(&c)) {
    j["type"] = "scaled-potentials";
    j["v"] = rational_array(w->v);
    j["lambda"] = rational_array(w->lambda);
    if (!w->mu.empty()) j["mu"] = rational_array(w->mu);
  } else if (const auto* d = std::get_if<DominatingLottery>(&c)) {
    j["type"] = "dominating-lottery";
    j["pi"] = matrix_json(d->pi.pi);
  } else {
    throw InternalError("certificate kind without a JSON form");
  }
  return j;
}

Json verdict_obj(const ConceptVerdict& v, const VerifyResult& check) {
  Json j;
  j["concept"] = concept_name(v.kind);
  j["holds"] = v.holds;
  j["method"] = v.method;
  j["certificate"] = certificate_json(v.certificate);
  j["verified"] = check.ok;
  if (!check.ok) j["verify_reason"] = check.reason;
  return j;
}

}  // namespace

MarketInput parse_market(const std::string& text) {
  const Json j = parse_text(text);
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
    throw ParseError("market needs a string field type: \"cardinal\" or \"ordinal\"");
  const std::string type = j["type"].get<std::string>();
  const int n = size_from(j);
  if (type == "cardinal") {
    CardinalMarket m;
    m.U = matrix_from(j, "U", n);
    m.V = matrix_from(j, "V", n);
    m.men_labels = labels_from(j, "men_labels", n);
    m.women_labels = labels_from(j, "women_labels", n);
    m.validate();
    return m;
  }
  if (type == "ordinal") {
    OrdinalMarket o;
    o.men_prefs = prefs_from(j, "men_prefs", n);
    o.women_prefs = prefs_from(j, "women_prefs", n);
    o.men_labels = labels_from(j, "men_labels", n);
    o.women_labels = labels_from(j, "women_labels", n);
    o.validate();
    return o;
  }
  throw ParseError("unknown market type \"" + type + "\"");
}

MarketInput load_market(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_market(buf.str());
}

std::string to_json(const CardinalMarket& m, const std::string& generator) {
  return cardinal_json(m, generator).dump(2) + "\n";
}

std::string to_json(const OrdinalMarket& o, const std::string& generator) {
  return ordinal_json(o, generator).dump(2) + "\n";
}

std::string input_digest(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string verdict_json(const ConceptVerdict& v, const VerifyResult& check) {
  return verdict_obj(v, check).dump(2) + "\n";
}

std::string certify_report(const CardinalMarket& m, const Matching& sigma,
                           const CertifyAllResult& result, const std::string& digest) {
  Json j;
  j["command"] = "certify";
  j["input_digest"] = digest;
  j["n"] = m.n();
  j["matching"] = matching_json(sigma);
  j["pattern"] = result.pattern;
  Json verdicts = Json::array();
  for (const ConceptVerdict& v : result.verdicts)
    verdicts.push_back(verdict_obj(v, verify_verdict(m, sigma, v)));
  j["verdicts"] = std::move(verdicts);
  return j.dump(2) + "\n";
}

std::string enumerate_report(const OrdinalMarket& o, const StableSet& stable,
                             const std::vector<bool>& isolated, const std::string& digest) {
  if (isolated.size() != static_cast<std::size_t>(stable.size()))
    throw InternalError("one isolation flag per stable matching, please");
  Json j;
  j["command"] = "enumerate-stable";
  j["input_digest"] = digest;
  j["n"] = o.n();
  j["count"] = stable.size();
  j["man_optimal_index"] = stable.man_optimal_index + 1;
  j["woman_optimal_index"] = stable.woman_optimal_index + 1;
  Json list = Json::array();
  for (int i = 0; i < stable.size(); ++i) {
    Json row;
    row["sigma"] = matching_json(stable.matchings[i]);
    row["isolated"] = static_cast<bool>(isolated[i]);
    list.push_back(std::move(row));
  }
  j["matchings"] = std::move(list);
  return j.dump(2) + "\n";
}

std::string represent_report(const OrdinalMarket& o, const Matching& target,
                             const std::string& construction, const CardinalMarket& built,
                             const std::string& digest) {
  Json j;
  j["command"] = "represent";
  j["input_digest"] = digest;
  j["construction"] = construction;
  j["n"] = o.n();
  j["target"] = matching_json(target);
  Json checks;
  checks["represents"] = represents(built, o);
  checks["no_trade_stable"] = is_no_trade_stable(built, target).holds;
  j["checks"] = std::move(checks);
  j["market"] = cardinal_json(built, "represent --construction " + construction);
  return j.dump(2) + "\n";
}

std::string poa_report(const std::vector<GapReport>& table, int g, const Rational& prize,
                       const Rational& eps) {
  Json j;
  j["command"] = "poa";
  j["g"] = g;
  j["prize"] = prize.str();
  j["eps"] = eps.str();
  Json rows = Json::array();
  for (const GapReport& r : table) {
    Json row;
    row["n"] = r.n;
    row["numerator"] = r.numerator.str();
    row["denominator"] = r.denominator.str();
    row["ratio"] = r.ratio.str();
    row["ratio_approx"] = r.ratio.to_double();
    row["stable_count"] = r.stable_count;
    row["alpha"] = rational_array(r.alpha);
    row["beta"] = rational_array(r.beta);
    row["optimal"] = matching_json(r.optimal);
    row["best_stable"] = matching_json(r.best_stable);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(2) + "\n";
}

std::string poa_csv(const std::vector<GapReport>& table) {
  std::ostringstream out;
  out << "n,numerator,denominator,ratio,ratio_approx\n";
  for (const GapReport& r : table)
    out << r.n << ',' << r.numerator.str() << ',' << r.denominator.str() << ',' << r.ratio.str()
        << ',' << r.ratio.to_double() << '\n';
  return out.str();
}

std::string audit_report(const AuditSummary& a) {
  Json j;
  j["command"] = "audit-implications";
  j["sizes"] = a.sizes;
  j["trials"] = a.trials;
  j["seed"] = a.seed;
  j["certificates_checked"] = a.certificates_checked;
  j["failures"] = static_cast<long>(a.failure_notes.size());
  j["failure_notes"] = a.failure_notes;
  j["ok"] = a.failure_notes.empty();
  return j.dump(2) + "\n";
}

}  // namespace matchcert
