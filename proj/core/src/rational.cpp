#include "matchcert/rational.hpp"

#include <cctype>
#include <ostream>

namespace matchcert {

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational Rational::parse(const std::string& text) {
  std::string s = text;
  // strip surrounding whitespace
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  if (s.empty()) throw ParseError("empty rational literal");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(s.begin());
  }
  if (s.empty()) throw ParseError("bare sign is not a rational: '" + text + "'");

  mpq_class q;
  auto slash = s.find('/');
  auto dot = s.find('.');
  if (slash != std::string::npos) {
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ParseError("malformed fraction: '" + text + "'");
    }
    mpz_class d(den);
    if (d == 0) throw ParseError("zero denominator: '" + text + "'");
    q = mpq_class(mpz_class(num), d);
  } else if (dot != std::string::npos) {
    std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!all_digits(ip) || !all_digits(fp)) {
      throw ParseError("malformed decimal: '" + text + "'");
    }
    if (fp.size() > 6) {
      throw ParseError("decimal '" + text +
                       "' has more than six fractional digits; use a p/q string for exactness");
    }
    mpz_class scale = 1;
    for (std::size_t k = 0; k < fp.size(); ++k) scale *= 10;
    q = mpq_class(mpz_class(ip) * scale + mpz_class(fp), scale);
  } else {
    if (!all_digits(s)) throw ParseError("malformed integer: '" + text + "'");
    q = mpq_class(mpz_class(s));
  }
  q.canonicalize();
  if (negative) q = -q;
  return Rational(q);
}

std::string Rational::str() const {
  if (q_.get_den() == 1) return q_.get_num().get_str();
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

}  // namespace matchcert
