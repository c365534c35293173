#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "matchcert/rational.hpp"

using matchcert::Rational;

TEST_CASE("integer construction and canonical strings") {
  CHECK(Rational().str() == "0");
  CHECK(Rational(7).str() == "7");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational(4, 2).str() == "2");
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");  // sign moves to the numerator
  CHECK(Rational(-2, -4).str() == "1/2");
  CHECK(Rational(0, 5).str() == "0");
}

TEST_CASE("zero denominators are rejected") {
  CHECK_THROWS_AS(Rational(1, 0), matchcert::Error);
  CHECK_THROWS_AS(Rational(3) / Rational(0), matchcert::Error);
  Rational r(5);
  CHECK_THROWS_AS(r /= Rational(0), matchcert::Error);
}

TEST_CASE("parse accepts integers, fractions, and short decimals") {
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(Rational::parse("-12") == Rational(-12));
  CHECK(Rational::parse("3/4") == Rational(3, 4));
  CHECK(Rational::parse("-3/4") == Rational(-3, 4));
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("0.25") == Rational(1, 4));
  CHECK(Rational::parse("-0.2") == Rational(-1, 5));
  CHECK(Rational::parse("1.000001") == Rational(1000001, 1000000));
  CHECK(Rational::parse(".5") == Rational(1, 2));
  // surrounding whitespace is trimmed
  CHECK(Rational::parse(" 5") == Rational(5));
  CHECK(Rational::parse("5 ") == Rational(5));
}

TEST_CASE("parse rejects junk and overlong decimals") {
  for (const char* bad : {"", "abc", "1/ 2", "1//2", "1/0", "--3", "1.2.3", "2.",
                          "0.1234567",  // seven fractional digits
                          "1e3", "3 / 4", "0x10", "nan", "inf"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(Rational::parse(bad), matchcert::ParseError);
  }
}

TEST_CASE("str round-trips through parse") {
  std::vector<Rational> samples = {Rational(0),      Rational(17),      Rational(-17),
                                   Rational(1, 3),   Rational(-22, 7),  Rational(355, 113),
                                   Rational(1, 106)};
  for (const auto& r : samples) CHECK(Rational::parse(r.str()) == r);
}

TEST_CASE("arithmetic is exact") {
  const Rational a(1, 3), b(1, 6);
  CHECK(a + b == Rational(1, 2));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 18));
  CHECK(a / b == Rational(2));
  CHECK(-a == Rational(-1, 3));

  // A sum that fails in floating point: 0.1 + 0.2 == 0.3 exactly here.
  CHECK(Rational::parse("0.1") + Rational::parse("0.2") == Rational::parse("0.3"));

  // Accumulate 1/k! far past double precision; summing in the opposite
  // order must give the identical exact value.
  Rational fwd(0), term(1);
  for (long k = 1; k <= 30; ++k) {
    term /= Rational(k);
    fwd += term;
  }
  Rational bwd(0);
  for (long k = 30; k >= 1; --k) {
    Rational fact(1);
    for (long j = 2; j <= k; ++j) fact *= Rational(j);
    bwd += Rational(1) / fact;
  }
  CHECK(fwd == bwd);
  Rational fact30(1);
  for (long j = 2; j <= 30; ++j) fact30 *= Rational(j);
  CHECK((fwd * fact30).den() == 1);  // 30! clears every denominator
}

TEST_CASE("comparisons order by value, not representation") {
  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(-1, 2) < Rational(-1, 3));
  CHECK(Rational(2, 6) <= Rational(1, 3));
  CHECK(Rational(2, 6) >= Rational(1, 3));
  CHECK(Rational(7, 3) > Rational(2));
  CHECK(Rational(1000000, 3000000) == Rational(1, 3));
  CHECK(Rational(1, 3) != Rational(1, 4));
}

TEST_CASE("sign, zero test, absolute value") {
  CHECK(Rational(-5, 7).sign() == -1);
  CHECK(Rational(0).sign() == 0);
  CHECK(Rational(5, 7).sign() == 1);
  CHECK(Rational(0).is_zero());
  CHECK_FALSE(Rational(1, 1000000).is_zero());
  CHECK(Rational(-5, 7).abs() == Rational(5, 7));
  CHECK(Rational(5, 7).abs() == Rational(5, 7));
}

TEST_CASE("values work as ordered map keys") {
  std::map<Rational, int> m;
  m[Rational(1, 2)] = 1;
  m[Rational(2, 4)] = 2;  // same key
  m[Rational(1, 3)] = 3;
  CHECK(m.size() == 2);
  CHECK(m.begin()->first == Rational(1, 3));
}

TEST_CASE("stream output matches str") {
  std::ostringstream os;
  os << Rational(-7, 2);
  CHECK(os.str() == "-7/2");
}

TEST_CASE("to_double is a faithful approximation") {
  CHECK(Rational(1, 2).to_double() == 0.5);
  CHECK(Rational(1, 3).to_double() == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("big intermediate values do not overflow") {
  // (10^12 / 3) * 3 == 10^12 requires > 64-bit intermediates when squared.
  Rational big(1000000000000L, 3);
  Rational sq = big * big * Rational(9);
  CHECK(sq == Rational(1000000000000L) * Rational(1000000000000L));
}
