#pragma once

// Exact rational scalars backed by GMP.

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace gpdcoh {

// mpq_class keeps results of arithmetic canonical (lowest terms, positive
// denominator); only values built from raw numerator/denominator pairs need an
// explicit canonicalize().
using Rational = mpq_class;
using Integer = mpz_class;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational makeRational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p", "-p", "p/q". Whitespace is not accepted.
inline Rational parseRational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  auto validInt = [](std::string_view s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto slash = text.find('/');
  std::string num(text.substr(0, slash));
  std::string den = slash == std::string_view::npos ? "1" : std::string(text.substr(slash + 1));
  if (!validInt(num) || !validInt(den) || den[0] == '-' || den[0] == '+')
    throw ParseError("malformed rational literal '" + std::string(text) + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

/// Lowest-terms "p/q", or "p" when the denominator is one.
inline std::string formatRational(Rational r) {
  r.canonicalize();
  return r.get_str();
}

}  // namespace gpdcoh
