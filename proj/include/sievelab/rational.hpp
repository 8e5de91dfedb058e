#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace sievelab {

// Exact arbitrary-precision arithmetic. cpp_rational keeps values gcd-reduced
// with a positive denominator, which makes equality structural.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// cpp_rational's (num, den) constructor rejects a negative denominator
// instead of normalising it, so all pair construction goes through here.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(std::move(num), std::move(den));
}

inline Rational make_rational(long long num, long long den = 1) {
  return make_rational(BigInt(num), BigInt(den));
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

inline BigInt floor_rational(const Rational& x) {
  BigInt q = numerator(x) / denominator(x);
  if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
  return q;
}

inline BigInt ceil_rational(const Rational& x) { return -floor_rational(-x); }

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

// Accepts "3", "-3", "5/2", "-7/4".
inline Rational parse_rational(std::string_view text) {
  try {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num{std::string(text.substr(0, slash))};
    BigInt den{std::string(text.substr(slash + 1))};
    return make_rational(std::move(num), std::move(den));
  } catch (const std::domain_error&) {
    throw;
  } catch (const std::exception&) {
    throw std::domain_error("rational: cannot parse '" + std::string(text) + "'");
  }
}

inline std::string rational_str(const Rational& x) { return x.str(); }

}  // namespace sievelab
