#pragma once

#include <algorithm>
#include <cstdio>
#include <optional>
#include <string>

#include "sievelab/combinatorics.hpp"
#include "sievelab/rational.hpp"

namespace sievelab {

// Membership in (0,1] u [2,3] u [4,5] u [6,7] u ...  (odd right endpoints,
// closed interval endpoints; half-open at 0).
inline bool in_interval_set(const Rational& x) {
  if (x <= 0) throw std::domain_error("parameter must be positive");
  if (x <= 1) return true;
  if (x < 2) return false;
  if (is_integer(x)) return true;  // even x is a left endpoint, odd x a right endpoint
  return floor_rational(x) % 2 == 0;
}

inline bool pair_admissible(const Rational& x1, const Rational& x2) {
  if (!in_interval_set(x1) || !in_interval_set(x2)) return false;
  const Rational gap = x1 >= x2 ? x1 - x2 : x2 - x1;
  return gap <= 1;
}

// Upper configs: consecutive disjoint pairs (m1,m2), (m3,m4), ... each
// admissible. Lower configs additionally carry m0 in (0,1] up front.
inline bool config_admissible(const ParamVector& pv) {
  std::size_t first_pair = 0;
  if (pv.kind == RuleKind::upper) {
    if (pv.m.size() < 2 || pv.m.size() % 2 != 0)
      throw std::invalid_argument("config arity");
  } else {
    if (pv.m.size() < 3 || pv.m.size() % 2 != 1)
      throw std::invalid_argument("config arity");
    if (pv.m[0] <= 0) throw std::domain_error("parameter must be positive");
    if (pv.m[0] > 1) return false;
    first_pair = 1;
  }
  for (std::size_t i = first_pair; i + 1 < pv.m.size(); i += 2)
    if (!pair_admissible(pv.m[i], pv.m[i + 1])) return false;
  return true;
}

enum class SignVerdict { valid_upper, valid_lower, invalid };

inline const char* verdict_name(SignVerdict v) {
  switch (v) {
    case SignVerdict::valid_upper: return "valid_upper";
    case SignVerdict::valid_lower: return "valid_lower";
    case SignVerdict::invalid: return "invalid";
  }
  return "?";
}

struct SignCertificate {
  ParamVector config;
  long n_max = 0;
  int asymptotic_sign = +1;  // sign of prod (1 - n/m_i) once n exceeds every m_i
  SignVerdict verdict = SignVerdict::invalid;
  std::optional<long> first_violation;
  std::string rationale;
};

// Brute-force sign check of prod (1 - n/m_i) at n = 1..n_max with
// n_max = ceil(max m_i) + 1. For n > max m_i every factor is strictly
// negative, so the checked prefix plus the parity of the factor count
// covers all positive integers n. This is deliberately independent of
// config_admissible so the two can cross-validate.
inline SignCertificate certify_sign(const ParamVector& pv) {
  SignCertificate cert;
  cert.config = pv;
  if (pv.m.empty()) throw std::invalid_argument("config arity");
  Rational max_m = pv.m.front();
  for (const Rational& mi : pv.m) {
    if (mi <= 0) throw std::domain_error("parameter must be positive");
    max_m = std::max(max_m, mi);
  }
  const bool even_arity = pv.m.size() % 2 == 0;
  cert.asymptotic_sign = even_arity ? +1 : -1;
  cert.n_max = static_cast<long>(ceil_rational(max_m)) + 1;

  for (long n = 1; n <= cert.n_max; ++n) {
    const Rational value = product_at(pv.m, BigInt(n));
    const bool bad = even_arity ? value < 0 : value > 0;
    if (bad) {
      cert.verdict = SignVerdict::invalid;
      cert.first_violation = n;
      char buf[160];
      std::snprintf(buf, sizeof buf,
                    "sign violation at n=%ld within checked range [1,%ld]", n, cert.n_max);
      cert.rationale = buf;
      return cert;
    }
  }
  cert.verdict = even_arity ? SignVerdict::valid_upper : SignVerdict::valid_lower;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "checked n in [1,%ld]; for n > max(m) all factors are negative, so the "
                "product sign is %+d by factor-count parity", cert.n_max, cert.asymptotic_sign);
  cert.rationale = buf;
  return cert;
}

}  // namespace sievelab
