#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "sievelab/rational.hpp"

namespace sievelab {

enum class RuleKind { upper, lower };

inline const char* rule_kind_name(RuleKind k) {
  return k == RuleKind::upper ? "upper" : "lower";
}

// Coefficients c[0..k] of a polynomial written in the binomial basis,
// p(n) = sum_r c[r] * C(n, r).
struct CoeffVector {
  std::vector<Rational> c;

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  bool operator==(const CoeffVector&) const = default;
};

// Parameters of an iteration rule. Lower-kind vectors carry m0 as the first
// entry; upper-kind vectors hold consecutive pairs (m1,m2), (m3,m4), ...
struct ParamVector {
  RuleKind kind = RuleKind::upper;
  std::vector<Rational> m;

  std::size_t arity() const { return m.size(); }
  bool operator==(const ParamVector&) const = default;
};

// The closed enumeration of supported rule shapes. `ub_k` is the fixed
// odd-k rule with m = (2, 3, ..., k); the others take free parameters of
// the indicated depth, lower families including a leading m0.
enum class RuleFamily { ub_k, ub2d, ub4d, ub6d, lb3d, lb5d };

inline constexpr RuleFamily kAllFamilies[] = {RuleFamily::ub_k,  RuleFamily::ub2d,
                                              RuleFamily::ub4d,  RuleFamily::ub6d,
                                              RuleFamily::lb3d,  RuleFamily::lb5d};

inline const char* family_name(RuleFamily f) {
  switch (f) {
    case RuleFamily::ub_k: return "UB_k";
    case RuleFamily::ub2d: return "UB2D";
    case RuleFamily::ub4d: return "UB4D";
    case RuleFamily::ub6d: return "UB6D";
    case RuleFamily::lb3d: return "LB3D";
    case RuleFamily::lb5d: return "LB5D";
  }
  return "?";
}

inline RuleFamily parse_family(std::string_view name) {
  for (RuleFamily f : kAllFamilies)
    if (name == family_name(f)) return f;
  throw std::invalid_argument("unknown rule family '" + std::string(name) + "'");
}

inline RuleKind family_kind(RuleFamily f) {
  switch (f) {
    case RuleFamily::lb3d:
    case RuleFamily::lb5d: return RuleKind::lower;
    default: return RuleKind::upper;
  }
}

// Fixed arity for the parameterised families; 0 for ub_k (any odd k >= 3).
inline std::size_t family_arity(RuleFamily f) {
  switch (f) {
    case RuleFamily::ub2d: return 2;
    case RuleFamily::ub4d: return 4;
    case RuleFamily::ub6d: return 6;
    case RuleFamily::lb3d: return 3;
    case RuleFamily::lb5d: return 5;
    default: return 0;
  }
}

inline BigInt binom(unsigned long long n, unsigned long long r) {
  if (r > n) return BigInt(0);
  if (r > n - r) r = n - r;
  BigInt result(1);
  for (unsigned long long i = 0; i < r; ++i) {
    result *= BigInt(n - i);
    result /= BigInt(i + 1);  // exact: product of j consecutive integers is divisible by j!
  }
  return result;
}

inline BigInt factorial(unsigned n) {
  BigInt result(1);
  for (unsigned i = 2; i <= n; ++i) result *= i;
  return result;
}

// Elementary symmetric function e_r(m): sum over all r-subsets of the
// product of selected entries. e_0 = 1 by the empty-subset convention.
inline Rational elementary_symmetric(std::span<const Rational> m, std::size_t r) {
  if (r > m.size()) throw std::invalid_argument("degree exceeds parameter count");
  std::vector<Rational> e(r + 1, Rational(0));
  e[0] = 1;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::size_t top = std::min(i + 1, r);
    for (std::size_t j = top; j >= 1; --j) e[j] += m[i] * e[j - 1];
  }
  return e[r];
}

// prod_i (1 - n/m_i), evaluated exactly. The sign of this value at positive
// integers n is what validates a rule; see admissible.hpp.
inline Rational product_at(std::span<const Rational> m, const BigInt& n) {
  Rational result(1);
  for (const Rational& mi : m) {
    if (mi == 0) throw std::domain_error("division by zero parameter");
    result *= Rational(1) - Rational(n) / mi;
  }
  return result;
}

inline Rational binomial_form_value(const CoeffVector& cv, unsigned long long n) {
  Rational result(0);
  for (std::size_t r = 0; r < cv.c.size(); ++r) result += cv.c[r] * Rational(binom(n, r));
  return result;
}

// Expands prod_i (1 - n/m_i) into the binomial basis: the returned c satisfies
// sum_r c[r]*C(n,r) = prod_i (1 - n/m_i) for every integer n >= 0, exactly.
// Works by evaluating the product at n = 0..k and solving the triangular
// system; C(n, r) = 0 for r > n makes the system unit lower-triangular.
inline CoeffVector expand_to_binomial_basis(std::span<const Rational> m) {
  const std::size_t k = m.size();
  CoeffVector out;
  out.c.resize(k + 1);
  for (std::size_t n = 0; n <= k; ++n) {
    Rational residual = product_at(m, BigInt(n));
    for (std::size_t r = 0; r < n; ++r) residual -= out.c[r] * Rational(binom(n, r));
    out.c[n] = residual;
  }
  return out;
}

inline CoeffVector expand_to_binomial_basis(const std::vector<Rational>& m) {
  return expand_to_binomial_basis(std::span<const Rational>(m));
}

namespace detail {

inline void require_family_shape(RuleFamily family, const ParamVector& pv) {
  if (family == RuleFamily::ub_k) {
    const std::size_t len = pv.m.size();  // m = (2, 3, ..., k), k odd
    const std::size_t k = len + 1;
    if (pv.kind != RuleKind::upper || len < 2 || k % 2 == 0)
      throw std::invalid_argument("rule family arity");
    for (std::size_t i = 0; i < len; ++i)
      if (pv.m[i] != Rational(static_cast<long long>(i + 2)))
        throw std::invalid_argument("rule family arity");
    return;
  }
  if (pv.kind != family_kind(family) || pv.m.size() != family_arity(family))
    throw std::invalid_argument("rule family arity");
}

}  // namespace detail

// Coefficient vector of the named rule, read directly off its closed form
// (signs included). Uses elementary_symmetric for the M^r_k / N^r_k sums.
inline CoeffVector family_coefficients(RuleFamily family, const ParamVector& pv) {
  detail::require_family_shape(family, pv);
  const std::span<const Rational> m(pv.m);
  CoeffVector out;

  switch (family) {
    case RuleFamily::ub_k: {
      const long long k = static_cast<long long>(m.size()) + 1;
      out.c.resize(m.size() + 1);
      for (long long r = 0; r <= k - 1; ++r) {
        Rational v = make_rational(k - r, k);
        out.c[static_cast<std::size_t>(r)] = (r % 2 == 0) ? v : -v;
      }
      return out;
    }
    case RuleFamily::ub2d: {
      const Rational p = m[0] * m[1];
      out.c = {Rational(1), -(m[0] + m[1] - 1) / p, Rational(2) / p};
      return out;
    }
    case RuleFamily::ub4d: {
      const Rational e1 = elementary_symmetric(m, 1);
      const Rational e2 = elementary_symmetric(m, 2);
      const Rational e3 = elementary_symmetric(m, 3);
      const Rational p = elementary_symmetric(m, 4);
      out.c = {Rational(1),
               -(e3 - e2 + e1 - 1) / p,
               Rational(2) * (e2 - 3 * e1 + 7) / p,
               Rational(-6) * (e1 - 6) / p,
               Rational(24) / p};
      return out;
    }
    case RuleFamily::ub6d: {
      const Rational e1 = elementary_symmetric(m, 1);
      const Rational e2 = elementary_symmetric(m, 2);
      const Rational e3 = elementary_symmetric(m, 3);
      const Rational e4 = elementary_symmetric(m, 4);
      const Rational e5 = elementary_symmetric(m, 5);
      const Rational p = elementary_symmetric(m, 6);
      out.c = {Rational(1),
               -(e5 - e4 + e3 - e2 + e1 - 1) / p,
               Rational(2) * (e4 - 3 * e3 + 7 * e2 - 15 * e1 + 31) / p,
               Rational(-6) * (e3 - 6 * e2 + 25 * e1 - 90) / p,
               Rational(24) * (e2 - 10 * e1 + 65) / p,
               Rational(-120) * (e1 - 15) / p,
               Rational(720) / p};
      return out;
    }
    case RuleFamily::lb3d: {
      const Rational e1 = elementary_symmetric(m, 1);
      const Rational e2 = elementary_symmetric(m, 2);
      const Rational p = elementary_symmetric(m, 3);
      out.c = {Rational(1),
               -(e2 - e1 + 1) / p,
               Rational(2) * (e1 - 3) / p,
               Rational(-6) / p};
      return out;
    }
    case RuleFamily::lb5d: {
      const Rational e1 = elementary_symmetric(m, 1);
      const Rational e2 = elementary_symmetric(m, 2);
      const Rational e3 = elementary_symmetric(m, 3);
      const Rational e4 = elementary_symmetric(m, 4);
      const Rational p = elementary_symmetric(m, 5);
      out.c = {Rational(1),
               -(e4 - e3 + e2 - e1 + 1) / p,
               Rational(2) * (e3 - 3 * e2 + 7 * e1 - 15) / p,
               Rational(-6) * (e2 - 6 * e1 + 25) / p,
               Rational(24) * (e1 - 10) / p,
               Rational(-120) / p};
      return out;
    }
  }
  throw std::logic_error("unreachable rule family");
}

// True iff the closed-form coefficients agree with the binomial-basis
// expansion of prod (1 - n/m_i), component-wise and exactly.
inline bool verify_identity(RuleFamily family, const ParamVector& pv) {
  return family_coefficients(family, pv) == expand_to_binomial_basis(pv.m);
}

}  // namespace sievelab
