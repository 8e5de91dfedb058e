#pragma once

#include <random>

#include "sievelab/admissible.hpp"
#include "sievelab/combinatorics.hpp"

namespace sievelab {

using Rng = std::mt19937_64;

// Uniformly chosen interval of the admissible set up to [max_k-1, max_k]
// (max_k odd), then a rational with denominator <= den_max inside it.
// Endpoints are reachable; 0 is not.
inline Rational random_interval_point(Rng& rng, int max_k = 9, int den_max = 16) {
  const int intervals = 1 + (max_k - 1) / 2;  // (0,1], [2,3], ..., [max_k-1, max_k]
  std::uniform_int_distribution<int> pick_interval(0, intervals - 1);
  std::uniform_int_distribution<int> pick_den(1, den_max);
  const int which = pick_interval(rng);
  const int den = pick_den(rng);
  if (which == 0) {
    std::uniform_int_distribution<int> pick_num(1, den);
    return make_rational(pick_num(rng), den);
  }
  const int lo = 2 * which;
  std::uniform_int_distribution<int> pick_num(lo * den, (lo + 1) * den);
  return make_rational(pick_num(rng), den);
}

inline std::pair<Rational, Rational> random_admissible_pair(Rng& rng, int max_k = 9,
                                                            int den_max = 16) {
  for (int tries = 0; tries < 10000; ++tries) {
    Rational a = random_interval_point(rng, max_k, den_max);
    Rational b = random_interval_point(rng, max_k, den_max);
    if (pair_admissible(a, b)) return {a, b};
  }
  Rational a = random_interval_point(rng, max_k, den_max);
  return {a, a};
}

inline Rational random_m0(Rng& rng, int den_max = 16) {
  std::uniform_int_distribution<int> pick_den(1, den_max);
  const int den = pick_den(rng);
  std::uniform_int_distribution<int> pick_num(1, den);
  return make_rational(pick_num(rng), den);
}

// A random parameter vector from the family's admissible domain.
inline ParamVector random_params(RuleFamily family, Rng& rng, int max_k = 9,
                                 int den_max = 16) {
  ParamVector pv;
  pv.kind = family_kind(family);
  if (family == RuleFamily::ub_k) {
    std::uniform_int_distribution<int> pick(1, 5);
    const int k = 2 * pick(rng) + 1;  // odd k in [3, 11]
    for (int v = 2; v <= k; ++v) pv.m.push_back(Rational(v));
    return pv;
  }
  if (pv.kind == RuleKind::lower) pv.m.push_back(random_m0(rng, den_max));
  const std::size_t pairs = (family_arity(family) - pv.m.size()) / 2;
  for (std::size_t i = 0; i < pairs; ++i) {
    auto [a, b] = random_admissible_pair(rng, max_k, den_max);
    pv.m.push_back(a);
    pv.m.push_back(b);
  }
  return pv;
}

}  // namespace sievelab
