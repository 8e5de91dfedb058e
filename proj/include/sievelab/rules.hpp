#pragma once

#include <array>
#include <vector>

#include "sievelab/admissible.hpp"
#include "sievelab/combinatorics.hpp"
#include "sievelab/quadrature.hpp"

namespace sievelab {

// Which table side a rule term reads. A negative coefficient subtracts mass,
// so an upper rule needs that mass bounded from below (side f) and a lower
// rule from above (side F); positive coefficients mirror this. Sides are
// always derived from the coefficient signs, never hard-coded per depth.
inline Side term_side(RuleKind kind, const Rational& coeff) {
  const bool negative = coeff < 0;
  if (kind == RuleKind::upper) return negative ? Side::f : Side::F;
  return negative ? Side::F : Side::f;
}

// A fully derived iteration rule: parameters, exact coefficients, per-depth
// side assignment, and the smallest s the rule applies to.
struct RuleSpec {
  RuleKind kind = RuleKind::upper;
  RuleFamily family = RuleFamily::ub2d;
  ParamVector params;
  CoeffVector coeffs;
  std::vector<Side> sides;  // sides[j] for depth j = 1..k (index 0 unused)
  double s_floor = 2.0;
};

inline double family_s_floor(RuleFamily family) {
  return family_kind(family) == RuleKind::upper ? 2.0 : 3.0;
}

// Builds and validates a rule. The configuration must be admissible and the
// independent sign certificate must agree with the rule kind.
inline RuleSpec make_rule_spec(RuleFamily family, ParamVector params) {
  RuleSpec rule;
  rule.kind = family_kind(family);
  rule.family = family;
  rule.coeffs = family_coefficients(family, params);  // checks arity/shape
  if (!config_admissible(params)) throw std::domain_error("inadmissible rule");
  const SignCertificate cert = certify_sign(params);
  const SignVerdict want =
      rule.kind == RuleKind::upper ? SignVerdict::valid_upper : SignVerdict::valid_lower;
  if (cert.verdict != want) throw std::domain_error("inadmissible rule");
  rule.params = std::move(params);
  rule.sides.resize(rule.coeffs.c.size());
  for (std::size_t j = 1; j < rule.coeffs.c.size(); ++j)
    rule.sides[j] = term_side(rule.kind, rule.coeffs.c[j]);
  rule.s_floor = family_s_floor(family);
  return rule;
}

// Nested integrals I_j for both sides at depths 1..depth. Computing both
// sides once lets any coefficient vector of that depth be combined cheaply,
// which is what makes parameter search affordable.
struct RuleIntegrals {
  int depth = 0;
  std::array<double, kMaxDepth + 1> F{};  // index by depth j = 1..depth
  std::array<double, kMaxDepth + 1> f{};
};

inline RuleIntegrals compute_rule_integrals(const BoundTable& table, double kappa,
                                            double s, double t, int depth,
                                            const QuadConfig& quad) {
  RuleIntegrals out;
  out.depth = depth;
  const double v_floor = region_floor(quad, t);
  nested_ordered_integrals([&](double a) { return evaluate(table, Side::F, a); }, kappa,
                           s, t, depth, quad, v_floor,
                           std::span<double>(out.F.data() + 1, static_cast<std::size_t>(depth)));
  nested_ordered_integrals([&](double a) { return evaluate(table, Side::f, a); }, kappa,
                           s, t, depth, quad, v_floor,
                           std::span<double>(out.f.data() + 1, static_cast<std::size_t>(depth)));
  return out;
}

// [ t^k * lead + sum_j c_j * I_j(side_j) ] / s^k with lead = F(t) for upper
// rules and f(t) for lower rules. Everything that evaluates a rule funnels
// through here so that equal coefficient vectors give bit-identical values.
inline double combine_rule_value(RuleKind kind, std::span<const double> coeffs,
                                 std::span<const Side> sides, const RuleIntegrals& integrals,
                                 double lead_value, double kappa, double s, double t) {
  double value = std::pow(t, kappa) * lead_value;
  const std::size_t depth = coeffs.size() - 1;
  for (std::size_t j = 1; j <= depth; ++j)
    value += coeffs[j] * (sides[j] == Side::F ? integrals.F[j] : integrals.f[j]);
  return value / std::pow(s, kappa);
}

// Candidate bound at s produced by one rule application at pivot t.
inline double apply_rule(const BoundTable& table, const RuleSpec& rule, double kappa,
                         double s, double t, const QuadConfig& quad) {
  if (!(s >= rule.s_floor) || !(s <= t) || !(t <= table.grid.s_max))
    throw std::domain_error("operator domain");
  const int depth = static_cast<int>(rule.coeffs.degree());
  const RuleIntegrals integrals = compute_rule_integrals(table, kappa, s, t, depth, quad);
  const Side lead = rule.kind == RuleKind::upper ? Side::F : Side::f;
  const double lead_value = evaluate(table, lead, t);
  std::vector<double> cd(rule.coeffs.c.size());
  for (std::size_t i = 0; i < cd.size(); ++i) cd[i] = to_double(rule.coeffs.c[i]);
  return combine_rule_value(rule.kind, cd, rule.sides, integrals, lead_value, kappa, s, t);
}

}  // namespace sievelab
