#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "sievelab/bound_table.hpp"

namespace sievelab {

inline constexpr int kMaxDepth = 6;

struct QuadConfig {
  int panels_per_unit = 32;     // composite Gauss-Legendre panels per unit of log-variable
  double argument_floor = 0.0;  // region clamp: sub-regions with argument <= floor drop out

  void validate() const {
    if (panels_per_unit < 4) throw std::invalid_argument("quad: panels_per_unit must be >= 4");
  }
};

namespace detail {

inline constexpr std::array<double, 2> kGL4X = {0.3399810435848563, 0.8611363115940526};
inline constexpr std::array<double, 2> kGL4W = {0.6521451548625461, 0.3478548451374538};

inline constexpr std::array<double, 4> kGL8X = {0.1834346424956498, 0.5255324099163290,
                                                0.7966664774136267, 0.9602898564975362};
inline constexpr std::array<double, 4> kGL8W = {0.3626837833783620, 0.3137066458778873,
                                                0.2223810344533745, 0.1012285362903763};

template <class Fn>
inline double gl4(double a, double b, Fn&& fn) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 2; ++i)
    acc += kGL4W[i] * (fn(mid - half * kGL4X[i]) + fn(mid + half * kGL4X[i]));
  return acc * half;
}

// Quadrature nodes for integrals of the form int_{1/t}^{1/s} g(y) dy/y,
// taken as composite GL8 in u = log y. nodes hold y values, weights carry du.
struct LogAxis {
  std::vector<double> y;
  std::vector<double> w;
};

inline LogAxis make_log_axis(double s, double t, int panels_per_unit) {
  const double u_lo = -std::log(t), u_hi = -std::log(s);
  const double L = u_hi - u_lo;
  const int panels = std::max(1, static_cast<int>(std::ceil(panels_per_unit * L)));
  LogAxis axis;
  axis.y.reserve(static_cast<std::size_t>(panels) * 8);
  axis.w.reserve(static_cast<std::size_t>(panels) * 8);
  const double h = L / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = u_lo + (p + 0.5) * h, half = 0.5 * h;
    for (int i = 0; i < 4; ++i) {
      axis.y.push_back(std::exp(mid - half * kGL8X[i]));
      axis.w.push_back(half * kGL8W[i]);
      axis.y.push_back(std::exp(mid + half * kGL8X[i]));
      axis.w.push_back(half * kGL8W[i]);
    }
  }
  return axis;
}

// Uniformly sampled values of one convolution level over a v-window.
struct Window {
  double lo = 0.0, hi = 0.0;
  std::vector<double> vals;

  double interp(double x) const {
    const std::size_t n = vals.size();
    const double h = (hi - lo) / static_cast<double>(n - 1);
    double p = (x - lo) / h;
    if (p < 0) p = 0;
    const double pmax = static_cast<double>(n - 1);
    if (p > pmax) p = pmax;
    std::size_t i = static_cast<std::size_t>(p);
    if (i >= n - 1) i = n - 2;
    const double u = p - static_cast<double>(i);
    if (i == 0 || i + 2 >= n)  // linear near the edges
      return vals[i] + u * (vals[i + 1] - vals[i]);
    const double p0 = vals[i - 1], p1 = vals[i], p2 = vals[i + 1], p3 = vals[i + 2];
    return p1 + 0.5 * u * (p2 - p0 + u * (2 * p0 - 5 * p1 + 4 * p2 - p3 +
                                          u * (3 * (p1 - p2) + p3 - p0)));
  }
};

}  // namespace detail

// j-fold ordered-region integral of the corollary shape,
//
//   I_j = int over 1/t <= x_j < ... < x_1 <= 1/s of
//           t^kappa * Phi(t * (1 - x_1 - ... - x_j)) / (x_1 ... x_j) dx,
//
// for every j = 1..j_max in one pass (out[j-1] = I_j). Phi receives the raw
// argument t*(1 - sum x); sub-regions with 1 - sum x <= v_floor contribute 0.
// Pass v_floor = -inf for an unclamped integrand (e.g. the constant oracle).
//
// Method: the integrand is symmetric, so the ordered integral is 1/j! times
// the box integral over [1/t,1/s]^j, which collapses to iterated 1-D
// convolutions T_{d+1}(v) = int T_d(v - y) dy/y. Each level is represented on
// the v-windows [1 - m/s, 1 - m/t] that later levels actually read.
template <class Phi>
inline void nested_ordered_integrals(Phi&& phi, double kappa, double s, double t,
                                     int j_max, const QuadConfig& quad, double v_floor,
                                     std::span<double> out) {
  quad.validate();
  if (!(s >= 2.0) || !(s <= t)) throw std::domain_error("operator domain");
  if (j_max < 1 || j_max > kMaxDepth) throw std::invalid_argument("integral depth");
  if (static_cast<int>(out.size()) < j_max) throw std::invalid_argument("output span too small");

  for (int j = 0; j < j_max; ++j) out[j] = 0.0;
  if (s == t) return;

  const auto axis = detail::make_log_axis(s, t, quad.panels_per_unit);
  const std::size_t q_count = axis.y.size();
  const double t_pow = std::pow(t, kappa);

  auto sample = [&](double v) -> double { return v > v_floor ? phi(t * v) : 0.0; };

  // Direct readout at depth 1.
  {
    double acc = 0.0;
    for (std::size_t q = 0; q < q_count; ++q) acc += axis.w[q] * sample(1.0 - axis.y[q]);
    out[0] = t_pow * acc;
  }
  if (j_max == 1) return;

  const double inv_s = 1.0 / s, inv_t = 1.0 / t;
  auto window_points = [&](int m) -> std::size_t {
    const double target = 1.5 * static_cast<double>(m) * static_cast<double>(q_count);
    return static_cast<std::size_t>(std::clamp(target, 17.0, 6000.0)) + 1;
  };

  // Level 1 on windows m = 2..j_max; depth d reads window m+1 of depth d-1,
  // and window 1 of depth 1 is only touched by the direct readout above.
  std::vector<detail::Window> level(static_cast<std::size_t>(j_max) + 1);  // index by m
  for (int m = 2; m <= j_max; ++m) {
    detail::Window win;
    win.lo = 1.0 - m * inv_s;
    win.hi = 1.0 - m * inv_t;
    const std::size_t n = window_points(m);
    win.vals.resize(n);
    const double h = (win.hi - win.lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i)
      win.vals[i] = sample(win.lo + h * static_cast<double>(i));
    level[static_cast<std::size_t>(m)] = std::move(win);
  }

  double fact = 1.0;
  for (int d = 2; d <= j_max; ++d) {
    // T_d lives on windows m = 1..j_max - d + 1, convolved from level d-1.
    std::vector<detail::Window> next(static_cast<std::size_t>(j_max) + 1);
    for (int m = 1; m <= j_max - d + 1; ++m) {
      const detail::Window& src = level[static_cast<std::size_t>(m + 1)];
      detail::Window win;
      win.lo = 1.0 - m * inv_s;
      win.hi = 1.0 - m * inv_t;
      const std::size_t n = window_points(m);
      win.vals.resize(n);
      const double h = (win.hi - win.lo) / static_cast<double>(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        const double v = win.lo + h * static_cast<double>(i);
        double acc = 0.0;
        for (std::size_t q = 0; q < q_count; ++q)
          acc += axis.w[q] * src.interp(v - axis.y[q]);
        win.vals[i] = acc;
      }
      next[static_cast<std::size_t>(m)] = std::move(win);
    }
    level = std::move(next);

    fact *= d;
    const detail::Window& win1 = level[1];
    double acc = 0.0;
    for (std::size_t q = 0; q < q_count; ++q)
      acc += axis.w[q] * win1.interp(1.0 - axis.y[q]);
    out[d - 1] = t_pow * acc / fact;
  }
}

// Single-depth form with a caller-supplied integrand.
template <class Phi>
inline double nested_ordered_integral(Phi&& phi, double kappa, double s, double t, int j,
                                      const QuadConfig& quad,
                                      double v_floor = -std::numeric_limits<double>::infinity()) {
  std::array<double, kMaxDepth> buf{};
  nested_ordered_integrals(phi, kappa, s, t, j, quad, v_floor,
                           std::span<double>(buf.data(), static_cast<std::size_t>(j)));
  return buf[static_cast<std::size_t>(j - 1)];
}

inline double region_floor(const QuadConfig& quad, double t) {
  // Sum clamp at sum x < 1 - 1e-9, tightened further when argument_floor > 0.
  return std::max(1e-9, quad.argument_floor / t);
}

struct NestedResult {
  double value = 0.0;
  // Phi==1 mass of the sub-region dropped by the clamp, in the same t^kappa
  // scaling as value; 0 when the region never reaches the clamp.
  double discarded_weight = 0.0;
};

// Table-bound integrand: Phi = evaluate(table, side, .). The bound-table
// extension conventions supply values below the grid (f: 0, F: the
// constant-u^kappa continuation); the region clamp keeps arguments positive.
inline double nested_ordered_integral(const BoundTable& table, Side side, double kappa,
                                      double s, double t, int j, const QuadConfig& quad) {
  const double v_floor = region_floor(quad, t);
  return nested_ordered_integral([&](double arg) { return evaluate(table, side, arg); },
                                 kappa, s, t, j, quad, v_floor);
}

inline NestedResult nested_ordered_integral_ex(const BoundTable& table, Side side,
                                               double kappa, double s, double t, int j,
                                               const QuadConfig& quad) {
  NestedResult r;
  const double v_floor = region_floor(quad, t);
  r.value = nested_ordered_integral([&](double arg) { return evaluate(table, side, arg); },
                                    kappa, s, t, j, quad, v_floor);
  if (1.0 - static_cast<double>(j) / s < v_floor) {
    // Clamp region is reachable; measure it with the constant integrand.
    auto below = [&](double v) { return v <= v_floor ? 1.0 : 0.0; };
    r.discarded_weight = nested_ordered_integral(
        [&](double arg) { return below(arg / t); }, kappa, s, t, j, quad,
        -std::numeric_limits<double>::infinity());
  }
  return r;
}

// --- classical operators ----------------------------------------------------

// GL4 integral over [a, b] of x^(kappa-1) * (Phi(x - 1) - 1) dx.
inline double buchstab_panel(const BoundTable& table, Side inner, double kappa, double a,
                             double b) {
  return detail::gl4(a, b, [&](double x) {
    return std::pow(x, kappa - 1.0) * (evaluate(table, inner, x - 1.0) - 1.0);
  });
}

namespace detail {

inline double buchstab_candidate(const BoundTable& table, Side inner, double kappa,
                                 double s) {
  const GridConfig& g = table.grid;
  if (!(s >= g.s_min) || !(s <= g.s_max)) throw std::domain_error("operator domain");
  const double upper = g.s_max + 1.0;
  const int panels = static_cast<int>(std::ceil((upper - s) / g.step));
  const double h = (upper - s) / panels;
  double integral = 0.0;
  for (int p = 0; p < panels; ++p)
    integral += buchstab_panel(table, inner, kappa, s + p * h, s + (p + 1) * h);
  const double s_pow = std::pow(s, kappa);
  return (s_pow - kappa * integral) / s_pow;
}

}  // namespace detail

// Candidate upper bound at s from the tail of lower bounds:
//   [ s^k - k int_s^{s_max+1} x^(k-1) (f(x-1) - 1) dx ] / s^k.
// The integral truncates at s_max + 1, beyond which the tail convention
// (f = 1) makes the integrand vanish identically.
inline double buchstab_upper(const BoundTable& table, double kappa, double s,
                             const QuadConfig& quad) {
  quad.validate();
  return detail::buchstab_candidate(table, Side::f, kappa, s);
}

// Dual candidate lower bound at s (may be negative; callers clamp by merging).
inline double buchstab_lower(const BoundTable& table, double kappa, double s,
                             const QuadConfig& quad) {
  quad.validate();
  return detail::buchstab_candidate(table, Side::F, kappa, s);
}

}  // namespace sievelab
