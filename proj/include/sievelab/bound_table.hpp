#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sievelab {

struct GridConfig {
  double s_min = 1.0;
  double s_max = 20.0;
  double step = 0.01;

  std::size_t nodes() const {
    return static_cast<std::size_t>(std::llround((s_max - s_min) / step)) + 1;
  }
  double s_at(std::size_t i) const { return s_min + static_cast<double>(i) * step; }

  void validate() const {
    if (!(s_min >= 1.0)) throw std::invalid_argument("grid: s_min must be >= 1");
    if (!(s_min < s_max)) throw std::invalid_argument("grid: s_min must be < s_max");
    if (!(step > 0)) throw std::invalid_argument("grid: step must be positive");
    const double count = (s_max - s_min) / step;
    if (std::abs(count - std::llround(count)) > 1e-9 || std::llround(count) < 1)
      throw std::invalid_argument("grid: (s_max - s_min)/step must be a positive integer");
  }
};

enum class Side { F, f };

// Piecewise-linear upper/lower bound pair for the sieve functions on a grid.
// Invariants maintained by enforce_shape: 0 <= f <= 1 <= F at every node,
// F nonincreasing in s, f nondecreasing in s.
struct BoundTable {
  double kappa = 1.0;
  GridConfig grid;
  std::vector<double> F;
  std::vector<double> f;
};

inline BoundTable make_seed_table(double kappa, const GridConfig& grid, double seed_F) {
  grid.validate();
  if (!(kappa > 0)) throw std::invalid_argument("kappa must be positive");
  if (!(seed_F >= 1.0)) throw std::invalid_argument("seed must dominate 1");
  BoundTable t;
  t.kappa = kappa;
  t.grid = grid;
  t.F.assign(grid.nodes(), seed_F);
  t.f.assign(grid.nodes(), 0.0);
  return t;
}

// Monotone repair plus clamping. A valid upper bound at some s stays valid at
// every larger s (F_kappa is nonincreasing), so small F values propagate
// rightward; dually, valid lower bounds propagate rightward for f. The repair
// only ever uses implied bounds, never tightens anything leftward.
inline void enforce_shape_inplace(BoundTable& t) {
  const std::size_t n = t.F.size();
  if (n == 0) return;
  t.F[0] = std::max(t.F[0], 1.0);
  for (std::size_t i = 1; i < n; ++i) t.F[i] = std::max(std::min(t.F[i], t.F[i - 1]), 1.0);
  t.f[0] = std::clamp(t.f[0], 0.0, 1.0);
  for (std::size_t i = 1; i < n; ++i)
    t.f[i] = std::clamp(std::max(t.f[i], t.f[i - 1]), 0.0, 1.0);
}

inline BoundTable enforce_shape(BoundTable t) {
  enforce_shape_inplace(t);
  return t;
}

// Bounds only ever tighten: min-merge for F, max-merge for f.
inline BoundTable merge_improve(BoundTable t, Side side, std::size_t s_index,
                                double candidate) {
  if (s_index >= t.F.size()) throw std::out_of_range("merge_improve: index outside grid");
  if (side == Side::F)
    t.F[s_index] = std::min(t.F[s_index], candidate);
  else
    t.f[s_index] = std::max(t.f[s_index], candidate);
  enforce_shape_inplace(t);
  return t;
}

// Evaluation with the out-of-range conventions:
//   u > s_max          -> 1 (tail convention; both sides)
//   s_min <= u <= s_max -> linear interpolation between grid nodes
//   0 < u < s_min       -> F: constant continuation of u^kappa * F(u),
//                          i.e. F(s_min) * (s_min/u)^kappa;  f: 0
inline double evaluate(const BoundTable& t, Side side, double u) {
  if (!(u > 0)) throw std::domain_error("argument out of domain");
  const auto& vals = side == Side::F ? t.F : t.f;
  if (u > t.grid.s_max) return 1.0;
  if (u < t.grid.s_min) {
    if (side == Side::f) return 0.0;
    return vals.front() * std::pow(t.grid.s_min / u, t.kappa);
  }
  const double pos = (u - t.grid.s_min) / t.grid.step;
  std::size_t i = static_cast<std::size_t>(pos);
  if (i >= vals.size() - 1) return vals.back();
  const double frac = pos - static_cast<double>(i);
  return vals[i] + frac * (vals[i + 1] - vals[i]);
}

inline bool table_invariants_ok(const BoundTable& t) {
  const std::size_t n = t.grid.nodes();
  if (t.F.size() != n || t.f.size() != n || n == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(t.f[i] >= 0.0 && t.f[i] <= 1.0 && t.F[i] >= 1.0)) return false;
    if (!std::isfinite(t.F[i]) || !std::isfinite(t.f[i])) return false;
    if (i > 0 && (t.F[i] > t.F[i - 1] || t.f[i] < t.f[i - 1])) return false;
  }
  return true;
}

// --- CSV interchange -------------------------------------------------------
//
// Format: optional '#' comment lines (the emitter writes a deterministic
// meta line there), a header row `s,F,f`, then one row per grid node with
// 10 significant digits.

inline std::string format_sig10(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline void write_table_csv(std::ostream& os, const BoundTable& t,
                            const std::string& meta_json = {}) {
  if (!meta_json.empty()) os << "# meta: " << meta_json << "\n";
  os << "s,F,f\n";
  for (std::size_t i = 0; i < t.grid.nodes(); ++i)
    os << format_sig10(t.grid.s_at(i)) << ',' << format_sig10(t.F[i]) << ','
       << format_sig10(t.f[i]) << "\n";
}

struct LoadedTable {
  BoundTable table;
  std::string meta_json;  // empty when the file carried no meta line
};

// Reads a table written by write_table_csv. kappa is recovered from the meta
// line when present; pass kappa_hint to override or to load bare files.
inline LoadedTable read_table_csv(std::istream& is, double kappa_hint = 0.0) {
  LoadedTable out;
  std::string line;
  std::vector<double> s, F, f;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("meta: ");
      if (pos != std::string::npos) out.meta_json = line.substr(pos + 6);
      continue;
    }
    if (!header_seen) {
      if (line.rfind("s,F,f", 0) != 0) throw std::runtime_error("csv: missing s,F,f header");
      header_seen = true;
      continue;
    }
    const char* p = line.c_str();
    char* end = nullptr;
    const double sv = std::strtod(p, &end);
    if (end == p || *end != ',') throw std::runtime_error("csv: malformed row");
    p = end + 1;
    const double Fv = std::strtod(p, &end);
    if (end == p || *end != ',') throw std::runtime_error("csv: malformed row");
    p = end + 1;
    const double fv = std::strtod(p, &end);
    if (end == p) throw std::runtime_error("csv: malformed row");
    s.push_back(sv);
    F.push_back(Fv);
    f.push_back(fv);
  }
  if (s.size() < 2) throw std::runtime_error("csv: needs at least two grid rows");
  BoundTable& t = out.table;
  t.grid.s_min = s.front();
  t.grid.s_max = s.back();
  t.grid.step = (s.back() - s.front()) / static_cast<double>(s.size() - 1);
  t.grid.validate();
  if (t.grid.nodes() != s.size()) throw std::runtime_error("csv: non-uniform grid");
  t.F = std::move(F);
  t.f = std::move(f);
  double kappa = kappa_hint;
  if (kappa <= 0 && !out.meta_json.empty()) {
    const auto pos = out.meta_json.find("\"kappa\":");
    if (pos != std::string::npos) kappa = std::strtod(out.meta_json.c_str() + pos + 8, nullptr);
  }
  if (kappa <= 0) throw std::runtime_error("csv: kappa not recoverable; supply it explicitly");
  t.kappa = kappa;
  return out;
}

}  // namespace sievelab
