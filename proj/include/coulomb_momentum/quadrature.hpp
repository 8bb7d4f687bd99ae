#pragma once

// Gauss-Legendre rules and the adaptive composite integrators built on them.
//
// Every integrator works on a list of panels. Each panel is integrated with
// one Gauss rule over the whole panel and once more over its two halves; the
// difference is the panel's error estimate. The panel with the largest
// estimate is bisected until the summed estimate meets the tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <vector>

#include "coulomb_momentum/error.hpp"

namespace coulomb_momentum::quadrature {

struct GaussLegendreRule {
  std::vector<double> nodes;    // ascending, on [-1, 1]
  std::vector<double> weights;
};

/// Gauss-Legendre nodes by Newton iteration on P_n from Chebyshev-like
/// starting points.
inline GaussLegendreRule gauss_legendre(int npoints) {
  if (npoints < 1 || npoints > 4096) throw DomainError("gauss_legendre: npoints must be in [1, 4096]");
  const int n = npoints;
  GaussLegendreRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      // p1 = P_n(x), p0 = P_{n-1}(x)
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) <= 1e-16) break;
    }
    // final derivative at the converged node
    {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

/// Shared immutable rule for a given point count; computed once per process.
inline const GaussLegendreRule& cached_gauss_legendre(int npoints) {
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<const GaussLegendreRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[npoints];
  if (!slot) slot = std::make_unique<const GaussLegendreRule>(gauss_legendre(npoints));
  return *slot;
}

struct QuadratureScheme {
  int points_per_panel = 48;
  double rel_tol = 1e-11;
  int max_panels = 1 << 14;
  double grading_ratio = 0.25;
  /// Absolute floor on the error target; 0 means purely relative.
  double abs_tol = 0.0;

  void validate() const {
    coulomb_momentum::detail::require(points_per_panel >= 2, "QuadratureScheme: points_per_panel must be >= 2");
    coulomb_momentum::detail::require(rel_tol > 100 * std::numeric_limits<double>::epsilon(),
                    "QuadratureScheme: rel_tol must exceed 100 machine epsilons");
    coulomb_momentum::detail::require(max_panels >= 1, "QuadratureScheme: max_panels must be positive");
    coulomb_momentum::detail::require(grading_ratio > 0.0 && grading_ratio < 1.0,
                    "QuadratureScheme: grading_ratio must lie in (0, 1)");
    coulomb_momentum::detail::require(abs_tol >= 0.0, "QuadratureScheme: abs_tol must be nonnegative");
  }
};

struct Integral {
  double value = 0.0;
  double error = 0.0;  // |last bisection delta| summed over panels
};

/// Gauss rule mapped onto [a, b]. Also returns sum |w f| through abs_sum.
template <class F>
double gauss_panel(F&& f, double a, double b, const GaussLegendreRule& rule, double& abs_sum) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  double abs_acc = 0.0;
  const std::size_t n = rule.nodes.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rule.weights[i] * f(mid + half * rule.nodes[i]);
    sum += v;
    abs_acc += std::abs(v);
  }
  abs_sum = abs_acc * std::abs(half);
  return sum * half;
}

namespace detail {

struct Panel {
  double a;
  double b;
  double coarse;  // whole-panel rule
  double left;    // rule on [a, mid]
  double right;   // rule on [mid, b]
  double abs_sum;
  double err;
  bool splittable;
};

template <class F>
Panel make_panel(F& f, double a, double b, double coarse, const GaussLegendreRule& rule) {
  const double mid = 0.5 * (a + b);
  double abs_l = 0.0;
  double abs_r = 0.0;
  Panel p{a, b, coarse, 0.0, 0.0, 0.0, 0.0, true};
  p.left = gauss_panel(f, a, mid, rule, abs_l);
  p.right = gauss_panel(f, mid, b, rule, abs_r);
  p.abs_sum = abs_l + abs_r;
  p.err = std::abs(p.left + p.right - coarse);
  // children would have no interior: stop refining
  const double quarter = 0.5 * (a + mid);
  p.splittable = mid > a && mid < b && quarter > a && quarter < mid;
  if (!std::isfinite(p.err)) p.err = std::numeric_limits<double>::infinity();
  return p;
}

}  // namespace detail

/// Adaptive bisection starting from the partition given by `breakpoints`
/// (ascending, at least two entries).
template <class F>
Integral integrate_panels(F&& f, std::span<const double> breakpoints, const QuadratureScheme& scheme) {
  scheme.validate();
  if (breakpoints.size() < 2) throw DomainError("integrate_panels: need at least two breakpoints");
  const GaussLegendreRule& rule = cached_gauss_legendre(scheme.points_per_panel);

  std::vector<detail::Panel> panels;
  panels.reserve(breakpoints.size() * 4);
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    const double a = breakpoints[i];
    const double b = breakpoints[i + 1];
    if (!(a < b)) throw DomainError("integrate_panels: breakpoints must be strictly ascending");
    double abs_c = 0.0;
    const double coarse = gauss_panel(f, a, b, rule, abs_c);
    panels.push_back(detail::make_panel(f, a, b, coarse, rule));
  }

  auto by_error = [&panels](std::size_t x, std::size_t y) { return panels[x].err < panels[y].err; };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(by_error)> queue(by_error);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    if (panels[i].splittable) queue.push(i);
  }

  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (;;) {
    double total = 0.0;
    double err = 0.0;
    double abs_sum = 0.0;
    for (const auto& p : panels) {
      total += p.left + p.right;
      err += p.err;
      abs_sum += p.abs_sum;
    }
    const double target = std::max(scheme.rel_tol * std::abs(total), scheme.abs_tol);
    const double roundoff = 50.0 * eps * abs_sum;
    if (err <= target || err <= roundoff || queue.empty()) {
      if (!std::isfinite(total)) {
        throw ConvergenceError("integrate_panels: integrand produced a non-finite value", total, err);
      }
      return {total, err};
    }
    if (static_cast<int>(panels.size()) >= scheme.max_panels) {
      throw ConvergenceError("integrate_panels: panel budget exhausted", total, err);
    }
    const std::size_t idx = queue.top();
    queue.pop();
    const detail::Panel parent = panels[idx];
    const double mid = 0.5 * (parent.a + parent.b);
    panels[idx] = detail::make_panel(f, parent.a, mid, parent.left, rule);
    panels.push_back(detail::make_panel(f, mid, parent.b, parent.right, rule));
    if (panels[idx].splittable) queue.push(idx);
    if (panels.back().splittable) queue.push(panels.size() - 1);
  }
}

/// Integral of f over (a, b); integrable endpoint singularities are handled
/// by the adaptive bisection.
template <class F>
Integral integrate_finite(F&& f, double a, double b, const QuadratureScheme& scheme = {}) {
  if (!(a < b)) throw DomainError("integrate_finite: need a < b");
  const double breaks[] = {a, b};
  return integrate_panels(f, std::span<const double>(breaks), scheme);
}

/// Breakpoints on [lo, hi] graded geometrically toward the interior point s.
/// Each side gets `levels` panels shrinking by `ratio`.
inline std::vector<double> graded_breakpoints(double lo, double hi, double s, double ratio, int levels) {
  coulomb_momentum::detail::require(lo < s && s < hi, "graded_breakpoints: singular point must be interior");
  std::vector<double> left;
  std::vector<double> right;
  const double len_l = s - lo;
  const double len_r = hi - s;
  double scale = 1.0;
  for (int k = 0; k < levels; ++k) {
    scale *= ratio;
    const double bl = s - len_l * scale;
    const double br = s + len_r * scale;
    if (bl > lo && bl < s) left.push_back(bl);
    if (br < hi && br > s) right.push_back(br);
  }
  std::vector<double> out;
  out.reserve(left.size() + right.size() + 3);
  out.push_back(lo);
  out.insert(out.end(), left.begin(), left.end());
  out.push_back(s);
  out.insert(out.end(), right.rbegin(), right.rend());
  out.push_back(hi);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// The substitution xi = (q^2 - p^2)/(q^2 + p^2), mapping p in (0, inf) onto
/// xi in (-1, 1) with p = 0 at xi = 1.
class RadialMap {
public:
  explicit RadialMap(double q) : q_(q) {
    coulomb_momentum::detail::require(q > 0.0 && std::isfinite(q), "RadialMap: q must be positive");
  }

  double q() const noexcept { return q_; }

  double to_xi(double p) const {
    const double pq = p / q_;
    return (1.0 - pq * pq) / (1.0 + pq * pq);
  }

  double to_p(double xi) const { return q_ * std::sqrt((1.0 - xi) / (1.0 + xi)); }

  /// |dp/dxi|
  double jacobian(double xi) const {
    return q_ / ((1.0 + xi) * std::sqrt((1.0 + xi) * (1.0 - xi)));
  }

private:
  double q_;
};

inline constexpr int kDefaultGradingLevels = 8;

/// Integral over p in (0, inf) performed in the xi variable of `map`. When
/// `singular_at` is set, the xi interval is split at its image and panels are
/// graded toward it.
template <class F>
Integral integrate_radial(F&& f, const RadialMap& map, std::optional<double> singular_at = std::nullopt,
                          const QuadratureScheme& scheme = {}) {
  auto g = [&](double xi) {
    // nodes of very small panels can round onto the endpoints
    if (!(xi > -1.0 && xi < 1.0)) return 0.0;
    const double p = map.to_p(xi);
    return f(p) * map.jacobian(xi);
  };
  if (singular_at) {
    coulomb_momentum::detail::require(*singular_at > 0.0 && std::isfinite(*singular_at),
                    "integrate_radial: singular point must be positive and finite");
    const double s = map.to_xi(*singular_at);
    const auto breaks = graded_breakpoints(-1.0, 1.0, s, scheme.grading_ratio, kDefaultGradingLevels);
    return integrate_panels(g, std::span<const double>(breaks), scheme);
  }
  const double breaks[] = {-1.0, 0.0, 1.0};
  return integrate_panels(g, std::span<const double>(breaks), scheme);
}

}  // namespace coulomb_momentum::quadrature
