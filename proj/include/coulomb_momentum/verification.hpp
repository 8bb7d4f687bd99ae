#pragma once

// Numerical checks of the identities behind the radial Sturmian functions.
// Every check returns a VerificationReport; quadrature failures are caught
// and turn into a NaN metric with a note, so a report always comes back.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/linalg.hpp"
#include "coulomb_momentum/nystrom.hpp"
#include "coulomb_momentum/quadrature.hpp"
#include "coulomb_momentum/radial.hpp"
#include "coulomb_momentum/report.hpp"
#include "coulomb_momentum/specfun.hpp"
#include "coulomb_momentum/spectrum.hpp"

namespace coulomb_momentum::verification {

using radial::KernelSpec;
using radial::RadialFunction;
using radial::RadialKind;
using spectrum::CoulombContext;
using spectrum::QuantumNumbers;

/// Default tolerances per check. Bump the version whenever a value changes.
struct DefaultTolerances {
  static constexpr const char* version = "1";
  static constexpr double residual = 1e-6;
  static constexpr double gram = 1e-9;
  static constexpr double g_norm = 1e-10;
  static constexpr double bound_norm = 1e-9;
  static constexpr double consistency = 1e-12;
  // The bilinear kernel series converges like 1/K off the diagonal.
  static constexpr double spectral = 1e-2;
  static constexpr double ossicini = 1e-8;
  static constexpr double cohl = 1e-9;
  static constexpr double closure = 1e-10;
  static constexpr double nystrom = 1e-3;
  static constexpr double specfun = 1e-10;
};

/// Tolerance used when the residual denominator is floored at this fraction
/// of the peak (p^2+q^2)|F| on the grid.
inline constexpr double kResidualFloor = 1e-3;

/// `count` log-spaced points in [lo, hi].
inline std::vector<double> log_grid(double lo, double hi, int count) {
  coulomb_momentum::detail::require(lo > 0.0 && hi > lo && count >= 2, "log_grid: need 0 < lo < hi, count >= 2");
  std::vector<double> g(count);
  const double step = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) g[i] = lo * std::exp(i * step);
  g.back() = hi;
  return g;
}

/// 20 points in [0.01 q, 10 q].
inline std::vector<double> default_grid(double q) { return log_grid(0.01 * q, 10.0 * q, 20); }

namespace detail {

inline void add_context(VerificationReport& r, const CoulombContext& ctx, int dim, int l) {
  r.parameters["N"] = dim;
  r.parameters["Z"] = ctx.z();
  r.parameters["q"] = ctx.q();
  r.parameters["l"] = l;
}

/// Runs body(report); a ConvergenceError or DomainError becomes a NaN metric.
template <class Body>
VerificationReport guarded(VerificationReport r, Body&& body) {
  coulomb_momentum::detail::Stopwatch clock;
  try {
    body(r);
  } catch (const ConvergenceError& e) {
    r.metric = std::numeric_limits<double>::quiet_NaN();
    r.note = e.what();
  } catch (const DomainError& e) {
    r.metric = std::numeric_limits<double>::quiet_NaN();
    r.note = e.what();
  }
  r.settle();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

inline double weight(int dim, double q, double p) { return std::pow(p, dim - 1) * (p * p + q * q); }

}  // namespace detail

/// max_p |(p^2+q^2) F(p) - lambda K[F](p)| / max((p^2+q^2)|F(p)|, floor)
/// with lambda from the closed-form Sturmian spectrum.
inline VerificationReport residual_check(const CoulombContext& ctx, const QuantumNumbers& qn,
                                         const std::vector<double>& p_grid,
                                         double tolerance = DefaultTolerances::residual,
                                         const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "residual";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, qn.dim(), qn.l());
  r.parameters["n_r"] = qn.n_r();
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const RadialFunction F(RadialKind::sturmian, ctx, qn);
    const KernelSpec spec(ctx, qn.l(), qn.dim());
    const double lambda = spectrum::sturmian_eigenvalue(ctx, qn);
    const double q2 = ctx.q() * ctx.q();
    std::vector<double> lhs(p_grid.size());
    double peak = 0.0;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      const double p = p_grid[i];
      lhs[i] = (p * p + q2) * F(p);
      peak = std::max(peak, std::abs(lhs[i]));
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < p_grid.size(); ++i) {
      const double rhs = lambda * radial::apply_operator(spec, F, p_grid[i], scheme).value;
      const double denom = std::max(std::abs(lhs[i]), kResidualFloor * peak);
      worst = std::max(worst, std::abs(lhs[i] - rhs) / denom);
    }
    rep.parameters["lambda"] = lambda;
    rep.metric = worst;
  });
}

/// G_ij = int_0^inf p^{N-1} (p^2+q^2) F_i F_j dp for n_r = 0..n_r_max.
inline linalg::Matrix gram_matrix(const CoulombContext& ctx, int dim, int l, int n_r_max,
                                  const quadrature::QuadratureScheme& scheme = {}) {
  coulomb_momentum::detail::require(n_r_max >= 0, "gram_matrix: n_r_max must be nonnegative");
  std::vector<RadialFunction> fs;
  for (int k = 0; k <= n_r_max; ++k) {
    fs.emplace_back(RadialKind::sturmian, ctx, QuantumNumbers::from_radial(dim, k, l));
  }
  const quadrature::RadialMap map(ctx.q());
  const std::size_t n = fs.size();
  linalg::Matrix g(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      auto integrand = [&](double p) { return detail::weight(dim, ctx.q(), p) * fs[i](p) * fs[j](p); };
      const double v = quadrature::integrate_radial(integrand, map, std::nullopt, scheme).value;
      g(i, j) = v;
      g(j, i) = v;
    }
  }
  return g;
}

/// max |G - I| for the weighted Gram matrix.
inline VerificationReport gram_check(const CoulombContext& ctx, int dim, int l, int n_r_max,
                                     double tolerance = DefaultTolerances::gram,
                                     const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "gram";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, dim, l);
  r.parameters["n_r_max"] = n_r_max;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const auto g = gram_matrix(ctx, dim, l, n_r_max, scheme);
    rep.metric = max_abs_difference(g, linalg::Matrix::identity(g.rows()));
  });
}

/// int g_i g_j dp against delta_ij / lambda_i, scaled by sqrt(lambda_i lambda_j).
inline VerificationReport g_norm_check(const CoulombContext& ctx, int dim, int l, int n_r_max,
                                       double tolerance = DefaultTolerances::g_norm,
                                       const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "g_norm";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, dim, l);
  r.parameters["n_r_max"] = n_r_max;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    std::vector<RadialFunction> gs;
    std::vector<double> lambda;
    for (int k = 0; k <= n_r_max; ++k) {
      const auto qn = QuantumNumbers::from_radial(dim, k, l);
      gs.emplace_back(RadialKind::spectral, ctx, qn);
      lambda.push_back(spectrum::sturmian_eigenvalue(ctx, qn));
    }
    const quadrature::RadialMap map(ctx.q());
    double worst = 0.0;
    for (std::size_t i = 0; i < gs.size(); ++i) {
      for (std::size_t j = i; j < gs.size(); ++j) {
        auto integrand = [&](double p) { return gs[i](p) * gs[j](p); };
        const double v = quadrature::integrate_radial(integrand, map, std::nullopt, scheme).value;
        const double scaled = v * std::sqrt(lambda[i] * lambda[j]);
        worst = std::max(worst, std::abs(scaled - (i == j ? 1.0 : 0.0)));
      }
    }
    rep.metric = worst;
  });
}

/// |int_0^inf p^{N-1} |bound F_nl|^2 dp - 1|
inline VerificationReport bound_norm_check(int dim, double z_charge, int n, int l,
                                           double tolerance = DefaultTolerances::bound_norm,
                                           const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "bound_norm";
  r.tolerance = tolerance;
  r.parameters = {{"N", dim}, {"Z", z_charge}, {"n", n}, {"l", l}};
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const auto ctx = spectrum::bound_context(dim, z_charge, n);
    const RadialFunction F(RadialKind::bound, ctx, QuantumNumbers(dim, n, l));
    const quadrature::RadialMap map(ctx.q());
    auto integrand = [&](double p) {
      const double v = F(p);
      return std::pow(p, dim - 1) * v * v;
    };
    rep.metric = std::abs(quadrature::integrate_radial(integrand, map, std::nullopt, scheme).value - 1.0);
  });
}

/// Pointwise agreement of f, sqrt(lambda) g and sqrt(p^2+q^2) p^{(N-1)/2} F,
/// relative to max(|f|, 1e-3 peak |f|).
inline VerificationReport consistency_check(const CoulombContext& ctx, const QuantumNumbers& qn,
                                            const std::vector<double>& p_grid,
                                            double tolerance = DefaultTolerances::consistency) {
  VerificationReport r;
  r.check_name = "consistency";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, qn.dim(), qn.l());
  r.parameters["n_r"] = qn.n_r();
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const RadialFunction f(RadialKind::orthonormal, ctx, qn);
    const RadialFunction g(RadialKind::spectral, ctx, qn);
    const RadialFunction F(RadialKind::sturmian, ctx, qn);
    const double root_lambda = std::sqrt(spectrum::sturmian_eigenvalue(ctx, qn));
    const double q = ctx.q();
    double peak = 0.0;
    for (double p : p_grid) peak = std::max(peak, std::abs(f(p)));
    double worst = 0.0;
    for (double p : p_grid) {
      const double fv = f(p);
      const double from_g = root_lambda * g(p);
      const double from_F = std::sqrt(p * p + q * q) * std::pow(p, 0.5 * (qn.dim() - 1)) * F(p);
      const double denom = std::max(std::abs(fv), 1e-3 * peak);
      worst = std::max({worst, std::abs(fv - from_g) / denom, std::abs(fv - from_F) / denom});
    }
    rep.metric = worst;
  });
}

/// Partial sums sum_{n_r=0}^{K} g(p) g(p') of the bilinear kernel expansion.
/// Entry k of the result is the sum through n_r = k.
inline std::vector<double> spectral_partial_sums(const KernelSpec& spec, int K, double p, double pp) {
  coulomb_momentum::detail::require(K >= 0, "spectral_partial_sums: K must be nonnegative");
  std::vector<double> sums;
  sums.reserve(K + 1);
  double acc = 0.0;
  for (int k = 0; k <= K; ++k) {
    const RadialFunction g(RadialKind::spectral, spec.ctx, QuantumNumbers::from_radial(spec.dim, k, spec.l));
    acc += g(p) * g(pp);
    sums.push_back(acc);
  }
  return sums;
}

/// Relative deviation of the truncated expansion from the kernel at K; the
/// deviation at K/2 is reported alongside.
inline VerificationReport spectral_expansion_check(const KernelSpec& spec, int K, double p, double pp,
                                                   double tolerance = DefaultTolerances::spectral) {
  VerificationReport r;
  r.check_name = "spectral_expansion";
  r.tolerance = tolerance;
  detail::add_context(r, spec.ctx, spec.dim, spec.l);
  r.parameters["K"] = K;
  r.parameters["p"] = p;
  r.parameters["p_prime"] = pp;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const double exact = radial::kernel(spec, p, pp);
    const auto sums = spectral_partial_sums(spec, K, p, pp);
    const double half = std::abs(sums[K / 2] - exact) / std::abs(exact);
    rep.parameters["deviation_half_K"] = half;
    rep.metric = std::abs(sums[K] - exact) / std::abs(exact);
  });
}

namespace detail {

/// Right side of the Poisson-type expansion of Q_nu, summed through n_r = k
/// for each k in `cuts` (ascending). Coefficients are built in log space.
inline std::vector<double> ossicini_partial_sums(double nu, double h, double xi, double xip,
                                                 const std::vector<int>& cuts) {
  using specfun::ln_gamma;
  const double a = nu + 1.0;
  const double ln_front = (2.0 * nu + 1.0) * std::numbers::ln2 + 2.0 * ln_gamma(nu + 1.0) +
                          0.5 * a * (std::log1p(-xi * xi) + std::log1p(-xip * xip));
  const double ln_h = std::log(h);
  specfun::GegenbauerSequence c1(a, xi);
  specfun::GegenbauerSequence c2(a, xip);
  std::vector<double> out;
  double acc = 0.0;
  std::size_t next_cut = 0;
  const int K = cuts.back();
  for (int k = 0; k <= K; ++k) {
    if (k > 0) {
      c1.next();
      c2.next();
    }
    const double ln_coeff = ln_front + ln_gamma(k + 1.0) - ln_gamma(k + 2.0 * nu + 2.0) + (k + nu + 1.0) * ln_h;
    acc += std::exp(ln_coeff) * c1.value() * c2.value();
    while (next_cut < cuts.size() && cuts[next_cut] == k) {
      out.push_back(acc);
      ++next_cut;
    }
  }
  return out;
}

}  // namespace detail

/// Argument of Q_nu on the left of the Poisson-type identity, minus one:
///   (1 - 2 h xi xi' + h^2) / (2 h S) - 1,  S = sqrt((1-xi^2)(1-xi'^2)),
/// rearranged so that no cancellation occurs near z = 1.
inline double ossicini_argument_offset(double h, double xi, double xip) {
  const double s = std::sqrt((1.0 - xi * xi) * (1.0 - xip * xip));
  // 1 - xi xi' - S = (xi - xi')^2 / (1 - xi xi' + S)
  const double gap = (xi - xip) * (xi - xip) / (1.0 - xi * xip + s);
  return ((1.0 - h) * (1.0 - h) + 2.0 * h * gap) / (2.0 * h * s);
}

/// Truncated Poisson-type series of Q_nu against the direct evaluation.
/// For h < 1 the deviation after n_r = K is reported. At h = 1 the partial
/// sums oscillate about the limit, so the deviation is the largest one over
/// the window [0.9 K, K]. Deviations at K/4 and K/2 and the empirical order
/// log2(dev(K/2)/dev(K)) are reported as parameters.
inline VerificationReport ossicini_check(double nu, double h, double xi, double xip, int K,
                                         double tolerance = DefaultTolerances::ossicini) {
  VerificationReport r;
  r.check_name = "ossicini";
  r.tolerance = tolerance;
  r.parameters = {{"nu", nu}, {"h", h}, {"xi", xi}, {"xi_prime", xip}, {"K", K}};
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    coulomb_momentum::detail::require(nu > -1.0, "ossicini_check: nu must exceed -1");
    coulomb_momentum::detail::require(h > 0.0 && h <= 1.0, "ossicini_check: h must lie in (0, 1]");
    coulomb_momentum::detail::require(std::abs(xi) < 1.0 && std::abs(xip) < 1.0,
                                      "ossicini_check: xi, xi' must lie in (-1, 1)");
    coulomb_momentum::detail::require(h < 1.0 || xi != xip, "ossicini_check: h = 1 requires xi != xi'");
    coulomb_momentum::detail::require(K >= 4, "ossicini_check: K must be at least 4");
    const double lhs = specfun::legendre_q_from_offset(nu, ossicini_argument_offset(h, xi, xip));
    const int targets[] = {K / 4, K / 2, K};
    std::vector<int> cuts;
    for (int t : targets) {
      const int lo = h < 1.0 ? t : static_cast<int>(0.9 * t);
      for (int k = lo; k <= t; ++k) cuts.push_back(k);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    const auto sums = detail::ossicini_partial_sums(nu, h, xi, xip, cuts);
    auto deviation = [&](int t) {
      const int lo = h < 1.0 ? t : static_cast<int>(0.9 * t);
      double d = 0.0;
      for (std::size_t i = 0; i < cuts.size(); ++i) {
        if (cuts[i] >= lo && cuts[i] <= t) d = std::max(d, std::abs(sums[i] - lhs) / lhs);
      }
      return d;
    };
    const double d4 = deviation(K / 4);
    const double d2 = deviation(K / 2);
    const double d1 = deviation(K);
    rep.parameters["deviation_quarter_K"] = d4;
    rep.parameters["deviation_half_K"] = d2;
    if (d1 > 0.0 && d2 > 0.0) rep.parameters["empirical_order"] = std::log2(d2 / d1);
    rep.metric = d1;
  });
}

/// int_{-1}^{1} (1-xi^2)^{alpha-1/2} C_n^(alpha)(xi) (z-xi)^{-alpha-1/2} dxi
/// against 2^{alpha+1/2} C_n^(alpha)(1) Q_{n+alpha-1/2}(z).
///
/// For large n and z the integrand oscillates about a tiny mean and direct
/// quadrature loses digits. With Rodrigues' formula and n integrations by
/// parts the left side equals
///   (2 alpha)_n / (2^n n!) int (1-xi^2)^{n+alpha-1/2} (z-xi)^{-n-alpha-1/2} dxi,
/// whose integrand is positive. That form is the one integrated here.
inline VerificationReport cohl_check(double alpha, int n, double z, double tolerance = DefaultTolerances::cohl,
                                     const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "cohl";
  r.tolerance = tolerance;
  r.parameters = {{"alpha", alpha}, {"n", n}, {"z", z}};
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const specfun::GegenbauerOrder order(n, alpha);
    coulomb_momentum::detail::require(z > 1.0, "cohl_check: z must exceed 1");
    const double a = n + alpha - 0.5;
    auto integrand = [&](double x) {
      return std::exp(a * std::log((1.0 - x) * (1.0 + x)) - (a + 1.0) * std::log(z - x));
    };
    // (2 alpha)_n / (2^n n!)
    double front = 1.0;
    for (int k = 0; k < n; ++k) front *= (2.0 * alpha + k) / (2.0 * (k + 1));
    const double lhs = front * quadrature::integrate_finite(integrand, -1.0, 1.0, scheme).value;
    const double rhs = std::pow(2.0, alpha + 0.5) * specfun::gegenbauer_at_one(order) *
                       specfun::legendre_q(specfun::LegendreQArg(n + alpha - 0.5, z));
    rep.metric = std::abs(lhs - rhs) / std::abs(rhs);
  });
}

/// c_k = int_0^inf p^{N-1} (p^2+q^2) F_k(p) t(p) dp for k = 0..K.
inline std::vector<double> sturmian_coefficients(const CoulombContext& ctx, int dim, int l, int K,
                                                 const std::function<double(double)>& t,
                                                 const quadrature::QuadratureScheme& scheme = {}) {
  const quadrature::RadialMap map(ctx.q());
  std::vector<double> c;
  c.reserve(K + 1);
  for (int k = 0; k <= K; ++k) {
    const RadialFunction F(RadialKind::sturmian, ctx, QuantumNumbers::from_radial(dim, k, l));
    auto integrand = [&](double p) { return detail::weight(dim, ctx.q(), p) * F(p) * t(p); };
    c.push_back(quadrature::integrate_radial(integrand, map, std::nullopt, scheme).value);
  }
  return c;
}

/// Weighted L2 relative error of t_K = sum_{k<=K} c_k F_k against t. The
/// largest pointwise error on p_grid is reported as a parameter.
inline VerificationReport closure_check(const CoulombContext& ctx, int dim, int l, int K,
                                        const std::function<double(double)>& t,
                                        const std::vector<double>& p_grid,
                                        double tolerance = DefaultTolerances::closure,
                                        const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "closure";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, dim, l);
  r.parameters["K"] = K;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const auto c = sturmian_coefficients(ctx, dim, l, K, t, scheme);
    std::vector<RadialFunction> fs;
    for (int k = 0; k <= K; ++k) fs.emplace_back(RadialKind::sturmian, ctx, QuantumNumbers::from_radial(dim, k, l));
    auto t_k = [&](double p) {
      double s = 0.0;
      for (std::size_t k = 0; k < fs.size(); ++k) s += c[k] * fs[k](p);
      return s;
    };
    const quadrature::RadialMap map(ctx.q());
    auto err2 = [&](double p) {
      const double d = t(p) - t_k(p);
      return detail::weight(dim, ctx.q(), p) * d * d;
    };
    auto norm2 = [&](double p) {
      const double v = t(p);
      return detail::weight(dim, ctx.q(), p) * v * v;
    };
    const double n = quadrature::integrate_radial(norm2, map, std::nullopt, scheme).value;
    // An exact reconstruction leaves only rounding noise in err2, which no
    // relative tolerance can resolve.
    auto floored = scheme;
    floored.abs_tol = std::max(scheme.abs_tol, 1e-24 * n);
    const double e = quadrature::integrate_radial(err2, map, std::nullopt, floored).value;
    double pointwise = 0.0;
    for (double p : p_grid) pointwise = std::max(pointwise, std::abs(t(p) - t_k(p)));
    rep.parameters["max_pointwise_error"] = pointwise;
    rep.metric = std::sqrt(std::max(e, 0.0) / n);
  });
}

/// Expansion coefficients of t = sum_k w_k F_k, recovered by quadrature for
/// k = 0..K, against the weights w (zero past their end).
inline VerificationReport closure_coefficient_check(const CoulombContext& ctx, int dim, int l,
                                                    const std::vector<double>& weights, int K,
                                                    double tolerance = DefaultTolerances::closure,
                                                    const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "closure_coefficients";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, dim, l);
  r.parameters["K"] = K;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    coulomb_momentum::detail::require(K >= 0 && !weights.empty(), "closure_coefficient_check: need K >= 0 and weights");
    std::vector<RadialFunction> fs;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      fs.emplace_back(RadialKind::sturmian, ctx, QuantumNumbers::from_radial(dim, static_cast<int>(k), l));
    }
    auto t = [&](double p) {
      double s = 0.0;
      for (std::size_t k = 0; k < fs.size(); ++k) {
        if (weights[k] != 0.0) s += weights[k] * fs[k](p);
      }
      return s;
    };
    const auto c = sturmian_coefficients(ctx, dim, l, K, t, scheme);
    double worst = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) {
      const double expected = k < weights.size() ? weights[k] : 0.0;
      worst = std::max(worst, std::abs(c[k] - expected));
    }
    rep.metric = worst;
  });
}

/// Convergence trend of the reconstruction over ascending truncations Ks.
/// Metric is the largest ratio err(K_{i+1}) / err(K_i); the default
/// tolerance asks each step to at least halve the error.
inline VerificationReport closure_trend_check(const CoulombContext& ctx, int dim, int l, const std::vector<int>& Ks,
                                              const std::function<double(double)>& t, double tolerance = 0.5,
                                              const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "closure_trend";
  r.tolerance = tolerance;
  detail::add_context(r, ctx, dim, l);
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    coulomb_momentum::detail::require(Ks.size() >= 2 && std::is_sorted(Ks.begin(), Ks.end()),
                                      "closure_trend_check: need at least two ascending truncations");
    std::vector<double> errors;
    for (int K : Ks) {
      const auto c = closure_check(ctx, dim, l, K, t, {}, 0.0, scheme);
      if (!c.note.empty()) throw ConvergenceError(c.note, c.metric, 0.0);
      errors.push_back(c.metric);
      rep.parameters["error_K" + std::to_string(K)] = c.metric;
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < errors.size(); ++i) worst = std::max(worst, errors[i] / errors[i - 1]);
    rep.metric = worst;
  });
}

/// Lowest `count` Nystrom eigenvalues against the closed-form Sturmian
/// spectrum; metric is the largest relative deviation.
inline VerificationReport nystrom_check(const KernelSpec& spec, int grid_size, int count = 3,
                                        double tolerance = DefaultTolerances::nystrom,
                                        const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "nystrom";
  r.tolerance = tolerance;
  detail::add_context(r, spec.ctx, spec.dim, spec.l);
  r.parameters["grid_size"] = grid_size;
  r.parameters["count"] = count;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const auto lambda = nystrom::nystrom_spectrum(spec, grid_size, scheme);
    if (static_cast<int>(lambda.size()) < count) throw DomainError("nystrom_check: too few positive eigenvalues");
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
      const double exact = spectrum::sturmian_eigenvalue(spec.ctx, QuantumNumbers::from_radial(spec.dim, k, spec.l));
      const double dev = std::abs(lambda[k] - exact) / exact;
      rep.parameters["lambda_" + std::to_string(k)] = lambda[k];
      worst = std::max(worst, dev);
    }
    rep.metric = worst;
  });
}

/// Exact integer identities: D_n^(N) = d_{n-1}^(N) (harmonics on S^N) and
/// D_n^(N) = sum_{l<n} d_l^(N-1). Metric counts mismatches.
inline VerificationReport degeneracy_check(int dim_max, int n_max) {
  VerificationReport r;
  r.check_name = "degeneracy";
  r.tolerance = 0.0;
  r.parameters = {{"dim_max", dim_max}, {"n_max", n_max}};
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    coulomb_momentum::detail::require(dim_max >= 2 && n_max >= 1, "degeneracy_check: need dim_max >= 2, n_max >= 1");
    int mismatches = 0;
    for (int dim = 2; dim <= dim_max; ++dim) {
      for (int n = 1; n <= n_max; ++n) {
        const std::uint64_t d = spectrum::level_degeneracy(dim, n);
        if (d != spectrum::harmonic_dimension(dim + 1, n - 1)) ++mismatches;
        std::uint64_t sum = 0;
        for (int l = 0; l < n; ++l) sum += spectrum::harmonic_dimension(dim, l);
        if (d != sum) ++mismatches;
      }
    }
    rep.metric = mismatches;
  });
}

/// legendre_q_hyp against the Heine integral on a log-spaced z grid in
/// [1.1, 100], plus the dispatcher against Heine on (1, 1.1).
inline VerificationReport legendre_q_agreement_check(double tolerance = DefaultTolerances::specfun) {
  VerificationReport r;
  r.check_name = "legendre_q_agreement";
  r.tolerance = tolerance;
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    const std::vector<double> degrees = {-0.5, 0.0, 0.5, 1.0, 2.5, 7.5};
    const auto far = log_grid(1.1, 100.0, 25);
    double worst = 0.0;
    int count = 0;
    for (double nu : degrees) {
      for (double z : far) {
        const specfun::LegendreQArg arg(nu, z);
        const double a = specfun::legendre_q_hyp(arg);
        const double b = specfun::legendre_q_integral(arg);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
        ++count;
      }
      for (double zm1 : log_grid(1e-12, 0.099, 12)) {
        const double a = specfun::legendre_q_from_offset(nu, zm1);
        const double b = specfun::detail::legendre_q_heine(nu, zm1);
        worst = std::max(worst, std::abs(a - b) / std::abs(b));
        ++count;
      }
    }
    rep.parameters["points"] = count;
    rep.metric = worst;
  });
}

/// Gauss quadrature of int (1-x^2)^{alpha-1/2} C_n C_m dx against the closed
/// norm pi Gamma(n+2 alpha) / (2^{2 alpha-1} n! (n+alpha) Gamma(alpha)^2).
/// Diagonal entries are compared relatively; off-diagonal ones relative to the
/// geometric mean of the two norms.
inline VerificationReport gegenbauer_orthogonality_check(double alpha, int n_max,
                                                         double tolerance = DefaultTolerances::specfun,
                                                         const quadrature::QuadratureScheme& scheme = {}) {
  VerificationReport r;
  r.check_name = "gegenbauer_orthogonality";
  r.tolerance = tolerance;
  r.parameters = {{"alpha", alpha}, {"n_max", n_max}};
  return detail::guarded(std::move(r), [&](VerificationReport& rep) {
    using specfun::ln_gamma;
    auto norm = [&](int n) {
      return std::exp(std::log(std::numbers::pi) + ln_gamma(n + 2.0 * alpha) -
                      (2.0 * alpha - 1.0) * std::numbers::ln2 - ln_gamma(n + 1.0) - std::log(n + alpha) -
                      2.0 * ln_gamma(alpha));
    };
    double worst = 0.0;
    for (int n = 0; n <= n_max; ++n) {
      for (int m = n; m <= n_max; ++m) {
        const specfun::GegenbauerOrder on(n, alpha);
        const specfun::GegenbauerOrder om(m, alpha);
        auto integrand = [&](double x) {
          return std::pow((1.0 - x) * (1.0 + x), alpha - 0.5) * specfun::gegenbauer(on, x) *
                 specfun::gegenbauer(om, x);
        };
        const double v = quadrature::integrate_finite(integrand, -1.0, 1.0, scheme).value;
        const double scale = std::sqrt(norm(n) * norm(m));
        const double exact = n == m ? norm(n) : 0.0;
        worst = std::max(worst, std::abs(v - exact) / scale);
      }
    }
    rep.metric = worst;
  });
}

}  // namespace coulomb_momentum::verification
