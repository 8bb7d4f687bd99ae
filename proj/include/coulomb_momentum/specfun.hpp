#pragma once

// Special functions: log-Gamma, digamma, Gegenbauer polynomials, Legendre
// functions of the second kind Q_nu(z) for real nu > -1 and real z > 1, and
// unit-sphere surface areas.

#include <math.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/quadrature.hpp"

namespace coulomb_momentum::specfun {

/// ln Gamma(x) for x > 0. Uses the reentrant lgamma_r where the C library
/// has it, since plain lgamma writes the global signgam.
inline double ln_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("ln_gamma: argument must be positive");
#if defined(__GLIBC__) || defined(__APPLE__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

/// psi(x) = d/dx ln Gamma(x), x > 0.
inline double digamma(double x) {
  if (!(x > 0.0)) throw DomainError("digamma: argument must be positive");
  double acc = 0.0;
  while (x < 10.0) {
    acc -= 1.0 / x;
    x += 1.0;
  }
  const double inv2 = 1.0 / (x * x);
  // B_{2k} / (2k) for k = 1..7
  constexpr double c[] = {1.0 / 12.0,  -1.0 / 120.0,        1.0 / 252.0, -1.0 / 240.0,
                          1.0 / 132.0, -691.0 / 32760.0,    1.0 / 12.0};
  double series = 0.0;
  for (int k = 6; k >= 0; --k) series = series * inv2 + c[k];
  series *= inv2;
  return acc + std::log(x) - 0.5 / x - series;
}

/// Degree n and superscript alpha > 0 of C_n^(alpha).
struct GegenbauerOrder {
  int n;
  double alpha;

  GegenbauerOrder(int degree, double superscript) : n(degree), alpha(superscript) {
    coulomb_momentum::detail::require(degree >= 0, "GegenbauerOrder: degree must be nonnegative");
    coulomb_momentum::detail::require(superscript > 0.0 && std::isfinite(superscript),
                    "GegenbauerOrder: alpha must be positive");
  }
};

/// Successive values C_0(x), C_1(x), ... of the three-term recurrence.
class GegenbauerSequence {
public:
  GegenbauerSequence(double alpha, double x) : alpha_(alpha), x_(x) {}

  int degree() const noexcept { return n_; }
  double value() const noexcept { return current_; }

  /// Advances to the next degree and returns its value.
  double next() {
    const int n = n_ + 1;
    double c;
    if (n == 1) {
      c = 2.0 * alpha_ * x_;
    } else {
      c = (2.0 * (n + alpha_ - 1.0) * x_ * current_ - (n + 2.0 * alpha_ - 2.0) * previous_) / n;
    }
    previous_ = current_;
    current_ = c;
    n_ = n;
    return c;
  }

private:
  double alpha_;
  double x_;
  int n_ = 0;
  double current_ = 1.0;
  double previous_ = 0.0;
};

inline double gegenbauer(const GegenbauerOrder& order, double x) {
  if (!(std::abs(x) <= 1.0)) throw DomainError("gegenbauer: |x| must not exceed 1");
  GegenbauerSequence seq(order.alpha, x);
  while (seq.degree() < order.n) seq.next();
  return seq.value();
}

/// C_n^(alpha)(1) = Gamma(n + 2 alpha) / (n! Gamma(2 alpha)).
inline double gegenbauer_at_one(const GegenbauerOrder& order) {
  if (order.n <= 64) {
    double prod = 1.0;
    for (int k = 0; k < order.n; ++k) prod *= (2.0 * order.alpha + k) / (k + 1.0);
    return prod;
  }
  return std::exp(ln_gamma(order.n + 2.0 * order.alpha) - ln_gamma(order.n + 1.0) -
                  ln_gamma(2.0 * order.alpha));
}

/// Degree nu > -1 and argument z > 1 of Q_nu(z).
struct LegendreQArg {
  double nu;
  double z;

  LegendreQArg(double degree, double argument) : nu(degree), z(argument) {
    coulomb_momentum::detail::require(degree > -1.0 && std::isfinite(degree), "LegendreQArg: nu must exceed -1");
    coulomb_momentum::detail::require(argument > 1.0, "LegendreQArg: z must exceed 1");
  }
};

/// Below this argument the 1/z^2 hypergeometric series is not used.
inline constexpr double kHypergeometricThreshold = 1.1;

/// Q_nu(z) = sqrt(pi) Gamma(nu+1) / (Gamma(nu+3/2) (2z)^(nu+1))
///           * 2F1((nu+1)/2, (nu+2)/2; nu+3/2; 1/z^2),  z >= 1.1.
inline double legendre_q_hyp(const LegendreQArg& arg) {
  const double nu = arg.nu;
  const double z = arg.z;
  if (z < kHypergeometricThreshold) {
    throw SeriesRangeError("legendre_q_hyp: z below 1.1, use the integral evaluator");
  }
  const double log_prefactor = 0.5 * std::log(std::numbers::pi) + ln_gamma(nu + 1.0) - ln_gamma(nu + 1.5) -
                               (nu + 1.0) * std::log(2.0 * z);
  const double a = 0.5 * (nu + 1.0);
  const double b = 0.5 * (nu + 2.0);
  const double c = nu + 1.5;
  const double w = 1.0 / (z * z);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 20000; ++k) {
    term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * w;
    sum += term;
    if (term < 1e-17 * sum) return std::exp(log_prefactor) * sum;
  }
  throw ConvergenceError("legendre_q_hyp: series did not converge", std::exp(log_prefactor) * sum, term);
}

namespace detail {

/// Heine integral int_0^inf (z + sqrt(z^2-1) cosh t)^(-nu-1) dt with z = 1 + zm1.
inline double legendre_q_heine(double nu, double zm1) {
  const double z = 1.0 + zm1;
  const double s = std::sqrt(zm1 * (2.0 + zm1));
  const double power = nu + 1.0;
  // The integrand is flat up to the knee cosh t ~ z/s and decays like
  // exp(-(nu+1) t) only beyond it.
  const double knee = std::log(2.0 * z / s);
  const double t_max = std::max(knee, 0.0) + (std::log(4e16) + 4.0) / power;
  auto integrand = [&](double t) { return std::exp(-power * std::log(z + s * std::cosh(t))); };
  const auto& rule = quadrature::cached_gauss_legendre(16);
  auto composite = [&](int panels) {
    const double h = t_max / panels;
    double sum = 0.0;
    double unused = 0.0;
    for (int i = 0; i < panels; ++i) sum += quadrature::gauss_panel(integrand, i * h, (i + 1) * h, rule, unused);
    return sum;
  };
  int panels = 4;
  double previous = composite(panels);
  while (panels < (1 << 14)) {
    panels *= 2;
    const double current = composite(panels);
    if (std::abs(current - previous) < 1e-12 * std::abs(current)) return current;
    previous = current;
  }
  throw ConvergenceError("legendre_q_integral: panel doubling did not converge", previous, 0.0);
}

/// Logarithmic expansion about z = 1. With z = cosh(zeta) and
/// y = 1 - exp(-2 zeta):
///   Q_nu(z) = exp(-(nu+1) zeta) sum_k (1/2)_k (nu+1)_k / (k!)^2 y^k
///             [2 psi(k+1) - psi(k+1/2) - psi(nu+1+k) - ln y].
inline double legendre_q_log_series(double nu, double zm1) {
  const double zeta = std::log1p(zm1 + std::sqrt(zm1 * (2.0 + zm1)));
  const double y = -std::expm1(-2.0 * zeta);
  const double ln_y = std::log(y);
  constexpr double euler_gamma = 0.57721566490153286061;
  double psi_k1 = -euler_gamma;                                // psi(k+1)
  double psi_half = -euler_gamma - 2.0 * std::numbers::ln2;    // psi(k+1/2)
  double psi_nu = digamma(nu + 1.0);                           // psi(nu+1+k)
  double coeff = 1.0;
  double sum = 0.0;
  for (int k = 0; k < 5000; ++k) {
    const double bracket = 2.0 * psi_k1 - psi_half - psi_nu - ln_y;
    const double term = coeff * bracket;
    sum += term;
    if (k > 2 && std::abs(term) < 1e-17 * std::abs(sum) && coeff * (std::abs(bracket) + 1.0) < 1e-16 * std::abs(sum)) {
      return std::exp(-(nu + 1.0) * zeta) * sum;
    }
    coeff *= (0.5 + k) * (nu + 1.0 + k) / ((k + 1.0) * (k + 1.0)) * y;
    psi_k1 += 1.0 / (k + 1.0);
    psi_half += 1.0 / (k + 0.5);
    psi_nu += 1.0 / (nu + 1.0 + k);
  }
  throw ConvergenceError("legendre_q: log series did not converge", std::exp(-(nu + 1.0) * zeta) * sum, 0.0);
}

}  // namespace detail

/// Independent evaluator through the Heine integral; valid for all z > 1.
inline double legendre_q_integral(const LegendreQArg& arg) {
  return detail::legendre_q_heine(arg.nu, arg.z - 1.0);
}

/// Above this degree the expansion about z = 1 cancels too much and the
/// Heine integral is used instead.
inline constexpr double kLogSeriesMaxDegree = 8.0;

/// Q_nu(1 + z_minus_one). Taking the offset directly keeps full relative
/// precision of z - 1 near the logarithmic singularity.
inline double legendre_q_from_offset(double nu, double z_minus_one) {
  if (!(nu > -1.0) || !std::isfinite(nu)) throw DomainError("legendre_q: nu must exceed -1");
  if (!(z_minus_one > 0.0)) throw DomainError("legendre_q: z must exceed 1");
  if (z_minus_one >= kHypergeometricThreshold - 1.0) {
    return legendre_q_hyp(LegendreQArg(nu, 1.0 + z_minus_one));
  }
  if (nu > kLogSeriesMaxDegree) return detail::legendre_q_heine(nu, z_minus_one);
  return detail::legendre_q_log_series(nu, z_minus_one);
}

/// Q_nu(z): hypergeometric series for z >= 1.1, logarithmic expansion about
/// z = 1 below that (Heine integral for nu > 8).
inline double legendre_q(const LegendreQArg& arg) { return legendre_q_from_offset(arg.nu, arg.z - 1.0); }

/// Surface area of the unit sphere S^dim embedded in R^(dim+1):
/// 2 pi^((dim+1)/2) / Gamma((dim+1)/2).
inline double sphere_surface(int dim) {
  if (dim < 1) throw DomainError("sphere_surface: dimension must be >= 1");
  const double h = 0.5 * (dim + 1);
  return std::exp(std::numbers::ln2 + h * std::log(std::numbers::pi) - ln_gamma(h));
}

}  // namespace coulomb_momentum::specfun
