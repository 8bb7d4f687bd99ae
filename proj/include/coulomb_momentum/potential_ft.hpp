#pragma once

// Fourier transform of the power-law potential V(r) = A / r^nu in R^N,
//
//   U(p) = (2 pi)^{-N/2} int d^N r e^{-i p.r} V(r)
//        = A 2^{N/2 - nu} Gamma((N - nu)/2) / Gamma(nu/2) p^{-(N - nu)},
//
// valid for 0 < nu < N. The Gaussian representation
//   r^{-nu} = Gamma(nu/2)^{-1} int_0^inf xi^{nu/2-1} e^{-xi r^2} dxi
// reduces it to a one-dimensional integral that is checked by quadrature.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/quadrature.hpp"
#include "coulomb_momentum/report.hpp"
#include "coulomb_momentum/specfun.hpp"

namespace coulomb_momentum::potential_ft {

struct PowerLawPotential {
  double A;
  double nu;
  int dim;

  PowerLawPotential(double strength, double exponent, int dimension) : A(strength), nu(exponent), dim(dimension) {
    coulomb_momentum::detail::require(dimension >= 2, "PowerLawPotential: dimension must be >= 2");
    coulomb_momentum::detail::require(exponent > 0.0 && exponent < dimension,
                                      "PowerLawPotential: exponent must lie in (0, N)");
    coulomb_momentum::detail::require(std::isfinite(strength), "PowerLawPotential: strength must be finite");
  }
};

/// A 2^{N/2-nu} Gamma((N-nu)/2) / Gamma(nu/2) p^{-(N-nu)}
inline double potential_ft_closed(const PowerLawPotential& pot, double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("potential_ft_closed: p must be positive");
  using specfun::ln_gamma;
  const double n = pot.dim;
  const double ln_mag = (0.5 * n - pot.nu) * std::numbers::ln2 + ln_gamma(0.5 * (n - pot.nu)) -
                        ln_gamma(0.5 * pot.nu) - (n - pot.nu) * std::log(p);
  return pot.A * std::exp(ln_mag);
}

namespace detail {

/// int_0^inf x^{s-1} e^{-rate x} dx by quadrature. Below x0 = 1/rate the
/// substitution x = x0 u^{1/s} removes the endpoint power; above it the
/// integrand is cut where it has decayed below double precision.
inline double power_exp_integral(double s, double rate, const quadrature::QuadratureScheme& scheme = {}) {
  coulomb_momentum::detail::require(s > 0.0 && rate > 0.0, "power_exp_integral: s and rate must be positive");
  const double x0 = 1.0 / rate;
  // x^{s-1} dx = (x0^s / s) du on the inner piece
  auto inner = [&](double u) { return std::exp(-std::pow(u, 1.0 / s)); };
  auto outer = [&](double t) { return std::exp((s - 1.0) * std::log(t) - t); };
  const double head = quadrature::integrate_finite(inner, 0.0, 1.0, scheme).value * std::pow(x0, s) / s;
  // outer piece in the scaled variable t = rate x
  const double t_max = 40.0 + 10.0 * s;
  const double breaks[] = {1.0, 0.5 * (1.0 + t_max), t_max};
  const double tail = quadrature::integrate_panels(outer, std::span<const double>(breaks), scheme).value / std::pow(rate, s);
  return head + tail;
}

}  // namespace detail

/// The same transform from A/(2^{N/2} Gamma(nu/2)) int_0^inf xi^{(nu-N)/2-1}
/// e^{-p^2/(4 xi)} dxi, integrated after eta = p^2/(4 xi).
inline double potential_ft_integral(const PowerLawPotential& pot, double p,
                                    const quadrature::QuadratureScheme& scheme = {}) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("potential_ft_integral: p must be positive");
  const double n = pot.dim;
  const double s = 0.5 * (n - pot.nu);
  // int xi^{-s-1} e^{-p^2/(4 xi)} dxi = (p/2)^{-2s} int eta^{s-1} e^{-eta} d eta
  const double integral = detail::power_exp_integral(s, 1.0, scheme);
  const double scale = std::exp(-0.5 * n * std::numbers::ln2 - specfun::ln_gamma(0.5 * pot.nu) -
                                2.0 * s * std::log(0.5 * p));
  return pot.A * scale * integral;
}

/// U(p) for V = -Z/r: -Z 2^{N/2-1} Gamma((N-1)/2) pi^{-1/2} p^{-(N-1)}.
inline double coulomb_ft(int dim, double z_charge, double p) {
  coulomb_momentum::detail::require(dim >= 2, "coulomb_ft: dimension must be >= 2");
  coulomb_momentum::detail::require(z_charge > 0.0, "coulomb_ft: Z must be positive");
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("coulomb_ft: p must be positive");
  const double n = dim;
  return -z_charge * std::exp((0.5 * n - 1.0) * std::numbers::ln2 + specfun::ln_gamma(0.5 * (n - 1.0)) -
                              0.5 * std::log(std::numbers::pi) - (n - 1.0) * std::log(p));
}

/// One (N, nu, p) sample of the closed-form/quadrature comparison.
struct FourierSample {
  int dim;
  double nu;
  double p;
};

inline std::vector<FourierSample> default_fourier_samples() {
  std::vector<FourierSample> out;
  for (int dim : {2, 3, 4, 5, 8}) {
    for (double nu : {0.5, 1.0, 1.5, 2.5, dim - 0.5, dim - 0.1}) {
      if (!(nu > 0.0 && nu < dim)) continue;
      for (double p : {0.3, 1.0, 2.7}) out.push_back({dim, nu, p});
    }
  }
  return out;
}

/// Max relative deviation between the two transform paths over the samples.
inline VerificationReport fourier_check(const std::vector<FourierSample>& samples, double tolerance = 1e-10,
                                        const quadrature::QuadratureScheme& scheme = {}) {
  coulomb_momentum::detail::Stopwatch clock;
  VerificationReport r;
  r.check_name = "fourier";
  r.tolerance = tolerance;
  r.parameters["samples"] = static_cast<double>(samples.size());
  double worst = 0.0;
  for (const auto& s : samples) {
    const PowerLawPotential pot(1.0, s.nu, s.dim);
    const double closed = potential_ft_closed(pot, s.p);
    const double quad = potential_ft_integral(pot, s.p, scheme);
    worst = std::max(worst, std::abs(quad - closed) / std::abs(closed));
  }
  r.metric = worst;
  r.settle();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// Coulomb transform against -sqrt(2/pi)/p^2 (N = 3) and -Z/p (N = 2), and
/// against the power-law transform with A = -Z, nu = 1 for N in [2, 8].
inline VerificationReport coulomb_anchor_check(double tolerance = 1e-13) {
  coulomb_momentum::detail::Stopwatch clock;
  VerificationReport r;
  r.check_name = "coulomb_anchor";
  r.tolerance = tolerance;
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
  for (double z : {1.0, 2.0, 3.7}) {
    for (double p : {0.25, 1.0, 3.5}) {
      worst = std::max(worst, rel(coulomb_ft(3, z, p), -z * std::sqrt(2.0 / std::numbers::pi) / (p * p)));
      worst = std::max(worst, rel(coulomb_ft(2, z, p), -z / p));
      for (int dim = 2; dim <= 8; ++dim) {
        worst = std::max(worst, rel(coulomb_ft(dim, z, p), potential_ft_closed(PowerLawPotential(-z, 1.0, dim), p)));
      }
    }
  }
  r.metric = worst;
  r.settle();
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

/// int_0^inf xi^{nu/2-1} e^{-xi r^2} dxi against Gamma(nu/2) r^{-nu}.
inline VerificationReport gamma_identity_check(double nu, double r, double tolerance = 1e-11,
                                               const quadrature::QuadratureScheme& scheme = {}) {
  coulomb_momentum::detail::Stopwatch clock;
  coulomb_momentum::detail::require(nu > 0.0 && r > 0.0, "gamma_identity_check: nu and r must be positive");
  VerificationReport rep;
  rep.check_name = "gamma_identity";
  rep.parameters = {{"nu", nu}, {"r", r}};
  rep.tolerance = tolerance;
  const double quad = detail::power_exp_integral(0.5 * nu, r * r, scheme);
  const double closed = std::exp(specfun::ln_gamma(0.5 * nu) - nu * std::log(r));
  rep.metric = std::abs(quad - closed) / closed;
  rep.settle();
  rep.runtime_ms = clock.elapsed_ms();
  return rep;
}

}  // namespace coulomb_momentum::potential_ft
