#pragma once

// Radial Coulomb Sturmians in momentum space, the bound-state radial
// functions built from them, and the symmetric Legendre-Q kernel of the
// radial integral equation
//
//   (p^2 + q^2) F(p) = lambda (2 Z / pi) p^{-(N-1)/2}
//                      * int_0^inf dp' p'^{(N-1)/2} Q_{l+(N-3)/2}((p^2+p'^2)/(2pp')) F(p').
//
// Normalisation prefactors contain factorial ratios that overflow double
// precision for moderate quantum numbers, so they are carried as logarithms.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/quadrature.hpp"
#include "coulomb_momentum/specfun.hpp"
#include "coulomb_momentum/spectrum.hpp"

namespace coulomb_momentum::radial {

using spectrum::CoulombContext;
using spectrum::QuantumNumbers;

enum class RadialKind {
  sturmian,      // F_{n_r l}(E, p)
  orthonormal,   // f = sqrt(p^2+q^2) p^{(N-1)/2} F, orthonormal on (0, inf)
  spectral,      // g with M_l = sum g(p) g(p')
  bound,         // sqrt(2) q_n F_{n-l-1, l}(E_n, p)
};

namespace detail {

/// ln(q^2 + p^2) without overflow for large p/q.
inline double log_sum_squares(double q, double p) {
  const double hi = std::max(q, p);
  const double lo = std::min(q, p);
  const double r = lo / hi;
  return 2.0 * std::log(hi) + std::log1p(r * r);
}

/// (q^2 - p^2) / (q^2 + p^2)
inline double map_to_xi(double q, double p) {
  if (p <= q) {
    const double r = p / q;
    return (1.0 - r * r) / (1.0 + r * r);
  }
  const double r = q / p;
  return (r * r - 1.0) / (r * r + 1.0);
}

}  // namespace detail

/// One radial function with its normalisation precomputed. Callable on p >= 0.
class RadialFunction {
public:
  RadialFunction(RadialKind kind, const CoulombContext& ctx, const QuantumNumbers& qn)
      : kind_(kind), ctx_(ctx), qn_(qn) {
    if (kind == RadialKind::bound) {
      const double qn_scale = spectrum::bound_momentum_scale(qn.dim(), ctx.z(), qn.n());
      coulomb_momentum::detail::require(std::abs(ctx.q() - qn_scale) <= 1e-12 * qn_scale,
                                        "RadialFunction: bound kind requires q = q_n");
    }
    using specfun::ln_gamma;
    const int dim = qn.dim();
    const int l = qn.l();
    const int n_r = qn.n_r();
    const double q = ctx.q();
    const double half_nm1 = 0.5 * (dim - 1);
    alpha_ = l + half_nm1;
    // ln of n_r! / (n_r + 2l + N - 2)!
    const double ln_fact_ratio = ln_gamma(n_r + 1.0) - ln_gamma(n_r + 2.0 * l + dim - 1.0);
    const double ln_pi = std::log(std::numbers::pi);
    switch (kind) {
      case RadialKind::sturmian:
      case RadialKind::bound: {
        // 2^{N-1} Gamma(l+(N-1)/2) sqrt(n_r! (n_r+l+(N-1)/2) / (pi (n_r+2l+N-2)!)) q^{N/2}
        ln_norm_ = (dim - 1) * std::numbers::ln2 + ln_gamma(alpha_) +
                   0.5 * (ln_fact_ratio + std::log(n_r + alpha_) - ln_pi) + 0.5 * dim * std::log(q);
        if (kind == RadialKind::bound) ln_norm_ += 0.5 * std::numbers::ln2 + std::log(q);
        power_num_ = l;
        power_den_ = l + 0.5 * (dim + 1);
        break;
      }
      case RadialKind::orthonormal: {
        // Gamma(l+(N-1)/2) sqrt(q n_r! (n_r+l+(N-1)/2) / (pi (n_r+2l+N-2)!))
        ln_norm_ = ln_gamma(alpha_) + 0.5 * (std::log(q) + ln_fact_ratio + std::log(n_r + alpha_) - ln_pi);
        power_num_ = alpha_;
        power_den_ = l + 0.5 * dim;
        break;
      }
      case RadialKind::spectral: {
        // Gamma(l+(N-1)/2) sqrt(Z n_r! / (pi (n_r+2l+N-2)!))
        ln_norm_ = ln_gamma(alpha_) + 0.5 * (std::log(ctx.z()) + ln_fact_ratio - ln_pi);
        power_num_ = alpha_;
        power_den_ = l + 0.5 * dim;
        break;
      }
    }
  }

  RadialKind kind() const noexcept { return kind_; }
  const CoulombContext& context() const noexcept { return ctx_; }
  const QuantumNumbers& quantum_numbers() const noexcept { return qn_; }

  /// prefactor * (4qp)^a / (q^2+p^2)^b * C_{n_r}^{(l+(N-1)/2)}(xi)
  double operator()(double p) const {
    if (!(p >= 0.0)) throw DomainError("radial function: p must be nonnegative");
    const double q = ctx_.q();
    const double xi = detail::map_to_xi(q, p);
    const double c = specfun::gegenbauer(specfun::GegenbauerOrder(qn_.n_r(), alpha_), xi);
    if (p == 0.0) {
      if (power_num_ > 0.0) return 0.0;
      return std::exp(ln_norm_ - power_den_ * 2.0 * std::log(q)) * c;
    }
    if (std::isinf(p)) return 0.0;
    const double ln_shape = power_num_ * std::log(4.0 * q * p) - power_den_ * detail::log_sum_squares(q, p);
    return std::exp(ln_norm_ + ln_shape) * c;
  }

private:
  RadialKind kind_;
  CoulombContext ctx_;
  QuantumNumbers qn_;
  double alpha_ = 0.0;
  double ln_norm_ = 0.0;
  double power_num_ = 0.0;
  double power_den_ = 0.0;
};

/// F_{n_r l}(E, p), positive near p = 0.
inline double sturmian_radial(const CoulombContext& ctx, const QuantumNumbers& qn, double p) {
  return RadialFunction(RadialKind::sturmian, ctx, qn)(p);
}

/// f_{n_r l}(E, p), orthonormal in L^2(0, inf).
inline double orthonormal_eigenfunction(const CoulombContext& ctx, const QuantumNumbers& qn, double p) {
  return RadialFunction(RadialKind::orthonormal, ctx, qn)(p);
}

/// g_{n_r l}(p), the factors of the bilinear expansion of the kernel.
inline double spectral_factor(const CoulombContext& ctx, const QuantumNumbers& qn, double p) {
  return RadialFunction(RadialKind::spectral, ctx, qn)(p);
}

/// Normalised bound-state radial function sqrt(2) q_n F_{n-l-1,l}(E_n, p).
inline double bound_radial(int dim, double z_charge, const QuantumNumbers& qn, double p) {
  coulomb_momentum::detail::require(qn.dim() == dim, "bound_radial: dimension mismatch");
  return RadialFunction(RadialKind::bound, spectrum::bound_context(dim, z_charge, qn.n()), qn)(p);
}

/// Angular sector l of the radial kernel in N dimensions.
struct KernelSpec {
  CoulombContext ctx;
  int l;
  int dim;

  KernelSpec(const CoulombContext& context, int orbital, int dimension)
      : ctx(context), l(orbital), dim(dimension) {
    coulomb_momentum::detail::require(orbital >= 0, "KernelSpec: l must be nonnegative");
    coulomb_momentum::detail::require(dimension >= 2, "KernelSpec: dimension must be >= 2");
  }

  /// Degree of the Legendre function, l + (N-3)/2.
  double degree() const noexcept { return l + 0.5 * (dim - 3); }
};

/// Q_{l+(N-3)/2}((p^2+p'^2)/(2pp')); symmetric in its arguments.
inline double kernel_legendre(double degree, double p, double pp) {
  if (!(p > 0.0) || !(pp > 0.0)) throw DomainError("kernel: momenta must be positive");
  if (p == pp) throw SingularityError("kernel: logarithmic singularity at p == p'");
  const double lo = std::min(p, pp);
  const double hi = std::max(p, pp);
  const double d = hi - lo;
  // z - 1 = (p - p')^2 / (2 p p')
  const double zm1 = (d / lo) * (d / hi) * 0.5;
  return specfun::legendre_q_from_offset(degree, zm1);
}

/// M_l(p, p') = (2Z/pi) Q(z) / (sqrt(p^2+q^2) sqrt(p'^2+q^2))
inline double kernel(const KernelSpec& spec, double p, double pp) {
  const double lo = std::min(p, pp);
  const double hi = std::max(p, pp);
  const double q = spec.ctx.q();
  const double qfun = kernel_legendre(spec.degree(), lo, hi);
  const double denom = std::exp(0.5 * (detail::log_sum_squares(q, lo) + detail::log_sum_squares(q, hi)));
  return 2.0 * spec.ctx.z() / std::numbers::pi * qfun / denom;
}

/// (2Z/pi) p^{-(N-1)/2} int_0^inf dp' p'^{(N-1)/2} Q(z(p, p')) phi(p').
/// The quadrature is graded toward the logarithmic singularity at p' = p.
template <class Phi>
quadrature::Integral apply_operator(const KernelSpec& spec, Phi&& phi, double p,
                                    const quadrature::QuadratureScheme& scheme = {}) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("apply_operator: p must be positive");
  const double nu = spec.degree();
  const double half_nm1 = 0.5 * (spec.dim - 1);
  auto integrand = [&](double pp) {
    if (pp == p || !(pp > 0.0) || std::isinf(pp)) return 0.0;
    return std::pow(pp / p, half_nm1) * kernel_legendre(nu, p, pp) * phi(pp);
  };
  const quadrature::RadialMap map(spec.ctx.q());
  const auto result = quadrature::integrate_radial(integrand, map, p, scheme);
  const double scale = 2.0 * spec.ctx.z() / std::numbers::pi;
  return {scale * result.value, scale * result.error};
}

}  // namespace coulomb_momentum::radial
