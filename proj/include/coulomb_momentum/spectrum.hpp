#pragma once

// Quantum numbers, Sturmian eigenvalues, bound-state energies and level
// degeneracies of the N-dimensional Coulomb problem.
//
// Units: hbar = m = e^2/(4 pi eps0) = 1, so the Bohr radius and the Bohr
// momentum q_B are both 1. Momenta are in units of q_B, energies in Hartree.

#include <cmath>
#include <cstdint>
#include <limits>

#include "coulomb_momentum/error.hpp"

namespace coulomb_momentum::spectrum {

/// (N, n, l, n_r) with n = n_r + l + 1.
class QuantumNumbers {
public:
  /// From the principal quantum number n and the orbital number l < n.
  QuantumNumbers(int dim, int n, int l) : dim_(dim), n_(n), l_(l), n_r_(n - l - 1) {
    coulomb_momentum::detail::require(dim >= 2, "QuantumNumbers: dimension must be >= 2");
    coulomb_momentum::detail::require(n >= 1, "QuantumNumbers: n must be >= 1");
    coulomb_momentum::detail::require(l >= 0 && l <= n - 1, "QuantumNumbers: l must lie in [0, n-1]");
  }

  static QuantumNumbers from_radial(int dim, int n_r, int l) {
    coulomb_momentum::detail::require(n_r >= 0, "QuantumNumbers: n_r must be nonnegative");
    coulomb_momentum::detail::require(l >= 0, "QuantumNumbers: l must be nonnegative");
    return QuantumNumbers(dim, n_r + l + 1, l);
  }

  int dim() const noexcept { return dim_; }
  int n() const noexcept { return n_; }
  int l() const noexcept { return l_; }
  int n_r() const noexcept { return n_r_; }

  /// n_r + l + (N-1)/2 = n + (N-3)/2
  double effective_n() const noexcept { return n_ + 0.5 * (dim_ - 3); }

  friend bool operator==(const QuantumNumbers&, const QuantumNumbers&) = default;

private:
  int dim_;
  int n_;
  int l_;
  int n_r_;
};

/// Potential strength Z and momentum scale q = sqrt(-2E).
class CoulombContext {
public:
  static CoulombContext from_momentum(double z_charge, double q) { return CoulombContext(z_charge, q); }

  static CoulombContext from_energy(double z_charge, double energy) {
    coulomb_momentum::detail::require(energy < 0.0, "CoulombContext: energy must be negative");
    return CoulombContext(z_charge, std::sqrt(-2.0 * energy));
  }

  double z() const noexcept { return z_; }
  double q() const noexcept { return q_; }
  double energy() const noexcept { return -0.5 * q_ * q_; }

private:
  CoulombContext(double z_charge, double q) : z_(z_charge), q_(q) {
    coulomb_momentum::detail::require(z_charge > 0.0 && std::isfinite(z_charge), "CoulombContext: Z must be positive");
    coulomb_momentum::detail::require(q > 0.0 && std::isfinite(q), "CoulombContext: q must be positive");
  }

  double z_;
  double q_;
};

namespace detail {

using Wide = unsigned __int128;

inline std::uint64_t narrow(Wide v) {
  if (v > std::numeric_limits<std::uint64_t>::max()) throw DomainError("degeneracy overflows 64 bits");
  return static_cast<std::uint64_t>(v);
}

/// Binomial coefficient; zero when top < bottom or top < 0.
inline Wide binomial(long top, long bottom) {
  if (bottom < 0 || top < 0 || top < bottom) return 0;
  if (bottom > top - bottom) bottom = top - bottom;
  Wide result = 1;
  for (long k = 1; k <= bottom; ++k) {
    result = result * static_cast<Wide>(top - bottom + k) / static_cast<Wide>(k);
  }
  return result;
}

}  // namespace detail

/// Number of linearly independent hyperspherical harmonics of degree l on
/// S^(N-1). For N = 2 this is 1 at l = 0 and 2 otherwise.
inline std::uint64_t harmonic_dimension(int dim, int l) {
  coulomb_momentum::detail::require(dim >= 2, "harmonic_dimension: dimension must be >= 2");
  coulomb_momentum::detail::require(l >= 0, "harmonic_dimension: l must be nonnegative");
  // harmonic polynomials of degree l in N variables
  return detail::narrow(detail::binomial(l + dim - 1, dim - 1) - detail::binomial(l + dim - 3, dim - 1));
}

/// D_n^(N) = (2n + N - 3) (n + N - 3)! / ((n - 1)! (N - 1)!)
inline std::uint64_t level_degeneracy(int dim, int n) {
  coulomb_momentum::detail::require(dim >= 2, "level_degeneracy: dimension must be >= 2");
  coulomb_momentum::detail::require(n >= 1, "level_degeneracy: n must be >= 1");
  detail::Wide numerator = static_cast<detail::Wide>(2 * n + dim - 3);
  // (n + N - 3)! / (n - 1)! = n (n+1) ... (n + N - 3)
  for (long k = n; k <= n + dim - 3; ++k) numerator *= static_cast<detail::Wide>(k);
  detail::Wide denominator = 1;
  for (long k = 2; k <= dim - 1; ++k) denominator *= static_cast<detail::Wide>(k);
  if (numerator % denominator != 0) throw DomainError("level_degeneracy: non-integral result");
  return detail::narrow(numerator / denominator);
}

/// lambda = (n_r + l + (N-1)/2) q / Z
inline double sturmian_eigenvalue(const CoulombContext& ctx, const QuantumNumbers& qn) {
  return (qn.n_r() + qn.l() + 0.5 * (qn.dim() - 1)) * ctx.q() / ctx.z();
}

/// q_n = Z / (n + (N-3)/2)
inline double bound_momentum_scale(int dim, double z_charge, int n) {
  coulomb_momentum::detail::require(dim >= 2, "bound_momentum_scale: dimension must be >= 2");
  coulomb_momentum::detail::require(n >= 1, "bound_momentum_scale: n must be >= 1");
  coulomb_momentum::detail::require(z_charge > 0.0, "bound_momentum_scale: Z must be positive");
  return z_charge / (n + 0.5 * (dim - 3));
}

/// E_n = -Z^2 / (2 (n + (N-3)/2)^2)
inline double bound_energy(int dim, double z_charge, int n) {
  coulomb_momentum::detail::require(dim >= 2, "bound_energy: dimension must be >= 2");
  coulomb_momentum::detail::require(n >= 1, "bound_energy: n must be >= 1");
  coulomb_momentum::detail::require(z_charge > 0.0, "bound_energy: Z must be positive");
  const double kappa = n + 0.5 * (dim - 3);
  return -z_charge * z_charge / (2.0 * kappa * kappa);
}

/// Context at the bound-state momentum scale of level n.
inline CoulombContext bound_context(int dim, double z_charge, int n) {
  return CoulombContext::from_momentum(z_charge, bound_momentum_scale(dim, z_charge, n));
}

}  // namespace coulomb_momentum::spectrum
