#pragma once

// Nystrom discretisation of the symmetric radial Fredholm equation
//
//   f(p) = lambda int_0^inf M_l(p, p') f(p') dp'.
//
// With p = q tan(theta/2) and f~(theta) = sqrt(dp/dtheta) f(p) the kernel
// becomes Z/(pi q) Q_nu(z) with
//   z - 1 = 2 sin^2((theta - theta')/2) / (sin theta sin theta'),
// independent of q apart from the prefactor. The theta interval (0, pi) is
// covered by composite Gauss-Legendre panels. The diagonal (log-singular)
// entries use singularity subtraction: the row integral of the kernel is
// done by graded adaptive quadrature and the off-diagonal Gauss sum is
// removed from it.

#include <cmath>
#include <numbers>
#include <vector>

#include "coulomb_momentum/error.hpp"
#include "coulomb_momentum/linalg.hpp"
#include "coulomb_momentum/quadrature.hpp"
#include "coulomb_momentum/radial.hpp"
#include "coulomb_momentum/specfun.hpp"

namespace coulomb_momentum::nystrom {

inline constexpr int kPointsPerPanel = 8;
inline constexpr int kMaxGridSize = 512;

/// Q_nu in the angle variables.
inline double angular_legendre(double nu, double theta, double theta_p) {
  const double s = std::sin(0.5 * (theta - theta_p));
  const double zm1 = 2.0 * s * s / (std::sin(theta) * std::sin(theta_p));
  return specfun::legendre_q_from_offset(nu, zm1);
}

struct Discretization {
  std::vector<double> nodes;    // theta_i
  std::vector<double> weights;  // w_i
  linalg::Matrix matrix;        // sqrt(w_i) k(theta_i, theta_j) sqrt(w_j), singular-corrected diagonal
};

/// Builds the symmetric Nystrom matrix for one angular sector.
inline Discretization discretize(const radial::KernelSpec& spec, int grid_size,
                                 const quadrature::QuadratureScheme& scheme = {}) {
  if (grid_size < kPointsPerPanel || grid_size > kMaxGridSize || grid_size % kPointsPerPanel != 0) {
    throw DomainError("nystrom: grid_size must be a multiple of 8 in [8, 512]");
  }
  const int panels = grid_size / kPointsPerPanel;
  const auto& rule = quadrature::cached_gauss_legendre(kPointsPerPanel);
  const double nu = spec.degree();
  const double prefactor = spec.ctx.z() / (std::numbers::pi * spec.ctx.q());

  Discretization d;
  d.nodes.reserve(grid_size);
  d.weights.reserve(grid_size);
  const double h = std::numbers::pi / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (int k = 0; k < kPointsPerPanel; ++k) {
      d.nodes.push_back(mid + 0.5 * h * rule.nodes[k]);
      d.weights.push_back(0.5 * h * rule.weights[k]);
    }
  }

  const std::size_t n = d.nodes.size();
  d.matrix = linalg::Matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = prefactor * angular_legendre(nu, d.nodes[i], d.nodes[j]);
      const double v = std::sqrt(d.weights[i] * d.weights[j]) * k;
      d.matrix(i, j) = v;
      d.matrix(j, i) = v;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double ti = d.nodes[i];
    auto row = [&](double t) { return t == ti ? 0.0 : angular_legendre(nu, ti, t); };
    const auto breaks = quadrature::graded_breakpoints(0.0, std::numbers::pi, ti, scheme.grading_ratio,
                                                       quadrature::kDefaultGradingLevels);
    const double row_integral = prefactor * quadrature::integrate_panels(row, std::span<const double>(breaks), scheme).value;
    double off_sum = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) off_sum += d.weights[j] * prefactor * angular_legendre(nu, ti, d.nodes[j]);
    }
    d.matrix(i, i) = row_integral - off_sum;
  }
  return d;
}

/// Fredholm eigenvalue estimates lambda = 1/mu for the positive eigenvalues
/// mu of the discretised operator, ascending.
inline std::vector<double> nystrom_spectrum(const radial::KernelSpec& spec, int grid_size,
                                            const quadrature::QuadratureScheme& scheme = {}) {
  const auto d = discretize(spec, grid_size, scheme);
  const auto mu = linalg::jacobi_eigenvalues(d.matrix);
  std::vector<double> lambda;
  for (auto it = mu.rbegin(); it != mu.rend(); ++it) {
    if (*it > 0.0) lambda.push_back(1.0 / *it);
  }
  return lambda;
}

}  // namespace coulomb_momentum::nystrom
