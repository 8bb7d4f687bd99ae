// Acceptance run: one [PASS]/[FAIL] line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "coulomb_momentum/coulomb_momentum.hpp"
#include "oracles.hpp"

using namespace coulomb_momentum;
using namespace coulomb_momentum::verification;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

void fold(Outcome& o, const VerificationReport& r) {
  if (!r.passed) {
    o.ok = false;
    if (o.detail.size() < 400) {
      char buf[160];
      std::snprintf(buf, sizeof buf, " %s metric=%.3g tol=%.3g%s%s;", r.check_name.c_str(), r.metric, r.tolerance,
                    r.note.empty() ? "" : " ", r.note.c_str());
      o.detail += buf;
    }
  }
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

Outcome energies() {
  Outcome o;
  double worst = 0.0;
  for (int N = 2; N <= 8; ++N) {
    for (double z : {1.0, 2.0, 3.7}) {
      for (int n = 1; n <= 10; ++n) {
        const double e = spectrum::bound_energy(N, z, n);
        const long double k = n + (N - 3) / 2.0L;
        worst = std::max(worst, rel(e, static_cast<double>(-z * z / (2 * k * k))));
        if (N == 3) worst = std::max(worst, rel(e, -z * z / (2.0 * n * n)));
        if (N == 2) worst = std::max(worst, rel(e, -z * z / (2.0 * (n - 0.5) * (n - 0.5))));
      }
    }
  }
  o.ok = worst <= 1e-14;
  o.detail = " max rel err " + std::to_string(worst);
  return o;
}

Outcome degeneracy() {
  Outcome o;
  int mismatches = 0;
  for (int N = 2; N <= 10; ++N) {
    for (int n = 1; n <= 20; ++n) {
      const auto D = spectrum::level_degeneracy(N, n);
      if (D != spectrum::harmonic_dimension(N + 1, n - 1)) ++mismatches;
      if (D != oracle::harmonic_dimension_factorial(N + 1, n - 1)) ++mismatches;
      // level n splits into the angular sectors l < n
      std::uint64_t sum = 0;
      for (int l = 0; l < n; ++l) sum += spectrum::harmonic_dimension(N, l);
      if (sum != D) ++mismatches;
    }
  }
  o.ok = mismatches == 0;
  o.detail = " mismatches " + std::to_string(mismatches);
  return o;
}

Outcome residuals() {
  struct Cell {
    int N, l, nr;
    double q;
  };
  std::vector<Cell> cells;
  for (int N : {2, 3, 4, 5})
    for (int l = 0; l <= 2; ++l)
      for (int nr = 0; nr <= 3; ++nr)
        for (double q : {0.3, 1.0, 2.7}) cells.push_back({N, l, nr, q});
  const auto reports = parallel::map_indexed(cells.size(), [&](std::size_t i) {
    const auto& c = cells[i];
    return residual_check(CoulombContext::from_momentum(1.0, c.q), QuantumNumbers::from_radial(c.N, c.nr, c.l),
                          default_grid(c.q));
  });
  Outcome o;
  double worst = 0.0;
  for (const auto& r : reports) {
    fold(o, r);
    worst = std::max(worst, r.metric);
  }
  o.detail = " " + std::to_string(cells.size()) + " cells, max residual " + std::to_string(worst) + o.detail;
  return o;
}

Outcome orthonormality() {
  Outcome o;
  for (auto [N, l, q] : {std::tuple{2, 0, 0.3}, {3, 0, 1.0}, {3, 2, 2.7}, {4, 1, 0.5}, {5, 2, 1.0}}) {
    const auto ctx = CoulombContext::from_momentum(1.0, q);
    fold(o, gram_check(ctx, N, l, 8));
    fold(o, g_norm_check(ctx, N, l, 8));
  }
  for (int N : {2, 3, 4, 5}) {
    for (int n = 1; n <= 4; ++n) {
      for (int l = 0; l < n; ++l) fold(o, bound_norm_check(N, 1.0, n, l));
    }
  }
  return o;
}

Outcome identities() {
  Outcome o;
  fold(o, ossicini_check(0.0, 0.5, 0.0, 0.0, 60, 1e-12));
  const double anchor = verification::detail::ossicini_partial_sums(0.0, 0.5, 0.0, 0.0, {200})[0];
  if (std::abs(anchor - std::log(3.0)) > 1e-12) {
    o.ok = false;
    o.detail += " ln3 anchor off;";
  }
  fold(o, ossicini_check(0.5, 0.9, 0.3, -0.2, 400));
  fold(o, ossicini_check(0.0, 0.6, 0.8, 0.1, 200));
  fold(o, ossicini_check(1.5, 0.3, -0.7, 0.4, 60));
  fold(o, ossicini_check(3.0, 0.8, 0.2, 0.2, 300));
  for (double alpha : {0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 6; ++n) {
      for (double z : {1.2, 1.5, 2.0, 5.0}) fold(o, cohl_check(alpha, n, z));
    }
  }
  // Neumann case: int_{-1}^{1} dx/(2-x) = ln 3 = 2 Q_0(2)
  const double neumann = 2.0 * specfun::legendre_q({0.0, 2.0});
  if (std::abs(neumann - std::log(3.0)) > 4e-15 || !cohl_check(0.5, 0, 2.0).passed) {
    o.ok = false;
    o.detail += " Neumann case off;";
  }
  return o;
}

Outcome nystrom_spectra() {
  Outcome o;
  fold(o, nystrom_check(KernelSpec(CoulombContext::from_momentum(1.0, 1.0), 0, 3), 256));
  fold(o, nystrom_check(KernelSpec(CoulombContext::from_momentum(1.0, 0.5), 1, 4), 256));
  const KernelSpec spec(CoulombContext::from_momentum(1.0, 1.0), 0, 3);
  const auto coarse = nystrom_check(spec, 32);
  const auto fine = nystrom_check(spec, 128);
  if (!(fine.metric < coarse.metric)) {
    o.ok = false;
    o.detail += " no improvement 32 -> 128;";
  }
  return o;
}

Outcome fourier() {
  Outcome o;
  fold(o, potential_ft::fourier_check(potential_ft::default_fourier_samples()));
  fold(o, potential_ft::coulomb_anchor_check());
  return o;
}

Outcome closure() {
  Outcome o;
  const auto ctx = CoulombContext::from_momentum(1.0, 1.0);
  fold(o, closure_coefficient_check(ctx, 3, 0, {0.6, 0.0, 0.0, -0.8}, 3));
  fold(o, closure_coefficient_check(ctx, 3, 2, {0.6, 0.0, 0.0, -0.8}, 6));
  fold(o, closure_coefficient_check(CoulombContext::from_momentum(1.0, 0.4), 4, 1, {0.0, 0.0, 1.0}, 5));
  // strict decrease means every ratio stays below one
  fold(o, closure_trend_check(ctx, 3, 0, {6, 12, 24}, [](double p) { return std::exp(-p * p); }, 1.0));
  return o;
}

Outcome special_functions() {
  Outcome o;
  fold(o, legendre_q_agreement_check());
  for (double alpha : {0.5, 1.0, 1.5, 2.5}) fold(o, gegenbauer_orthogonality_check(alpha, 12));
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"energy spectrum", energies},
      {"degeneracy identity", degeneracy},
      {"integral-equation residual", residuals},
      {"orthonormality and norms", orthonormality},
      {"series and Gegenbauer-integral identities", identities},
      {"Nystrom cross-validation", nystrom_spectra},
      {"Fourier transform of power laws", fourier},
      {"closure and reconstruction", closure},
      {"special-function cross-validation", special_functions},
  };
  int failures = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    coulomb_momentum::detail::Stopwatch clock;
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string(" exception: ") + e.what()};
    }
    std::printf("[%s] criterion %zu: %s (%.0f ms)%s\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                clock.elapsed_ms(), o.ok ? "" : o.detail.c_str());
    std::fflush(stdout);
    failures += o.ok ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
