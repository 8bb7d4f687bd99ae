#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "coulomb_momentum/radial.hpp"
#include "oracles.hpp"

using namespace coulomb_momentum;
using namespace coulomb_momentum::radial;
using spectrum::bound_context;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

}  // namespace

TEST(Sturmian, HydrogenGroundClosedForm) {
  const auto ctx = CoulombContext::from_momentum(1.0, 1.0);
  const auto qn = QuantumNumbers::from_radial(3, 0, 0);
  EXPECT_LT(rel(sturmian_radial(ctx, qn, 1.0), kInvSqrtPi), 1e-14);
  EXPECT_NEAR(sturmian_radial(ctx, qn, 0.0), 4.0 * kInvSqrtPi, 1e-14);
  EXPECT_NEAR(sturmian_radial(ctx, qn, 1e-9), 4.0 * kInvSqrtPi, 1e-14);
  for (double p : {0.1, 0.7, 3.0, 40.0}) {
    EXPECT_LT(rel(sturmian_radial(ctx, qn, p), 4.0 * kInvSqrtPi / std::pow(1.0 + p * p, 2)), 1e-14) << p;
  }
}

TEST(Sturmian, AgainstSeparatelyCodedOrthonormalChain) {
  const auto ctx = CoulombContext::from_momentum(1.0, 0.5);
  const double expected = static_cast<double>(oracle::sturmian_via_orthonormal(4, 2, 1, 0.5L, 0.7L));
  EXPECT_LT(rel(sturmian_radial(ctx, QuantumNumbers::from_radial(4, 2, 1), 0.7), expected), 1e-13);
  for (int N = 2; N <= 6; ++N) {
    for (int nr = 0; nr <= 4; ++nr) {
      for (int l = 0; l <= 2; ++l) {
        for (double p : {0.05, 0.5, 1.3, 6.0}) {
          const double e = static_cast<double>(oracle::sturmian_via_orthonormal(N, nr, l, 1.3L, p));
          const double got = sturmian_radial(CoulombContext::from_momentum(1.0, 1.3), QuantumNumbers::from_radial(N, nr, l), p);
          EXPECT_NEAR(got, e, 1e-12 * std::max(1e-3, std::abs(e))) << N << " " << nr << " " << l << " " << p;
        }
      }
    }
  }
}

TEST(Sturmian, LargeQuantumNumbersStayFinite) {
  const auto ctx = CoulombContext::from_momentum(1.0, 1.0);
  const double v = sturmian_radial(ctx, QuantumNumbers::from_radial(9, 60, 40), 0.8);
  EXPECT_TRUE(std::isfinite(v));
  EXPECT_THROW(sturmian_radial(ctx, QuantumNumbers::from_radial(3, 0, 0), -0.1), DomainError);
}

TEST(BoundRadial, DocumentedValues) {
  EXPECT_LT(rel(bound_radial(3, 1.0, QuantumNumbers(3, 1, 0), 0.0), std::pow(2.0, 2.5) * kInvSqrtPi), 1e-14);
  const double expected = std::sqrt(2.0) * 2.0 * static_cast<double>(oracle::sturmian_direct(2, 0, 0, 2.0L, 1.0L));
  EXPECT_LT(rel(bound_radial(2, 1.0, QuantumNumbers(2, 1, 0), 1.0), expected), 1e-13);
}

TEST(BoundRadial, PodolskyPaulingForm) {
  for (double z : {1.0, 2.0, 3.7}) {
    const double q1 = z;
    for (double p : {0.0, 0.2, 1.0, 4.5, 30.0}) {
      const double expected = std::pow(2.0, 2.5) * kInvSqrtPi * std::pow(q1, 2.5) / std::pow(q1 * q1 + p * p, 2);
      EXPECT_LT(rel(bound_radial(3, z, QuantumNumbers(3, 1, 0), p), expected), 1e-12) << z << " " << p;
    }
  }
}

TEST(BoundRadial, PositiveNearOrigin) {
  for (int N = 2; N <= 6; ++N) {
    for (int n = 1; n <= 7; ++n) {
      for (int l = 0; l < n; ++l) {
        const double qn_scale = spectrum::bound_momentum_scale(N, 1.0, n);
        EXPECT_GT(bound_radial(N, 1.0, QuantumNumbers(N, n, l), 1e-3 * qn_scale), 0.0) << N << " " << n << " " << l;
      }
    }
  }
}

TEST(BoundRadial, RequiresBoundScale) {
  EXPECT_THROW(RadialFunction(RadialKind::bound, CoulombContext::from_momentum(1.0, 0.9), QuantumNumbers(3, 1, 0)),
               DomainError);
  EXPECT_THROW(bound_radial(4, 1.0, QuantumNumbers(3, 1, 0), 1.0), DomainError);
}

TEST(RadialKinds, ConsistencySquare) {
  for (int N : {2, 3, 5}) {
    for (double q : {0.3, 1.0, 2.7}) {
      const auto ctx = CoulombContext::from_momentum(1.4, q);
      for (int nr = 0; nr <= 3; ++nr) {
        const auto qn = QuantumNumbers::from_radial(N, nr, 1);
        const double lambda = spectrum::sturmian_eigenvalue(ctx, qn);
        for (double p : {0.1 * q, q, 4.0 * q}) {
          const double f = orthonormal_eigenfunction(ctx, qn, p);
          const double via_g = std::sqrt(lambda) * spectral_factor(ctx, qn, p);
          const double via_F = std::sqrt(p * p + q * q) * std::pow(p, 0.5 * (N - 1)) * sturmian_radial(ctx, qn, p);
          EXPECT_NEAR(f, via_g, 1e-12 * std::max(1.0, std::abs(f)));
          EXPECT_NEAR(f, via_F, 1e-12 * std::max(1.0, std::abs(f)));
        }
      }
    }
  }
}

TEST(Kernel, ClosedFormValues) {
  const KernelSpec s0(CoulombContext::from_momentum(1.0, 1.0), 0, 3);
  EXPECT_NEAR(kernel(s0, 1.0, 2.0), 0.2211692, 5e-8);
  const double expected0 = 2.0 / std::numbers::pi * 0.5 * std::log(9.0) / (std::sqrt(2.0) * std::sqrt(5.0));
  EXPECT_LT(rel(kernel(s0, 1.0, 2.0), expected0), 1e-14);

  const KernelSpec s1(CoulombContext::from_momentum(1.0, 1.0), 1, 3);
  const double q1 = static_cast<double>(oracle::legendre_q1(1.25L));
  EXPECT_LT(rel(kernel(s1, 1.0, 2.0), 2.0 / std::numbers::pi * q1 / (std::sqrt(2.0) * std::sqrt(5.0))), 1e-13);
}

TEST(Kernel, HalfIntegerDegreeAgainstHeineOracle) {
  const KernelSpec s(CoulombContext::from_momentum(1.0, 1.0), 0, 4);
  const long double z = (0.64L + 1.69L) / (2 * 0.8L * 1.3L);
  const double q = static_cast<double>(oracle::legendre_q_heine(0.5L, z));
  const double expected = 2.0 / std::numbers::pi * q / (std::sqrt(1.64) * std::sqrt(2.69));
  EXPECT_LT(rel(kernel(s, 0.8, 1.3), expected), 1e-12);
}

TEST(Kernel, SymmetricAndSingularOnDiagonal) {
  for (int N : {2, 3, 4, 7}) {
    const KernelSpec s(CoulombContext::from_momentum(1.2, 0.8), 1, N);
    for (double p : {0.01, 0.3, 1.0, 5.0}) {
      for (double pp : {0.02, 0.31, 2.0, 50.0}) {
        EXPECT_EQ(kernel(s, p, pp), kernel(s, pp, p));
      }
    }
    EXPECT_THROW(kernel(s, 0.5, 0.5), SingularityError);
    EXPECT_THROW(kernel(s, 0.0, 0.5), DomainError);
  }
}

TEST(ApplyOperator, EigenrelationAtUnitEigenvalue) {
  const auto ctx = CoulombContext::from_momentum(1.0, 1.0);
  const KernelSpec spec(ctx, 0, 3);
  const RadialFunction F(RadialKind::sturmian, ctx, QuantumNumbers::from_radial(3, 0, 0));
  for (double p : {0.5, 1.0, 2.0}) {
    const auto r = apply_operator(spec, F, p);
    EXPECT_LT(rel(r.value, (p * p + 1.0) * F(p)), 1e-9) << p;
  }
}

TEST(ApplyOperator, EigenrelationGeneralSturmian) {
  for (int N : {2, 4, 5}) {
    const auto ctx = CoulombContext::from_momentum(1.7, 0.6);
    const auto qn = QuantumNumbers::from_radial(N, 2, 1);
    const KernelSpec spec(ctx, 1, N);
    const RadialFunction F(RadialKind::sturmian, ctx, qn);
    const double lambda = spectrum::sturmian_eigenvalue(ctx, qn);
    for (double p : {0.2, 0.9, 3.0}) {
      const double lhs = lambda * apply_operator(spec, F, p).value;
      const double rhs = (p * p + 0.36) * F(p);
      EXPECT_NEAR(lhs, rhs, 1e-8 * std::max(std::abs(rhs), 1e-3 * (p * p + 0.36) * std::abs(F(0.0)))) << N << " " << p;
    }
  }
}

TEST(ApplyOperator, GaussianTrialFunction) {
  const KernelSpec spec(CoulombContext::from_momentum(1.0, 1.0), 0, 3);
  const auto r = apply_operator(spec, [](double p) { return std::exp(-p * p); }, 1.0);
  auto fl = [](oracle::real p) { return p * std::log(std::fabs((1 + p) / (1 - p))) * std::exp(-p * p); };
  const double expected =
      static_cast<double>(2 / std::numbers::pi_v<oracle::real> * (oracle::tanh_sinh(fl, 0, 1, 10) + oracle::tanh_sinh(fl, 1, 12, 10)));
  EXPECT_LT(rel(r.value, expected), 1e-10);
  EXPECT_GE(r.error, 0.0);
}
