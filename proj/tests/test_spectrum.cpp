#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptrobin/spectrum.hpp"

using namespace ptrobin;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

double max_gap(const AnalyticFunction& f, const AnalyticFunction& g, double d) {
  double m = 0.0;
  for (int i = 0; i <= 200; ++i) {
    const double x = d * i / 200.0;
    m = std::max(m, std::abs(f(x) - g(x)));
  }
  return m;
}

}  // namespace

TEST(ModelParams, Validation) {
  EXPECT_THROW((ModelParams{0.5, 0.0, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((ModelParams{std::nan(""), 0.0, 1.0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((ModelParams{0.5, -2.0, kPi}.validate()));
}

TEST(Degeneracy, Examples) {
  EXPECT_FALSE(check_nondegenerate({0.0, 0.0, 2.7}).degenerate);
  const DegeneracyFlag one = check_nondegenerate({1.0, 0.0, kPi});
  EXPECT_TRUE(one.degenerate);
  EXPECT_EQ(one.multiple, 1);
  EXPECT_FALSE(check_nondegenerate({0.5, 0.0, kPi}).degenerate);
  EXPECT_EQ(check_nondegenerate({-2.0, 0.0, kPi}).multiple, -2);
}

TEST(Degeneracy, SmallPerturbationFlipsTheFlag) {
  for (int m : {1, 2, 3, -1}) {
    const double a = m * kPi / 2.0;
    EXPECT_TRUE(check_nondegenerate({a, 0.0, 2.0}).degenerate) << m;
    EXPECT_FALSE(check_nondegenerate({a + 1e-6, 0.0, 2.0}).degenerate) << m;
    EXPECT_FALSE(check_nondegenerate({a - 1e-6, 0.0, 2.0}).degenerate) << m;
  }
}

TEST(Degeneracy, ErrorCarriesFlag) {
  try {
    require_nondegenerate({2.0, 0.0, kPi});
    FAIL() << "expected DegenerateAlphaError";
  } catch (const DegenerateAlphaError& e) {
    EXPECT_EQ(e.flag().multiple, 2);
  }
  EXPECT_THROW(spectral_pair(1, {1.0, 0.0, kPi}), DegenerateAlphaError);
  EXPECT_THROW(psi_eigenfunction(3, {1.0, 0.0, kPi}), DegenerateAlphaError);
}

TEST(Eigenvalue, Examples) {
  EXPECT_EQ(eigenvalue(0, {0.0, 0.0, kPi}), 0.0);
  EXPECT_NEAR(eigenvalue(2, {0.3, 0.0, kPi}), 4.0, 1e-14);
  EXPECT_EQ(eigenvalue(0, {0.5, 0.0, kPi}), 0.25);
  EXPECT_DOUBLE_EQ(wavenumber(3, 2.0), 1.5 * kPi);
}

TEST(SpectralPair, Normalization) {
  const SpectralPair p = spectral_pair(1, {0.5, 0.0, kPi});
  EXPECT_NEAR(std::abs(p.a - std::sqrt(2.0 / kPi) * 4.0 / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(p.b - std::sqrt(2.0 / kPi)), 0.0, 1e-15);
  ASSERT_TRUE(p.k.has_value());
  EXPECT_NEAR(*p.k, 1.0, 1e-15);

  const SpectralPair g = spectral_pair(0, {0.5, 0.0, kPi});
  EXPECT_FALSE(g.k.has_value());
  EXPECT_EQ(g.eigenvalue, 0.25);

  // alpha = 0 limit of a_0, and continuity of the stable form near it.
  const SpectralPair zero = spectral_pair(0, {0.0, 0.0, kPi});
  EXPECT_NEAR(std::abs(zero.a - std::sqrt(1.0 / kPi)), 0.0, 1e-15);
  const SpectralPair tiny = spectral_pair(0, {1e-9, 0.0, kPi});
  EXPECT_NEAR(std::abs(tiny.a - zero.a), 0.0, 1e-8);
}

TEST(Eigenfunctions, NeumannLimit) {
  const double d = kPi;
  const ModelParams p{0.0, 0.0, d};
  EXPECT_LT(max_gap(psi_eigenfunction(0, p), chi_neumann(0, d), d), 1e-15);
  EXPECT_LT(max_gap(psi_eigenfunction(1, p), chi_neumann(1, d), d), 1e-15);
  EXPECT_LT(max_gap(phi_eigenfunction(0, p), chi_neumann(0, d), d), 1e-15);
  EXPECT_LT(max_gap(phi_eigenfunction(1, p), chi_neumann(1, d), d), 1e-15);
}

TEST(Eigenfunctions, AdjointExample) {
  const double d = kPi;
  const AnalyticFunction expected = chi_neumann(1, d) + cplx(0.0, 0.5) * chi_dirichlet(1, d);
  EXPECT_LT(max_gap(phi_eigenfunction(1, {0.5, 0.0, d}), expected, d), 1e-15);
}

// Property: psi_j solves the eigen equation and the Robin condition; phi_j the adjoint ones.
TEST(Eigenfunctions, SolveTheirBoundaryProblems) {
  const double d = 2.3;
  for (double alpha : {-0.7, 0.2, 0.9, 2.0}) {
    const ModelParams p{alpha, 0.0, d};
    for (std::size_t j = 0; j <= 8; ++j) {
      const AnalyticFunction psi = psi_eigenfunction(j, p);
      const AnalyticFunction phi = phi_eigenfunction(j, p);
      const double e = eigenvalue(j, p);
      for (double x : {0.0, 0.4, 1.7, d}) {
        const double s = 1.0 + e * std::abs(psi(x));
        EXPECT_LT(std::abs(-psi.derivative(2)(x) - e * psi(x)), 1e-12 * s);
        EXPECT_LT(std::abs(-phi.derivative(2)(x) - e * phi(x)), 1e-12 * (1.0 + e * std::abs(phi(x))));
      }
      for (double x : {0.0, d}) {
        EXPECT_LT(std::abs(psi.derivative()(x) + kI * alpha * psi(x)), 1e-12 * (1.0 + std::sqrt(e) * std::abs(psi(x))));
        EXPECT_LT(std::abs(phi.derivative()(x) - kI * alpha * phi(x)), 1e-12 * (1.0 + std::sqrt(e) * std::abs(phi(x))));
      }
    }
  }
}

TEST(Modes, Examples) {
  EXPECT_EQ(chi_neumann(0, 4.0)(1.3), cplx(0.5));
  EXPECT_EQ(std::abs(chi_dirichlet(3, kPi)(0.0)), 0.0);
  EXPECT_LT(std::abs(chi_dirichlet(3, kPi)(kPi)), 1e-15);
  EXPECT_THROW(chi_dirichlet(0, kPi), std::invalid_argument);
  const Grid g(kPi, 4096);
  EXPECT_NEAR(norm(chi_dirichlet(3, kPi).sample(g)), 1.0, 1e-12);
}

TEST(GroundState, DirectionIsDefinedAtDegenerateAlpha) {
  const ModelParams p{1.0, 0.0, kPi};
  const AnalyticFunction g = ground_state_direction(p);
  EXPECT_NEAR(std::abs(g(0.7) - std::exp(-kI * 0.7)), 0.0, 1e-15);
}
