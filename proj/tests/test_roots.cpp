#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptrobin/roots.hpp"

using namespace ptrobin;

namespace {

constexpr double kPi = std::numbers::pi;

// Oracle: the closed form of F written out independently, bracketed on a
// mesh 100x finer than the root finder's and bisected to full precision.
std::vector<double> bisection_oracle(double alpha, double beta, double d, double k_max) {
  const double sigma = alpha * alpha + beta * beta;
  auto f = [&](double k) { return (k * k - sigma) * std::sin(k * d) - 2.0 * beta * k * std::cos(k * d); };
  std::vector<double> roots;
  const double h = kPi / (800.0 * d);
  for (double a = h / 3.0; a < k_max; a += h) {
    double lo = a, hi = std::min(a + h, k_max);
    if (std::signbit(f(lo)) == std::signbit(f(hi))) continue;
    for (int it = 0; it < 100; ++it) {
      const double m = 0.5 * (lo + hi);
      (std::signbit(f(m)) == std::signbit(f(lo)) ? lo : hi) = m;
    }
    roots.push_back(0.5 * (lo + hi));
  }
  return roots;
}

std::vector<double> real_positive_k(const RootSearchResult& r) {
  std::vector<double> k;
  for (const auto& e : r.eigenvalues)
    if (e.k2.imag() == 0.0 && e.k2.real() > 0.0) k.push_back(std::sqrt(e.k2.real()));
  return k;
}

}  // namespace

TEST(Characteristic, Examples) {
  const ModelParams p{0.5, 0.0, kPi};
  EXPECT_EQ(std::abs(characteristic(0.5, p)), 0.0);
  for (int j = 1; j <= 5; ++j) EXPECT_LT(eigen_residual(j * 1.0, p), 1e-13 * j * j);
  EXPECT_NEAR(eigen_residual(0.9, {0.0, 0.0, kPi}), 0.81 * std::sin(0.9 * kPi), 1e-15);
  EXPECT_NEAR(eigen_residual(0.9, {0.0, 0.0, kPi}), 0.2503, 1e-4);
}

TEST(Characteristic, DerivativeMatchesFiniteDifference) {
  const ModelParams p{0.3, -0.8, 2.1};
  for (cplx k : {cplx(0.7, 0.0), cplx(2.2, 0.4), cplx(0.1, -1.3)}) {
    const double h = 1e-6;
    const cplx fd = (characteristic(k + h, p) - characteristic(k - h, p)) / (2.0 * h);
    EXPECT_LT(std::abs(fd - characteristic_derivative(k, p)), 1e-7 * (1.0 + std::abs(fd)));
  }
}

TEST(GeneralEigenvalues, BetaZeroReproducesClosedForm) {
  const ModelParams p{0.5, 0.0, kPi};
  const RootSearchResult r = general_eigenvalues(p, 5.5);
  ASSERT_EQ(r.eigenvalues.size(), 6u);
  const double expected[] = {0.25, 1, 4, 9, 16, 25};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_NEAR(r.eigenvalues[i].k2.real(), expected[i], 1e-10 * expected[i]);
    EXPECT_LT(std::abs(r.eigenvalues[i].k2.imag()), 1e-12);
    EXPECT_EQ(r.eigenvalues[i].status, RootStatus::resolved);
  }
  EXPECT_TRUE(r.complete());
  EXPECT_EQ(r.complex_count, 0u);
}

TEST(GeneralEigenvalues, NeumannLimitIncludesZero) {
  const double d = 2.0;
  const RootSearchResult r = general_eigenvalues({0.0, 0.0, d}, 4.5 * kPi / d);
  ASSERT_EQ(r.eigenvalues.size(), 5u);
  for (std::size_t j = 0; j < 5; ++j)
    EXPECT_NEAR(r.eigenvalues[j].k2.real(), std::pow(j * kPi / d, 2), 1e-10 * (1.0 + j * j));
}

TEST(GeneralEigenvalues, MatchesIndependentBisectionOracle) {
  for (double alpha : {0.0, 0.4}) {
    const ModelParams p{alpha, 1.0, kPi};
    const RootSearchResult r = general_eigenvalues(p, 6.0);
    const std::vector<double> found = real_positive_k(r);
    const std::vector<double> oracle = bisection_oracle(alpha, 1.0, kPi, 6.0);
    ASSERT_EQ(found.size(), oracle.size()) << "alpha " << alpha;
    for (std::size_t i = 0; i < found.size(); ++i) EXPECT_NEAR(found[i], oracle[i], 1e-10);
    EXPECT_TRUE(r.complete());
  }
}

TEST(GeneralEigenvalues, ComplexPairsComeWithConjugates) {
  const ModelParams p{0.5, -1.0, kPi};
  const RootSearchResult r = general_eigenvalues(p, 6.0);
  ASSERT_GE(r.complex_count, 2u);
  for (const auto& e : r.eigenvalues) {
    if (e.k2.imag() == 0.0) continue;
    double best = 1e300;
    for (const auto& o : r.eigenvalues) best = std::min(best, std::abs(o.k2 - std::conj(e.k2)));
    EXPECT_LT(best, 1e-9);
    EXPECT_LT(eigen_residual(e.k, p), 1e-10);
  }
  // Known pair for this parameter point, cross-checked by shooting.
  EXPECT_NEAR(r.eigenvalues[0].k2.real(), -0.735343565418186, 1e-10);
  EXPECT_NEAR(std::abs(r.eigenvalues[0].k2.imag()), 1.01194985723448, 1e-10);
}

TEST(GeneralEigenvalues, ArgumentPrincipleCountMatchesOutput) {
  for (double beta : {-1.5, -0.5, 0.7}) {
    const ModelParams p{0.3, beta, 1.7};
    const RootSearchResult r = general_eigenvalues(p, 9.0);
    EXPECT_TRUE(r.complete());
    // Output is cut at k_max; a search out to the contour sees every counted root.
    const RootSearchResult wide = general_eigenvalues(p, r.contour_radius);
    std::size_t inside = 0;
    for (const auto& e : wide.eigenvalues)
      if (std::abs(e.k) < r.contour_radius) ++inside;
    EXPECT_EQ(inside, r.contour_count) << "beta " << beta;
  }
}

TEST(GeneralEigenvalues, DegenerateAlphaGivesDoubleRoot) {
  const RootSearchResult r = general_eigenvalues({1.0, 0.0, kPi}, 2.5);
  ASSERT_EQ(r.eigenvalues.size(), 3u);
  EXPECT_NEAR(r.eigenvalues[0].k2.real(), 1.0, 1e-8);
  EXPECT_NEAR(r.eigenvalues[1].k2.real(), 1.0, 1e-8);
  EXPECT_NEAR(r.eigenvalues[2].k2.real(), 4.0, 1e-10);
}

TEST(GeneralEigenvalues, DeficitsAreReportedNotDropped) {
  const ModelParams p{0.5, -1.0, kPi};
  RootSearchOptions o;
  o.k_max = 6.0;
  o.expect_complex = false;
  const RootSearchResult r = general_eigenvalues(p, o);
  EXPECT_GT(r.unresolved_count, 0u);
  EXPECT_FALSE(r.complete());
  std::size_t unresolved = 0;
  for (const auto& e : r.eigenvalues) unresolved += e.status == RootStatus::unresolved;
  EXPECT_EQ(unresolved, r.unresolved_count);
  EXPECT_EQ(r.eigenvalues.size(), r.contour_count);
}
