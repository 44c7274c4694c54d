#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ptrobin/grid.hpp"
#include "ptrobin/spectrum.hpp"

using namespace ptrobin;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

GridFunction sampled(const Grid& g, double (*f)(double)) {
  return GridFunction::from_callable(g, [f](double x) { return cplx(f(x)); });
}

double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(Grid, RejectsInvalidShape) {
  EXPECT_THROW(Grid(0.0, 16), std::invalid_argument);
  EXPECT_THROW(Grid(-1.0, 16), std::invalid_argument);
  EXPECT_THROW(Grid(1.0, 1), std::invalid_argument);
  EXPECT_THROW(Grid(std::nan(""), 16), std::invalid_argument);
}

TEST(Grid, LastNodeIsExactlyD) {
  const Grid g(kPi, 4096);
  EXPECT_EQ(g.size(), 4097u);
  EXPECT_EQ(g.node(0), 0.0);
  EXPECT_EQ(g.node(4096), kPi);
}

TEST(GridFunction, RejectsWrongSizeAndNonFinite) {
  const Grid g(1.0, 4);
  EXPECT_THROW(GridFunction(g, std::vector<cplx>(4)), std::invalid_argument);
  std::vector<cplx> v(5);
  v[2] = cplx(std::numeric_limits<double>::infinity(), 0.0);
  EXPECT_THROW(GridFunction(g, v), std::invalid_argument);
}

TEST(GridFunction, SamplingExamples) {
  const GridFunction one = GridFunction::constant(Grid(2.0, 4), 1.0);
  ASSERT_EQ(one.size(), 5u);
  for (const cplx& v : one.values()) EXPECT_EQ(v, cplx(1.0));

  const Grid g(kPi, 64);
  const double alpha = 0.0;
  const GridFunction e = GridFunction::from_callable(g, [&](double x) { return std::exp(kI * alpha * x); });
  for (const cplx& v : e.values()) EXPECT_EQ(v, cplx(1.0));

  const GridFunction c = GridFunction::from_callable(g, [&](double x) { return cplx(std::cos(kPi * x / g.length())); });
  EXPECT_EQ(c.back(), cplx(-1.0));
}

TEST(Integral, ConstantIsExact) {
  const Grid g(kPi, 4096);
  EXPECT_NEAR(integral(GridFunction::constant(g, 1.0)).real(), kPi, 1e-13);
  EXPECT_NEAR(inner_product(GridFunction::constant(g, 1.0), GridFunction::constant(g, 1.0)).real(),
              kPi, 1e-13);
}

TEST(Integral, NormalizedModes) {
  const Grid g(kPi, 4096);
  const GridFunction cn = chi_neumann(1, kPi).sample(g);
  const GridFunction cd = chi_dirichlet(1, kPi).sample(g);
  EXPECT_NEAR(std::abs(inner_product(cn, cn) - 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(inner_product(cn, cd)), 0.0, 1e-12);
  EXPECT_NEAR(norm(cd), 1.0, 1e-12);
  EXPECT_EQ(norm(GridFunction::zeros(g)), 0.0);
  EXPECT_NEAR(norm(GridFunction::constant(g, 1.0)), std::sqrt(kPi), 1e-13);
}

TEST(Integral, GridMismatchIsRejected) {
  const GridFunction a = GridFunction::constant(Grid(1.0, 8), 1.0);
  const GridFunction b = GridFunction::constant(Grid(1.0, 16), 1.0);
  const GridFunction c = GridFunction::constant(Grid(2.0, 8), 1.0);
  EXPECT_THROW(inner_product(a, b), std::invalid_argument);
  EXPECT_THROW(inner_product(a, c), std::invalid_argument);
  EXPECT_THROW(a + b, std::invalid_argument);
}

TEST(InnerProduct, AntilinearFirstLinearSecond) {
  const Grid g(kPi, 256);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_fn = [&] {
    std::vector<cplx> v(g.size());
    for (auto& x : v) x = {u(rng), u(rng)};
    return GridFunction(g, v);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const GridFunction f = random_fn(), h = random_fn(), k = random_fn();
    const cplx a{u(rng), u(rng)};
    const cplx lhs1 = inner_product(a * f, h);
    EXPECT_LT(std::abs(lhs1 - std::conj(a) * inner_product(f, h)), 1e-13);
    const cplx lhs2 = inner_product(f, axpy(h, a, k));
    EXPECT_LT(std::abs(lhs2 - (inner_product(f, h) + a * inner_product(f, k))), 1e-13);
    EXPECT_LT(std::abs(inner_product(f, h) - std::conj(inner_product(h, f))), 1e-14);
  }
}

TEST(CumulativeIntegral, Examples) {
  const Grid g(kPi, 1024);
  const GridFunction x = sampled(g, [](double t) { return t; });

  const GridFunction j1 = cumulative_integral(GridFunction::constant(g, 1.0));
  EXPECT_LT(max_abs_diff(j1, x), 1e-13);

  const GridFunction jx = cumulative_integral(x);
  EXPECT_LT(max_abs_diff(jx, sampled(g, [](double t) { return t * t / 2.0; })), 1e-12);

  const GridFunction js = cumulative_integral(sampled(g, [](double t) { return std::sin(t); }));
  EXPECT_LT(max_abs_diff(js, sampled(g, [](double t) { return 1.0 - std::cos(t); })), 1e-10);
}

TEST(CumulativeIntegral, LinearAndConsistentWithIntegral) {
  const Grid g(2.5, 300);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<cplx> fv(g.size()), hv(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      fv[i] = {u(rng), u(rng)};
      hv[i] = {u(rng), u(rng)};
    }
    const GridFunction f(g, fv), h(g, hv);
    const cplx a{u(rng), u(rng)};
    const GridFunction lhs = cumulative_integral(axpy(h, a, f));
    const GridFunction rhs = axpy(cumulative_integral(h), a, cumulative_integral(f));
    EXPECT_LT(max_abs_diff(lhs, rhs), 1e-13);
    EXPECT_EQ(cumulative_integral(f).back(), integral(f));
    EXPECT_EQ(cumulative_integral(f).front(), cplx(0.0));
  }
}

TEST(Quadrature, SmallestGridIsExactForQuadratics) {
  const Grid g(1.0, 2);
  const GridFunction q = sampled(g, [](double t) { return 3.0 * t * t - t + 2.0; });
  EXPECT_NEAR(integral(q).real(), 1.0 - 0.5 + 2.0, 1e-15);
  const GridFunction jq = cumulative_integral(q);
  EXPECT_NEAR(jq[1].real(), 0.125 - 0.125 + 1.0, 1e-15);
}

TEST(Quadrature, CubicRuleIsExactForCubics) {
  const Grid g(2.0, 7);
  const GridFunction c = sampled(g, [](double t) { return t * t * t - 2.0 * t; });
  const GridFunction jc = cumulative_integral(c);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.node(i);
    EXPECT_NEAR(jc[i].real(), x * x * x * x / 4.0 - x * x, 1e-13);
  }
}

// Halving h shrinks the error by ~4 for the trapezoid rule and ~16 for the cubic rule.
TEST(Quadrature, ConvergenceOrders) {
  auto error = [](std::size_t n, QuadratureRule rule) {
    const Grid g(kPi, n, rule);
    const GridFunction f = sampled(g, [](double t) { return std::exp(std::sin(t)); });
    const GridFunction jf = cumulative_integral(f);
    // Reference by a fine cubic rule.
    const Grid fine(kPi, 64 * n);
    const GridFunction jr = cumulative_integral(sampled(fine, [](double t) { return std::exp(std::sin(t)); }));
    double m = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) m = std::max(m, std::abs(jf[i] - jr[64 * i]));
    return m;
  };
  const double t1 = error(64, QuadratureRule::trapezoid), t2 = error(128, QuadratureRule::trapezoid);
  EXPECT_NEAR(t1 / t2, 4.0, 0.2);
  const double c1 = error(64, QuadratureRule::cubic), c2 = error(128, QuadratureRule::cubic);
  EXPECT_GT(c1 / c2, 13.0);
  EXPECT_LT(c2, t2);
}

TEST(GridFunction, ConjAndArithmetic) {
  const Grid g(1.0, 4);
  const GridFunction f(g, {cplx(1, 2), cplx(3, -1), cplx(0, 1), cplx(-2, 0), cplx(1, 1)});
  const GridFunction c = f.conj();
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_EQ(c[i], std::conj(f[i]));
  const GridFunction z = f - f;
  EXPECT_EQ(norm(z), 0.0);
  const GridFunction twice = f + f;
  EXPECT_EQ(max_abs_diff(twice, cplx(2.0) * f), 0.0);
  EXPECT_EQ(max_abs_diff(-f, cplx(-1.0) * f), 0.0);
}
