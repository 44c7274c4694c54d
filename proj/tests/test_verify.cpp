#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "ptrobin/io.hpp"
#include "ptrobin/verify.hpp"

using namespace ptrobin;

namespace {

constexpr double kPi = std::numbers::pi;
const cplx kI{0.0, 1.0};

const Grid& grid4096() {
  static const Grid g(kPi, 4096);
  return g;
}

const CheckRecord* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST(QuasiHermiticity, EigenfunctionCombination) {
  const ModelParams p{0.5, 0.0, kPi};
  const AnalyticFunction psi = psi_eigenfunction(1, p) + cplx(2.0) * psi_eigenfunction(3, p);
  EXPECT_LT(quasi_hermiticity_residual(psi, grid4096(), 0.5), 1e-8);
  for (std::size_t j = 0; j <= 10; ++j)
    EXPECT_LT(quasi_hermiticity_residual(psi_eigenfunction(j, p), grid4096(), 0.5), 1e-8) << j;
}

TEST(QuasiHermiticity, NeumannCaseIsExact) {
  const AnalyticFunction psi = chi_neumann(2, kPi) + cplx(0.0, 3.0) * chi_neumann(5, kPi);
  EXPECT_LT(quasi_hermiticity_residual(psi, grid4096(), 0.0), 1e-13);
}

TEST(QuasiHermiticity, RejectsFunctionsOutsideTheDomain) {
  EXPECT_THROW(quasi_hermiticity_residual(chi_dirichlet(1, kPi), grid4096(), 0.5),
               NotInDomainError);
  EXPECT_GT(robin_defect(chi_dirichlet(1, kPi), 0.5, kPi), 1e-3);
  EXPECT_LT(robin_defect(psi_eigenfunction(2, {0.5, 0.0, kPi}), 0.5, kPi), 1e-14);
  EXPECT_LT(robin_defect(phi_eigenfunction(2, {0.5, 0.0, kPi}), 0.5, kPi, -1.0), 1e-14);
}

TEST(QuasiHermiticity, HalvingNShrinksTheResidual) {
  const ModelParams p{0.5, 0.0, kPi};
  const AnalyticFunction psi = psi_eigenfunction(1, p) + cplx(2.0) * psi_eigenfunction(3, p);
  const double fine = quasi_hermiticity_residual(psi, Grid(kPi, 4096), 0.5);
  const double coarse = quasi_hermiticity_residual(psi, Grid(kPi, 2048), 0.5);
  EXPECT_GT(coarse / fine, 3.5);
}

TEST(AdjointDomain, ThetaMapsIntoAdjointDomain) {
  const ModelParams p{0.9, 0.0, kPi};
  for (std::size_t j = 0; j <= 6; ++j)
    EXPECT_LT(adjoint_domain_residual(psi_eigenfunction(j, p), grid4096(), 0.9), 1e-10);
}

TEST(SesquilinearForm, Examples) {
  const AnalyticFunction one = AnalyticFunction::constant(1.0);
  EXPECT_EQ(std::abs(sesquilinear_form(one, one, 0.7, grid4096())), 0.0);
  const AnalyticFunction c1 = chi_neumann(1, kPi);
  EXPECT_NEAR(std::abs(sesquilinear_form(c1, c1, 0.0, grid4096()) - 1.0), 0.0, 1e-12);
}

TEST(SesquilinearForm, RepresentsTheOperator) {
  const ModelParams p{0.5, 0.0, kPi};
  const AnalyticFunction phi = AnalyticFunction::exponential(cplx(0.3, -1.0), 0.7) +
                               AnalyticFunction::monomial(1.0, 2);
  for (std::size_t j = 0; j <= 6; ++j) {
    const AnalyticFunction psi = psi_eigenfunction(j, p);
    const cplx lhs = sesquilinear_form(phi, psi, 0.5, grid4096());
    const cplx rhs = eigenvalue(j, p) * inner_product(phi.sample(grid4096()), psi.sample(grid4096()));
    EXPECT_LT(std::abs(lhs - rhs), 1e-9 * (1.0 + std::abs(rhs))) << j;
  }
}

TEST(DerivativeTraceBound, Examples) {
  const BoundCheck one = lemma1_bound_check(AnalyticFunction::constant(1.0), 0.5, 2.0, grid4096());
  EXPECT_EQ(one.lhs, 0.0);
  EXPECT_NEAR(one.slack, 0.25 * kPi / 2.0, 1e-12);
  EXPECT_EQ(lemma1_bound_check(chi_dirichlet(1, kPi), 0.5, 1.0, grid4096()).lhs < 1e-15, true);
  const AnalyticFunction e = AnalyticFunction::exponential(1.0, cplx(0.0, -1.0 / kPi));
  for (double eps : {0.1, 1.0, 10.0}) {
    const BoundCheck b = lemma1_bound_check(e, 0.5, eps, grid4096());
    EXPECT_TRUE(b.holds());
    EXPECT_GT(b.slack, 0.0);
    EXPECT_NEAR(b.lhs, 0.5 * (std::exp(2.0) - 1.0), 1e-12);
  }
  EXPECT_THROW(lemma1_bound_check(e, 0.5, 0.0, grid4096()), std::invalid_argument);
}

TEST(Biorthonormality, Examples) {
  const MatrixDeviation m0 = biorthonormality_matrix({0.0, 0.0, kPi}, grid4096(), 5);
  EXPECT_LT(m0.max_deviation, 1e-10);
  const MatrixDeviation m = biorthonormality_matrix({0.5, 0.0, kPi}, grid4096(), 20);
  EXPECT_EQ(m.size, 21u);
  EXPECT_LT(m.max_deviation, 1e-8);
  EXPECT_LT(std::abs(m.at(0, 1)), 1e-8);
  EXPECT_THROW(biorthonormality_matrix({1.0, 0.0, kPi}, grid4096(), 3), DegenerateAlphaError);
}

TEST(Parseval, Examples) {
  const ParsevalSums c3 = parseval_check(chi_neumann(3, kPi).sample(grid4096()), 5);
  EXPECT_NEAR(c3.neumann, 1.0, 1e-10);
  const GridFunction one = GridFunction::constant(grid4096(), 1.0);
  EXPECT_NEAR(parseval_check(one, 0).neumann, kPi, 1e-12);
  // Dirichlet sum of a constant approaches d as O(1 / j_max).
  const double g1 = kPi - parseval_check(one, 50).dirichlet;
  const double g2 = kPi - parseval_check(one, 100).dirichlet;
  EXPECT_GT(g1, 0.0);
  EXPECT_NEAR(g1 / g2, 2.0, 0.1);
  const ParsevalSums z = parseval_check(GridFunction::zeros(grid4096()), 3);
  EXPECT_EQ(z.neumann, 0.0);
  EXPECT_EQ(z.dirichlet, 0.0);
}

TEST(SineSeriesSum, Examples) {
  EXPECT_EQ(lemma2_partial_sum(0.0, 100, kPi), 0.0);
  EXPECT_LT(std::abs(lemma2_partial_sum(kPi, 100, kPi)), 1e-13);
  EXPECT_NEAR(lemma2_partial_sum(kPi / 2.0, 10000, kPi), -0.5, 1e-3);
  EXPECT_THROW(lemma2_partial_sum(-0.1, 10, kPi), std::invalid_argument);
}

TEST(Expansion, Examples) {
  const ModelParams p{0.5, 0.0, kPi};
  const GridFunction psi4 = psi_eigenfunction(4, p).sample(grid4096());
  EXPECT_LT(expansion_residual(psi4, 0.5, 6, ExpansionBasis::psi).residual, 1e-8);
  const GridFunction phi4 = phi_eigenfunction(4, p).sample(grid4096());
  EXPECT_LT(expansion_residual(phi4, 0.5, 6, ExpansionBasis::phi).residual, 1e-8);

  const GridFunction one = GridFunction::constant(grid4096(), 1.0);
  double prev = 1e300;
  for (std::size_t J : {50, 100, 200}) {
    const double r = expansion_residual(one, 0.5, J, ExpansionBasis::psi).residual;
    EXPECT_LT(r, prev);
    prev = r;
  }
  EXPECT_LT(prev, 1e-2);
  EXPECT_THROW(expansion_residual(one, 1.0, 5, ExpansionBasis::psi), DegenerateAlphaError);
}

TEST(NormDifference, Examples) {
  const ModelParams p{0.5, 0.0, kPi};
  const Comparison c1 = norm_difference_check(1, p, grid4096());
  EXPECT_NEAR(c1.formula, 0.25 * 1.25 / 0.5625, 1e-15);
  EXPECT_LT(c1.rel_error(), 1e-8);
  const Comparison c10 = norm_difference_check(10, p, grid4096());
  EXPECT_NEAR(c10.formula, 0.25 * 100.25 / 9950.0625, 1e-15);
  EXPECT_LT(c10.rel_error(), 1e-8);
  EXPECT_NEAR(norm_difference_check(5, p, grid4096()).formula / c10.formula, 4.0, 0.1);
  EXPECT_EQ(norm_difference_check(3, {0.0, 0.0, kPi}, grid4096()).formula, 0.0);
  EXPECT_LT(norm_difference_check(3, {0.0, 0.0, kPi}, grid4096()).measured, 1e-24);
  EXPECT_THROW(norm_difference_check(0, p, grid4096()), std::invalid_argument);
}

TEST(ProjectionIdentity, Examples) {
  const Comparison half = phi0_projection_identity({0.5, 0.0, kPi}, grid4096());
  EXPECT_NEAR(half.formula, 2.0 / kPi, 1e-15);
  EXPECT_LT(half.abs_error(), 1e-8);
  EXPECT_NEAR(phi0_projection_identity({1e-9, 0.0, kPi}, grid4096()).measured, 1.0, 1e-12);
  EXPECT_LT(phi0_projection_identity({1.0, 0.0, kPi}, grid4096()).measured, 1e-10);
}

TEST(Gauge, Examples) {
  const GaugeResiduals g0 = gauge_transform_residual(0, {0.5, 0.0, kPi}, grid4096());
  EXPECT_LT(g0.boundary, 1e-15);
  EXPECT_LT(g0.equation, 1e-15);
  const GaugeResiduals z = gauge_transform_residual(3, {0.0, 0.0, kPi}, grid4096());
  EXPECT_LT(z.boundary, 1e-14);
  EXPECT_LT(z.equation, 1e-13);
  const GaugeResiduals g2 = gauge_transform_residual(2, {0.5, 0.0, kPi}, grid4096());
  EXPECT_LT(g2.boundary, 1e-10);
  EXPECT_LT(g2.equation, 1e-8);
  EXPECT_LT(g2.reality, 1e-12);
  EXPECT_THROW(gauge_transform_residual(2, {1.0, 0.0, kPi}, grid4096()), DegenerateAlphaError);
}

TEST(RunAll, UnknownSuiteIsRejected) {
  SuiteOptions o;
  o.suites = {"metric", "nosuchsuite"};
  EXPECT_THROW(run_all(o), std::invalid_argument);
}

TEST(RunAll, DegenerateAlphaIsInformational) {
  SuiteOptions o;
  o.alphas = {1.0};
  o.suites = {"metric"};
  o.n = 1024;
  const VerificationReport r = run_all(o);
  const CheckRecord* k = find(r, "degenerate_kernel_witness[alpha=1]");
  ASSERT_NE(k, nullptr);
  EXPECT_EQ(k->status, CheckStatus::info);
  EXPECT_TRUE(r.all_passed());
  EXPECT_EQ(find(r, "quasi_hermiticity[alpha=1]"), nullptr);
}

TEST(RunAll, CheckNamesAreUniqueAndSuitesFiltered) {
  SuiteOptions o;
  o.suites = {"spectrum", "forms"};
  const VerificationReport r = run_all(o);
  std::set<std::string> names;
  for (const auto& c : r.checks) {
    EXPECT_TRUE(names.insert(c.name).second) << c.name;
    EXPECT_TRUE(c.suite == "spectrum" || c.suite == "forms") << c.suite;
  }
  EXPECT_TRUE(r.all_passed());
}

TEST(RunAll, DeterministicForAGivenSeed) {
  SuiteOptions o;
  o.alphas = {0.5};
  o.n = 512;
  o.suites = {"metric", "expansions"};
  o.seed = 42;
  const std::string a = report_json(run_all(o));
  const std::string b = report_json(run_all(o));
  EXPECT_EQ(a, b);
  o.seed = 43;
  EXPECT_NE(a, report_json(run_all(o)));
}

TEST(RunAll, BrokenToleranceProducesFailureWithWitness) {
  SuiteOptions o;
  o.alphas = {0.5};
  o.suites = {"metric"};
  o.n = 256;
  o.quadrature_tolerance = 1e-16;
  const VerificationReport r = run_all(o);
  EXPECT_FALSE(r.all_passed());
  const CheckRecord* q = find(r, "quasi_hermiticity[alpha=0.5]");
  ASSERT_NE(q, nullptr);
  EXPECT_EQ(q->status, CheckStatus::fail);
  EXPECT_FALSE(q->witness.empty());
}
