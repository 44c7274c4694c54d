#include "ptrobin/verify.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>

#include "ptrobin/random_functions.hpp"
#include "ptrobin/roots.hpp"

namespace ptrobin {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;
constexpr double kExact = 1e-12;

double sinc(double t) { return std::abs(t) < 1e-4 ? 1.0 - t * t / 6.0 : std::sin(t) / t; }

GridFunction phi0_samples(const Grid& grid, double alpha) {
  const double c = std::sqrt(1.0 / grid.length());
  return GridFunction::from_callable(grid,
                                     [&](double x) { return c * std::exp(kI * (alpha * x)); });
}

}  // namespace

double robin_defect(const AnalyticFunction& psi, double alpha, double d, double sign) {
  const BoundaryData b = boundary_data(psi, d);
  const cplx ia = kI * (sign * alpha);
  const double defect = std::max(std::abs(b.slope_left + ia * b.value_left),
                                 std::abs(b.slope_right + ia * b.value_right));
  const double scale = 1.0 + std::abs(b.slope_left) + std::abs(b.slope_right) +
                       std::abs(alpha) * (std::abs(b.value_left) + std::abs(b.value_right));
  return defect / scale;
}

double quasi_hermiticity_residual(const AnalyticFunction& psi, const Grid& grid,
                                  double alpha) {
  const double d = grid.length();
  if (robin_defect(psi, alpha, d) > 1e-10)
    throw NotInDomainError("test function violates psi' + i alpha psi = 0 at the boundary");

  const GridFunction values = psi.sample(grid);
  const GridFunction slope = psi.derivative(1).sample(grid);
  const GridFunction minus_curv = -psi.derivative(2).sample(grid);
  const GridFunction phi0 = phi0_samples(grid, alpha);
  const cplx proj = inner_product(phi0, values);

  // H_{-alpha} Theta psi through the closed second-derivative identity.
  GridFunction lhs = axpy(minus_curv, -2.0 * kI * alpha, slope);
  lhs = axpy(lhs, alpha * alpha, values);
  lhs = axpy(lhs, alpha * alpha * proj, phi0);

  const GridFunction rhs = theta_apply_closed(minus_curv, {alpha, d, 1});
  return norm(lhs - rhs) / norm(values);
}

double adjoint_domain_residual(const AnalyticFunction& psi, const Grid& grid, double alpha) {
  const MetricConfig cfg{alpha, grid.length(), 1};
  const GridFunction values = psi.sample(grid);
  const GridFunction theta = theta_apply_closed(values, cfg);
  const GridFunction slope = theta_derivative_closed(psi, grid, cfg);
  const cplx ia = kI * alpha;
  const double defect = std::abs(slope.front() - ia * theta.front()) +
                        std::abs(slope.back() - ia * theta.back());
  return defect / norm(values);
}

cplx sesquilinear_form(const AnalyticFunction& phi, const AnalyticFunction& psi,
                       double alpha, const Grid& grid) {
  const double d = grid.length();
  const cplx bulk = inner_product(phi.derivative().sample(grid), psi.derivative().sample(grid));
  return bulk + kI * alpha * std::conj(phi(d)) * psi(d) -
         kI * alpha * std::conj(phi(0.0)) * psi(0.0);
}

BoundCheck lemma1_bound_check(const AnalyticFunction& psi, double alpha, double eps,
                              const Grid& grid) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const double d = grid.length();
  const double grad = norm(psi.derivative().sample(grid));
  const double mass = norm(psi.sample(grid));
  BoundCheck b;
  b.lhs = std::abs(alpha * (std::norm(psi(d)) - std::norm(psi(0.0))));
  b.rhs = alpha * alpha * mass * mass / eps + eps * grad * grad;
  b.slack = b.rhs - b.lhs;
  return b;
}

MatrixDeviation biorthonormality_matrix(const ModelParams& params, const Grid& grid,
                                        std::size_t j_max) {
  require_nondegenerate(params);
  std::vector<GridFunction> phis, psis;
  for (std::size_t j = 0; j <= j_max; ++j) {
    phis.push_back(phi_eigenfunction(j, params).sample(grid));
    psis.push_back(psi_eigenfunction(j, params).sample(grid));
  }
  MatrixDeviation m;
  m.size = j_max + 1;
  m.entries.reserve(m.size * m.size);
  for (std::size_t j = 0; j < m.size; ++j)
    for (std::size_t k = 0; k < m.size; ++k) {
      const cplx v = inner_product(phis[j], psis[k]);
      m.entries.push_back(v);
      m.max_deviation = std::max(m.max_deviation, std::abs(v - (j == k ? 1.0 : 0.0)));
    }
  return m;
}

ParsevalSums parseval_check(const GridFunction& psi, std::size_t j_max) {
  const Grid& grid = psi.grid();
  const double d = grid.length();
  ParsevalSums s;
  for (std::size_t j = 0; j <= j_max; ++j) {
    s.neumann += std::norm(inner_product(chi_neumann(j, d).sample(grid), psi));
    if (j >= 1) s.dirichlet += std::norm(inner_product(chi_dirichlet(j, d).sample(grid), psi));
  }
  return s;
}

double lemma2_partial_sum(double x, std::size_t terms, double d) {
  if (x < 0.0 || x > d) throw std::invalid_argument("x must lie in [0, d]");
  double sum = 0.0;
  for (std::size_t j = 1; j <= terms; ++j) {
    const double k = wavenumber(j, d);
    const double neumann_at_d = (j % 2 == 0 ? 1.0 : -1.0) * std::sqrt(2.0 / d);
    sum += std::sqrt(2.0 / d) * std::sin(k * x) * neumann_at_d / k;
  }
  return sum;
}

Expansion expansion_residual(const GridFunction& psi, double alpha, std::size_t j_max,
                             ExpansionBasis basis) {
  const Grid& grid = psi.grid();
  const ModelParams params{alpha, 0.0, grid.length()};
  require_nondegenerate(params);
  Expansion e;
  e.coefficients.reserve(j_max + 1);
  GridFunction rest = psi;
  for (std::size_t j = 0; j <= j_max; ++j) {
    const GridFunction psi_j = psi_eigenfunction(j, params).sample(grid);
    const GridFunction phi_j = phi_eigenfunction(j, params).sample(grid);
    const bool psi_basis = basis == ExpansionBasis::psi;
    const cplx c = inner_product(psi_basis ? phi_j : psi_j, psi);
    e.coefficients.push_back(c);
    rest = axpy(rest, -c, psi_basis ? psi_j : phi_j);
  }
  e.residual = norm(rest);
  return e;
}

double Comparison::abs_error() const { return std::abs(measured - formula); }

double Comparison::rel_error() const {
  return formula != 0.0 ? abs_error() / std::abs(formula) : abs_error();
}

Comparison norm_difference_check(std::size_t j, const ModelParams& params, const Grid& grid) {
  if (j == 0) throw std::invalid_argument("norm difference is defined for j >= 1");
  require_nondegenerate(params);
  const double k = wavenumber(j, params.d);
  const double a2 = params.alpha * params.alpha;
  const GridFunction diff = psi_eigenfunction(j, params).sample(grid) -
                            chi_neumann(j, params.d).sample(grid);
  const double n = norm(diff);
  return {n * n, a2 * (k * k + a2) / ((k * k - a2) * (k * k - a2))};
}

Comparison phi0_projection_identity(const ModelParams& params, const Grid& grid) {
  params.validate();
  const GridFunction psi0 = ground_state_direction(params).sample(grid);
  const GridFunction phi0 = phi0_samples(grid, params.alpha);
  return {std::abs(inner_product(phi0, psi0)) / norm(psi0),
          std::abs(sinc(params.alpha * params.d))};
}

GaugeResiduals gauge_transform_residual(std::size_t j, const ModelParams& params,
                                        const Grid& grid) {
  require_nondegenerate(params);
  const double alpha = params.alpha;
  const double d = params.d;
  const AnalyticFunction phi = phi_eigenfunction(0, params) * psi_eigenfunction(j, params);
  const AnalyticFunction dphi = phi.derivative();
  const cplx energy = eigenvalue(j, params);

  GaugeResiduals r;
  r.boundary = std::abs(dphi(0.0)) + std::abs(dphi(d));
  const AnalyticFunction lhs = cplx(-1.0) * phi.derivative(2) + (2.0 * kI * alpha) * dphi +
                               (alpha * alpha - energy) * phi;
  r.equation = norm(lhs.sample(grid)) / norm(phi.sample(grid));
  const double grad = norm(dphi.sample(grid));
  r.reality = std::abs(energy.imag()) * grad * grad;
  return r;
}

// ---------------------------------------------------------------------------
// Report

const char* to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass:
      return "pass";
    case CheckStatus::fail:
      return "fail";
    case CheckStatus::info:
      return "info";
    case CheckStatus::skipped:
      return "skipped";
  }
  return "?";
}

std::size_t VerificationReport::count(CheckStatus status) const {
  return static_cast<std::size_t>(std::count_if(
      checks.begin(), checks.end(), [&](const CheckRecord& c) { return c.status == status; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"spectrum", "metric", "forms", "expansions"};
  return names;
}

namespace {

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string tagged(const std::string& base,
                   std::initializer_list<std::pair<const char*, double>> tags) {
  std::string s = base + "[";
  bool first = true;
  for (const auto& [k, v] : tags) {
    if (!first) s += ",";
    s += k;
    s += "=";
    s += format_number(v);
    first = false;
  }
  return s + "]";
}

// FNV-1a, so that each check's random stream depends only on its name.
std::uint64_t stream_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : name) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

class Suite {
 public:
  Suite(VerificationReport& report, const SuiteOptions& opts, std::string name)
      : report_(report), opts_(opts), name_(std::move(name)) {}

  CheckRecord& add(std::string check, double tolerance,
                   std::vector<std::pair<std::string, double>> params) {
    CheckRecord r;
    r.name = std::move(check);
    r.suite = name_;
    r.tolerance = tolerance;
    r.parameters = std::move(params);
    report_.checks.push_back(std::move(r));
    return report_.checks.back();
  }

  // Pass when every value is <= tolerance.
  static void judge(CheckRecord& r) {
    r.status = CheckStatus::pass;
    for (const auto& [k, v] : r.residuals)
      if (!(v <= r.tolerance)) r.status = CheckStatus::fail;
  }

  std::uint64_t seed_for(const std::string& check) const {
    return stream_seed(opts_.seed, check);
  }

  const SuiteOptions& opts() const { return opts_; }

 private:
  VerificationReport& report_;
  const SuiteOptions& opts_;
  std::string name_;
};

// Robin-compatible function outside the eigenfunction span:
// e^{-i alpha x} (x^2 - 2 x^3 / (3d)), whose bracket has zero slope at 0, d.
AnalyticFunction hand_built_member(double alpha, double d) {
  const AnalyticFunction bump =
      AnalyticFunction::monomial(1.0, 2) + AnalyticFunction::monomial(-2.0 / (3.0 * d), 3);
  return AnalyticFunction::exponential(1.0, -alpha) * bump;
}

struct FamilyMember {
  std::string label;
  AnalyticFunction f;
};

std::vector<FamilyMember> domain_family(const ModelParams& p, std::uint64_t seed) {
  std::vector<FamilyMember> family;
  for (std::size_t j = 0; j <= 10; ++j)
    family.push_back({"psi_" + std::to_string(j), psi_eigenfunction(j, p)});
  std::mt19937_64 rng(seed);
  for (int r = 0; r < 20; ++r)
    family.push_back({"random combination #" + std::to_string(r),
                      random_eigen_combination(p, 10, rng)});
  family.push_back({"e^{-i alpha x}(x^2 - 2x^3/(3d))", hand_built_member(p.alpha, p.d)});
  return family;
}

// Independent check for the root finder: plain bisection of F on a fine mesh.
std::vector<double> fine_mesh_roots(const ModelParams& p, double k_max) {
  auto f = [&](double k) { return characteristic(k, p).real(); };
  std::vector<double> roots;
  const double h = 1e-3 * kPi / p.d;
  double a = 0.5 * h;
  double fa = f(a);
  for (double b = a + h; b <= k_max + 0.5 * h; b += h) {
    const double fb = f(b);
    if (fa == 0.0) roots.push_back(a);
    else if ((fa < 0.0) != (fb < 0.0)) {
      double lo = a, hi = b, flo = fa;
      for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
        const double m = 0.5 * (lo + hi);
        const double fm = f(m);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = m;
          flo = fm;
        } else {
          hi = m;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    }
    a = b;
    fa = fb;
  }
  return roots;
}

void run_spectrum_suite(Suite& s, const Grid& grid) {
  const SuiteOptions& o = s.opts();
  const double d = o.d;

  for (double alpha : o.alphas) {
    const ModelParams p{alpha, 0.0, d};
    const bool degenerate = check_nondegenerate(p).degenerate;

    if (!degenerate) {
      auto& r = s.add(tagged("robin_boundary", {{"alpha", alpha}}), kExact,
                      {{"alpha", alpha}, {"d", d}, {"j_max", double(o.j_max)}});
      double worst = 0.0;
      for (std::size_t j = 0; j <= o.j_max; ++j) {
        const double v = robin_defect(psi_eigenfunction(j, p), alpha, d);
        if (v > worst) {
          worst = v;
          r.witness = "psi_" + std::to_string(j);
        }
      }
      r.residuals = {{"max_relative_defect", worst}};
      Suite::judge(r);
    }

    {
      auto& r = s.add(tagged("adjoint_eigenfunctions", {{"alpha", alpha}}), kExact,
                      {{"alpha", alpha}, {"d", d}, {"j_max", double(o.j_max)}});
      double bc = 0.0, eq = 0.0, sym = 0.0;
      const ModelParams flipped{-alpha, 0.0, d};
      for (std::size_t j = 0; j <= o.j_max; ++j) {
        const AnalyticFunction phi = phi_eigenfunction(j, p);
        bc = std::max(bc, robin_defect(phi, alpha, d, -1.0));
        const GridFunction phi_s = phi.sample(grid);
        const GridFunction lhs = -phi.derivative(2).sample(grid);
        eq = std::max(eq, norm(axpy(lhs, -eigenvalue(j, p), phi_s)) /
                              ((1.0 + eigenvalue(j, p)) * norm(phi_s)));
        if (!degenerate) {
          // phi_j(alpha) is psi_j(-alpha) up to normalization.
          const SpectralPair pair = spectral_pair(j, flipped);
          const GridFunction rescaled = (pair.b / pair.a) * psi_eigenfunction(j, flipped).sample(grid);
          sym = std::max(sym, norm(rescaled - phi_s) / norm(phi_s));
        }
      }
      r.residuals = {{"adjoint_bc_defect", bc}, {"eigen_equation", eq}, {"psi_minus_alpha", sym}};
      Suite::judge(r);
    }

    if (!degenerate) {
      auto& r = s.add(tagged("biorthonormality", {{"alpha", alpha}}), o.quadrature_tolerance,
                      {{"alpha", alpha}, {"d", d}, {"n", double(o.n)}, {"j_max", double(o.j_max)}});
      const MatrixDeviation m = biorthonormality_matrix(p, grid, o.j_max);
      r.residuals = {{"max_deviation", m.max_deviation}};
      Suite::judge(r);
    }

    {
      const double k_max = (static_cast<double>(o.j_max) + 0.5) * kPi / d;
      auto& r = s.add(tagged("beta_zero_reduction", {{"alpha", alpha}}), 1e-10,
                      {{"alpha", alpha}, {"beta", 0.0}, {"d", d}, {"k_max", k_max}});
      const RootSearchResult rf = general_eigenvalues(p, k_max);
      std::vector<double> exact;
      for (std::size_t j = 0; j <= o.j_max; ++j) exact.push_back(eigenvalue(j, p));
      std::sort(exact.begin(), exact.end());
      double rel = 0.0, imag = 0.0;
      if (rf.eigenvalues.size() != exact.size()) {
        rel = std::numeric_limits<double>::infinity();
        r.witness = "found " + std::to_string(rf.eigenvalues.size()) + " eigenvalues, expected " +
                    std::to_string(exact.size());
      } else {
        for (std::size_t i = 0; i < exact.size(); ++i) {
          const cplx e = rf.eigenvalues[i].k2;
          rel = std::max(rel, std::abs(e.real() - exact[i]) / std::max(1.0, exact[i]));
          imag = std::max(imag, std::abs(e.imag()));
        }
      }
      r.residuals = {{"max_relative_error", rel}, {"max_abs_imag", imag}};
      Suite::judge(r);
    }
  }

  {
    auto& r = s.add("degeneracy_detection", 0.0, {{"d", d}});
    int wrong = 0;
    auto expect = [&](double alpha, bool degenerate) {
      if (check_nondegenerate({alpha, 0.0, d}).degenerate != degenerate) {
        ++wrong;
        r.witness += "alpha=" + format_number(alpha) + " ";
      }
    };
    expect(0.0, false);
    for (int m : {1, 2, -1}) {
      const double a = m * kPi / d;
      expect(a, true);
      expect(a + 1e-6, false);
      expect(a - 1e-6, false);
    }
    expect(0.5 * kPi / d, false);
    r.residuals = {{"misclassified", double(wrong)}};
    Suite::judge(r);
  }

  for (double beta : o.betas) {
    if (beta == 0.0) continue;
    for (double alpha : o.alphas) {
      const ModelParams p{alpha, beta, d};
      const double k_max = 10.0;
      auto& r = s.add(tagged("beta_model_roots", {{"alpha", alpha}, {"beta", beta}}), 1e-10,
                      {{"alpha", alpha}, {"beta", beta}, {"d", d}, {"k_max", k_max}});
      const RootSearchResult rf = general_eigenvalues(p, k_max);
      std::vector<double> found;
      for (const auto& e : rf.eigenvalues)
        if (e.status == RootStatus::resolved && e.k2.imag() == 0.0 && e.k2.real() > 0.0)
          found.push_back(e.k.real());
      const std::vector<double> oracle = fine_mesh_roots(p, k_max);
      double mismatch = 0.0;
      if (oracle.size() != found.size()) {
        mismatch = std::numeric_limits<double>::infinity();
        r.witness = "root count " + std::to_string(found.size()) + " vs oracle " +
                    std::to_string(oracle.size());
      } else {
        for (std::size_t i = 0; i < found.size(); ++i)
          mismatch = std::max(mismatch, std::abs(found[i] - oracle[i]));
      }
      r.residuals = {{"oracle_mismatch", mismatch}, {"unresolved", double(rf.unresolved_count)}};
      Suite::judge(r);
    }
  }

  {
    // A parameter point where a complex-conjugate pair is known to exist.
    const ModelParams p{0.5, -1.0, d};
    auto& r = s.add(tagged("beta_model_complex_pair", {{"alpha", 0.5}, {"beta", -1.0}}), 1e-9,
                    {{"alpha", 0.5}, {"beta", -1.0}, {"d", d}, {"k_max", 6.0}});
    const RootSearchResult rf = general_eigenvalues(p, 6.0);
    double conj_gap = 0.0, residual = 0.0;
    for (const auto& e : rf.eigenvalues) {
      if (e.k2.imag() == 0.0) continue;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& other : rf.eigenvalues)
        best = std::min(best, std::abs(other.k2 - std::conj(e.k2)));
      conj_gap = std::max(conj_gap, best);
      residual = std::max(residual, e.residual / (1.0 + std::norm(e.k)));
    }
    r.residuals = {{"missing_pairs", rf.complex_count >= 2 ? 0.0 : 1.0},
                   {"conjugate_gap", conj_gap},
                   {"relative_residual", residual},
                   {"unresolved", double(rf.unresolved_count)}};
    Suite::judge(r);
  }
}

void run_metric_suite(Suite& s, const Grid& grid) {
  const SuiteOptions& o = s.opts();
  const double d = o.d;
  const double tol = o.quadrature_tolerance;

  {
    const std::string name = "identity_limit";
    auto& r = s.add(name, 1e-12, {{"alpha", 0.0}, {"d", d}, {"n", double(o.n)}, {"samples", 100}});
    BandLimitedSampler gen(grid, 20, s.seed_for(name));
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const GridFunction psi = gen.next();
      const double v = norm(theta_apply_closed(psi, {0.0, d, 1}) - psi) / norm(psi);
      if (v > worst) {
        worst = v;
        r.witness = "random band-limited #" + std::to_string(i);
      }
    }
    r.residuals = {{"max_relative_deviation", worst}};
    Suite::judge(r);
  }

  {
    const std::string name = "alpha_continuity";
    auto& r = s.add(name, 0.05, {{"d", d}, {"n", double(o.n)}});
    BandLimitedSampler gen(grid, 20, s.seed_for(name));
    const GridFunction psi = gen.next();
    auto dev = [&](double a) { return norm(theta_apply_closed(psi, {a, d, 1}) - psi); };
    const double r1 = dev(1e-3), r2 = dev(2e-3), r4 = dev(4e-3);
    r.residuals = {{"ratio_2_minus_2", std::abs(r2 / r1 - 2.0) / 2.0},
                   {"ratio_4_minus_2", std::abs(r4 / r2 - 2.0) / 2.0}};
    Suite::judge(r);
  }

  std::vector<double> alphas = o.alphas;
  const double degenerate_alpha = kPi / d;
  if (o.degenerate_probe &&
      std::none_of(alphas.begin(), alphas.end(), [&](double a) { return a == degenerate_alpha; }))
    alphas.push_back(degenerate_alpha);

  for (double alpha : alphas) {
    const ModelParams p{alpha, 0.0, d};
    const bool degenerate = check_nondegenerate(p).degenerate;
    const MetricConfig cfg{alpha, d, o.series_cutoff};
    const std::vector<std::pair<std::string, double>> params{
        {"alpha", alpha}, {"d", d}, {"n", double(o.n)}};

    {
      const std::string name = tagged("symmetry", {{"alpha", alpha}});
      auto& r = s.add(name, tol, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double worst = 0.0;
      for (int i = 0; i < 20; ++i) {
        const GridFunction f = gen.next();
        const GridFunction g = gen.next();
        const cplx a = inner_product(f, theta_apply_closed(g, cfg));
        const cplx b = inner_product(theta_apply_closed(f, cfg), g);
        worst = std::max(worst, std::abs(a - b) / (norm(f) * norm(g)));
      }
      r.residuals = {{"max_relative_asymmetry", worst}};
      Suite::judge(r);
    }

    {
      const std::string name = tagged("form_operator_consistency", {{"alpha", alpha}});
      auto& r = s.add(name, tol, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double re = 0.0, im = 0.0;
      for (int i = 0; i < 20; ++i) {
        const GridFunction psi = gen.next();
        const double n2 = std::norm(norm(psi));
        const cplx direct = inner_product(psi, theta_apply_closed(psi, cfg));
        re = std::max(re, std::abs(quadratic_form(psi, cfg) - direct.real()) / n2);
        im = std::max(im, std::abs(direct.imag()) / n2);
      }
      r.residuals = {{"form_vs_operator", re}, {"imaginary_part", im}};
      Suite::judge(r);
    }

    {
      const std::string name = tagged("non_negativity", {{"alpha", alpha}});
      auto& r = s.add(name, 1e-10, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double lowest = std::numeric_limits<double>::infinity();
      for (int i = 0; i < 200; ++i) {
        const GridFunction psi = gen.next();
        lowest = std::min(lowest, quadratic_form(psi, cfg) / std::norm(norm(psi)));
      }
      // Pass when -lowest <= 1e-10, i.e. the form never dips below zero.
      r.residuals = {{"negative_part", std::max(0.0, -lowest)}};
      Suite::judge(r);
      r.note = "smallest observed (psi, Theta psi)/||psi||^2 = " + format_number(lowest);
      if (!degenerate && !(lowest > 0.0)) {
        r.status = CheckStatus::fail;
        r.witness = "no strict positivity over the random sample";
      }
    }

    if (degenerate) {
      auto& r = s.add(tagged("degenerate_kernel_witness", {{"alpha", alpha}}), 1e-10, params);
      const GridFunction psi0 = ground_state_direction(p).sample(grid);
      const double ratio = quadratic_form(psi0, cfg) / std::norm(norm(psi0));
      const Comparison proj = phi0_projection_identity(p, grid);
      r.residuals = {{"form_ratio", std::abs(ratio)}, {"projection_ratio", proj.measured}};
      Suite::judge(r);
      r.witness = "psi = e^{-i alpha x}";
      if (r.status == CheckStatus::pass) {
        r.status = CheckStatus::info;
        r.note = "alpha d / pi is a non-zero integer: Theta has a kernel along psi_0, as expected";
      }
      continue;
    }

    {
      auto& r = s.add(tagged("projection_identity", {{"alpha", alpha}}), tol, params);
      const Comparison c = phi0_projection_identity(p, grid);
      r.residuals = {{"relative_error", c.rel_error()}};
      r.note = "measured " + format_number(c.measured) + ", formula " + format_number(c.formula);
      Suite::judge(r);
    }

    {
      const std::string name = tagged("norm_bound", {{"alpha", alpha}});
      auto& r = s.add(name, 0.0, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double excess = 0.0;
      for (double a : {alpha, -alpha}) {
        const MetricConfig c{a, d, 1};
        const double bound = norm_bound_coefficient(c);
        for (int i = 0; i < 50; ++i) {
          const GridFunction psi = gen.next();
          excess = std::max(excess, norm(theta_apply_closed(psi, c)) / norm(psi) - bound);
        }
      }
      r.residuals = {{"bound_excess", std::max(0.0, excess)}};
      Suite::judge(r);
    }

    {
      const std::string name = tagged("quasi_hermiticity", {{"alpha", alpha}});
      auto& r = s.add(name, tol, params);
      const auto family = domain_family(p, s.seed_for(name));
      double worst = 0.0, worst_coarse = 0.0;
      const Grid coarse(d, o.n / 2, grid.rule());
      for (const auto& m : family) {
        const double v = quasi_hermiticity_residual(m.f, grid, alpha);
        if (v > worst) {
          worst = v;
          r.witness = m.label;
        }
        worst_coarse = std::max(worst_coarse, quasi_hermiticity_residual(m.f, coarse, alpha));
      }
      r.residuals = {{"max_relative_residual", worst}};
      Suite::judge(r);

      if (alpha != 0.0) {
        auto& c = s.add(tagged("quasi_hermiticity_convergence", {{"alpha", alpha}}), 1.0 / 3.5,
                        params);
        const double ratio = worst_coarse / worst;
        c.residuals = {{"inverse_refinement_ratio", 1.0 / ratio}};
        c.note = "residual(n/2) / residual(n) = " + format_number(ratio) +
                 "; at least 3.5 expected for a quadrature-limited residual";
        Suite::judge(c);
      }
    }

    {
      auto& r = s.add(tagged("adjoint_domain_mapping", {{"alpha", alpha}}), tol, params);
      double worst = 0.0;
      for (const auto& m : domain_family(p, s.seed_for(r.name))) {
        const double v = adjoint_domain_residual(m.f, grid, alpha);
        if (v > worst) {
          worst = v;
          r.witness = m.label;
        }
      }
      r.residuals = {{"max_adjoint_bc_defect", worst}};
      Suite::judge(r);
    }

    if (alpha != 0.0) {
      const std::string name = tagged("closed_vs_series", {{"alpha", alpha}});
      auto& r = s.add(name, 1e-3,
                      {{"alpha", alpha}, {"d", d}, {"n", double(o.n)},
                       {"J_max", double(o.series_cutoff)}});
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double final_gap = 0.0, increase = 0.0;
      for (int i = 0; i < 2; ++i) {
        const GridFunction psi = gen.next();
        const GridFunction closed = theta_apply_closed(psi, cfg);
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t cut : {std::size_t{10}, std::size_t{100}, o.series_cutoff}) {
          const double gap =
              norm(closed - theta_apply_series(psi, {alpha, d, cut}).value) / norm(psi);
          if (gap > prev) {
            increase = std::max(increase, gap - prev);
            r.witness = "random band-limited #" + std::to_string(i);
          }
          prev = gap;
        }
        final_gap = std::max(final_gap, prev);
      }
      r.residuals = {{"relative_gap_at_cutoff", final_gap}, {"non_monotone_increase", increase}};
      Suite::judge(r);
      if (increase > 0.0) r.status = CheckStatus::fail;
    }

    {
      auto& r = s.add(tagged("inverse_series", {{"alpha", alpha}}), 1e-3,
                      {{"alpha", alpha}, {"d", d}, {"n", double(o.n)}, {"J_max", 500}});
      const GridFunction psi = chi_neumann(2, d).sample(grid);
      const SeriesApplication inv =
          theta_inverse_series(theta_apply_closed(psi, cfg), {alpha, d, 500});
      r.residuals = {{"relative_residual", norm(inv.value - psi) / norm(psi)}};
      r.note = "tail norm " + format_number(inv.tail_norm);
      Suite::judge(r);
    }
  }
}

void run_forms_suite(Suite& s, const Grid& grid) {
  const SuiteOptions& o = s.opts();
  const double d = o.d;
  const double tol = o.quadrature_tolerance;

  for (double alpha : o.alphas) {
    const ModelParams p{alpha, 0.0, d};
    const bool degenerate = check_nondegenerate(p).degenerate;
    const std::vector<std::pair<std::string, double>> params{
        {"alpha", alpha}, {"d", d}, {"n", double(o.n)}};

    {
      auto& r = s.add(tagged("sesquilinear_constant", {{"alpha", alpha}}), kExact, params);
      const AnalyticFunction one = AnalyticFunction::constant(1.0);
      r.residuals = {{"abs_value", std::abs(sesquilinear_form(one, one, alpha, grid))}};
      Suite::judge(r);
    }

    if (!degenerate) {
      const std::string name = tagged("form_representation", {{"alpha", alpha}});
      auto& r = s.add(name, tol, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      double worst = 0.0;
      for (int i = 0; i < 4; ++i) {
        const AnalyticFunction phi = gen.next_analytic();
        const GridFunction phi_s = phi.sample(grid);
        for (const auto& m : domain_family(p, s.seed_for(name) + 1)) {
          const cplx h = sesquilinear_form(phi, m.f, alpha, grid);
          const GridFunction op = -m.f.derivative(2).sample(grid);
          const double scale = norm(phi_s) * (norm(m.f.sample(grid)) + norm(op));
          const double v = std::abs(h - inner_product(phi_s, op)) / scale;
          if (v > worst) {
            worst = v;
            r.witness = m.label + " against random phi #" + std::to_string(i);
          }
        }
      }
      r.residuals = {{"max_relative_mismatch", worst}};
      Suite::judge(r);
    }

    {
      const std::string name = tagged("derivative_trace_bound", {{"alpha", alpha}});
      auto& r = s.add(name, 0.0, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      std::vector<FamilyMember> probes{
          {"1", AnalyticFunction::constant(1.0)},
          {"chi_1^D", chi_dirichlet(1, d)},
          {"e^{x/d}", AnalyticFunction::exponential(1.0, cplx(0.0, -1.0 / d))}};
      for (int i = 0; i < 5; ++i)
        probes.push_back({"random #" + std::to_string(i), gen.next_analytic()});
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& m : probes)
        for (double eps : {0.1, 1.0, 10.0}) {
          const BoundCheck b = lemma1_bound_check(m.f, alpha, eps, grid);
          if (b.slack < worst) {
            worst = b.slack;
            r.witness = m.label + ", eps=" + format_number(eps);
          }
        }
      r.residuals = {{"negative_slack", std::max(0.0, -worst)}};
      r.note = "smallest slack " + format_number(worst);
      Suite::judge(r);
    }

    if (!degenerate) {
      auto& r = s.add(tagged("gauge_transform", {{"alpha", alpha}}), tol, params);
      GaugeResiduals worst;
      for (std::size_t j = 0; j <= 10; ++j) {
        const GaugeResiduals g = gauge_transform_residual(j, p, grid);
        worst.boundary = std::max(worst.boundary, g.boundary);
        worst.equation = std::max(worst.equation, g.equation);
        worst.reality = std::max(worst.reality, g.reality);
      }
      r.residuals = {{"equation", worst.equation}};
      Suite::judge(r);

      auto& b = s.add(tagged("gauge_neumann_boundary", {{"alpha", alpha}}), 1e-10, params);
      b.residuals = {{"boundary_slope", worst.boundary}};
      Suite::judge(b);

      auto& q = s.add(tagged("gauge_reality", {{"alpha", alpha}}), kExact, params);
      q.residuals = {{"imag_energy_times_gradient", worst.reality}};
      Suite::judge(r);
    }
  }
}

void run_expansions_suite(Suite& s, const Grid& grid) {
  const SuiteOptions& o = s.opts();
  const double d = o.d;
  const double tol = o.quadrature_tolerance;

  {
    const std::string name = "parseval";
    auto& r = s.add(name, tol, {{"d", d}, {"n", double(o.n)}});
    BandLimitedSampler gen(grid, 20, s.seed_for(name));
    double overshoot = 0.0, decrease = 0.0, gap = 0.0;
    for (int i = 0; i < 3; ++i) {
      const GridFunction psi = gen.next();
      const double n2 = std::norm(norm(psi));
      ParsevalSums prev{};
      for (std::size_t j_max : {5, 10, 20, 50, 100, 200}) {
        const ParsevalSums ps = parseval_check(psi, j_max);
        overshoot = std::max({overshoot, ps.neumann / n2 - 1.0, ps.dirichlet / n2 - 1.0});
        decrease = std::max({decrease, (prev.neumann - ps.neumann) / n2,
                             (prev.dirichlet - ps.dirichlet) / n2});
        prev = ps;
      }
      gap = std::max({gap, 1.0 - prev.neumann / n2, 1.0 - prev.dirichlet / n2});
    }
    const double const_neumann =
        parseval_check(GridFunction::constant(grid, 1.0), 0).neumann;
    r.residuals = {{"overshoot", std::max(0.0, overshoot)},
                   {"decrease", std::max(0.0, decrease)},
                   {"constant_mode_error", std::abs(const_neumann - d) / d}};
    r.note = "relative gap to ||psi||^2 at j_max = 200: " + format_number(gap);
    Suite::judge(r);
  }

  {
    auto& r = s.add("sine_series_sum", 1e-3, {{"d", d}});
    double final_err = 0.0;
    int non_decreasing = 0;
    for (double frac : {0.25, 0.5, 0.75}) {
      const double x = frac * d;
      double prev = std::numeric_limits<double>::infinity();
      for (std::size_t J : {100, 1000, 10000}) {
        const double err = std::abs(lemma2_partial_sum(x, J, d) + x / d);
        if (!(err < prev)) {
          ++non_decreasing;
          r.witness = "x=" + format_number(x) + ", J=" + std::to_string(J);
        }
        prev = err;
      }
      final_err = std::max(final_err, prev);
    }
    r.residuals = {{"error_at_J_1e4", final_err}, {"non_decreasing_steps", double(non_decreasing)}};
    Suite::judge(r);
  }

  {
    auto& r = s.add("sine_series_endpoint", 0.0, {{"d", d}});
    r.residuals = {{"partial_sum_at_d", std::abs(lemma2_partial_sum(d, 10000, d))}};
    r.status = CheckStatus::info;
    r.note = "every term vanishes at x = d while -x/d = -1 there; convergence is only tested "
             "on interior points";
  }

  for (double alpha : o.alphas) {
    const ModelParams p{alpha, 0.0, d};
    if (check_nondegenerate(p).degenerate) continue;
    const std::vector<std::pair<std::string, double>> params{
        {"alpha", alpha}, {"d", d}, {"n", double(o.n)}};

    {
      auto& r = s.add(tagged("norm_difference", {{"alpha", alpha}}), tol, params);
      double worst = 0.0;
      for (std::size_t j = 1; j <= o.j_max; ++j) {
        const Comparison c = norm_difference_check(j, p, grid);
        const double v = alpha == 0.0 ? c.abs_error() : c.rel_error();
        if (v > worst) {
          worst = v;
          r.witness = "j=" + std::to_string(j);
        }
      }
      r.residuals = {{"max_error", worst}};
      Suite::judge(r);
    }

    if (alpha != 0.0) {
      // O(j^-2) decay: value(5) / value(10) tends to 4.
      auto& r = s.add(tagged("norm_difference_decay", {{"alpha", alpha}}), 0.25, params);
      const double ratio =
          norm_difference_check(5, p, grid).measured / norm_difference_check(10, p, grid).measured;
      r.residuals = {{"relative_offset_from_4", std::abs(ratio / 4.0 - 1.0)}};
      r.note = "value(5)/value(10) = " + format_number(ratio);
      Suite::judge(r);
    }

    {
      const std::string name = tagged("biorthonormal_expansion", {{"alpha", alpha}});
      auto& r = s.add(name, 1e-2, params);
      BandLimitedSampler gen(grid, 20, s.seed_for(name));
      const GridFunction psi = gen.next();
      int increases = 0;
      double last = 0.0;
      for (ExpansionBasis basis : {ExpansionBasis::psi, ExpansionBasis::phi}) {
        double prev = std::numeric_limits<double>::infinity();
        for (std::size_t J : {25, 50, 100, 200}) {
          const double v = expansion_residual(psi, alpha, J, basis).residual / norm(psi);
          if (!(v < prev) && v > tol) ++increases;
          prev = v;
        }
        last = std::max(last, prev);
      }
      const GridFunction one = GridFunction::constant(grid, 1.0);
      const double constant =
          expansion_residual(one, alpha, 200, ExpansionBasis::psi).residual / norm(one);
      r.residuals = {{"residual_at_200", last},
                     {"constant_residual_at_200", constant},
                     {"increases", double(increases)}};
      Suite::judge(r);
    }

    {
      auto& r = s.add(tagged("expansion_single_mode", {{"alpha", alpha}}), tol, params);
      const GridFunction psi4 = psi_eigenfunction(4, p).sample(grid);
      const Expansion e = expansion_residual(psi4, alpha, 10, ExpansionBasis::psi);
      double coeff = 0.0;
      for (std::size_t j = 0; j < e.coefficients.size(); ++j)
        coeff = std::max(coeff, std::abs(e.coefficients[j] - (j == 4 ? 1.0 : 0.0)));
      r.residuals = {{"residual", e.residual / norm(psi4)}, {"coefficient_error", coeff}};
      Suite::judge(r);
    }
  }
}

}  // namespace

VerificationReport run_all(const SuiteOptions& options) {
  std::vector<std::string> selected = options.suites;
  if (selected.empty() || std::find(selected.begin(), selected.end(), "all") != selected.end())
    selected = suite_names();
  for (const auto& name : selected)
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end())
      throw std::invalid_argument("unknown suite: " + name);

  const Grid grid(options.d, options.n);
  VerificationReport report;
  report.seed = options.seed;

  using Runner = void (*)(Suite&, const Grid&);
  const std::vector<std::pair<std::string, Runner>> runners{
      {"spectrum", run_spectrum_suite},
      {"metric", run_metric_suite},
      {"forms", run_forms_suite},
      {"expansions", run_expansions_suite}};
  for (const auto& [name, run] : runners) {
    if (std::find(selected.begin(), selected.end(), name) == selected.end()) continue;
    Suite suite(report, options, name);
    run(suite, grid);
  }
  return report;
}

}  // namespace ptrobin
