#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ptrobin/analytic.hpp"
#include "ptrobin/grid.hpp"
#include "ptrobin/metric.hpp"
#include "ptrobin/spectrum.hpp"

namespace ptrobin {

/// Thrown when a test function does not satisfy the Robin conditions
/// psi' + i alpha psi = 0 at 0 and d, i.e. is not in the operator domain.
class NotInDomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Largest boundary-condition defect |psi' + i sign alpha psi| over both
/// ends, relative to the size of the boundary data. sign = +1 checks the
/// domain of H_alpha, sign = -1 that of the adjoint.
double robin_defect(const AnalyticFunction& psi, double alpha, double d, double sign = 1.0);

/// || H_{-alpha} Theta psi - Theta H_alpha psi || / || psi ||.
///
/// The left term uses -(Theta psi)'' = -psi'' - 2i alpha psi' + alpha^2 psi
/// + alpha^2 phi_0 (phi_0, psi), the right term applies the closed-form
/// Theta to the exact samples of -psi''. Throws NotInDomainError when psi
/// violates the boundary conditions by more than 1e-10.
double quasi_hermiticity_residual(const AnalyticFunction& psi, const Grid& grid,
                                  double alpha);

/// |(Theta psi)'(x) - i alpha (Theta psi)(x)| summed over x = 0, d.
double adjoint_domain_residual(const AnalyticFunction& psi, const Grid& grid,
                               double alpha);

/// h_alpha(phi, psi) = (phi', psi') + i alpha conj(phi(d)) psi(d)
///                     - i alpha conj(phi(0)) psi(0).
cplx sesquilinear_form(const AnalyticFunction& phi, const AnalyticFunction& psi,
                       double alpha, const Grid& grid);

struct BoundCheck {
  double lhs = 0.0;    ///< |Im h[psi]|
  double rhs = 0.0;    ///< alpha^2 ||psi||^2 / eps + eps Re h[psi]
  double slack = 0.0;  ///< rhs - lhs
  bool holds() const { return slack >= 0.0; }
};

/// Relative bound of Im h by Re h for a given eps > 0.
BoundCheck lemma1_bound_check(const AnalyticFunction& psi, double alpha, double eps,
                              const Grid& grid);

struct MatrixDeviation {
  std::size_t size = 0;
  std::vector<cplx> entries;  ///< row-major, (phi_j, psi_k)
  double max_deviation = 0.0;
  cplx at(std::size_t j, std::size_t k) const { return entries[j * size + k]; }
};

/// (phi_j, psi_k) for j, k <= j_max and its largest distance from delta_jk.
MatrixDeviation biorthonormality_matrix(const ModelParams& params, const Grid& grid,
                                        std::size_t j_max);

struct ParsevalSums {
  double neumann = 0.0;
  double dirichlet = 0.0;
};

/// Partial sums of |(chi_j^N, psi)|^2 (j = 0..j_max) and |(chi_j^D, psi)|^2
/// (j = 1..j_max).
ParsevalSums parseval_check(const GridFunction& psi, std::size_t j_max);

/// sum_{j=1}^{terms} chi_j^D(x) chi_j^N(d) / k_j, which tends to -x/d on [0, d).
double lemma2_partial_sum(double x, std::size_t terms, double d);

enum class ExpansionBasis { psi, phi };

/// c_j = (phi_j, psi) for the psi basis, (psi_j, psi) for the phi basis.
using ExpansionCoefficients = std::vector<cplx>;

struct Expansion {
  double residual = 0.0;
  ExpansionCoefficients coefficients;
};

/// || psi - sum_{j <= j_max} f_j c_j || for f = psi_j (psi basis) or phi_j.
Expansion expansion_residual(const GridFunction& psi, double alpha, std::size_t j_max,
                             ExpansionBasis basis);

struct Comparison {
  double measured = 0.0;
  double formula = 0.0;
  double abs_error() const;
  double rel_error() const;
};

/// ||psi_j - chi_j^N||^2 against alpha^2 (k^2 + alpha^2) / (k^2 - alpha^2)^2.
Comparison norm_difference_check(std::size_t j, const ModelParams& params, const Grid& grid);

/// |(phi_0, psi)| / ||psi|| for psi = e^{-i alpha x} against |sin(alpha d)/(alpha d)|.
Comparison phi0_projection_identity(const ModelParams& params, const Grid& grid);

struct GaugeResiduals {
  double boundary = 0.0;  ///< |phi'(0)| + |phi'(d)|
  double equation = 0.0;  ///< ||-phi'' + 2i alpha phi' + alpha^2 phi - k^2 phi|| / ||phi||
  double reality = 0.0;   ///< |Im k^2| ||phi'||^2
};

/// Checks for phi = phi_0 psi_j, which solves a Neumann problem with the
/// same eigenvalue.
GaugeResiduals gauge_transform_residual(std::size_t j, const ModelParams& params,
                                        const Grid& grid);

// ---------------------------------------------------------------------------
// Report

enum class CheckStatus { pass, fail, info, skipped };

const char* to_string(CheckStatus status);

struct CheckRecord {
  std::string name;
  std::string suite;
  std::vector<std::pair<std::string, double>> parameters;
  std::vector<std::pair<std::string, double>> residuals;
  double tolerance = 0.0;
  CheckStatus status = CheckStatus::pass;
  std::string witness;
  std::string note;
};

struct VerificationReport {
  std::vector<CheckRecord> checks;
  std::uint64_t seed = 0;

  std::size_t count(CheckStatus status) const;
  bool all_passed() const { return count(CheckStatus::fail) == 0; }
};

struct SuiteOptions {
  double d = 3.14159265358979323846;
  std::size_t n = 4096;
  std::vector<double> alphas{0.0, 0.3, 0.5, 0.9};
  /// alpha d / pi = 1; only the positivity-failure checks run here.
  bool degenerate_probe = true;
  std::vector<double> betas{0.0, 1.0};
  std::size_t j_max = 20;
  std::size_t series_cutoff = 1000;
  std::uint64_t seed = 20060424;
  /// Tolerance for quadrature-limited residuals.
  double quadrature_tolerance = 1e-8;
  /// Empty or "all" runs every suite; otherwise any of
  /// spectrum, metric, forms, expansions.
  std::vector<std::string> suites;
};

/// Names accepted in SuiteOptions::suites.
const std::vector<std::string>& suite_names();

/// Runs every selected check. Deterministic for a given options value.
/// Throws std::invalid_argument on unknown suite names.
VerificationReport run_all(const SuiteOptions& options);

}  // namespace ptrobin
