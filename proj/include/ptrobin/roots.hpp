#pragma once

#include <cstddef>
#include <vector>

#include "ptrobin/spectrum.hpp"

namespace ptrobin {

/// Eigenvalue condition of the two-parameter model, k^2 being the energy:
///
///   F(k) = [k^2 - (alpha^2 + beta^2)] sin(kd) - 2 beta k cos(kd).
///
/// This is exactly the condition for -psi'' = k^2 psi with
/// psi'(0) + (i alpha - beta) psi(0) = 0 and psi'(d) + (i alpha + beta) psi(d) = 0.
/// For beta = 0 it reduces to (k^2 - alpha^2) sin(kd).
cplx characteristic(cplx k, const ModelParams& params);
cplx characteristic_derivative(cplx k, const ModelParams& params);

/// |F(k)|, the root-quality metric used everywhere.
double eigen_residual(cplx k, const ModelParams& params);

enum class RootStatus { resolved, unresolved };

struct GeneralEigenvalue {
  cplx k;    ///< representative wavenumber (Re k >= 0, Im k >= 0 for the upper member)
  cplx k2;   ///< the energy
  double residual = 0.0;  ///< |F(k)|
  RootStatus status = RootStatus::resolved;
};

struct RootSearchResult {
  /// Sorted by (Re k2, Im k2).
  std::vector<GeneralEigenvalue> eigenvalues;
  /// Argument-principle count of eigenvalues with |k| < contour_radius.
  std::size_t contour_count = 0;
  double contour_radius = 0.0;
  std::size_t real_count = 0;
  std::size_t complex_count = 0;
  std::size_t unresolved_count = 0;
  /// Asymptotic estimate k_max d / pi of the number of modes below k_max.
  double expected_density = 0.0;

  bool complete() const { return unresolved_count == 0; }
};

struct RootSearchOptions {
  double k_max = 10.0;
  /// When false the complex Newton search is skipped; a contour deficit is
  /// then reported as unresolved entries.
  bool expect_complex = true;
  int max_newton_iterations = 100;
};

/// All eigenvalues k^2 with |k| <= k_max: real positive ones by sign-change
/// bracketing of F on a mesh of step pi / (8d) plus bisection and Newton
/// polish, non-positive ones on the imaginary k axis likewise, and complex
/// pairs by Newton in the complex k-plane whenever the argument-principle
/// count exceeds what the real search found.
RootSearchResult general_eigenvalues(const ModelParams& params,
                                     const RootSearchOptions& options);

inline RootSearchResult general_eigenvalues(const ModelParams& params,
                                            double k_max,
                                            bool expect_complex = true) {
  return general_eigenvalues(params, {k_max, expect_complex, 100});
}

}  // namespace ptrobin
