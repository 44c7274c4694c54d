#pragma once

#include <cstddef>

#include "ptrobin/analytic.hpp"
#include "ptrobin/grid.hpp"
#include "ptrobin/spectrum.hpp"

namespace ptrobin {

/// Parameters of Theta(alpha). series_cutoff is only read by the series
/// variants.
struct MetricConfig {
  double alpha = 0.0;
  double d = 0.0;
  std::size_t series_cutoff = 1000;

  void validate() const;
  ModelParams model() const { return {alpha, 0.0, d}; }
};

/// Theta_0 psi = -(1/d) (J psi)(d), a constant function.
GridFunction theta0_apply(const GridFunction& psi);
/// Theta_1 psi = 2 J psi - (x/d) (J psi)(d) - (1/d) (J^2 psi)(d).
GridFunction theta1_apply(const GridFunction& psi);
/// Theta_2 psi = -J^2 psi + (x/d) (J^2 psi)(d).
GridFunction theta2_apply(const GridFunction& psi);

/// Theta(alpha) psi = psi + phi_0 (phi_0, psi) + Theta_0 psi
///                    + i alpha Theta_1 psi + alpha^2 Theta_2 psi.
///
/// Computed for every alpha, degenerate or not; non-negativity holds
/// regardless, only strict positivity needs alpha d / pi outside Z \ {0}.
GridFunction theta_apply_closed(const GridFunction& psi, const MetricConfig& cfg);

/// (Theta psi)' on the grid from the exact psi' and the quadrature values of
/// J psi. Used to check that Theta maps into the adjoint domain.
GridFunction theta_derivative_closed(const AnalyticFunction& psi, const Grid& grid,
                                     const MetricConfig& cfg);

/// Truncated spectral sum plus the size of its last ten increments.
struct SeriesApplication {
  GridFunction value;
  double tail_norm = 0.0;
};

/// sum_{j <= cutoff} phi_j (phi_j, psi). Rejects degenerate alpha.
SeriesApplication theta_apply_series(const GridFunction& psi, const MetricConfig& cfg);

/// sum_{j <= cutoff} psi_j (psi_j, psi), the truncated inverse. Rejects
/// degenerate alpha.
SeriesApplication theta_inverse_series(const GridFunction& psi, const MetricConfig& cfg);

/// (psi, Theta psi) via |(phi_0, psi)|^2 + ||g||^2 - |(chi_0, g)|^2 with
/// g = psi + i alpha J psi.
double quadratic_form(const GridFunction& psi, const MetricConfig& cfg);

/// 3 + 4 |alpha| d + 2 alpha^2 d^2.
double norm_bound_coefficient(const MetricConfig& cfg);

}  // namespace ptrobin
