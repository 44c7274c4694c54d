#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>

#include "ptrobin/analytic.hpp"

namespace ptrobin {

/// Physical parameters of the Robin Laplacian on (0, d). beta only enters
/// the generalized eigenvalue equation; everything else assumes beta == 0.
struct ModelParams {
  double alpha = 0.0;
  double beta = 0.0;
  double d = 0.0;

  /// Throws std::invalid_argument on d <= 0 or non-finite entries.
  void validate() const;
};

/// alpha d / pi equal to a non-zero integer m (fractional part within 1e-12).
struct DegeneracyFlag {
  bool degenerate = false;
  long long multiple = 0;
};

DegeneracyFlag check_nondegenerate(const ModelParams& params);

class DegenerateAlphaError : public std::domain_error {
 public:
  explicit DegenerateAlphaError(DegeneracyFlag flag);
  const DegeneracyFlag& flag() const { return flag_; }

 private:
  DegeneracyFlag flag_;
};

/// Throws DegenerateAlphaError when alpha d / pi is a non-zero integer.
void require_nondegenerate(const ModelParams& params);

/// k_j = j pi / d.
double wavenumber(std::size_t j, double d);

/// alpha^2 for j = 0, (j pi / d)^2 otherwise.
double eigenvalue(std::size_t j, const ModelParams& params);

/// Index, energy and the biorthonormal normalization pair.
///
/// b follows the simple choice sqrt(1/d), sqrt(2/d); a is then fixed by
/// (phi_j, psi_j) = 1. k is empty on the j = 0 branch, whose energy is
/// alpha^2 rather than a Laplacian mode.
struct SpectralPair {
  std::size_t j = 0;
  std::optional<double> k;
  double eigenvalue = 0.0;
  cplx a;
  cplx b;
};

/// Throws DegenerateAlphaError for degenerate alpha (a_j diverges there).
SpectralPair spectral_pair(std::size_t j, const ModelParams& params);

/// Normalized Neumann mode: sqrt(1/d) for j = 0, sqrt(2/d) cos(k_j x) else.
AnalyticFunction chi_neumann(std::size_t j, double d);
/// Normalized Dirichlet mode sqrt(2/d) sin(k_j x); j >= 1.
AnalyticFunction chi_dirichlet(std::size_t j, double d);

/// Eigenfunction of H_alpha (boundary condition psi' + i alpha psi = 0 at
/// both ends), normalized so that (phi_j, psi_k) = delta_jk.
AnalyticFunction psi_eigenfunction(std::size_t j, const ModelParams& params);

/// Eigenfunction of the adjoint H_{-alpha}:
/// sqrt(1/d) e^{i alpha x} for j = 0, chi_j^N + i (alpha / k_j) chi_j^D else.
AnalyticFunction phi_eigenfunction(std::size_t j, const ModelParams& params);

/// Unnormalized ground-state direction e^{-i alpha x}. Defined for every
/// alpha, including the degenerate ones where psi_0 cannot be normalized.
AnalyticFunction ground_state_direction(const ModelParams& params);

}  // namespace ptrobin
