#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "ptrobin/analytic.hpp"
#include "ptrobin/grid.hpp"
#include "ptrobin/spectrum.hpp"

namespace ptrobin {

/// Seeded source of band-limited functions
/// sum_{j <= max_mode} a_j chi_j^N + b_j chi_j^D with a_j, b_j uniform in
/// the unit square. The mode samples are computed once per grid.
class BandLimitedSampler {
 public:
  BandLimitedSampler(const Grid& grid, std::size_t max_mode, std::uint64_t seed);

  GridFunction next();
  /// Same distribution, closed form (for checks that need derivatives).
  AnalyticFunction next_analytic();

  const Grid& grid() const { return grid_; }

 private:
  std::vector<cplx> draw_coefficients();

  Grid grid_;
  std::size_t max_mode_;
  std::mt19937_64 rng_;
  std::vector<std::vector<double>> modes_;  // chi_0^N, chi_1^N, chi_1^D, ...
};

/// Random complex combination sum_{j <= max_j} c_j psi_j of eigenfunctions
/// of H_alpha, hence an exact member of its operator domain.
AnalyticFunction random_eigen_combination(const ModelParams& params, std::size_t max_j,
                                          std::mt19937_64& rng);

}  // namespace ptrobin
