#include "ptrobin/random_functions.hpp"

#include <cmath>

namespace ptrobin {

namespace {

cplx draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  const double im = u(rng);
  return {re, im};
}

}  // namespace

BandLimitedSampler::BandLimitedSampler(const Grid& grid, std::size_t max_mode,
                                       std::uint64_t seed)
    : grid_(grid), max_mode_(max_mode), rng_(seed) {
  const double d = grid.length();
  modes_.reserve(2 * max_mode + 1);
  for (std::size_t j = 0; j <= max_mode; ++j) {
    for (int sine = 0; sine < (j == 0 ? 1 : 2); ++sine) {
      std::vector<double> m(grid.size());
      const double k = wavenumber(j, d);
      for (std::size_t i = 0; i < m.size(); ++i) {
        const double x = grid.node(i);
        if (j == 0)
          m[i] = std::sqrt(1.0 / d);
        else
          m[i] = std::sqrt(2.0 / d) * (sine ? std::sin(k * x) : std::cos(k * x));
      }
      modes_.push_back(std::move(m));
    }
  }
}

std::vector<cplx> BandLimitedSampler::draw_coefficients() {
  std::vector<cplx> c(modes_.size());
  for (auto& v : c) v = draw(rng_);
  return c;
}

GridFunction BandLimitedSampler::next() {
  const std::vector<cplx> c = draw_coefficients();
  std::vector<cplx> v(grid_.size());
  for (std::size_t m = 0; m < modes_.size(); ++m)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c[m] * modes_[m][i];
  return GridFunction(grid_, std::move(v));
}

AnalyticFunction BandLimitedSampler::next_analytic() {
  const std::vector<cplx> c = draw_coefficients();
  const double d = grid_.length();
  AnalyticFunction f = c[0] * chi_neumann(0, d);
  std::size_t m = 1;
  for (std::size_t j = 1; j <= max_mode_; ++j) {
    f = f + c[m++] * chi_neumann(j, d);
    f = f + c[m++] * chi_dirichlet(j, d);
  }
  return f;
}

AnalyticFunction random_eigen_combination(const ModelParams& params, std::size_t max_j,
                                          std::mt19937_64& rng) {
  AnalyticFunction f;
  for (std::size_t j = 0; j <= max_j; ++j) f = f + draw(rng) * psi_eigenfunction(j, params);
  return f;
}

}  // namespace ptrobin
