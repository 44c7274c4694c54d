#include "ptrobin/metric.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ptrobin {

namespace {

constexpr cplx kI{0.0, 1.0};

void require_matching_length(const Grid& grid, const MetricConfig& cfg) {
  if (std::abs(grid.length() - cfg.d) > 1e-12 * cfg.d)
    throw std::invalid_argument("grid length does not match metric d");
}

GridFunction phi0_samples(const Grid& grid, double alpha) {
  const double c = std::sqrt(1.0 / grid.length());
  return GridFunction::from_callable(
      grid, [&](double x) { return c * std::exp(kI * (alpha * x)); });
}

// Accumulates sum_j f_j (f_j, psi) for the modes produced by make_mode(j),
// remembering the partial sum ten terms before the end.
template <typename ModeFn>
SeriesApplication spectral_sum(const GridFunction& psi, std::size_t cutoff,
                               ModeFn&& make_mode) {
  const Grid& grid = psi.grid();
  std::vector<cplx> sum(grid.size());
  std::vector<cplx> before_tail(grid.size());
  const std::size_t tail_start = cutoff >= 10 ? cutoff - 9 : 0;
  for (std::size_t j = 0; j <= cutoff; ++j) {
    if (j == tail_start) before_tail = sum;
    const GridFunction mode = make_mode(j);
    const cplx c = inner_product(mode, psi);
    auto m = mode.values();
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += c * m[i];
  }
  std::vector<cplx> tail(grid.size());
  for (std::size_t i = 0; i < tail.size(); ++i) tail[i] = sum[i] - before_tail[i];
  return {GridFunction(grid, std::move(sum)), norm(GridFunction(grid, std::move(tail)))};
}

// a cos(k x) + b sin(k x) on the grid with real trig calls.
GridFunction trig_mode(const Grid& grid, double k, cplx a, cplx b) {
  return GridFunction::from_callable(grid, [&](double x) {
    return a * std::cos(k * x) + b * std::sin(k * x);
  });
}

}  // namespace

void MetricConfig::validate() const {
  if (!(d > 0.0) || !std::isfinite(d)) throw std::invalid_argument("d must be positive");
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  if (series_cutoff < 1) throw std::invalid_argument("series cutoff must be >= 1");
}

GridFunction theta0_apply(const GridFunction& psi) {
  const double d = psi.grid().length();
  return GridFunction::constant(psi.grid(), -integral(psi) / d);
}

GridFunction theta1_apply(const GridFunction& psi) {
  const Grid& grid = psi.grid();
  const double d = grid.length();
  const GridFunction j1 = cumulative_integral(psi);
  const cplx j1_end = j1.back();
  const cplx j2_end = integral(j1);
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = 2.0 * j1[i] - (grid.node(i) / d) * j1_end - j2_end / d;
  return GridFunction(grid, std::move(out));
}

GridFunction theta2_apply(const GridFunction& psi) {
  const Grid& grid = psi.grid();
  const double d = grid.length();
  const GridFunction j2 = cumulative_integral(cumulative_integral(psi));
  const cplx j2_end = j2.back();
  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = -j2[i] + (grid.node(i) / d) * j2_end;
  return GridFunction(grid, std::move(out));
}

GridFunction theta_apply_closed(const GridFunction& psi, const MetricConfig& cfg) {
  cfg.validate();
  const Grid& grid = psi.grid();
  require_matching_length(grid, cfg);
  const double alpha = cfg.alpha;
  const double d = grid.length();

  // One pass of J and J^2 shared by all three pieces.
  const GridFunction j1 = cumulative_integral(psi);
  const GridFunction j2 = cumulative_integral(j1);
  const cplx j1_end = j1.back();
  const cplx j2_end = j2.back();

  const GridFunction phi0 = phi0_samples(grid, alpha);
  const cplx proj = inner_product(phi0, psi);

  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double s = grid.node(i) / d;
    const cplx t0 = -j1_end / d;
    const cplx t1 = 2.0 * j1[i] - s * j1_end - j2_end / d;
    const cplx t2 = -j2[i] + s * j2_end;
    out[i] = psi[i] + phi0[i] * proj + t0 + kI * alpha * t1 + alpha * alpha * t2;
  }
  return GridFunction(grid, std::move(out));
}

GridFunction theta_derivative_closed(const AnalyticFunction& psi, const Grid& grid,
                                     const MetricConfig& cfg) {
  cfg.validate();
  require_matching_length(grid, cfg);
  const double alpha = cfg.alpha;
  const double d = grid.length();
  const GridFunction values = psi.sample(grid);
  const GridFunction slope = psi.derivative().sample(grid);
  const GridFunction j1 = cumulative_integral(values);
  const cplx j1_end = j1.back();
  const cplx j2_end = integral(j1);
  const GridFunction phi0 = phi0_samples(grid, alpha);
  const cplx proj = inner_product(phi0, values);

  std::vector<cplx> out(grid.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = slope[i] + kI * alpha * phi0[i] * proj +
             kI * alpha * (2.0 * values[i] - j1_end / d) +
             alpha * alpha * (-j1[i] + j2_end / d);
  }
  return GridFunction(grid, std::move(out));
}

SeriesApplication theta_apply_series(const GridFunction& psi, const MetricConfig& cfg) {
  cfg.validate();
  require_matching_length(psi.grid(), cfg);
  require_nondegenerate(cfg.model());
  const Grid& grid = psi.grid();
  const double d = grid.length();
  const double alpha = cfg.alpha;
  return spectral_sum(psi, cfg.series_cutoff, [&](std::size_t j) {
    if (j == 0) return phi0_samples(grid, alpha);
    const double k = wavenumber(j, d);
    const double b = std::sqrt(2.0 / d);
    return trig_mode(grid, k, b, kI * b * (alpha / k));
  });
}

SeriesApplication theta_inverse_series(const GridFunction& psi, const MetricConfig& cfg) {
  cfg.validate();
  require_matching_length(psi.grid(), cfg);
  const ModelParams model = cfg.model();
  require_nondegenerate(model);
  const Grid& grid = psi.grid();
  const double alpha = cfg.alpha;
  return spectral_sum(psi, cfg.series_cutoff, [&](std::size_t j) {
    const SpectralPair p = spectral_pair(j, model);
    if (j == 0)
      return GridFunction::from_callable(
          grid, [&](double x) { return p.a * std::exp(-kI * (alpha * x)); });
    const double k = *p.k;
    return trig_mode(grid, k, p.a, -kI * p.a * (alpha / k));
  });
}

double quadratic_form(const GridFunction& psi, const MetricConfig& cfg) {
  cfg.validate();
  const Grid& grid = psi.grid();
  require_matching_length(grid, cfg);
  const GridFunction phi0 = phi0_samples(grid, cfg.alpha);
  const GridFunction g = axpy(psi, kI * cfg.alpha, cumulative_integral(psi));
  const GridFunction chi0 = GridFunction::constant(grid, std::sqrt(1.0 / grid.length()));
  const double g_norm = norm(g);
  return std::norm(inner_product(phi0, psi)) + g_norm * g_norm -
         std::norm(inner_product(chi0, g));
}

double norm_bound_coefficient(const MetricConfig& cfg) {
  const double ad = std::abs(cfg.alpha) * cfg.d;
  return 3.0 + 4.0 * ad + 2.0 * ad * ad;
}

}  // namespace ptrobin
