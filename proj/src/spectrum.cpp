#include "ptrobin/spectrum.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ptrobin {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kDegeneracyTolerance = 1e-12;

// sin(t) / t, with the removable singularity filled in.
double sinc(double t) {
  if (std::abs(t) < 1e-4) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

}  // namespace

void ModelParams::validate() const {
  if (!std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("alpha and beta must be finite");
  if (!(d > 0.0) || !std::isfinite(d))
    throw std::invalid_argument("d must be positive and finite");
}

DegeneracyFlag check_nondegenerate(const ModelParams& params) {
  params.validate();
  const double ratio = params.alpha * params.d / std::numbers::pi;
  const double nearest = std::round(ratio);
  if (nearest != 0.0 && std::abs(ratio - nearest) <= kDegeneracyTolerance)
    return {true, static_cast<long long>(nearest)};
  return {false, 0};
}

DegenerateAlphaError::DegenerateAlphaError(DegeneracyFlag flag)
    : std::domain_error("degenerate alpha: alpha d / pi = " +
                        std::to_string(flag.multiple)),
      flag_(flag) {}

void require_nondegenerate(const ModelParams& params) {
  if (const auto flag = check_nondegenerate(params); flag.degenerate)
    throw DegenerateAlphaError(flag);
}

double wavenumber(std::size_t j, double d) {
  return static_cast<double>(j) * std::numbers::pi / d;
}

double eigenvalue(std::size_t j, const ModelParams& params) {
  params.validate();
  if (j == 0) return params.alpha * params.alpha;
  const double k = wavenumber(j, params.d);
  return k * k;
}

SpectralPair spectral_pair(std::size_t j, const ModelParams& params) {
  require_nondegenerate(params);
  const double d = params.d;
  const double alpha = params.alpha;
  SpectralPair p;
  p.j = j;
  p.eigenvalue = eigenvalue(j, params);
  if (j == 0) {
    // 1 = a conj(b) (1 - e^{-2i alpha d}) / (2i alpha)
    //   = a conj(b) d e^{-i alpha d} sinc(alpha d)
    p.b = std::sqrt(1.0 / d);
    p.a = std::exp(kI * (alpha * d)) / (std::sqrt(d) * sinc(alpha * d));
    return p;
  }
  const double k = wavenumber(j, d);
  p.k = k;
  p.b = std::sqrt(2.0 / d);
  p.a = std::sqrt(2.0 / d) * k * k / (k * k - alpha * alpha);
  return p;
}

AnalyticFunction chi_neumann(std::size_t j, double d) {
  if (j == 0) return AnalyticFunction::constant(std::sqrt(1.0 / d));
  return AnalyticFunction::cosine(std::sqrt(2.0 / d), wavenumber(j, d));
}

AnalyticFunction chi_dirichlet(std::size_t j, double d) {
  if (j == 0) throw std::invalid_argument("Dirichlet modes start at j = 1");
  return AnalyticFunction::sine(std::sqrt(2.0 / d), wavenumber(j, d));
}

AnalyticFunction psi_eigenfunction(std::size_t j, const ModelParams& params) {
  const SpectralPair p = spectral_pair(j, params);
  if (j == 0) return AnalyticFunction::exponential(p.a, -params.alpha);
  const double k = *p.k;
  return AnalyticFunction::cosine(p.a, k) +
         AnalyticFunction::sine(-kI * p.a * (params.alpha / k), k);
}

AnalyticFunction phi_eigenfunction(std::size_t j, const ModelParams& params) {
  params.validate();
  const double d = params.d;
  if (j == 0)
    return AnalyticFunction::exponential(std::sqrt(1.0 / d), params.alpha);
  const double k = wavenumber(j, d);
  return chi_neumann(j, d) + (kI * (params.alpha / k)) * chi_dirichlet(j, d);
}

AnalyticFunction ground_state_direction(const ModelParams& params) {
  params.validate();
  return AnalyticFunction::exponential(1.0, -params.alpha);
}

}  // namespace ptrobin
