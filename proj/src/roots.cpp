#include "ptrobin/roots.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace ptrobin {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

double sigma(const ModelParams& p) { return p.alpha * p.alpha + p.beta * p.beta; }

// e^{-|Im z|} sin z and e^{-|Im z|} cos z; finite for any z.
void scaled_sin_cos(cplx z, cplx& s, cplx& c) {
  const double y = z.imag();
  const double ay = std::abs(y);
  if (std::abs(z) < 1.0) {
    const double scale = std::exp(-ay);
    s = std::sin(z) * scale;
    c = std::cos(z) * scale;
    return;
  }
  const cplx ep = std::polar(std::exp(-y - ay), z.real());
  const cplx em = std::polar(std::exp(y - ay), -z.real());
  s = (ep - em) / (2.0 * kI);
  c = 0.5 * (ep + em);
}

struct ScaledValue {
  cplx f;        // F(k) e^{-|Im kd|}
  cplx fprime;   // F'(k) e^{-|Im kd|}
  double log_scale;  // |Im kd|
};

ScaledValue scaled_characteristic(cplx k, const ModelParams& p) {
  const cplx z = k * p.d;
  cplx s, c;
  scaled_sin_cos(z, s, c);
  const double sg = sigma(p);
  const double b = p.beta;
  ScaledValue v;
  v.f = (k * k - sg) * s - 2.0 * b * k * c;
  v.fprime = 2.0 * k * s + (k * k - sg) * p.d * c - 2.0 * b * c +
             2.0 * b * k * p.d * s;
  v.log_scale = std::abs(z.imag());
  return v;
}

// G(E) = F(sqrt E) / sqrt E, entire in E, times e^{-|Im sqrt(E) d|}.
cplx scaled_reduced(cplx energy, const ModelParams& p) {
  const cplx w = std::sqrt(energy);
  const cplx z = w * p.d;
  cplx s, c;
  scaled_sin_cos(z, s, c);
  cplx sinc_part;
  if (std::abs(z) < 1e-3) {
    const cplx z2 = z * z;
    sinc_part = p.d * (1.0 - z2 / 6.0 + z2 * z2 / 120.0) * std::exp(-std::abs(z.imag()));
  } else {
    sinc_part = p.d * s / z;
  }
  return (energy - sigma(p)) * sinc_part - 2.0 * p.beta * c;
}

// G(k^2) for real k >= 0.
double real_axis(double k, const ModelParams& p) {
  const double z = k * p.d;
  const double sinc_part = std::abs(z) < 1e-4 ? p.d * (1.0 - z * z / 6.0) : std::sin(z) / k;
  return (k * k - sigma(p)) * sinc_part - 2.0 * p.beta * std::cos(z);
}

// G(-kappa^2) e^{-kappa d} for real kappa >= 0.
double imaginary_axis(double kappa, const ModelParams& p) {
  const double z = kappa * p.d;
  const double sinh_part = z < 1e-4 ? p.d * (1.0 + z * z / 6.0) * std::exp(-z)
                                    : -std::expm1(-2.0 * z) / (2.0 * kappa);
  const double cosh_part = 0.5 * (1.0 + std::exp(-2.0 * z));
  return (-kappa * kappa - sigma(p)) * sinh_part - 2.0 * p.beta * cosh_part;
}

template <typename Fn>
double bisect(Fn&& fn, double a, double b, double fa) {
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = fn(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Bisection down to a relative width of 1e-10, then safeguarded Newton on F.
double polish_real(const ModelParams& p, double a, double b, double fa) {
  auto g = [&](double k) { return real_axis(k, p); };
  for (int it = 0; it < 200 && (b - a) > 1e-10 * std::max(1.0, b); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = g(m);
    if (fm == 0.0) return m;
    if ((fm < 0.0) == (fa < 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  double k = 0.5 * (a + b);
  for (int it = 0; it < 20; ++it) {
    const ScaledValue v = scaled_characteristic(k, p);
    const double f = v.f.real();
    const double fp = v.fprime.real();
    if (f == 0.0 || fp == 0.0) break;
    const double next = k - f / fp;
    if (!(next >= a && next <= b)) return bisect(g, a, b, fa);
    const double step = std::abs(next - k);
    k = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, k)) break;
  }
  return k;
}

struct NewtonOutcome {
  cplx k;
  bool converged = false;
  double scaled_residual = std::numeric_limits<double>::infinity();
};

NewtonOutcome complex_newton(cplx k, const ModelParams& p, int max_iter,
                             double max_step) {
  NewtonOutcome out{k};
  for (int it = 0; it < max_iter; ++it) {
    const ScaledValue v = scaled_characteristic(k, p);
    out.k = k;
    out.scaled_residual = std::abs(v.f);
    if (v.f == cplx(0.0)) {
      out.converged = true;
      return out;
    }
    // Deflate the trivial zero F(0) = 0: Newton on F(k) / k.
    cplx step = std::abs(k) > 0.0 ? v.f / (v.fprime - v.f / k) : v.f / v.fprime;
    if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return out;
    if (std::abs(step) > max_step) step *= max_step / std::abs(step);
    k -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(k))) {
      const ScaledValue w = scaled_characteristic(k, p);
      out.k = k;
      out.scaled_residual = std::abs(w.f);
      out.converged = out.scaled_residual <= 1e-9 * (1.0 + std::norm(k));
      return out;
    }
  }
  return out;
}

// Winding of G along |E| = radius^2, refined until every phase step is
// below pi/4. min_modulus receives the smallest |G| seen (scaled).
long winding_number(const ModelParams& p, cplx center, double radius,
                    std::size_t samples, double& min_modulus) {
  auto eval = [&](double theta) {
    return scaled_reduced(center + std::polar(radius, theta), p);
  };
  min_modulus = std::numeric_limits<double>::infinity();
  double total = 0.0;
  const double dtheta = 2.0 * kPi / static_cast<double>(samples);

  struct Segment {
    double t0, t1;
    cplx g0, g1;
    int depth;
  };
  cplx g_prev = eval(0.0);
  min_modulus = std::abs(g_prev);
  for (std::size_t i = 0; i < samples; ++i) {
    const double t0 = dtheta * static_cast<double>(i);
    const double t1 = i + 1 == samples ? 2.0 * kPi : dtheta * static_cast<double>(i + 1);
    const cplx g1 = i + 1 == samples ? eval(0.0) : eval(t1);
    std::vector<Segment> stack{{t0, t1, g_prev, g1, 0}};
    while (!stack.empty()) {
      Segment s = stack.back();
      stack.pop_back();
      const double inc = std::arg(s.g1 / s.g0);
      if (std::abs(inc) > kPi / 4.0 && s.depth < 40) {
        const double tm = 0.5 * (s.t0 + s.t1);
        const cplx gm = eval(tm);
        min_modulus = std::min(min_modulus, std::abs(gm));
        stack.push_back({tm, s.t1, gm, s.g1, s.depth + 1});
        stack.push_back({s.t0, tm, s.g0, gm, s.depth + 1});
        continue;
      }
      total += inc;
    }
    min_modulus = std::min(min_modulus, std::abs(g1));
    g_prev = g1;
  }
  return std::lround(total / (2.0 * kPi));
}

bool same_energy(cplx a, cplx b) { return std::abs(a - b) <= 1e-8 * (1.0 + std::abs(a)); }

struct Candidate {
  cplx k2;
  RootStatus status = RootStatus::resolved;
  cplx k_iterate{};  // only for unresolved entries
};

}  // namespace

cplx characteristic(cplx k, const ModelParams& params) {
  const cplx z = k * params.d;
  return (k * k - sigma(params)) * std::sin(z) - 2.0 * params.beta * k * std::cos(z);
}

cplx characteristic_derivative(cplx k, const ModelParams& params) {
  const cplx z = k * params.d;
  const double sg = sigma(params);
  const double b = params.beta;
  return 2.0 * k * std::sin(z) + (k * k - sg) * params.d * std::cos(z) -
         2.0 * b * std::cos(z) + 2.0 * b * k * params.d * std::sin(z);
}

double eigen_residual(cplx k, const ModelParams& params) {
  return std::abs(characteristic(k, params));
}

RootSearchResult general_eigenvalues(const ModelParams& params,
                                     const RootSearchOptions& options) {
  params.validate();
  if (!(options.k_max > 0.0) || !std::isfinite(options.k_max))
    throw std::invalid_argument("k_max must be positive");
  const ModelParams& p = params;
  const double d = p.d;
  const double mesh = kPi / (8.0 * d);

  RootSearchResult result;
  result.expected_density = options.k_max * d / kPi;

  // Contour |k| = (N + 1/2) pi / d >= k_max, moved outward if it grazes a root.
  auto n_start = static_cast<long>(std::ceil(options.k_max * d / kPi));
  long contour = 0;
  double radius = 0.0;
  for (long n = std::max(1L, n_start);; ++n) {
    radius = (static_cast<double>(n) + 0.5) * kPi / d;
    double min_mod = 0.0;
    const auto samples = static_cast<std::size_t>(256 + 64 * n);
    contour = winding_number(p, 0.0, radius * radius, samples, min_mod);
    if (min_mod > 1e-6 * (1.0 + radius) || n > n_start + 8) break;
  }
  result.contour_count = static_cast<std::size_t>(std::max(0L, contour));
  result.contour_radius = radius;

  std::vector<Candidate> found;
  auto add_unique = [&](cplx e) {
    for (const auto& c : found)
      if (same_energy(c.k2, e)) return false;
    found.push_back({e});
    return true;
  };

  // E = 0.
  const double g0 = real_axis(0.0, p);
  const double g0_scale = 1.0 + sigma(p) * d + 2.0 * std::abs(p.beta);
  if (std::abs(g0) <= 1e-12 * g0_scale) add_unique(0.0);

  // Real k > 0 and imaginary k = i kappa, both on the same mesh up to the contour.
  const auto steps = static_cast<std::size_t>(std::ceil(radius / mesh));
  std::vector<double> real_vals(steps + 1), imag_vals(steps + 1);
  for (std::size_t i = 0; i <= steps; ++i) {
    const double t = std::min(radius, mesh * static_cast<double>(i));
    real_vals[i] = real_axis(t, p);
    imag_vals[i] = imaginary_axis(t, p);
  }
  for (std::size_t i = 1; i <= steps; ++i) {
    const double a = std::min(radius, mesh * static_cast<double>(i - 1));
    const double b = std::min(radius, mesh * static_cast<double>(i));
    // Real axis.
    if (real_vals[i] == 0.0) {
      add_unique(b * b);
    } else if (i > 1 || std::abs(g0) > 1e-12 * g0_scale) {
      if (real_vals[i - 1] != 0.0 && (real_vals[i - 1] < 0.0) != (real_vals[i] < 0.0)) {
        const double k = polish_real(p, a, b, real_vals[i - 1]);
        add_unique(k * k);
      }
    }
    // Imaginary axis.
    auto h = [&](double kappa) { return imaginary_axis(kappa, p); };
    if (imag_vals[i] == 0.0) {
      add_unique(-b * b);
    } else if (i > 1 || std::abs(g0) > 1e-12 * g0_scale) {
      if (imag_vals[i - 1] != 0.0 && (imag_vals[i - 1] < 0.0) != (imag_vals[i] < 0.0)) {
        const double kappa = bisect(h, a, b, imag_vals[i - 1]);
        add_unique(-kappa * kappa);
      }
    }
  }

  auto inside = [&](cplx e) { return std::abs(e) < radius * radius; };
  auto count_inside = [&]() {
    return static_cast<long>(std::count_if(found.begin(), found.end(),
                                           [&](const Candidate& c) { return inside(c.k2); }));
  };

  std::optional<NewtonOutcome> best_failure;
  auto try_seed = [&](cplx seed) {
    const NewtonOutcome o =
        complex_newton(seed, p, options.max_newton_iterations, 0.25 * radius);
    cplx e = o.k * o.k;
    const bool trivial_zero = std::abs(o.k) <= 1e-8 * (1.0 + radius);
    if (!o.converged || !inside(e) || trivial_zero) {
      if (!o.converged &&
          (!best_failure || o.scaled_residual < best_failure->scaled_residual))
        best_failure = o;
      return;
    }
    if (std::abs(e.imag()) <= 1e-12 * (1.0 + std::abs(e))) e = e.real();
    if (!add_unique(e) || e.imag() == 0.0) return;
    // Conjugate partner, polished on its own.
    const NewtonOutcome partner =
        complex_newton(std::conj(o.k), p, options.max_newton_iterations, 0.25 * radius);
    const cplx pe = partner.k * partner.k;
    if (partner.converged && std::abs(pe - std::conj(e)) <= 1e-9 * (1.0 + std::abs(e)))
      found.push_back({pe});
    else
      found.push_back({std::conj(e)});
  };

  if (options.expect_complex && count_inside() < contour) {
    std::vector<cplx> seeds;
    // Local minima of |G| without a sign change: where two real roots
    // have collided and left the axis.
    for (std::size_t i = 1; i < steps; ++i) {
      const double k = mesh * static_cast<double>(i);
      auto local_min = [&](const std::vector<double>& v) {
        return std::abs(v[i]) <= std::abs(v[i - 1]) && std::abs(v[i]) <= std::abs(v[i + 1]) &&
               (v[i - 1] < 0.0) == (v[i] < 0.0) && (v[i + 1] < 0.0) == (v[i] < 0.0);
      };
      if (local_min(real_vals)) seeds.emplace_back(k, 0.5 * mesh);
      if (local_min(imag_vals)) seeds.emplace_back(0.5 * mesh, k);
    }
    // Coarse polar net over the first quadrant of the k-plane.
    for (int r = 1; r <= 8; ++r)
      for (int a = 1; a <= 7; ++a)
        seeds.push_back(std::polar(radius * r / 8.5, 0.5 * kPi * a / 8.0));

    for (const cplx& s : seeds) {
      if (count_inside() >= contour) break;
      try_seed(s);
    }
  }

  // Multiple roots: local winding around each found eigenvalue.
  if (count_inside() < contour) {
    const std::vector<Candidate> snapshot = found;
    for (const auto& c : snapshot) {
      if (count_inside() >= contour) break;
      double rho = 1e-4 * (1.0 + std::abs(c.k2));
      for (const auto& other : snapshot)
        if (&other != &c && std::abs(other.k2 - c.k2) > 0.0)
          rho = std::min(rho, 0.3 * std::abs(other.k2 - c.k2));
      double min_mod = 0.0;
      const long m = winding_number(p, c.k2, rho, 64, min_mod);
      for (long extra = 1; extra < m && count_inside() < contour; ++extra)
        found.push_back({c.k2});
    }
  }

  for (long missing = contour - count_inside(); missing > 0; --missing) {
    const cplx k = best_failure ? best_failure->k : cplx(radius, 0.0);
    found.push_back({k * k, RootStatus::unresolved, k});
  }

  for (const auto& c : found) {
    GeneralEigenvalue ev;
    ev.k2 = c.k2;
    ev.k = c.status == RootStatus::unresolved ? c.k_iterate : std::sqrt(c.k2);
    ev.status = c.status;
    ev.residual = eigen_residual(ev.k, p);
    if (ev.status == RootStatus::resolved &&
        std::abs(ev.k) > options.k_max * (1.0 + 1e-12))
      continue;
    if (ev.status == RootStatus::unresolved)
      ++result.unresolved_count;
    else if (ev.k2.imag() == 0.0)
      ++result.real_count;
    else
      ++result.complex_count;
    result.eigenvalues.push_back(ev);
  }
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(),
            [](const GeneralEigenvalue& a, const GeneralEigenvalue& b) {
              if (a.k2.real() != b.k2.real()) return a.k2.real() < b.k2.real();
              return a.k2.imag() < b.k2.imag();
            });
  return result;
}

}  // namespace ptrobin
