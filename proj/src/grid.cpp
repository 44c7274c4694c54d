#include "ptrobin/grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ptrobin {

Grid::Grid(double length, std::size_t intervals, QuadratureRule rule)
    : length_(length), intervals_(intervals), rule_(rule) {
  if (!(length > 0.0) || !std::isfinite(length))
    throw std::invalid_argument("grid length must be positive and finite");
  if (intervals < 2)
    throw std::invalid_argument("grid needs at least 2 subintervals");
}

double Grid::node(std::size_t i) const {
  if (i >= intervals_) return length_;
  return length_ * static_cast<double>(i) / static_cast<double>(intervals_);
}

GridFunction::GridFunction(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw std::invalid_argument("expected " + std::to_string(grid_.size()) +
                                " samples, got " +
                                std::to_string(values_.size()));
  for (const cplx& v : values_)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("grid function samples must be finite");
}

GridFunction GridFunction::zeros(const Grid& grid) {
  return GridFunction(grid, std::vector<cplx>(grid.size()));
}

GridFunction GridFunction::constant(const Grid& grid, cplx value) {
  return GridFunction(grid, std::vector<cplx>(grid.size(), value));
}

GridFunction GridFunction::conj() const {
  std::vector<cplx> v(values_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::conj(values_[i]);
  return GridFunction(grid_, std::move(v));
}

void require_same_grid(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid()))
    throw std::invalid_argument("grid functions live on different grids");
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return axpy(a, 1.0, b);
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return axpy(a, -1.0, b);
}

GridFunction operator*(cplx c, const GridFunction& f) {
  std::vector<cplx> v(f.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = c * f.values_[i];
  return GridFunction(f.grid_, std::move(v));
}

GridFunction axpy(const GridFunction& a, cplx c, const GridFunction& b) {
  require_same_grid(a, b);
  std::vector<cplx> v(a.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = a.values_[i] + c * b.values_[i];
  return GridFunction(a.grid_, std::move(v));
}

namespace {

// Calls panel(i, integral over [x_i, x_{i+1}]) for i = 0..n-1 in order.
template <typename Panel>
void for_each_panel(const Grid& grid, std::span<const cplx> f, Panel&& panel) {
  const std::size_t n = grid.intervals();
  const double h = grid.step();

  if (grid.rule() == QuadratureRule::trapezoid) {
    for (std::size_t i = 0; i < n; ++i) panel(i, 0.5 * h * (f[i] + f[i + 1]));
    return;
  }

  if (n == 2) {
    // Quadratic through all three nodes.
    const double w = h / 12.0;
    panel(0, w * (5.0 * f[0] + 8.0 * f[1] - f[2]));
    panel(1, w * (-f[0] + 8.0 * f[1] + 5.0 * f[2]));
    return;
  }

  const double w = h / 24.0;
  panel(0, w * (9.0 * f[0] + 19.0 * f[1] - 5.0 * f[2] + f[3]));
  for (std::size_t i = 1; i + 1 < n; ++i)
    panel(i, w * (13.0 * (f[i] + f[i + 1]) - (f[i - 1] + f[i + 2])));
  panel(n - 1,
        w * (9.0 * f[n] + 19.0 * f[n - 1] - 5.0 * f[n - 2] + f[n - 3]));
}

// Neumaier summation, so that rounding does not grow with the panel count.
class CompensatedSum {
 public:
  void add(cplx v) {
    add(re_, re_c_, v.real());
    add(im_, im_c_, v.imag());
  }
  cplx value() const { return {re_ + re_c_, im_ + im_c_}; }

 private:
  static void add(double& sum, double& c, double v) {
    const double t = sum + v;
    c += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
    sum = t;
  }
  double re_ = 0.0, re_c_ = 0.0, im_ = 0.0, im_c_ = 0.0;
};

}  // namespace

cplx integral(const GridFunction& f) {
  CompensatedSum sum;
  for_each_panel(f.grid(), f.values(), [&](std::size_t, cplx p) { sum.add(p); });
  return sum.value();
}

cplx inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f, g);
  std::vector<cplx> prod(f.size());
  auto fv = f.values();
  auto gv = g.values();
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::conj(fv[i]) * gv[i];
  CompensatedSum sum;
  for_each_panel(f.grid(), prod, [&](std::size_t, cplx p) { sum.add(p); });
  return sum.value();
}

double norm(const GridFunction& f) {
  // Real part only: the imaginary part of (f, f) is pure rounding.
  return std::sqrt(std::max(0.0, inner_product(f, f).real()));
}

GridFunction cumulative_integral(const GridFunction& f) {
  std::vector<cplx> out(f.size());
  out[0] = 0.0;
  CompensatedSum sum;
  for_each_panel(f.grid(), f.values(), [&](std::size_t i, cplx p) {
    sum.add(p);
    out[i + 1] = sum.value();
  });
  return GridFunction(f.grid(), std::move(out));
}

}  // namespace ptrobin
