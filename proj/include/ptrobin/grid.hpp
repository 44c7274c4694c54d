#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ptrobin {

using cplx = std::complex<double>;

/// Panel rule used by every integral on a Grid.
///
/// `cubic` integrates each subinterval with the cubic through the four
/// nearest nodes (one-sided at the ends), so both the cumulative integral
/// and the total are O(h^4). `trapezoid` is the plain composite rule, O(h^2).
enum class QuadratureRule { trapezoid, cubic };

/// Uniform grid x_i = i d / n, i = 0..n, on [0, d].
class Grid {
 public:
  Grid(double length, std::size_t intervals,
       QuadratureRule rule = QuadratureRule::cubic);

  double length() const { return length_; }
  std::size_t intervals() const { return intervals_; }
  std::size_t size() const { return intervals_ + 1; }
  double step() const { return length_ / static_cast<double>(intervals_); }
  QuadratureRule rule() const { return rule_; }

  /// x_i; node(intervals()) is exactly length().
  double node(std::size_t i) const;

  /// Same grid with twice the number of subintervals.
  Grid refined() const { return Grid(length_, 2 * intervals_, rule_); }
  Grid with_rule(QuadratureRule rule) const {
    return Grid(length_, intervals_, rule);
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double length_;
  std::size_t intervals_;
  QuadratureRule rule_;
};

/// Complex samples of a function on a Grid. Immutable once built.
class GridFunction {
 public:
  GridFunction(Grid grid, std::vector<cplx> values);

  static GridFunction zeros(const Grid& grid);
  static GridFunction constant(const Grid& grid, cplx value);
  /// Samples f(x_i) for any callable f: double -> cplx.
  template <typename F>
  static GridFunction from_callable(const Grid& grid, F&& f) {
    std::vector<cplx> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::span<const cplx> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  cplx operator[](std::size_t i) const { return values_[i]; }
  cplx front() const { return values_.front(); }
  cplx back() const { return values_.back(); }

  GridFunction conj() const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(cplx c, const GridFunction& f);
  friend GridFunction operator*(const GridFunction& f, cplx c) { return c * f; }
  friend GridFunction operator-(const GridFunction& f) { return cplx(-1.0) * f; }

  /// a + c * b without a temporary for c * b.
  friend GridFunction axpy(const GridFunction& a, cplx c, const GridFunction& b);

 private:
  Grid grid_;
  std::vector<cplx> values_;
};

/// Throws std::invalid_argument unless both functions live on the same grid.
void require_same_grid(const GridFunction& f, const GridFunction& g);

/// Integral of f over [0, d] with the grid's rule.
cplx integral(const GridFunction& f);

/// (f, g) = integral of conj(f) g; antilinear in the first slot.
cplx inner_product(const GridFunction& f, const GridFunction& g);

double norm(const GridFunction& f);

/// (Jf)(x_i) = integral of f over [0, x_i]; (Jf)(0) is exactly 0 and
/// (Jf)(d) is bitwise equal to integral(f).
GridFunction cumulative_integral(const GridFunction& f);

}  // namespace ptrobin
