#pragma once

#include <vector>

#include "ptrobin/grid.hpp"

namespace ptrobin {

/// Closed-form test function: a finite sum of terms c * x^p * B(lambda x),
/// with B one of exp(i.), cos, sin and complex c, lambda.
///
/// Exact derivatives are formed term by term, so anything that needs psi'
/// or psi'' goes through this type and never through finite differences of
/// a GridFunction.
class AnalyticFunction {
 public:
  enum class Kind { exp, cos, sin };

  struct Term {
    cplx coeff;
    unsigned power = 0;
    Kind kind = Kind::exp;
    cplx rate = 0.0;
  };

  AnalyticFunction() = default;
  explicit AnalyticFunction(std::vector<Term> terms);

  static AnalyticFunction constant(cplx c);
  /// c x^p
  static AnalyticFunction monomial(cplx c, unsigned power);
  /// c exp(i lambda x)
  static AnalyticFunction exponential(cplx c, cplx rate);
  static AnalyticFunction cosine(cplx c, cplx rate);
  static AnalyticFunction sine(cplx c, cplx rate);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  cplx operator()(double x) const;
  AnalyticFunction derivative(unsigned order = 1) const;
  GridFunction sample(const Grid& grid) const;

  /// Rewrites cos / sin terms as exponentials; products are formed in this
  /// representation.
  AnalyticFunction exponential_form() const;

  friend AnalyticFunction operator+(AnalyticFunction a, const AnalyticFunction& b);
  friend AnalyticFunction operator-(AnalyticFunction a, const AnalyticFunction& b);
  friend AnalyticFunction operator*(cplx c, AnalyticFunction f);
  friend AnalyticFunction operator*(const AnalyticFunction& f, cplx c) { return c * f; }
  friend AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b);

 private:
  std::vector<Term> terms_;
};

/// Values and first derivatives at both ends of [0, d].
struct BoundaryData {
  cplx value_left;
  cplx value_right;
  cplx slope_left;
  cplx slope_right;
};

BoundaryData boundary_data(const AnalyticFunction& f, double d);

/// Samples f on a grid (pointwise evaluation, no quadrature).
inline GridFunction sample(const AnalyticFunction& f, const Grid& grid) {
  return f.sample(grid);
}

}  // namespace ptrobin
