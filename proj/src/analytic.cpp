#include "ptrobin/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace ptrobin {

namespace {

constexpr cplx kI{0.0, 1.0};

bool is_zero(cplx c) { return c.real() == 0.0 && c.imag() == 0.0; }

cplx basis(AnalyticFunction::Kind kind, cplx z) {
  switch (kind) {
    case AnalyticFunction::Kind::exp:
      return std::exp(kI * z);
    case AnalyticFunction::Kind::cos:
      return std::cos(z);
    case AnalyticFunction::Kind::sin:
      return std::sin(z);
  }
  return 0.0;
}

// d/dz B(z) = factor * B'(z) with B' again one of the three kinds.
AnalyticFunction::Term differentiate_basis(const AnalyticFunction::Term& t) {
  AnalyticFunction::Term out = t;
  switch (t.kind) {
    case AnalyticFunction::Kind::exp:
      out.coeff = t.coeff * kI * t.rate;
      break;
    case AnalyticFunction::Kind::cos:
      out.kind = AnalyticFunction::Kind::sin;
      out.coeff = -t.coeff * t.rate;
      break;
    case AnalyticFunction::Kind::sin:
      out.kind = AnalyticFunction::Kind::cos;
      out.coeff = t.coeff * t.rate;
      break;
  }
  return out;
}

double int_pow(double x, unsigned p) {
  double r = 1.0;
  for (unsigned i = 0; i < p; ++i) r *= x;
  return r;
}

}  // namespace

AnalyticFunction::AnalyticFunction(std::vector<Term> terms) {
  terms_.reserve(terms.size());
  for (const Term& t : terms) {
    if (!std::isfinite(t.coeff.real()) || !std::isfinite(t.coeff.imag()) ||
        !std::isfinite(t.rate.real()) || !std::isfinite(t.rate.imag()))
      throw std::invalid_argument("analytic function terms must be finite");
    if (!is_zero(t.coeff)) terms_.push_back(t);
  }
}

AnalyticFunction AnalyticFunction::constant(cplx c) { return monomial(c, 0); }

AnalyticFunction AnalyticFunction::monomial(cplx c, unsigned power) {
  return AnalyticFunction({Term{c, power, Kind::exp, 0.0}});
}

AnalyticFunction AnalyticFunction::exponential(cplx c, cplx rate) {
  return AnalyticFunction({Term{c, 0, Kind::exp, rate}});
}

AnalyticFunction AnalyticFunction::cosine(cplx c, cplx rate) {
  return AnalyticFunction({Term{c, 0, Kind::cos, rate}});
}

AnalyticFunction AnalyticFunction::sine(cplx c, cplx rate) {
  return AnalyticFunction({Term{c, 0, Kind::sin, rate}});
}

cplx AnalyticFunction::operator()(double x) const {
  cplx sum = 0.0;
  for (const Term& t : terms_)
    sum += t.coeff * int_pow(x, t.power) * basis(t.kind, t.rate * x);
  return sum;
}

AnalyticFunction AnalyticFunction::derivative(unsigned order) const {
  AnalyticFunction f = *this;
  for (unsigned k = 0; k < order; ++k) {
    std::vector<Term> next;
    next.reserve(2 * f.terms_.size());
    for (const Term& t : f.terms_) {
      if (t.power > 0) {
        Term lower = t;
        lower.coeff *= static_cast<double>(t.power);
        lower.power -= 1;
        next.push_back(lower);
      }
      if (!is_zero(t.rate)) next.push_back(differentiate_basis(t));
    }
    f = AnalyticFunction(std::move(next));
  }
  return f;
}

GridFunction AnalyticFunction::sample(const Grid& grid) const {
  return GridFunction::from_callable(grid, [this](double x) { return (*this)(x); });
}

AnalyticFunction AnalyticFunction::exponential_form() const {
  std::vector<Term> out;
  out.reserve(2 * terms_.size());
  for (const Term& t : terms_) {
    switch (t.kind) {
      case Kind::exp:
        out.push_back(t);
        break;
      case Kind::cos:
        out.push_back({0.5 * t.coeff, t.power, Kind::exp, t.rate});
        out.push_back({0.5 * t.coeff, t.power, Kind::exp, -t.rate});
        break;
      case Kind::sin:
        out.push_back({-0.5 * kI * t.coeff, t.power, Kind::exp, t.rate});
        out.push_back({0.5 * kI * t.coeff, t.power, Kind::exp, -t.rate});
        break;
    }
  }
  return AnalyticFunction(std::move(out));
}

AnalyticFunction operator+(AnalyticFunction a, const AnalyticFunction& b) {
  a.terms_.insert(a.terms_.end(), b.terms_.begin(), b.terms_.end());
  return a;
}

AnalyticFunction operator-(AnalyticFunction a, const AnalyticFunction& b) {
  return std::move(a) + cplx(-1.0) * b;
}

AnalyticFunction operator*(cplx c, AnalyticFunction f) {
  for (auto& t : f.terms_) t.coeff *= c;
  return AnalyticFunction(std::move(f.terms_));
}

AnalyticFunction operator*(const AnalyticFunction& a, const AnalyticFunction& b) {
  const AnalyticFunction ea = a.exponential_form();
  const AnalyticFunction eb = b.exponential_form();
  std::vector<AnalyticFunction::Term> out;
  out.reserve(ea.terms_.size() * eb.terms_.size());
  for (const auto& s : ea.terms_)
    for (const auto& t : eb.terms_)
      out.push_back({s.coeff * t.coeff, s.power + t.power,
                     AnalyticFunction::Kind::exp, s.rate + t.rate});
  return AnalyticFunction(std::move(out));
}

BoundaryData boundary_data(const AnalyticFunction& f, double d) {
  const AnalyticFunction df = f.derivative();
  return {f(0.0), f(d), df(0.0), df(d)};
}

}  // namespace ptrobin
