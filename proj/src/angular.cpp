#include "normgeo/angular.hpp"

#include <cmath>

#include "normgeo/errors.hpp"

namespace normgeo {

namespace {

// ||x||^(p-1), with the p = 1 corner pinned to exactly 1.
double norm_power(double n, double p) {
  if (p == 1.0) return 1.0;
  return std::pow(n, p - 1.0);
}

double nonzero_norm(const NormedSpace& space, const Vector& x, const char* who) {
  const double n = space.norm(x);
  if (n == 0.0) throw ZeroVector(std::string(who) + ": zero vector");
  return n;
}

}  // namespace

Exponent::Exponent(double p_, bool extended_) : p(p_), extended(extended_) {
  if (!std::isfinite(p)) throw InvalidExponent("exponent p must be finite");
  if (!extended && (p < 0.0 || p > 1.0)) {
    throw InvalidExponent("exponent p must lie in [0, 1] (set the extended flag for other p)");
  }
}

double p_angular(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p) {
  const double nx = nonzero_norm(space, x, "p_angular");
  const double ny = nonzero_norm(space, y, "p_angular");
  const double cx = norm_power(nx, p.p);
  const double cy = norm_power(ny, p.p);
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] * cx - y[i] * cy;
  return space.norm(d);
}

double skew_p_angular(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p) {
  const double nx = nonzero_norm(space, x, "skew_p_angular");
  const double ny = nonzero_norm(space, y, "skew_p_angular");
  const double cx = norm_power(ny, p.p);  // x is scaled by ||y||^(p-1)
  const double cy = norm_power(nx, p.p);
  Vector d(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) d[i] = x[i] * cx - y[i] * cy;
  return space.norm(d);
}

double ratio(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p) {
  const double nx = nonzero_norm(space, x, "ratio");
  const double ny = nonzero_norm(space, y, "ratio");
  const double beta = skew_p_angular(space, x, y, p);
  const double threshold = 1e-10 * std::pow(std::max(nx, ny), p.p);
  if (beta <= threshold) {
    throw DegenerateDenominator("ratio: skew p-angular distance below degeneracy threshold");
  }
  return p_angular(space, x, y, p) / beta;
}

double sphere_lambda_ratio(const NormedSpace& space, const Vector& x1, const Vector& x2,
                           double lambda, Exponent p) {
  const double n1 = space.norm(x1);
  const double n2 = space.norm(x2);
  if (std::abs(n1 - 1.0) > 1e-9 || std::abs(n2 - 1.0) > 1e-9) {
    throw std::invalid_argument("sphere_lambda_ratio: inputs must lie on the unit sphere");
  }
  if (!(lambda > 0.0)) throw std::invalid_argument("sphere_lambda_ratio: lambda must be > 0");
  const double a = lambda;
  const double b = std::pow(lambda, 1.0 - p.p);
  const double c = std::pow(lambda, 2.0 - p.p);
  Vector num(x1.size()), den(x1.size());
  for (std::size_t i = 0; i < x1.size(); ++i) {
    num[i] = a * x1[i] - b * x2[i];
    den[i] = c * x1[i] - x2[i];
  }
  const double d = space.norm(den);
  if (d <= 1e-10 * std::max(1.0, c)) {
    throw DegenerateDenominator("sphere_lambda_ratio: denominator vanishes");
  }
  return space.norm(num) / d;
}

double max_norm_factor(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p) {
  const double nx = nonzero_norm(space, x, "max_norm_factor");
  const double ny = nonzero_norm(space, y, "max_norm_factor");
  const double r = nx / ny;
  const double a = std::pow(r, p.p - 1.0);
  const double b = std::pow(r, 1.0 - p.p);
  return std::max(a, b);
}

}  // namespace normgeo
