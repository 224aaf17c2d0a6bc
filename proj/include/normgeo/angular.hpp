#ifndef NORMGEO_ANGULAR_HPP
#define NORMGEO_ANGULAR_HPP

#include "normgeo/space.hpp"

namespace normgeo {

// The exponent p of the p-angular distances. The claims about the MR
// constant cover p in [0, 1]; values outside that range are only usable
// with the `extended` flag set.
struct Exponent {
  double p = 0.0;
  bool extended = false;

  Exponent() = default;
  Exponent(double p_, bool extended_ = false);  // validates the range
};

// alpha_p[x, y] = || x*||x||^(p-1) - y*||y||^(p-1) ||.
double p_angular(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p);

// beta_p[x, y] = || x*||y||^(p-1) - y*||x||^(p-1) ||.
double skew_p_angular(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p);

// alpha_p / beta_p. Throws DegenerateDenominator when beta_p is below
// 1e-10 * max(||x||, ||y||)^p (the pair is excluded from the supremum).
double ratio(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p);

// Sphere form of the same quotient: for unit x1, x2 and lambda > 0,
// || lambda*x1 - lambda^(1-p)*x2 || / || lambda^(2-p)*x1 - x2 ||.
// Equals ratio(lambda*x1, x2, p).
double sphere_lambda_ratio(const NormedSpace& space, const Vector& x1, const Vector& x2,
                           double lambda, Exponent p);

// max(||x||^(p-1)*||y||^(1-p), ||y||^(p-1)*||x||^(1-p)); >= 1 for p in [0,1].
double max_norm_factor(const NormedSpace& space, const Vector& x, const Vector& y, Exponent p);

}  // namespace normgeo

#endif
