#ifndef NORMGEO_CONSTANTS_HPP
#define NORMGEO_CONSTANTS_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "normgeo/angular.hpp"
#include "normgeo/optimizer.hpp"
#include "normgeo/space.hpp"

namespace normgeo {

// Concrete domain point certifying a reported lower bound: re-evaluating the
// defining expression at the witness reproduces the value.
struct Witness {
  std::vector<Vector> vectors;
  std::optional<double> scalar;  // lambda, epsilon or tau, depending on the constant

  nlohmann::json to_json() const;
};

struct EstimateResult {
  std::string constant_name;
  std::string space;  // descriptor
  std::optional<double> p_or_param;
  double value = 0.0;
  Witness witness;
  OptimizerConfig config_echo;
  bool converged = false;
  nlohmann::json extras;  // cross-check components, diagnostics

  nlohmann::json to_json() const;
};

// MR_p constant: sup of alpha_p/beta_p. Searches the
// sphere-lambda form as the primary route and raw pairs as a secondary
// cross-check, returning the larger. p = 1 returns exactly 1 analytically.
EstimateResult estimate_mr(const NormedSpace& space, Exponent p, const OptimizerConfig& config);

// DR constant (= MR at p = 0), with the raw alpha/beta search as the
// independent cross-check component.
EstimateResult estimate_dr(const NormedSpace& space, const OptimizerConfig& config);

// DW constant: sup of (||x||+||y||)/||x-y|| * alpha[x,y]; range [2, 4].
EstimateResult estimate_dw(const NormedSpace& space, const OptimizerConfig& config);

// Modulus of convexity delta(eps): inf of 1 - ||(x+y)/2|| over ball pairs
// with ||x-y|| >= eps.
EstimateResult modulus_convexity(const NormedSpace& space, double eps,
                                 const OptimizerConfig& config);

// Characteristic of convexity: sup { eps in [0,2] : delta(eps) = 0 },
// located by monotone bisection against delta(eps) < 1e-6.
EstimateResult eps0(const NormedSpace& space, const OptimizerConfig& config);

// Modulus of smoothness rho(tau): sup of (||x+tau*y|| + ||x-tau*y||)/2 - 1
// over unit pairs.
EstimateResult modulus_smoothness(const NormedSpace& space, double tau,
                                  const OptimizerConfig& config);

// rho'(0) = lim rho(tau)/tau, by Richardson extrapolation over a dyadic tau
// ladder; the duality value eps0(dual)/2 is attached as a cross-check field.
EstimateResult rho_prime_zero(const NormedSpace& space, const OptimizerConfig& config);

struct NonsquareVerdict {
  bool uniformly_nonsquare = false;
  double margin = 0.0;  // 2 - eps0 estimate
  EstimateResult eps0_estimate;
};

// Operationalized as eps0(X) < 2 (with a 0.05 decision band).
NonsquareVerdict is_uniformly_nonsquare(const NormedSpace& space, const OptimizerConfig& config);

// Re-evaluates the defining expression of mr/dr/dw/delta/rho at the stored
// witness. eps0 and rho-prime are limits, not single expressions; for those
// this returns the witness's certified quantity (see implementation).
double reevaluate(const NormedSpace& space, const EstimateResult& estimate);

}  // namespace normgeo

#endif
