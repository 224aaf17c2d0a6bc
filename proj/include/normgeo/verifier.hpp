#ifndef NORMGEO_VERIFIER_HPP
#define NORMGEO_VERIFIER_HPP

#include <cstdint>

#include "normgeo/angular.hpp"
#include "normgeo/constants.hpp"
#include "normgeo/report.hpp"

namespace normgeo {

// Evaluates every asserted inequality/equality about MR_p on one space over a
// p-grid: the range [1,2], the pointwise (4-3p)/(2-p) cap, the lower bounds
// from eps0 and 2*rho'(0), and DR = MR_0. Lower-bound-vs-lower-bound
// comparisons can only be "holds" or "inconclusive"; "violated" requires a
// re-evaluable pointwise witness. When the pointwise cap and the eps0 lower
// bound cannot both hold for the space, an "internal-tension" finding is
// emitted (computed analytically, independent of search quality).
InequalityReport verify_space(const NormedSpace& space, const std::vector<double>& p_grid,
                              const OptimizerConfig& config);

// Samples pairs at varied radius ratios and checks the case-appropriate
// alpha_p-vs-beta_p inequality ((ii) for p in [0,1]; (i) for p in [1,2);
// (iii) for p < 0) plus the max-factor bound.
InequalityReport check_pointwise_bounds(const NormedSpace& space, Exponent p, int sample_count,
                                       std::uint64_t seed);

// Checks max(||x||^(p-1)||y||^(1-p), ||y||^(p-1)||x||^(1-p)) >= 1 on samples,
// exercising the equal-, larger- and smaller-norm cases explicitly.
InequalityReport check_max_factor(const NormedSpace& space, Exponent p, int sample_count,
                                  std::uint64_t seed);

}  // namespace normgeo

#endif
