#ifndef NORMGEO_OPTIMIZER_HPP
#define NORMGEO_OPTIMIZER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "normgeo/space.hpp"

namespace normgeo {

// A point of the search domain: one or two vectors (on the unit sphere, or in
// the unit ball for ball domains) plus an optional positive scalar.
struct DomainPoint {
  std::vector<Vector> points;
  std::optional<double> scalar;
};

// Products of unit spheres (or balls) of one space, optionally crossed with a
// positive scalar searched in log scale. An excluded scalar value is removed
// by an open band and used as the target of a continuation refinement, since
// supremum-type objectives typically peak next to their excluded degeneracy.
struct SearchDomain {
  NormedSpace space;
  int sphere_count = 1;  // 1 or 2
  bool ball = false;     // vectors range over the unit ball instead of the sphere
  std::optional<std::pair<double, double>> scalar_interval;  // (lo, hi), 0 < lo < hi
  std::optional<double> excluded_scalar;
  double excluded_band = 1e-6;  // open band half-width around the excluded value
};

struct OptimizerConfig {
  int starts = 64;
  int max_iterations = 400;
  double step_tolerance = 1e-8;
  double value_tolerance = 1e-10;
  std::uint64_t seed = 0;
  int grid_resolution = 180;  // dim-2 exhaustive angular phase
  unsigned parallelism = 1;   // worker threads for independent starts
};

struct OptimizationOutcome {
  double best_value = 0.0;
  DomainPoint argmax;
  long iterations_used = 0;  // objective evaluations spent
  std::vector<std::pair<long, double>> improvement_trace;
  int abandoned_starts = 0;
  bool feasible = true;   // minimize_constrained only
  std::string note;
};

using Objective = std::function<double(const DomainPoint&)>;

// Derivative-free global maximization: exhaustive angular grid when dim = 2,
// multi-start Nelder-Mead refinement, and scalar-ladder continuation toward
// an excluded scalar. Deterministic for fixed (domain, config) and
// independent of config.parallelism. best_value is a certified lower bound
// of the supremum; objective(argmax) reproduces it exactly.
OptimizationOutcome maximize(const Objective& objective, const SearchDomain& domain,
                             const OptimizerConfig& config,
                             const std::vector<DomainPoint>& warm_starts = {});

// Constrained minimization via maximize of the negation with a quadratic
// penalty whose weight is ramped x10 per restart until the incumbent's
// constraint violation drops below 1e-8. `constraint_margin` >= 0 means
// feasible. If no restart reaches tolerance the outcome is flagged
// infeasible ("infeasible-at-tolerance").
OptimizationOutcome minimize_constrained(const Objective& objective, const SearchDomain& domain,
                                         const Objective& constraint_margin,
                                         const OptimizerConfig& config);

}  // namespace normgeo

#endif
