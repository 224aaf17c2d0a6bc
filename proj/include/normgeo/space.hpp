#ifndef NORMGEO_SPACE_HPP
#define NORMGEO_SPACE_HPP

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "normgeo/report.hpp"

namespace normgeo {

using Vector = std::vector<double>;

// A continuous linear functional, acting by the standard pairing f.x.
using DualFunctional = std::vector<double>;

enum class NormFamily { Lp, WeightedLp, Polyhedral };

// Infinity exponent sentinel for Lp / WeightedLp.
inline constexpr double kInf = std::numeric_limits<double>::infinity();

// A finite-dimensional real normed space (dim >= 2). The norm family is one
// of: l_q with q in [1, inf], weighted l_q, or a polyhedral norm given by the
// origin-symmetric vertex set of its unit ball (dimension 2).
//
// Values are immutable after construction; all member functions are const and
// safe to call concurrently.
class NormedSpace {
 public:
  // Empty placeholder (dim 0); usable only after assignment from a factory.
  NormedSpace() = default;

  static NormedSpace lp(double q, int dim);
  static NormedSpace weighted_lp(double q, std::vector<double> weights);
  static NormedSpace polyhedral(std::vector<Vector> vertices);

  int dim() const { return dim_; }
  NormFamily family() const { return family_; }
  double exponent() const { return q_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<Vector>& vertices() const { return vertices_; }
  // Facet functionals g of the polyhedral unit ball, normalized so the ball
  // satisfies |g.x| <= 1 with equality on the facet. Ordered counterclockwise.
  const std::vector<Vector>& facets() const { return facets_; }

  double norm(const Vector& x) const;
  double dual_norm(const DualFunctional& f) const;

  // A supporting functional at x != 0: dual_norm(f) = 1 and f.x = ||x||.
  // At non-smooth points the choice is deterministic (smallest facet index /
  // lexicographically smallest sign vector).
  DualFunctional norming_functional(const Vector& x) const;

  // The dual space, with the standard pairing: conjugate exponent for Lp
  // families, polar polytope for polyhedral (dimension 2 only).
  NormedSpace dual() const;

  // Short text form, e.g. "l2:3", "wl1.5:2:[1,2]", "poly:2:8v".
  std::string descriptor() const;

 private:
  NormFamily family_ = NormFamily::Lp;
  int dim_ = 0;
  double q_ = 2.0;                   // Lp / WeightedLp exponent
  std::vector<double> weights_;      // WeightedLp
  std::vector<Vector> vertices_;     // Polyhedral input vertices
  std::vector<Vector> facets_;       // Polyhedral facet functionals (hull edges)
};

// `count` deterministic pseudo-random points with ||x|| = 1, keyed by seed.
std::vector<Vector> sphere_sample(const NormedSpace& space, int count, std::uint64_t seed);

// Samples random vectors/scalars and checks absolute homogeneity, symmetry
// and the triangle inequality to 1e-9. Violations are reported, not thrown.
InequalityReport validate_norm(const NormedSpace& space, int trials, std::uint64_t seed);

}  // namespace normgeo

#endif
