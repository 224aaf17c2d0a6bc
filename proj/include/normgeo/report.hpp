#ifndef NORMGEO_REPORT_HPP
#define NORMGEO_REPORT_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace normgeo {

// One named check: a claimed inequality/equality, the two computed sides,
// the margin (rhs - lhs for "lhs <= rhs" claims), and a verdict.
struct Check {
  std::string claim_id;
  std::string claim;  // human-readable statement of what was checked
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  std::string verdict;  // "holds" | "violated" | "inconclusive"
  nlohmann::json witness;  // present when violated; re-evaluable data

  nlohmann::json to_json() const;
};

// A structured anomaly that is not a plain check failure, e.g. two asserted
// bounds that cannot simultaneously hold for the space under test.
struct Finding {
  std::string kind;
  std::string detail;
  nlohmann::json data;

  nlohmann::json to_json() const;
};

struct InequalityReport {
  std::string space;
  std::vector<double> p_grid;
  std::vector<Check> checks;
  std::vector<Finding> findings;

  bool any_violated() const;
  bool all_hold() const;
  std::string summary() const;  // "holds" | "violated" | "inconclusive"
  nlohmann::json to_json() const;
};

}  // namespace normgeo

#endif
