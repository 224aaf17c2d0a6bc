#include "normgeo/report.hpp"

namespace normgeo {

nlohmann::json Check::to_json() const {
  nlohmann::json j{{"claim_id", claim_id}, {"claim", claim},   {"lhs", lhs},
                   {"rhs", rhs},           {"margin", margin}, {"verdict", verdict}};
  if (!witness.is_null()) j["witness"] = witness;
  return j;
}

nlohmann::json Finding::to_json() const {
  return nlohmann::json{{"kind", kind}, {"detail", detail}, {"data", data}};
}

bool InequalityReport::any_violated() const {
  for (const auto& c : checks) {
    if (c.verdict == "violated") return true;
  }
  return false;
}

bool InequalityReport::all_hold() const {
  for (const auto& c : checks) {
    if (c.verdict != "holds") return false;
  }
  return true;
}

std::string InequalityReport::summary() const {
  if (any_violated()) return "violated";
  if (all_hold() && findings.empty()) return "holds";
  return "inconclusive";
}

nlohmann::json InequalityReport::to_json() const {
  nlohmann::json jc = nlohmann::json::array();
  for (const auto& c : checks) jc.push_back(c.to_json());
  nlohmann::json jf = nlohmann::json::array();
  for (const auto& f : findings) jf.push_back(f.to_json());
  return nlohmann::json{{"space", space},   {"p_grid", p_grid},  {"checks", jc},
                        {"findings", jf},   {"summary", summary()}};
}

}  // namespace normgeo
