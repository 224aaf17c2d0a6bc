#include "normgeo/verifier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "normgeo/errors.hpp"
#include "normgeo/rng.hpp"

namespace normgeo {

namespace {

struct SamplePair {
  Vector x, y;
};

// Nonzero pairs with directions on the sphere and radii on a log grid.
std::vector<SamplePair> sample_pairs(const NormedSpace& space, int count, std::uint64_t seed) {
  auto dirs = sphere_sample(space, 2 * count, seed);
  Rng rng(seed + 0x5eedULL);
  std::vector<SamplePair> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    SamplePair p;
    p.x = dirs[2 * i];
    p.y = dirs[2 * i + 1];
    const double rx = std::exp2(rng.uniform(-6.0, 6.0));
    const double ry = std::exp2(rng.uniform(-6.0, 6.0));
    for (auto& v : p.x) v *= rx;
    for (auto& v : p.y) v *= ry;
    out.push_back(std::move(p));
  }
  return out;
}

nlohmann::json pair_json(const SamplePair& s) {
  return nlohmann::json{{"x", s.x}, {"y", s.y}};
}

Check make_pointwise_check(const std::string& id, const std::string& claim) {
  Check c;
  c.claim_id = id;
  c.claim = claim;
  c.verdict = "holds";
  c.margin = std::numeric_limits<double>::infinity();
  return c;
}

// Updates a "lhs <= rhs" check with one sample; tracks the worst margin and
// flags the first certified violation with its witness.
void update_pointwise(Check& c, double lhs, double rhs, const SamplePair& s, int& violations) {
  const double tol = 1e-9 * std::max(1.0, std::abs(rhs));
  const double margin = rhs - lhs;
  if (margin < c.margin) {
    c.margin = margin;
    c.lhs = lhs;
    c.rhs = rhs;
  }
  if (lhs > rhs + tol) {
    ++violations;
    if (c.verdict != "violated") {
      c.verdict = "violated";
      c.witness = pair_json(s);
      c.witness["lhs"] = lhs;
      c.witness["rhs"] = rhs;
    }
  }
}

}  // namespace

InequalityReport check_pointwise_bounds(const NormedSpace& space, Exponent p, int sample_count,
                                       std::uint64_t seed) {
  if (sample_count < 1) throw std::invalid_argument("check_pointwise_bounds: sample_count >= 1");
  if (p.p >= 2.0) {
    throw InvalidExponent("check_pointwise_bounds: no case covers p >= 2");
  }
  InequalityReport rep;
  rep.space = space.descriptor();
  rep.p_grid = {p.p};

  const bool case_ii = p.p >= 0.0 && p.p <= 1.0;
  const bool case_i = p.p > 1.0;  // p/(2-p) >= 1
  const double cap = (4.0 - 3.0 * p.p) / (2.0 - p.p);

  Check main = make_pointwise_check(
      case_ii ? "alpha-beta-cap-factored"
              : (case_i ? "alpha-beta-cap-large-p" : "alpha-beta-cap-negative-p"),
      case_ii ? "alpha_p <= (4-3p)/(2-p) * beta_p / maxfactor"
              : (case_i ? "alpha_p <= p/(2-p) * maxfactor * beta_p"
                        : "alpha_p <= (4-3p)/(2-p) * max(|x|^p,|y|^p)/max(|x||y|^(p-1),|y||x|^(p-1)) * beta_p"));
  Check plain = make_pointwise_check("alpha-beta-cap", "alpha_p <= (4-3p)/(2-p) * beta_p");
  Check factor = make_pointwise_check("max-factor-unit", "maxfactor >= 1");

  int v_main = 0, v_plain = 0, v_factor = 0;
  const auto pairs = sample_pairs(space, sample_count, seed);
  for (const auto& s : pairs) {
    const double a = p_angular(space, s.x, s.y, p);
    const double b = skew_p_angular(space, s.x, s.y, p);
    const double A = max_norm_factor(space, s.x, s.y, p);
    if (case_ii) {
      update_pointwise(main, a, cap * b / A, s, v_main);
      update_pointwise(plain, a, cap * b, s, v_plain);
      update_pointwise(factor, 1.0, A, s, v_factor);
    } else if (case_i) {
      update_pointwise(main, a, p.p / (2.0 - p.p) * A * b, s, v_main);
    } else {
      const double nx = space.norm(s.x);
      const double ny = space.norm(s.y);
      const double num = std::max(std::pow(nx, p.p), std::pow(ny, p.p));
      const double den = std::max(nx * std::pow(ny, p.p - 1.0), ny * std::pow(nx, p.p - 1.0));
      update_pointwise(main, a, cap * num / den * b, s, v_main);
    }
  }
  auto attach_count = [](Check& c, int v) {
    if (c.verdict == "violated") c.witness["violations"] = v;
  };
  attach_count(main, v_main);
  attach_count(plain, v_plain);
  attach_count(factor, v_factor);

  rep.checks.push_back(main);
  if (case_ii) {
    rep.checks.push_back(plain);
    rep.checks.push_back(factor);
  }
  return rep;
}

InequalityReport check_max_factor(const NormedSpace& space, Exponent p, int sample_count,
                                  std::uint64_t seed) {
  if (p.p < 0.0 || p.p > 1.0) {
    throw InvalidExponent("check_max_factor: claimed for p in [0, 1] only");
  }
  InequalityReport rep;
  rep.space = space.descriptor();
  rep.p_grid = {p.p};

  Check equal = make_pointwise_check("max-factor-equal-norms", "maxfactor = 1 when |x| = |y|");
  Check general = make_pointwise_check("max-factor-general", "maxfactor >= 1");
  int v_eq = 0, v_gen = 0;

  const auto pairs = sample_pairs(space, sample_count, seed);
  for (const auto& s : pairs) {
    update_pointwise(general, 1.0, max_norm_factor(space, s.x, s.y, p), s, v_gen);
  }
  // Equal-norm case sampled explicitly (both unit).
  auto dirs = sphere_sample(space, 2 * std::min(sample_count, 256), seed + 1);
  for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
    SamplePair s{dirs[i], dirs[i + 1]};
    const double A = max_norm_factor(space, s.x, s.y, p);
    // Two-sided: equality, not just >= 1.
    update_pointwise(equal, std::abs(A - 1.0), 1e-9, s, v_eq);
  }
  rep.checks = {equal, general};
  return rep;
}

InequalityReport verify_space(const NormedSpace& space, const std::vector<double>& p_grid,
                              const OptimizerConfig& config) {
  for (double p : p_grid) {
    if (p < 0.0 || p > 1.0) throw InvalidExponent("verify_space: p_grid must lie in [0, 1]");
  }
  InequalityReport rep;
  rep.space = space.descriptor();
  rep.p_grid = p_grid;

  auto e0 = eps0(space, config);
  auto rp = rho_prime_zero(space, config);
  const double demand_eps0 = std::max(e0.value, 1.0);
  const double demand_rho = std::max(2.0 * rp.value, 1.0);

  for (double pv : p_grid) {
    const Exponent p(pv);
    auto mr = estimate_mr(space, p, config);
    std::ostringstream tag;
    tag << "@p=" << pv;

    {
      Check c;
      c.claim_id = "mr-range" + tag.str();
      c.claim = "1 <= MR_p <= 2";
      c.lhs = 1.0;
      c.rhs = mr.value;
      c.margin = std::min(mr.value - (1.0 - 1e-6), (2.0 + 1e-6) - mr.value);
      if (mr.value >= 1.0 - 1e-6 && mr.value <= 2.0 + 1e-6) {
        c.verdict = "holds";
      } else {
        c.verdict = "violated";
        c.witness = mr.witness.to_json();
        c.witness["value"] = mr.value;
      }
      rep.checks.push_back(c);
    }
    {
      // The upper bound is certified pointwise: it is "violated" only if a
      // sampled pair breaks the factored cap inequality itself.
      auto pw = check_pointwise_bounds(space, p, 10000, config.seed);
      Check c = pw.checks[0];
      c.claim_id = "mr-upper-pointwise" + tag.str();
      rep.checks.push_back(c);
    }
    {
      Check c;
      c.claim_id = "mr-lower-eps0" + tag.str();
      c.claim = "MR_p >= max(eps0, 1)";
      c.lhs = demand_eps0;
      c.rhs = mr.value;
      c.margin = mr.value - demand_eps0;
      // MR is only a certified lower bound: falling short cannot falsify the
      // claim, so the pessimistic verdict is "inconclusive", never "violated".
      c.verdict = mr.value >= demand_eps0 - 0.05 ? "holds" : "inconclusive";
      rep.checks.push_back(c);
    }
    {
      Check c;
      c.claim_id = "mr-lower-smoothness" + tag.str();
      c.claim = "MR_p >= max(2*rho'(0), 1)";
      c.lhs = demand_rho;
      c.rhs = mr.value;
      c.margin = mr.value - demand_rho;
      c.verdict = mr.value >= demand_rho - 0.05 ? "holds" : "inconclusive";
      rep.checks.push_back(c);
    }
    if (pv == 0.0) {
      auto dr = estimate_dr(space, config);
      Check c;
      c.claim_id = "dr-consistency@p=0";
      c.claim = "DR = MR_0";
      c.lhs = dr.value;
      c.rhs = mr.value;
      c.margin = 1e-6 - std::abs(dr.value - mr.value);
      c.verdict = std::abs(dr.value - mr.value) < 1e-6 ? "holds" : "violated";
      if (c.verdict == "violated") c.witness = dr.witness.to_json();
      rep.checks.push_back(c);
    }

    // Tension detector: the factored pointwise cap (4-3p)/(2-p) and the
    // asserted lower bound max(eps0, 1) are compared analytically, so the
    // conclusion does not depend on optimizer quality.
    const double cap = (4.0 - 3.0 * pv) / (2.0 - pv);
    if (cap < demand_eps0 - 0.05) {
      Finding f;
      f.kind = "internal-tension";
      std::ostringstream os;
      os << "at p=" << pv << " the pointwise cap (4-3p)/(2-p)=" << cap
         << " is below the asserted lower bound max(eps0,1)=" << demand_eps0
         << "; both cannot hold for this space";
      f.detail = os.str();
      f.data = {{"p", pv},
                {"cap", cap},
                {"eps0", e0.value},
                {"mr_estimate", mr.value},
                {"mr_witness", mr.witness.to_json()}};
      rep.findings.push_back(f);
    }
  }

  nlohmann::json side{{"eps0", e0.value}, {"rho_prime_zero", rp.value}};
  if (!rep.findings.empty()) rep.findings.front().data["context"] = side;
  return rep;
}

}  // namespace normgeo
