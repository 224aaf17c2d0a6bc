#include "normgeo/constants.hpp"

#include <algorithm>
#include <cmath>

#include "normgeo/errors.hpp"

namespace normgeo {

namespace {

nlohmann::json config_json(const OptimizerConfig& c) {
  return nlohmann::json{{"starts", c.starts},
                        {"max_iterations", c.max_iterations},
                        {"step_tolerance", c.step_tolerance},
                        {"value_tolerance", c.value_tolerance},
                        {"seed", c.seed},
                        {"grid_resolution", c.grid_resolution},
                        {"parallelism", c.parallelism}};
}

// Reduced budget for inner loops (the delta calls inside the eps0 bisection,
// the rho ladder inside rho').
OptimizerConfig light(const OptimizerConfig& c) {
  OptimizerConfig l = c;
  l.grid_resolution = std::min(c.grid_resolution, 72);
  l.starts = std::min(c.starts, 16);
  l.max_iterations = std::min(c.max_iterations, 250);
  return l;
}

Vector axpy(const Vector& x, const Vector& y, double a, double b) {
  Vector r(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) r[i] = a * x[i] + b * y[i];
  return r;
}

double angular_alpha(const NormedSpace& s, const Vector& x, const Vector& y) {
  return p_angular(s, x, y, Exponent(0.0));
}

double dw_pointwise(const NormedSpace& s, const Vector& x, const Vector& y) {
  const double nx = s.norm(x);
  const double ny = s.norm(y);
  const Vector d = axpy(x, y, 1.0, -1.0);
  const double nd = s.norm(d);
  if (nd <= 1e-10 * std::max(nx, ny)) {
    throw DegenerateDenominator("dw: x = y excluded");
  }
  return (nx + ny) / nd * angular_alpha(s, x, y);
}

struct MrSearch {
  double value = 0.0;
  Witness witness;
  double sphere_lambda_value = 0.0;
  double raw_pair_value = 0.0;
  bool converged = false;
};

// Shared search core for MR_p and DR (= MR_0): the Prop-style sphere-lambda
// form is the primary route (compact domain, degeneracy handled by the
// excluded band at lambda = 1), the raw-pair quotient the secondary one.
MrSearch mr_search(const NormedSpace& space, Exponent p, const OptimizerConfig& config) {
  MrSearch out;

  SearchDomain dom_sphere;
  dom_sphere.space = space;
  dom_sphere.sphere_count = 2;
  dom_sphere.scalar_interval = {std::exp2(-10.0), std::exp2(10.0)};
  dom_sphere.excluded_scalar = 1.0;
  Objective obj_sphere = [&](const DomainPoint& pt) {
    return sphere_lambda_ratio(space, pt.points[0], pt.points[1], *pt.scalar, p);
  };
  auto res_a = maximize(obj_sphere, dom_sphere, config);

  SearchDomain dom_raw;
  dom_raw.space = space;
  dom_raw.sphere_count = 2;
  dom_raw.scalar_interval = {std::exp2(-10.0), std::exp2(10.0)};
  Objective obj_raw = [&](const DomainPoint& pt) {
    const Vector x = axpy(pt.points[0], pt.points[0], *pt.scalar, 0.0);
    return ratio(space, x, pt.points[1], p);
  };
  OptimizerConfig cfg_b = config;
  cfg_b.seed = config.seed + 1;
  auto res_b = maximize(obj_raw, dom_raw, cfg_b);

  out.sphere_lambda_value = std::isfinite(res_a.best_value) ? res_a.best_value : 0.0;
  out.raw_pair_value = std::isfinite(res_b.best_value) ? res_b.best_value : 0.0;
  if (out.sphere_lambda_value >= out.raw_pair_value) {
    out.value = out.sphere_lambda_value;
    out.witness.vectors = res_a.argmax.points;
    out.witness.scalar = res_a.argmax.scalar;
  } else {
    out.value = out.raw_pair_value;
    out.witness.vectors = {axpy(res_b.argmax.points[0], res_b.argmax.points[0],
                                *res_b.argmax.scalar, 0.0),
                           res_b.argmax.points[1]};
  }
  out.converged = std::isfinite(res_a.best_value) && std::isfinite(res_b.best_value);
  return out;
}

}  // namespace

nlohmann::json Witness::to_json() const {
  nlohmann::json j{{"vectors", vectors}};
  if (scalar) j["scalar"] = *scalar;
  return j;
}

nlohmann::json EstimateResult::to_json() const {
  nlohmann::json j{{"constant", constant_name},
                   {"space", space},
                   {"value", value},
                   {"witness", witness.to_json()},
                   {"converged", converged},
                   {"config", config_json(config_echo)}};
  if (p_or_param) {
    j["param"] = *p_or_param;
  } else {
    j["param"] = nullptr;
  }
  if (!extras.is_null()) j["extras"] = extras;
  return j;
}

EstimateResult estimate_mr(const NormedSpace& space, Exponent p, const OptimizerConfig& config) {
  EstimateResult r;
  r.constant_name = "mr";
  r.space = space.descriptor();
  r.p_or_param = p.p;
  r.config_echo = config;
  if (p.p == 1.0) {
    // MR_1 = 1 for every space: both distances reduce to ||x - y||.
    r.value = 1.0;
    Vector e1(space.dim(), 0.0), me1(space.dim(), 0.0);
    e1[0] = 1.0;
    const double n = space.norm(e1);
    e1[0] /= n;
    me1[0] = -e1[0];
    r.witness.vectors = {e1, me1};
    r.witness.scalar = 2.0;
    r.converged = true;
    r.extras = {{"analytic", true}};
    return r;
  }
  auto s = mr_search(space, p, config);
  r.value = s.value;
  r.witness = s.witness;
  r.converged = s.converged;
  r.extras = {{"sphere_lambda_value", s.sphere_lambda_value},
              {"raw_pair_value", s.raw_pair_value}};
  return r;
}

EstimateResult estimate_dr(const NormedSpace& space, const OptimizerConfig& config) {
  auto s = mr_search(space, Exponent(0.0), config);
  EstimateResult r;
  r.constant_name = "dr";
  r.space = space.descriptor();
  r.config_echo = config;
  r.value = s.value;
  r.witness = s.witness;
  r.converged = s.converged;
  r.extras = {{"sphere_lambda_value", s.sphere_lambda_value},
              {"raw_pair_value", s.raw_pair_value},
              {"cross_check", "raw alpha/beta search vs sphere-lambda form"}};
  return r;
}

EstimateResult estimate_dw(const NormedSpace& space, const OptimizerConfig& config) {
  SearchDomain dom;
  dom.space = space;
  dom.sphere_count = 2;
  dom.scalar_interval = {std::exp2(-10.0), std::exp2(10.0)};
  dom.excluded_scalar = 1.0;  // continuation target: the supremum sits near x = y
  Objective obj = [&](const DomainPoint& pt) {
    const Vector y = axpy(pt.points[1], pt.points[1], *pt.scalar, 0.0);
    return dw_pointwise(space, pt.points[0], y);
  };
  auto res = maximize(obj, dom, config);

  EstimateResult r;
  r.constant_name = "dw";
  r.space = space.descriptor();
  r.config_echo = config;
  r.value = std::isfinite(res.best_value) ? res.best_value : 0.0;
  if (!res.argmax.points.empty()) {
    r.witness.vectors = {res.argmax.points[0],
                         axpy(res.argmax.points[1], res.argmax.points[1], *res.argmax.scalar, 0.0)};
  }
  r.converged = std::isfinite(res.best_value);
  if (r.value < 2.0 - 1e-6 || r.value > 4.0 + 1e-6) {
    r.extras = {{"range_warning", "estimate outside the analytic range [2, 4]"}};
  }
  return r;
}

EstimateResult modulus_convexity(const NormedSpace& space, double eps,
                                 const OptimizerConfig& config) {
  if (eps < 0.0 || eps > 2.0) throw std::invalid_argument("modulus_convexity: eps must be in [0,2]");
  SearchDomain dom;
  dom.space = space;
  dom.sphere_count = 2;
  dom.ball = true;
  Objective obj = [&](const DomainPoint& pt) {
    return 1.0 - space.norm(axpy(pt.points[0], pt.points[1], 0.5, 0.5));
  };
  Objective margin = [&](const DomainPoint& pt) {
    return space.norm(axpy(pt.points[0], pt.points[1], 1.0, -1.0)) - eps;
  };
  auto res = minimize_constrained(obj, dom, margin, config);

  EstimateResult r;
  r.constant_name = "delta";
  r.space = space.descriptor();
  r.p_or_param = eps;
  r.config_echo = config;
  r.value = res.best_value;
  r.witness.vectors = res.argmax.points;
  r.converged = res.feasible;
  if (!res.feasible) r.extras = {{"note", res.note}};
  return r;
}

EstimateResult eps0(const NormedSpace& space, const OptimizerConfig& config) {
  const OptimizerConfig inner = light(config);
  const double zero_threshold = 1e-6;

  EstimateResult r;
  r.constant_name = "eps0";
  r.space = space.descriptor();
  r.config_echo = config;

  Witness last_zero;
  auto delta_is_zero = [&](double eps) {
    auto d = modulus_convexity(space, eps, inner);
    if (d.converged && d.value < zero_threshold) {
      last_zero = d.witness;
      last_zero.scalar = eps;
      return true;
    }
    return false;
  };

  double lo = 0.0, hi = 2.0;
  if (delta_is_zero(2.0)) {
    lo = 2.0;
  } else {
    for (int step = 0; step < 40; ++step) {
      const double mid = 0.5 * (lo + hi);
      if (delta_is_zero(mid)) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
  }
  r.value = lo;  // largest eps certified to have (numerically) zero delta
  r.witness = last_zero;
  r.converged = true;
  r.extras = {{"bracket_hi", hi}, {"zero_threshold", zero_threshold}};
  return r;
}

EstimateResult modulus_smoothness(const NormedSpace& space, double tau,
                                  const OptimizerConfig& config) {
  if (!(tau > 0.0)) throw std::invalid_argument("modulus_smoothness: tau must be > 0");
  SearchDomain dom;
  dom.space = space;
  dom.sphere_count = 2;
  Objective obj = [&](const DomainPoint& pt) {
    const double a = space.norm(axpy(pt.points[0], pt.points[1], 1.0, tau));
    const double b = space.norm(axpy(pt.points[0], pt.points[1], 1.0, -tau));
    return 0.5 * (a + b) - 1.0;
  };
  auto res = maximize(obj, dom, config);

  EstimateResult r;
  r.constant_name = "rho";
  r.space = space.descriptor();
  r.p_or_param = tau;
  r.config_echo = config;
  r.value = std::isfinite(res.best_value) ? res.best_value : 0.0;
  r.witness.vectors = res.argmax.points;
  r.witness.scalar = tau;
  r.converged = std::isfinite(res.best_value);
  return r;
}

EstimateResult rho_prime_zero(const NormedSpace& space, const OptimizerConfig& config) {
  const OptimizerConfig inner = light(config);

  EstimateResult r;
  r.constant_name = "rho-prime";
  r.space = space.descriptor();
  r.config_echo = config;

  // rho(tau)/tau on a dyadic ladder, then Richardson extrapolation in tau.
  std::vector<double> taus, ratios;
  Witness finest;
  for (int k = 2; k <= 9; ++k) {
    const double tau = std::exp2(-k);
    auto rho = modulus_smoothness(space, tau, inner);
    taus.push_back(tau);
    ratios.push_back(rho.value / tau);
    finest = rho.witness;
  }
  std::vector<std::vector<double>> table{ratios};
  for (int j = 1; j <= 3; ++j) {
    const double f = std::exp2(j);
    std::vector<double> next;
    const auto& prev = table.back();
    for (std::size_t i = 1; i < prev.size(); ++i) {
      next.push_back((f * prev[i] - prev[i - 1]) / (f - 1.0));
    }
    table.push_back(std::move(next));
  }
  double extrap = table.back().back();
  const double prev_level = table[table.size() - 2].back();
  extrap = std::clamp(extrap, 0.0, 1.0);
  r.value = extrap;
  r.witness = finest;
  r.converged = std::abs(extrap - std::clamp(prev_level, 0.0, 1.0)) < 1e-2;

  r.extras = {{"tau_ladder", taus}, {"ratio_ladder", ratios}};
  // Duality cross-check: rho'(0) = eps0(dual)/2. Attached, never averaged in.
  try {
    auto e0d = eps0(space.dual(), inner);
    r.extras["duality_value"] = 0.5 * e0d.value;
    r.extras["dual_space"] = e0d.space;
  } catch (const std::exception& e) {
    r.extras["duality_value"] = nullptr;
    r.extras["duality_note"] = e.what();
  }
  return r;
}

NonsquareVerdict is_uniformly_nonsquare(const NormedSpace& space, const OptimizerConfig& config) {
  NonsquareVerdict v;
  v.eps0_estimate = eps0(space, config);
  v.margin = 2.0 - v.eps0_estimate.value;
  v.uniformly_nonsquare = v.eps0_estimate.value < 2.0 - 0.05;
  return v;
}

double reevaluate(const NormedSpace& space, const EstimateResult& est) {
  const auto& w = est.witness;
  if (est.constant_name == "mr" || est.constant_name == "dr") {
    const Exponent p(est.p_or_param.value_or(0.0), true);
    if (w.scalar) {
      return sphere_lambda_ratio(space, w.vectors.at(0), w.vectors.at(1), *w.scalar, p);
    }
    return ratio(space, w.vectors.at(0), w.vectors.at(1), p);
  }
  if (est.constant_name == "dw") {
    return dw_pointwise(space, w.vectors.at(0), w.vectors.at(1));
  }
  if (est.constant_name == "delta") {
    return 1.0 - space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 0.5, 0.5));
  }
  if (est.constant_name == "rho") {
    const double tau = w.scalar.value_or(est.p_or_param.value_or(0.0));
    const double a = space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 1.0, tau));
    const double b = space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 1.0, -tau));
    return 0.5 * (a + b) - 1.0;
  }
  if (est.constant_name == "eps0") {
    // The witness certifies a zero-delta pair at separation >= value.
    return space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 1.0, -1.0));
  }
  if (est.constant_name == "rho-prime") {
    const double tau = w.scalar.value_or(std::exp2(-9.0));
    const double a = space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 1.0, tau));
    const double b = space.norm(axpy(w.vectors.at(0), w.vectors.at(1), 1.0, -tau));
    return (0.5 * (a + b) - 1.0) / tau;
  }
  throw std::invalid_argument("reevaluate: unknown constant " + est.constant_name);
}

}  // namespace normgeo
