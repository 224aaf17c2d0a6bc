#include "normgeo/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "normgeo/errors.hpp"
#include "normgeo/rng.hpp"

namespace normgeo {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kPi = 3.141592653589793238462643383279502884;

struct Candidate {
  double value = kNegInf;
  DomainPoint pt;
  bool valid = false;
};

bool lex_less(const DomainPoint& a, const DomainPoint& b) {
  const double sa = a.scalar.value_or(0.0);
  const double sb = b.scalar.value_or(0.0);
  if (sa != sb) return sa < sb;
  for (std::size_t i = 0; i < a.points.size() && i < b.points.size(); ++i) {
    for (std::size_t j = 0; j < a.points[i].size(); ++j) {
      if (a.points[i][j] != b.points[i][j]) return a.points[i][j] < b.points[i][j];
    }
  }
  return false;
}

// Deterministic reduction: larger value wins; exact ties go to the
// lexicographically smallest point, so the result is independent of the
// order in which candidates were produced.
void merge(Candidate& best, const Candidate& c) {
  if (!c.valid) return;
  if (!best.valid || c.value > best.value ||
      (c.value == best.value && lex_less(c.pt, best.pt))) {
    best = c;
  }
}

// Runs fn(i) for i in [0, n) on `threads` workers with a fixed round-robin
// partition. Each job writes only its own output slot.
template <typename F>
void parallel_for(int n, unsigned threads, F&& fn) {
  if (threads <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  const unsigned t = std::min<unsigned>(threads, static_cast<unsigned>(n));
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (unsigned w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < n; i += static_cast<int>(t)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

class Problem {
 public:
  Problem(const Objective& objective, const SearchDomain& domain)
      : obj_(objective), dom_(domain), dim_(domain.space.dim()) {
    n_ = dom_.sphere_count * dim_ + (dom_.scalar_interval ? 1 : 0);
    if (dom_.scalar_interval) {
      tlo_ = std::log2(dom_.scalar_interval->first);
      thi_ = std::log2(dom_.scalar_interval->second);
    }
  }

  int n() const { return n_; }
  int dim() const { return dim_; }
  bool has_scalar() const { return dom_.scalar_interval.has_value(); }
  double tlo() const { return tlo_; }
  double thi() const { return thi_; }

  bool decode(const std::vector<double>& raw, DomainPoint& pt) const {
    pt.points.assign(dom_.sphere_count, Vector(dim_));
    for (int s = 0; s < dom_.sphere_count; ++s) {
      Vector u(raw.begin() + s * dim_, raw.begin() + (s + 1) * dim_);
      for (double v : u) {
        if (!std::isfinite(v)) return false;
      }
      const double nu = dom_.space.norm(u);
      if (nu < 1e-12) return false;
      if (!dom_.ball || nu > 1.0) {
        for (double& v : u) v /= nu;
      }
      pt.points[s] = std::move(u);
    }
    if (dom_.scalar_interval) {
      double t = raw[n_ - 1];
      if (!std::isfinite(t)) return false;
      t = std::clamp(t, tlo_, thi_);
      const double lam = std::exp2(t);
      if (dom_.excluded_scalar &&
          std::abs(lam - *dom_.excluded_scalar) < dom_.excluded_band) {
        return false;  // open exclusion band
      }
      pt.scalar = lam;
    }
    return true;
  }

  // Returns the objective value; -inf marks excluded/degenerate points,
  // NaN a genuinely non-finite objective (the caller abandons the start).
  double eval(const std::vector<double>& raw, DomainPoint& pt) const {
    if (!decode(raw, pt)) return kNegInf;
    double v;
    try {
      v = obj_(pt);
    } catch (const DegenerateDenominator&) {
      return kNegInf;
    } catch (const std::exception&) {
      return kNegInf;
    }
    if (std::isnan(v)) return std::numeric_limits<double>::quiet_NaN();
    return v;
  }

  Candidate probe(const std::vector<double>& raw) const {
    Candidate c;
    DomainPoint pt;
    const double v = eval(raw, pt);
    if (std::isfinite(v)) {
      c.value = v;
      c.pt = std::move(pt);
      c.valid = true;
    }
    return c;
  }

  const SearchDomain& domain() const { return dom_; }

 private:
  const Objective& obj_;
  const SearchDomain& dom_;
  int dim_;
  int n_;
  double tlo_ = 0.0, thi_ = 0.0;
};

struct NmResult {
  Candidate best;
  long evals = 0;
  bool aborted = false;  // non-finite objective encountered
};

// Nelder-Mead on the raw coordinates. `fixed_scalar`, when set, pins the
// scalar slot so the simplex only explores the sphere coordinates.
NmResult nelder_mead(const Problem& prob, std::vector<double> start,
                     std::vector<double> step, const OptimizerConfig& cfg,
                     std::optional<double> fixed_scalar_t = std::nullopt) {
  NmResult res;
  const int full_n = prob.n();
  const int n = fixed_scalar_t ? full_n - 1 : full_n;
  if (fixed_scalar_t) {
    start.resize(full_n);
    start[full_n - 1] = *fixed_scalar_t;
  }

  auto expand = [&](const std::vector<double>& x) {
    if (!fixed_scalar_t) return x;
    std::vector<double> full(x.begin(), x.end());
    full.push_back(*fixed_scalar_t);
    return full;
  };
  auto value_of = [&](const std::vector<double>& x, DomainPoint& pt) {
    ++res.evals;
    return prob.eval(expand(x), pt);
  };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(n));
  std::vector<double> fv(n + 1, kNegInf);
  std::vector<DomainPoint> pts(n + 1);
  std::vector<double> base(start.begin(), start.begin() + n);
  for (int i = 0; i <= n; ++i) {
    simplex[i] = base;
    if (i > 0) simplex[i][i - 1] += (i - 1 < static_cast<int>(step.size()) ? step[i - 1] : 0.1);
    fv[i] = value_of(simplex[i], pts[i]);
    if (std::isnan(fv[i])) {
      res.aborted = true;
      return res;
    }
  }

  auto order = [&] {
    std::vector<int> idx(n + 1);
    for (int i = 0; i <= n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] > fv[b]; });
    std::vector<std::vector<double>> s2(n + 1);
    std::vector<double> f2(n + 1);
    std::vector<DomainPoint> p2(n + 1);
    for (int i = 0; i <= n; ++i) {
      s2[i] = simplex[idx[i]];
      f2[i] = fv[idx[i]];
      p2[i] = pts[idx[i]];
    }
    simplex.swap(s2);
    fv.swap(f2);
    pts.swap(p2);
  };
  order();
  if (fv[0] == kNegInf) {
    res.aborted = true;
    return res;
  }

  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    // Termination: simplex collapsed in space or in value.
    double diam = 0.0;
    for (int i = 1; i <= n; ++i) {
      for (int j = 0; j < n; ++j) diam = std::max(diam, std::abs(simplex[i][j] - simplex[0][j]));
    }
    if (diam < cfg.step_tolerance ||
        (std::isfinite(fv[n]) && fv[0] - fv[n] < cfg.value_tolerance)) {
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (int j = 0; j < n; ++j) centroid[j] /= n;

    auto affine = [&](double coef) {
      std::vector<double> x(n);
      for (int j = 0; j < n; ++j) x[j] = centroid[j] + coef * (simplex[n][j] - centroid[j]);
      return x;
    };

    DomainPoint pr, pe, pc;
    auto xr = affine(-1.0);  // reflection
    const double fr = value_of(xr, pr);
    if (std::isnan(fr)) {
      res.aborted = true;
      break;
    }
    if (fr > fv[0]) {
      auto xe = affine(-2.0);  // expansion
      const double fe = value_of(xe, pe);
      if (std::isnan(fe)) {
        res.aborted = true;
        break;
      }
      if (fe > fr) {
        simplex[n] = xe;
        fv[n] = fe;
        pts[n] = pe;
      } else {
        simplex[n] = xr;
        fv[n] = fr;
        pts[n] = pr;
      }
    } else if (fr > fv[n - 1]) {
      simplex[n] = xr;
      fv[n] = fr;
      pts[n] = pr;
    } else {
      auto xc = affine(fr > fv[n] ? -0.5 : 0.5);  // contraction
      const double fc = value_of(xc, pc);
      if (std::isnan(fc)) {
        res.aborted = true;
        break;
      }
      if (fc > std::max(fr, fv[n])) {
        simplex[n] = xc;
        fv[n] = fc;
        pts[n] = pc;
      } else {
        // Shrink toward the best vertex.
        for (int i = 1; i <= n; ++i) {
          for (int j = 0; j < n; ++j) simplex[i][j] = simplex[0][j] + 0.5 * (simplex[i][j] - simplex[0][j]);
          fv[i] = value_of(simplex[i], pts[i]);
          if (std::isnan(fv[i])) {
            res.aborted = true;
            break;
          }
        }
        if (res.aborted) break;
      }
    }
    order();
  }

  if (std::isfinite(fv[0])) {
    res.best.value = fv[0];
    res.best.pt = pts[0];
    res.best.valid = true;
  }
  return res;
}

std::vector<double> angle_to_raw(const Problem& prob, const std::vector<double>& angles,
                                 std::optional<double> t) {
  std::vector<double> raw;
  raw.reserve(prob.n());
  for (double a : angles) {
    // Scaled to the unit sphere of the space, so ball domains probe the
    // boundary during the grid phase.
    Vector u{std::cos(a), std::sin(a)};
    const double nu = prob.domain().space.norm(u);
    raw.push_back(u[0] / nu);
    raw.push_back(u[1] / nu);
  }
  if (prob.has_scalar()) raw.push_back(t.value_or(0.0));
  return raw;
}

std::vector<double> scalar_grid(const Problem& prob, const SearchDomain& dom) {
  std::vector<double> ts;
  if (!prob.has_scalar()) return ts;
  const int base = 21;
  for (int i = 0; i < base; ++i) {
    ts.push_back(prob.tlo() + (prob.thi() - prob.tlo()) * i / (base - 1));
  }
  if (dom.excluded_scalar) {
    const double ex = *dom.excluded_scalar;
    for (double d : {3e-1, 1e-1, 3e-2, 1e-2, 1e-3, 1e-4, 1e-5, 2e-6}) {
      for (double sgn : {-1.0, 1.0}) {
        const double lam = ex + sgn * d * std::max(1.0, std::abs(ex));
        if (lam <= 0.0) continue;
        if (std::abs(lam - ex) < dom.excluded_band) continue;
        const double t = std::log2(lam);
        if (t >= prob.tlo() && t <= prob.thi()) ts.push_back(t);
      }
    }
  }
  return ts;
}

}  // namespace

OptimizationOutcome maximize(const Objective& objective, const SearchDomain& domain,
                             const OptimizerConfig& config,
                             const std::vector<DomainPoint>& warm_starts) {
  if (domain.sphere_count < 1 || domain.sphere_count > 2) {
    throw std::invalid_argument("maximize: sphere_count must be 1 or 2");
  }
  if (domain.scalar_interval &&
      !(domain.scalar_interval->first > 0.0 &&
        domain.scalar_interval->first < domain.scalar_interval->second)) {
    throw std::invalid_argument("maximize: invalid scalar interval");
  }
  Problem prob(objective, domain);
  const int dim = prob.dim();

  OptimizationOutcome out;
  Candidate best;
  long evals = 0;
  int abandoned = 0;
  auto note_improvement = [&] {
    if (best.valid &&
        (out.improvement_trace.empty() || best.value > out.improvement_trace.back().second)) {
      out.improvement_trace.emplace_back(evals, best.value);
    }
  };

  // Warm starts (used by the penalty loop to chain restarts).
  for (const auto& w : warm_starts) {
    std::vector<double> raw;
    for (const auto& v : w.points) raw.insert(raw.end(), v.begin(), v.end());
    if (prob.has_scalar()) raw.push_back(std::log2(w.scalar.value_or(1.0)));
    if (static_cast<int>(raw.size()) != prob.n()) continue;
    ++evals;
    merge(best, prob.probe(raw));
  }
  note_improvement();

  // Phase 1: exhaustive angular grid (dimension 2 only).
  std::vector<Candidate> grid_top;
  if (dim == 2) {
    const int res = std::max(8, config.grid_resolution);
    const auto ts = scalar_grid(prob, domain);
    const int nt = prob.has_scalar() ? static_cast<int>(ts.size()) : 1;
    const int outer = res;
    std::vector<std::vector<Candidate>> per_row(outer);
    parallel_for(outer, config.parallelism, [&](int i) {
      const double a1 = 2.0 * kPi * i / res;
      std::vector<Candidate> local;
      auto consider = [&](const Candidate& c) {
        if (!c.valid) return;
        local.push_back(c);
        std::sort(local.begin(), local.end(), [](const Candidate& x, const Candidate& y) {
          return x.value > y.value || (x.value == y.value && lex_less(x.pt, y.pt));
        });
        if (local.size() > 4) local.resize(4);
      };
      if (domain.sphere_count == 1) {
        for (int k = 0; k < nt; ++k) {
          consider(prob.probe(angle_to_raw(prob, {a1},
                                           prob.has_scalar() ? std::optional<double>(ts[k])
                                                             : std::nullopt)));
        }
      } else {
        for (int j = 0; j < res; ++j) {
          const double a2 = 2.0 * kPi * j / res;
          for (int k = 0; k < nt; ++k) {
            consider(prob.probe(angle_to_raw(prob, {a1, a2},
                                             prob.has_scalar() ? std::optional<double>(ts[k])
                                                               : std::nullopt)));
          }
        }
      }
      per_row[i] = std::move(local);
    });
    evals += static_cast<long>(outer) * (domain.sphere_count == 2 ? res : 1) * nt;
    for (const auto& row : per_row) {
      for (const auto& c : row) {
        merge(best, c);
        grid_top.push_back(c);
      }
    }
    std::sort(grid_top.begin(), grid_top.end(), [](const Candidate& x, const Candidate& y) {
      return x.value > y.value || (x.value == y.value && lex_less(x.pt, y.pt));
    });
    if (grid_top.size() > 8) grid_top.resize(8);
    note_improvement();
  }

  // Phase 2: multi-start Nelder-Mead.
  {
    std::vector<std::pair<std::vector<double>, std::vector<double>>> seeds;  // (start, step)
    for (const auto& c : grid_top) {
      std::vector<double> raw;
      for (const auto& v : c.pt.points) raw.insert(raw.end(), v.begin(), v.end());
      if (prob.has_scalar()) raw.push_back(std::log2(*c.pt.scalar));
      std::vector<double> step(prob.n(), 2.0 * kPi / std::max(8, config.grid_resolution));
      if (prob.has_scalar()) step.back() = 0.25;
      seeds.emplace_back(std::move(raw), std::move(step));
    }
    Rng rng(config.seed);
    for (int s = 0; s < config.starts; ++s) {
      std::vector<double> raw(prob.n());
      for (int k = 0; k < domain.sphere_count * dim; ++k) raw[k] = rng.gaussian();
      if (prob.has_scalar()) raw[prob.n() - 1] = rng.uniform(prob.tlo(), prob.thi());
      std::vector<double> step(prob.n(), 0.4);
      if (prob.has_scalar()) step.back() = 1.0;
      seeds.emplace_back(std::move(raw), std::move(step));
    }
    // Near-degenerate seeds: excluded-scalar objectives typically peak next
    // to the excluded value with both sphere points nearly coincident.
    if (domain.excluded_scalar && domain.sphere_count == 2) {
      for (int k = 0; k < 8; ++k) {
        Vector u(dim);
        for (auto& v : u) v = rng.gaussian();
        const double nu = domain.space.norm(u);
        if (nu < 1e-8) continue;
        for (auto& v : u) v /= nu;
        for (double d : {1e-1, 1e-2, 1e-3}) {
          for (double sgn : {-1.0, 1.0}) {
            std::vector<double> raw;
            raw.insert(raw.end(), u.begin(), u.end());
            for (int i = 0; i < dim; ++i) raw.push_back(u[i] + d * rng.gaussian());
            if (prob.has_scalar()) {
              const double lam = *domain.excluded_scalar * (1.0 + sgn * d);
              raw.push_back(std::clamp(std::log2(std::max(lam, 1e-300)), prob.tlo(), prob.thi()));
            }
            std::vector<double> step(prob.n(), d);
            seeds.emplace_back(std::move(raw), std::move(step));
          }
        }
      }
    }

    std::vector<NmResult> results(seeds.size());
    parallel_for(static_cast<int>(seeds.size()), config.parallelism, [&](int i) {
      results[i] = nelder_mead(prob, seeds[i].first, seeds[i].second, config);
    });
    for (const auto& r : results) {
      evals += r.evals;
      if (r.aborted) ++abandoned;
      merge(best, r.best);
    }
    note_improvement();
  }

  // Phase 3: scalar-ladder continuation toward the excluded value. The
  // supremum of a quotient-type objective often sits arbitrarily close to
  // its excluded degeneracy; a shrinking ladder with warm-started direction
  // searches follows that ridge.
  if (prob.has_scalar() && domain.excluded_scalar) {
    const double ex = *domain.excluded_scalar;
    const double sc = std::max(1.0, std::abs(ex));
    const std::vector<double> ladder = {3e-1, 1e-1, 3e-2, 1e-2, 3e-3, 1e-3, 3e-4,
                                        1e-4, 3e-5, 1e-5, 3e-6, 1.000001e-6};
    for (double sgn : {-1.0, 1.0}) {
      std::vector<Vector> chain =
          best.valid ? best.pt.points : std::vector<Vector>(domain.sphere_count, Vector(dim, 0.0));
      if (!best.valid) {
        Rng r2(config.seed + 17);
        for (auto& v : chain) {
          for (auto& c : v) c = r2.gaussian();
        }
      }
      double chain_angles[2] = {0.0, 0.0};
      if (dim == 2) {
        for (int s = 0; s < domain.sphere_count; ++s) {
          chain_angles[s] = std::atan2(chain[s][1], chain[s][0]);
        }
      }
      for (double eta : ladder) {
        const double lam = ex + sgn * eta * sc;
        if (lam <= 0.0) continue;
        if (std::abs(lam - ex) < domain.excluded_band) continue;
        const double t = std::log2(lam);
        if (t < prob.tlo() || t > prob.thi()) continue;

        Candidate stage;
        if (dim == 2) {
          // Local angle grid around the chain, window shrinking with eta.
          const double w = std::min(kPi, std::max(200.0 * eta, 1e-5));
          const int m = 48;
          for (int i = 0; i <= m; ++i) {
            const double a1 = chain_angles[0] - w + 2.0 * w * i / m;
            if (domain.sphere_count == 1) {
              merge(stage, prob.probe(angle_to_raw(prob, {a1}, t)));
            } else {
              for (int j = 0; j <= m; ++j) {
                const double a2 = chain_angles[1] - w + 2.0 * w * j / m;
                merge(stage, prob.probe(angle_to_raw(prob, {a1, a2}, t)));
              }
            }
          }
          evals += domain.sphere_count == 1 ? (m + 1) : (m + 1) * (m + 1);
        }
        // Nelder-Mead polish with the scalar pinned.
        std::vector<double> raw0;
        const auto& seed_pts = stage.valid ? stage.pt.points : chain;
        for (const auto& v : seed_pts) raw0.insert(raw0.end(), v.begin(), v.end());
        std::vector<double> step(domain.sphere_count * dim, std::max(1e-4, 5.0 * eta));
        auto r = nelder_mead(prob, raw0, step, config, t);
        evals += r.evals;
        if (r.aborted) ++abandoned;
        merge(stage, r.best);

        if (stage.valid) {
          chain = stage.pt.points;
          if (dim == 2) {
            for (int s = 0; s < domain.sphere_count; ++s) {
              chain_angles[s] = std::atan2(chain[s][1], chain[s][0]);
            }
          }
          merge(best, stage);
          note_improvement();
        }
      }
    }
  }

  out.best_value = best.valid ? best.value : kNegInf;
  if (best.valid) out.argmax = best.pt;
  out.iterations_used = evals;
  out.abandoned_starts = abandoned;
  note_improvement();
  return out;
}

OptimizationOutcome minimize_constrained(const Objective& objective, const SearchDomain& domain,
                                         const Objective& constraint_margin,
                                         const OptimizerConfig& config) {
  struct Level {
    double f = 0.0;
    double violation = 0.0;
    OptimizationOutcome out;
    bool valid = false;
  };
  std::vector<Level> levels;
  std::vector<DomainPoint> warm;
  long evals = 0;
  double weight = 1e2;
  for (int restart = 0; restart < 9; ++restart, weight *= 10.0) {
    const double w = weight;
    Objective penalized = [&](const DomainPoint& pt) {
      const double m = constraint_margin(pt);
      double v = -objective(pt);
      if (m < 0.0) v -= w * m * m;
      return v;
    };
    auto res = maximize(penalized, domain, config, warm);
    evals += res.iterations_used;
    if (!std::isfinite(res.best_value)) continue;
    Level lv;
    lv.out = res;
    lv.f = objective(res.argmax);
    lv.violation = std::max(0.0, -constraint_margin(res.argmax));
    lv.valid = true;
    levels.push_back(lv);
    warm = {res.argmax};
    // Converged: feasible at tolerance and the incumbent value settled.
    if (lv.violation < 1e-8 && levels.size() >= 2 &&
        levels[levels.size() - 2].violation < 1e-8 &&
        std::abs(levels[levels.size() - 2].f - lv.f) < 1e-9) {
      break;
    }
  }

  OptimizationOutcome out;
  const Level* pick = nullptr;
  for (const auto& lv : levels) {
    if (!lv.valid || lv.violation >= 1e-8) continue;
    if (!pick || lv.f < pick->f) pick = &lv;
  }
  if (pick) {
    out = pick->out;
    out.best_value = pick->f;
    out.feasible = true;
  } else {
    // Report the least-infeasible point found.
    for (const auto& lv : levels) {
      if (lv.valid && (!pick || lv.violation < pick->violation)) pick = &lv;
    }
    if (pick) {
      out = pick->out;
      out.best_value = pick->f;
    }
    out.feasible = false;
    out.note = "infeasible-at-tolerance";
  }
  out.iterations_used = evals;
  return out;
}

}  // namespace normgeo
