#include "normgeo/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "normgeo/errors.hpp"
#include "normgeo/rng.hpp"

namespace normgeo {

namespace {

void require_finite(const Vector& x) {
  for (double v : x) {
    if (!std::isfinite(v)) throw NonFiniteInput("vector entry is not finite");
  }
}

void require_dim(const NormedSpace& s, const Vector& x, const char* what) {
  if (static_cast<int>(x.size()) != s.dim()) {
    throw DimensionMismatch(std::string(what) + ": expected dim " + std::to_string(s.dim()) +
                            ", got " + std::to_string(x.size()));
  }
}

double conjugate_exponent(double q) {
  if (q == 1.0) return kInf;
  if (std::isinf(q)) return 1.0;
  return q / (q - 1.0);
}

std::string format_exponent(double q) {
  if (std::isinf(q)) return "inf";
  std::ostringstream os;
  os << q;
  return os.str();
}

double cross2(const Vector& o, const Vector& a, const Vector& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Monotone-chain convex hull, counterclockwise, no duplicate endpoint.
std::vector<Vector> convex_hull_2d(std::vector<Vector> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vector& a, const Vector& b) {
    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](const Vector& a, const Vector& b) {
                          return std::abs(a[0] - b[0]) < 1e-14 && std::abs(a[1] - b[1]) < 1e-14;
                        }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Vector> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

NormedSpace NormedSpace::lp(double q, int dim) {
  if (!(q >= 1.0)) throw InvalidSpace("lp exponent must be >= 1");
  if (dim < 2) throw InvalidSpace("dim must be >= 2");
  NormedSpace s;
  s.family_ = NormFamily::Lp;
  s.dim_ = dim;
  s.q_ = q;
  return s;
}

NormedSpace NormedSpace::weighted_lp(double q, std::vector<double> weights) {
  if (!(q >= 1.0)) throw InvalidSpace("lp exponent must be >= 1");
  if (weights.size() < 2) throw InvalidSpace("dim must be >= 2");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidSpace("weights must be strictly positive");
  }
  NormedSpace s;
  s.family_ = NormFamily::WeightedLp;
  s.dim_ = static_cast<int>(weights.size());
  s.q_ = q;
  s.weights_ = std::move(weights);
  return s;
}

NormedSpace NormedSpace::polyhedral(std::vector<Vector> vertices) {
  if (vertices.empty()) throw InvalidSpace("polyhedral norm needs vertices");
  const std::size_t dim = vertices[0].size();
  for (const auto& v : vertices) {
    if (v.size() != dim) throw InvalidSpace("polyhedral vertices have mixed dimensions");
    require_finite(v);
  }
  if (dim != 2) {
    throw InvalidSpace("polyhedral norms are supported in dimension 2 only (got dim " +
                       std::to_string(dim) + "); use an Lp family for higher dimensions");
  }
  // Origin symmetry: every vertex needs its mirror.
  for (const auto& v : vertices) {
    double scale = std::max({1.0, std::abs(v[0]), std::abs(v[1])});
    bool mirrored = false;
    for (const auto& u : vertices) {
      if (std::abs(u[0] + v[0]) <= 1e-9 * scale && std::abs(u[1] + v[1]) <= 1e-9 * scale) {
        mirrored = true;
        break;
      }
    }
    if (!mirrored) {
      std::ostringstream os;
      os << "vertex set is not origin-symmetric: missing mirror vertex (" << -v[0] << ", "
         << -v[1] << ")";
      throw InvalidSpace(os.str());
    }
  }
  auto hull = convex_hull_2d(vertices);
  if (hull.size() < 4) {
    throw InvalidSpace("polyhedral vertex set is degenerate: vertices do not span the plane");
  }
  NormedSpace s;
  s.family_ = NormFamily::Polyhedral;
  s.dim_ = 2;
  s.vertices_ = std::move(vertices);
  // Facet functional of hull edge (a, b): g with g.a = g.b = 1.
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Vector& a = hull[i];
    const Vector& b = hull[(i + 1) % hull.size()];
    const double det = a[0] * b[1] - a[1] * b[0];
    if (std::abs(det) < 1e-12) {
      throw InvalidSpace("polyhedral unit ball has a facet through the origin");
    }
    s.facets_.push_back({(b[1] - a[1]) / det, (a[0] - b[0]) / det});
  }
  return s;
}

double NormedSpace::norm(const Vector& x) const {
  require_dim(*this, x, "norm");
  require_finite(x);
  switch (family_) {
    case NormFamily::Lp: {
      if (std::isinf(q_)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
      }
      if (q_ == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
      }
      if (q_ == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
      }
      double s = 0.0;
      for (double v : x) s += std::pow(std::abs(v), q_);
      return std::pow(s, 1.0 / q_);
    }
    case NormFamily::WeightedLp: {
      if (std::isinf(q_)) {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i) m = std::max(m, weights_[i] * std::abs(x[i]));
        return m;
      }
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) s += weights_[i] * std::pow(std::abs(x[i]), q_);
      return std::pow(s, 1.0 / q_);
    }
    case NormFamily::Polyhedral: {
      double m = 0.0;
      for (const auto& g : facets_) m = std::max(m, g[0] * x[0] + g[1] * x[1]);
      return m;
    }
  }
  return 0.0;
}

double NormedSpace::dual_norm(const DualFunctional& f) const {
  require_dim(*this, f, "dual_norm");
  require_finite(f);
  switch (family_) {
    case NormFamily::Lp: {
      const double qc = conjugate_exponent(q_);
      return lp(qc, dim_).norm(f);
    }
    case NormFamily::WeightedLp: {
      if (q_ == 1.0) {
        double m = 0.0;
        for (int i = 0; i < dim_; ++i) m = std::max(m, std::abs(f[i]) / weights_[i]);
        return m;
      }
      if (std::isinf(q_)) {
        double s = 0.0;
        for (int i = 0; i < dim_; ++i) s += std::abs(f[i]) / weights_[i];
        return s;
      }
      const double qc = conjugate_exponent(q_);
      double s = 0.0;
      for (int i = 0; i < dim_; ++i) {
        s += std::pow(std::abs(f[i]), qc) * std::pow(weights_[i], -qc / q_);
      }
      return std::pow(s, 1.0 / qc);
    }
    case NormFamily::Polyhedral: {
      double m = 0.0;
      for (const auto& v : vertices_) m = std::max(m, std::abs(f[0] * v[0] + f[1] * v[1]));
      return m;
    }
  }
  return 0.0;
}

DualFunctional NormedSpace::norming_functional(const Vector& x) const {
  require_dim(*this, x, "norming_functional");
  const double nx = norm(x);
  if (nx == 0.0) throw ZeroVector("norming_functional: zero vector");
  DualFunctional f(dim_, 0.0);
  switch (family_) {
    case NormFamily::Lp: {
      if (q_ == 1.0) {
        // Sign vector; s = -1 on zero entries (lexicographically smallest choice).
        for (int i = 0; i < dim_; ++i) f[i] = x[i] > 0.0 ? 1.0 : -1.0;
        return f;
      }
      if (std::isinf(q_)) {
        int j = 0;
        for (int i = 1; i < dim_; ++i) {
          if (std::abs(x[i]) > std::abs(x[j])) j = i;
        }
        f[j] = x[j] > 0.0 ? 1.0 : -1.0;
        return f;
      }
      for (int i = 0; i < dim_; ++i) {
        const double a = std::abs(x[i]);
        f[i] = (x[i] < 0.0 ? -1.0 : 1.0) * std::pow(a / nx, q_ - 1.0);
      }
      return f;
    }
    case NormFamily::WeightedLp: {
      if (q_ == 1.0) {
        for (int i = 0; i < dim_; ++i) f[i] = weights_[i] * (x[i] > 0.0 ? 1.0 : -1.0);
        return f;
      }
      if (std::isinf(q_)) {
        int j = 0;
        for (int i = 1; i < dim_; ++i) {
          if (weights_[i] * std::abs(x[i]) > weights_[j] * std::abs(x[j])) j = i;
        }
        f[j] = weights_[j] * (x[j] > 0.0 ? 1.0 : -1.0);
        return f;
      }
      for (int i = 0; i < dim_; ++i) {
        const double a = std::abs(x[i]);
        f[i] = (x[i] < 0.0 ? -1.0 : 1.0) * weights_[i] * std::pow(a / nx, q_ - 1.0);
      }
      return f;
    }
    case NormFamily::Polyhedral: {
      // Active facet, smallest index on ties.
      std::size_t best = 0;
      double bestval = -kInf;
      for (std::size_t i = 0; i < facets_.size(); ++i) {
        const double v = facets_[i][0] * x[0] + facets_[i][1] * x[1];
        if (v > bestval) {  // strict: ties keep the smallest index
          bestval = v;
          best = i;
        }
      }
      return facets_[best];
    }
  }
  return f;
}

NormedSpace NormedSpace::dual() const {
  switch (family_) {
    case NormFamily::Lp:
      return lp(conjugate_exponent(q_), dim_);
    case NormFamily::WeightedLp: {
      std::vector<double> w(weights_.size());
      if (q_ == 1.0 || std::isinf(q_)) {
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = 1.0 / weights_[i];
        return weighted_lp(q_ == 1.0 ? kInf : 1.0, std::move(w));
      }
      const double qc = conjugate_exponent(q_);
      for (std::size_t i = 0; i < w.size(); ++i) w[i] = std::pow(weights_[i], -qc / q_);
      return weighted_lp(qc, std::move(w));
    }
    case NormFamily::Polyhedral:
      // Polar polytope: the dual ball's vertices are the primal facet functionals.
      return polyhedral(facets_);
  }
  throw InvalidSpace("unknown norm family");
}

std::string NormedSpace::descriptor() const {
  std::ostringstream os;
  switch (family_) {
    case NormFamily::Lp:
      os << "l" << format_exponent(q_) << ":" << dim_;
      break;
    case NormFamily::WeightedLp: {
      os << "wl" << format_exponent(q_) << ":" << dim_ << ":[";
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) os << ",";
        os << weights_[i];
      }
      os << "]";
      break;
    }
    case NormFamily::Polyhedral:
      os << "poly:" << dim_ << ":" << vertices_.size() << "v";
      break;
  }
  return os.str();
}

std::vector<Vector> sphere_sample(const NormedSpace& space, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("sphere_sample: count must be >= 1");
  Rng rng(seed);
  std::vector<Vector> out;
  out.reserve(count);
  while (static_cast<int>(out.size()) < count) {
    Vector x(space.dim());
    for (auto& v : x) v = rng.gaussian();
    double n = space.norm(x);
    if (n < 1e-8) continue;
    for (auto& v : x) v /= n;
    // One corrective pass keeps ||x|| within 1e-12 even for slowly
    // accumulating p-sums.
    n = space.norm(x);
    if (std::abs(n - 1.0) > 1e-13) {
      for (auto& v : x) v /= n;
    }
    out.push_back(std::move(x));
  }
  return out;
}

InequalityReport validate_norm(const NormedSpace& space, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("validate_norm: trials must be >= 1");
  Rng rng(seed);
  const double tol = 1e-9;

  Check hom{"norm-homogeneity", "||t*x|| = |t|*||x||", 0.0, tol, tol, "holds", nullptr};
  Check sym{"norm-symmetry", "||-x|| = ||x||", 0.0, tol, tol, "holds", nullptr};
  Check tri{"norm-triangle", "||x+y|| <= ||x|| + ||y||", 0.0, tol, tol, "holds", nullptr};

  for (int t = 0; t < trials; ++t) {
    Vector x(space.dim()), y(space.dim());
    const double sx = std::exp2(rng.uniform(-4.0, 4.0));
    const double sy = std::exp2(rng.uniform(-4.0, 4.0));
    for (auto& v : x) v = sx * rng.gaussian();
    for (auto& v : y) v = sy * rng.gaussian();
    const double nx = space.norm(x);
    const double ny = space.norm(y);
    const double scale = std::max(1.0, std::max(nx, ny));

    const double c = rng.uniform(-5.0, 5.0);
    Vector cx(space.dim()), mx(space.dim()), xy(space.dim());
    for (int i = 0; i < space.dim(); ++i) {
      cx[i] = c * x[i];
      mx[i] = -x[i];
      xy[i] = x[i] + y[i];
    }
    const double e_hom = std::abs(space.norm(cx) - std::abs(c) * nx) / scale;
    const double e_sym = std::abs(space.norm(mx) - nx) / scale;
    const double e_tri = (space.norm(xy) - (nx + ny)) / scale;

    auto record = [&](Check& chk, double err, const char* kind) {
      if (err > chk.lhs) {
        chk.lhs = err;
        chk.margin = chk.rhs - err;
        if (err > tol) {
          chk.verdict = "violated";
          chk.witness = {{"kind", kind}, {"x", x}, {"y", y}, {"t", c}, {"error", err}};
        }
      }
    };
    record(hom, e_hom, "homogeneity");
    record(sym, e_sym, "symmetry");
    record(tri, e_tri, "triangle");
  }

  InequalityReport rep;
  rep.space = space.descriptor();
  rep.checks = {hom, sym, tri};
  return rep;
}

}  // namespace normgeo
