#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "normgeo/angular.hpp"
#include "normgeo/errors.hpp"

using namespace normgeo;

namespace {

const NormedSpace kL2 = NormedSpace::lp(2, 2);
const NormedSpace kL1 = NormedSpace::lp(1, 2);

}  // namespace

TEST_CASE("exponent range validation") {
  CHECK_NOTHROW(Exponent(0.0));
  CHECK_NOTHROW(Exponent(1.0));
  CHECK_THROWS_AS(Exponent(1.5), InvalidExponent);
  CHECK_THROWS_AS(Exponent(-0.1), InvalidExponent);
  CHECK_NOTHROW(Exponent(1.5, true));
  CHECK_NOTHROW(Exponent(-1.0, true));
  CHECK_THROWS_AS(Exponent(std::nan(""), true), InvalidExponent);
}

TEST_CASE("p = 1 reduces both distances to the plain difference") {
  const Vector x{3.0, -1.0}, y{0.5, 2.0};
  const Exponent p(1.0);
  const double d = kL2.norm({x[0] - y[0], x[1] - y[1]});
  CHECK(p_angular(kL2, x, y, p) == doctest::Approx(d).epsilon(1e-15));
  CHECK(skew_p_angular(kL2, x, y, p) == doctest::Approx(d).epsilon(1e-15));
  CHECK(ratio(kL2, x, y, p) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("p = 0 gives the classical angular and skew distances") {
  const Vector x{2.0, 0.0}, y{0.0, 0.5};
  const Exponent p(0.0);
  // alpha_0 = || x/||x|| - y/||y|| ||.
  CHECK(p_angular(kL2, x, y, p) == doctest::Approx(std::sqrt(2.0)));
  // beta_0 = || x/||y|| - y/||x|| ||: (4, 0) - (0, 0.25).
  CHECK(skew_p_angular(kL2, x, y, p) == doctest::Approx(std::hypot(4.0, 0.25)));
}

TEST_CASE("alpha and beta agree with direct formulas on random pairs") {
  const auto spaces = {NormedSpace::lp(1, 2), NormedSpace::lp(3, 3), NormedSpace::lp(kInf, 2)};
  for (const auto& s : spaces) {
    const auto dirs = sphere_sample(s, 40, 23);
    for (double pv : {0.0, 0.3, 0.7, 1.0}) {
      const Exponent p(pv);
      for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
        Vector x = dirs[i], y = dirs[i + 1];
        for (auto& v : x) v *= 1.7;
        for (auto& v : y) v *= 0.4;
        const double nx = s.norm(x), ny = s.norm(y);
        Vector da(x.size()), db(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) {
          da[k] = x[k] * std::pow(nx, pv - 1.0) - y[k] * std::pow(ny, pv - 1.0);
          db[k] = x[k] * std::pow(ny, pv - 1.0) - y[k] * std::pow(nx, pv - 1.0);
        }
        CHECK(p_angular(s, x, y, p) == doctest::Approx(s.norm(da)).epsilon(1e-12));
        CHECK(skew_p_angular(s, x, y, p) == doctest::Approx(s.norm(db)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("symmetry in the arguments") {
  const auto dirs = sphere_sample(kL1, 20, 31);
  for (double pv : {0.0, 0.5, 1.0}) {
    const Exponent p(pv);
    for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
      Vector x = dirs[i], y = dirs[i + 1];
      for (auto& v : x) v *= 3.0;
      CHECK(p_angular(kL1, x, y, p) == doctest::Approx(p_angular(kL1, y, x, p)).epsilon(1e-13));
      CHECK(skew_p_angular(kL1, x, y, p) ==
            doctest::Approx(skew_p_angular(kL1, y, x, p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ratio is invariant under joint positive scaling") {
  const Vector x{1.0, 2.0}, y{-0.5, 1.0};
  const Exponent p(0.4);
  const double base = ratio(kL2, x, y, p);
  for (double t : {0.01, 0.5, 3.0, 100.0}) {
    Vector tx{t * x[0], t * x[1]}, ty{t * y[0], t * y[1]};
    CHECK(ratio(kL2, tx, ty, p) == doctest::Approx(base).epsilon(1e-10));
  }
}

TEST_CASE("degenerate denominator is rejected, not returned") {
  const Vector x{1.0, 0.0};
  CHECK_THROWS_AS(ratio(kL2, x, x, Exponent(0.5)), DegenerateDenominator);
  // Equal norms, y = x: beta vanishes for every p.
  CHECK_THROWS_AS(ratio(kL1, {0.5, 0.5}, {0.5, 0.5}, Exponent(0.0)), DegenerateDenominator);
  CHECK_THROWS_AS(p_angular(kL2, {0.0, 0.0}, x, Exponent(0.5)), ZeroVector);
  CHECK_THROWS_AS(skew_p_angular(kL2, x, {0.0, 0.0}, Exponent(0.5)), ZeroVector);
}

TEST_CASE("sphere-lambda form equals the raw ratio at (lambda x1, x2)") {
  for (const auto& s : {NormedSpace::lp(2, 2), NormedSpace::lp(1, 2), NormedSpace::lp(4, 3)}) {
    const auto dirs = sphere_sample(s, 40, 41);
    int checked = 0;
    for (double pv : {0.0, 0.25, 0.6, 1.0}) {
      const Exponent p(pv);
      for (std::size_t i = 0; i + 1 < dirs.size() && checked < 1000; i += 2) {
        for (double lambda : {0.2, 0.7, 1.5, 4.0}) {
          Vector lx = dirs[i];
          for (auto& v : lx) v *= lambda;
          double sl, rw;
          try {
            sl = sphere_lambda_ratio(s, dirs[i], dirs[i + 1], lambda, p);
            rw = ratio(s, lx, dirs[i + 1], p);
          } catch (const DegenerateDenominator&) {
            continue;
          }
          CHECK(sl == doctest::Approx(rw).epsilon(1e-8));
          ++checked;
        }
      }
    }
    CHECK(checked > 100);
  }
}

TEST_CASE("sphere-lambda form validates its inputs") {
  const Vector u{1.0, 0.0}, v{0.0, 1.0};
  CHECK_THROWS_AS(sphere_lambda_ratio(kL2, {2.0, 0.0}, v, 1.5, Exponent(0.5)),
                  std::invalid_argument);
  CHECK_THROWS_AS(sphere_lambda_ratio(kL2, u, v, -1.0, Exponent(0.5)), std::invalid_argument);
  CHECK_THROWS_AS(sphere_lambda_ratio(kL2, u, u, 1.0, Exponent(0.0)), DegenerateDenominator);
}

TEST_CASE("max norm factor") {
  const Exponent p(0.0);
  CHECK(max_norm_factor(kL2, {1.0, 0.0}, {0.0, 1.0}, p) == doctest::Approx(1.0));
  CHECK(max_norm_factor(kL2, {2.0, 0.0}, {0.0, 1.0}, p) == doctest::Approx(2.0));
  CHECK(max_norm_factor(kL2, {0.0, 0.5}, {1.0, 0.0}, p) == doctest::Approx(2.0));
  // p in [0, 1]: always >= 1.
  const auto dirs = sphere_sample(kL1, 40, 51);
  for (double pv : {0.0, 0.5, 1.0}) {
    for (std::size_t i = 0; i + 1 < dirs.size(); i += 2) {
      Vector x = dirs[i];
      for (auto& v : x) v *= 3.7;
      CHECK(max_norm_factor(kL1, x, dirs[i + 1], Exponent(pv)) >= 1.0 - 1e-12);
    }
  }
}
