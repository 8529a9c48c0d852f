#include <doctest.h>

#include <cmath>
#include <numbers>

#include "toric/support_fn.hpp"

using namespace toric;

namespace {
constexpr double kPi = std::numbers::pi;

PLFunctionQ pl_on_p2(Rational a, Rational b, Rational c) {
  return PLFunctionQ{p2_fan(), {a, b, c}};
}
}  // namespace

TEST_CASE("laurent parsing and serialization") {
  for (const char* s : {"1 + x1 + x2", "x1", "2*x1^3*x2^-2 - 1/2", "1 + x1 + x2 + x1*x2",
                        "3/4*x1^-1 - x2^5 + 7"}) {
    LaurentPoly p = LaurentPoly::parse(s);
    LaurentPoly q = LaurentPoly::parse(p.str());
    CHECK(p.terms == q.terms);
  }
  CHECK(LaurentPoly::parse("x1 - x1").zero());
  CHECK_THROWS(LaurentPoly::parse("x3"));
  LaurentPoly prod = LaurentPoly::parse("1+x1") * LaurentPoly::parse("1-x1");
  CHECK(prod.terms == LaurentPoly::parse("1-x1^2").terms);
}

TEST_CASE("pl evaluation is exact") {
  PLFunctionQ psi = pl_on_p2(Rational(1), Rational(1), Rational(1));
  CHECK(psi(Vec2(1, 2)) == Rational(3));
  CHECK(psi(Vec2(-2, 1)) == Rational(5));
  CHECK(psi(Vec2(1, -3)) == Rational(7));
  CHECK(psi(Vec2(0, 0)) == Rational(0));
  // homogeneity
  CHECK(psi(Vec2(10, 20)) == Rational(30));
}

TEST_CASE("convexity is the per-ray test") {
  CHECK(pl_convex(pl_on_p2(Rational(1), Rational(1), Rational(1))));
  CHECK_FALSE(pl_convex(pl_on_p2(Rational(-1), Rational(0), Rational(0))));
  CHECK(pl_linear(pl_on_p2(Rational(1), Rational(0), Rational(-1))));
  CHECK_FALSE(pl_linear(pl_on_p2(Rational(1), Rational(1), Rational(1))));
}

TEST_CASE("growth of PL data maximizes linear pieces over arcs") {
  // anticanonical data on P2: the sector pieces are x+y, -2x+y, x-2y with
  // gradients inside their sectors; the sup of psi(v)/|v| is sqrt(5).
  PLFunctionQ psi = pl_on_p2(Rational(1), Rational(1), Rational(1));
  CHECK(growth(psi) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-12));
  // dense-sampling oracle
  double best = 0;
  for (int k = 0; k < 100000; ++k) {
    double th = 2 * kPi * k / 100000;
    best = std::max(best, psi.eval(std::cos(th), std::sin(th)));
  }
  CHECK(growth(psi) == doctest::Approx(best).epsilon(1e-6));

  // linear data: growth is the gradient norm
  PLFunctionQ lin = pl_on_p2(Rational(1), Rational(0), Rational(-1));
  CHECK(growth(lin) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("growth of numeric functions") {
  NumericConvexFunction norm{[](double x, double y) { return std::hypot(x, y); }};
  GrowthResult g = growth(norm);
  CHECK_FALSE(g.infinite);
  CHECK(g.value == doctest::Approx(1.0).epsilon(1e-8));

  NumericConvexFunction super{[](double x, double y) { return x * x + y * y; }};
  CHECK(growth(super).infinite);
}

TEST_CASE("homogenize") {
  NumericConvexFunction f{[](double x, double y) { return std::sqrt(1 + x * x + y * y); }};
  NumericConvexFunction h = homogenize(f, 1e-10);
  for (int k = 0; k < 16; ++k) {
    double th = 2 * kPi * k / 16;
    double x = std::cos(th), y = std::sin(th);
    CHECK(h(x, y) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(h(3 * x, 3 * y) == doctest::Approx(3.0 * h(x, y)).epsilon(1e-12));  // exact scaling
  }

  NumericConvexFunction lse{[](double x, double y) {
    double m = std::max({0.0, -x, -y});
    return m + std::log(std::exp(-m) + std::exp(-x - m) + std::exp(-y - m));
  }};
  NumericConvexFunction hl = homogenize(lse, 1e-10);
  for (int k = 0; k < 32; ++k) {
    double th = 2 * kPi * k / 32 + 0.01;
    double x = std::cos(th), y = std::sin(th);
    CHECK(hl(x, y) == doctest::Approx(std::max({0.0, -x, -y})).epsilon(1e-7));
  }

  // idempotence
  NumericConvexFunction hh = homogenize(hl, 1e-10);
  for (int k = 0; k < 8; ++k) {
    double th = 2 * kPi * k / 8 + 0.2;
    CHECK(hh(std::cos(th), std::sin(th)) ==
          doctest::Approx(hl(std::cos(th), std::sin(th))).epsilon(1e-10));
  }
}

TEST_CASE("restrict to fan and the sandwich bound") {
  auto norm = [](double x, double y) { return std::hypot(x, y); };
  PLFunctionD onp2 = restrict_to_fan(norm, p2_fan());
  CHECK(onp2.vals[0] == doctest::Approx(1.0));
  CHECK(onp2.vals[1] == doctest::Approx(1.0));
  CHECK(onp2.vals[2] == doctest::Approx(std::sqrt(2.0)));
  PLFunctionD onq = restrict_to_fan(norm, p1xp1_fan());
  for (double v : onq.vals) CHECK(v == doctest::Approx(1.0));

  // already PL data restricted to its own fan reproduces itself everywhere
  PLFunctionQ psi = pl_on_p2(Rational(1), Rational(1), Rational(1));
  PLFunctionD again = restrict_to_fan([&psi](double x, double y) { return psi.eval(x, y); },
                                      p2_fan());
  for (int k = 0; k < 64; ++k) {
    double th = 2 * kPi * k / 64;
    CHECK(again.eval(std::cos(th), std::sin(th)) ==
          doctest::Approx(psi.eval(std::cos(th), std::sin(th))).epsilon(1e-12));
  }

  // sandwich on a refinement sequence: C(X) decreases to 1 and the bound holds
  Fan fan = p2_fan();
  double prevC = 1e9;
  for (int level = 0; level < 4; ++level) {
    double C = fan_pinch_constant(fan);
    CHECK(C < prevC + 1e-12);
    prevC = C;
    PLFunctionD rest = restrict_to_fan(norm, fan);
    for (int k = 0; k < 64; ++k) {
      double th = 2 * kPi * k / 64 + 1e-3;
      double x = std::cos(th), y = std::sin(th);
      double lo = norm(x, y), mid = rest.eval(x, y);
      CHECK(mid >= lo - 1e-12);
      CHECK(mid <= C * lo + 1e-12);
    }
    CHECK(growth(rest) <= C * 1.0 + 1e-9);
    // barycentric refinement
    std::vector<Vec2> rays = fan.rays();
    for (size_t i = 0, n = fan.size(); i < n; ++i) rays.push_back(fan.ray(i) + fan.ray(i + 1));
    fan = Fan::from_rays(rays);
  }
}

TEST_CASE("ronkin quadrature") {
  LaurentPoly x1 = LaurentPoly::parse("x1");
  for (double v1 : {-2.0, 0.0, 1.5}) {
    RonkinResult r = ronkin(x1, v1, 0.7, 32);
    CHECK(r.value == doctest::Approx(-v1).epsilon(1e-12));
  }

  LaurentPoly line = LaurentPoly::parse("1 + x1 + x2");
  RonkinResult r0 = ronkin(line, 0.0, 0.0, 64);
  CHECK(r0.value > 0.0);
  // midpoint convexity against (+-1, 0)
  double rp = ronkin(line, 1.0, 0.0, 64).value;
  double rm = ronkin(line, -1.0, 0.0, 64).value;
  CHECK(r0.value <= (rp + rm) / 2 + 1e-9);

  CHECK_THROWS(ronkin(line, 0, 0, 8));
  CHECK_THROWS(ronkin(LaurentPoly{}, 0, 0, 32));
}

TEST_CASE("homogenized ronkin matches newton support") {
  for (const char* s : {"1 + x1 + x2", "1 + x1 + x2 + x1*x2", "1 + x1^3 + x2"}) {
    LaurentPoly P = LaurentPoly::parse(s);
    NumericConvexFunction h = homogenize(ronkin_function(P, 64), 1e-7);
    PLFunctionQ ns = newton_support(P);
    for (int k = 0; k < 64; ++k) {
      double th = 2 * kPi * k / 64;
      double x = std::cos(th), y = std::sin(th);
      CHECK(h(x, y) == doctest::Approx(ns.eval(x, y)).epsilon(1e-3));
    }
  }
}

TEST_CASE("newton support examples") {
  PLFunctionQ line = newton_support(LaurentPoly::parse("1 + x1 + x2"));
  CHECK(line.fan == p2_fan());
  CHECK(line(Vec2(1, 0)) == Rational(0));
  CHECK(line(Vec2(0, 1)) == Rational(0));
  CHECK(line(Vec2(-1, -1)) == Rational(1));
  // max(0, -v1, -v2) at a few points
  CHECK(line(Vec2(-3, 1)) == Rational(3));
  CHECK(line(Vec2(2, 5)) == Rational(0));

  PLFunctionQ mono = newton_support(LaurentPoly::parse("x1^2*x2^-1"));
  CHECK(pl_linear(mono));

  PLFunctionQ sq = newton_support(LaurentPoly::parse("1 + x1 + x2 + x1*x2"));
  for (const auto& r : p1xp1_fan().rays()) CHECK(sq.fan.has_ray(r));
  CHECK(sq(Vec2(-1, 0)) == Rational(1));
  CHECK(sq(Vec2(-1, -1)) == Rational(2));
}
