#include <doctest.h>

#include <cmath>

#include "toric/surface.hpp"

using namespace toric;

namespace {

struct Rng {
  unsigned long s;
  explicit Rng(unsigned long seed) : s(seed) {}
  long next(long lo, long hi) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return lo + static_cast<long>((s >> 33) % static_cast<unsigned long>(hi - lo + 1));
  }
};

DivisorQ pole_divisor(SurfacePtr X, const Vec2& ray) {
  DivisorQ D;
  D.X = X;
  D.c.assign(X->fan.size(), Rational(0));
  D.c[X->index_of(ray)] = Rational(1);
  return D;
}

DivisorQ random_divisor(SurfacePtr X, Rng& rng) {
  DivisorQ D;
  D.X = X;
  for (size_t i = 0; i < X->fan.size(); ++i)
    D.c.push_back(Rational(Int(rng.next(-9, 9)), Int(rng.next(1, 5))));
  return D;
}

Fan random_smooth_fan(Rng& rng, int inserts) {
  std::vector<Vec2> rays = p2_fan().rays();
  for (int k = 0; k < inserts; ++k) {
    Fan f = Fan::from_rays(rays);
    size_t i = static_cast<size_t>(rng.next(0, static_cast<long>(f.size()) - 1));
    rays = f.rays();
    rays.push_back(f.ray(i) + f.ray(i + 1));
  }
  return Fan::from_rays(rays);
}

}  // namespace

TEST_CASE("self-intersection data") {
  SurfacePtr p2 = p2_surface();
  CHECK(p2->a == std::vector<Int>{-1, -1, -1});  // lines have self-intersection +1
  SurfacePtr q = make_surface(p1xp1_fan());
  CHECK(q->a == std::vector<Int>{0, 0, 0, 0});
}

TEST_CASE("intersection form on P2 and P1xP1") {
  SurfacePtr p2 = p2_surface();
  DivisorQ L1 = pole_divisor(p2, {1, 0});
  DivisorQ L2 = pole_divisor(p2, {0, 1});
  CHECK(intersect(L1, L2) == Rational(1));  // adjacent
  CHECK(intersect(L1, L1) == Rational(1));  // a line squared
  SurfacePtr q = make_surface(p1xp1_fan());
  DivisorQ F = pole_divisor(q, {1, 0});
  CHECK(intersect(F, F) == Rational(0));
  DivisorQ G = pole_divisor(q, {-1, 0});
  CHECK(intersect(F, G) == Rational(0));  // opposite rulings are disjoint
  CHECK(intersect(F, pole_divisor(q, {0, 1})) == Rational(1));
  CHECK_THROWS(intersect(L1, F));
}

TEST_CASE("support function round trip") {
  SurfacePtr p2 = p2_surface();
  DivisorQ L = pole_divisor(p2, {1, 0});
  PLFunctionQ psi = support_function(L);
  CHECK(psi(Vec2(1, 0)) == Rational(1));
  CHECK(psi(Vec2(0, 1)) == Rational(0));
  CHECK(psi(Vec2(-1, -1)) == Rational(0));
  DivisorQ back = divisor_from_support(psi, p2);
  CHECK(back.c == L.c);

  // a function with a kink inside a P2 sector is rejected
  SurfacePtr big = make_surface(refine(p2_fan(), p1xp1_fan()));
  DivisorQ E = pole_divisor(big, {-1, 0});
  CHECK_THROWS(divisor_from_support(support_function(E), p2));
}

TEST_CASE("example degrees 3 and 2+sqrt2") {
  SurfacePtr p2 = p2_surface();
  DivisorQ D1{p2, {Rational(1), Rational(1), Rational(1)}};
  CHECK(p2_degree(D1) == Rational(3));
  // numeric mode: restriction of the euclidean norm to the P2 rays
  DivisorD D2{p2, {1.0, 1.0, std::sqrt(2.0)}};
  CHECK(p2_degree(D2) == doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("principal, nef, normalize") {
  SurfacePtr p2 = p2_surface();
  // divisor of the monomial x1: coefficient <(1,0), v_tau>
  DivisorQ divx1{p2, {Rational(1), Rational(0), Rational(-1)}};
  CHECK(is_principal(divx1));
  CHECK_FALSE(is_principal(pole_divisor(p2, {1, 0})));

  DivisorQ antican{p2, {Rational(1), Rational(1), Rational(1)}};
  CHECK(is_nef(antican));
  DivisorQ notnef{p2, {Rational(-1), Rational(0), Rational(0)}};
  CHECK_FALSE(is_nef(notnef));

  DivisorQ L = pole_divisor(p2, {1, 0});
  DivisorQ n = normalize(L);
  CHECK(n.c == std::vector<Rational>{Rational(1, 3), Rational(1, 3), Rational(1, 3)});
  // idempotent, and the correction is principal
  CHECK(normalize(n).c == n.c);
  DivisorQ diff{p2, {L.c[0] - n.c[0], L.c[1] - n.c[1], L.c[2] - n.c[2]}};
  CHECK(is_principal(diff));
}

TEST_CASE("pullback and pushforward under domination") {
  SurfacePtr p2 = p2_surface();
  SurfacePtr big = make_surface(refine(p2_fan(), p1xp1_fan()));
  DivisorQ L = pole_divisor(p2, {1, 0});
  DivisorQ up = pullback_pi(L, big);
  // psi_L vanishes at the new ray (-1,0) but equals 1 at (0,-1): the blown-up
  // point there lies on the line {x1 = 0}, so the total transform contains
  // that exceptional curve with multiplicity one.
  for (size_t i = 0; i < big->fan.size(); ++i) {
    Rational expect =
        (big->fan.ray(i) == Vec2(1, 0) || big->fan.ray(i) == Vec2(0, -1)) ? Rational(1)
                                                                          : Rational(0);
    CHECK(up.c[i] == expect);
  }
  DivisorQ down = pushforward_pi(up, p2);
  CHECK(down.c == L.c);
  CHECK_THROWS(pullback_pi(pole_divisor(big, {-1, 0}), p2));  // wrong direction

  Rng rng(777);
  for (int t = 0; t < 10; ++t) {
    Fan yf = random_smooth_fan(rng, 2);
    Fan xf = random_smooth_fan(rng, 2);
    SurfacePtr Y = make_surface(yf);
    SurfacePtr X = make_surface(smooth_resolution(refine(xf, yf)));
    DivisorQ D = random_divisor(Y, rng);
    DivisorQ E = random_divisor(Y, rng);
    // pi_* pi^* = id
    CHECK(pushforward_pi(pullback_pi(D, X), Y).c == D.c);
    // intersection isometry
    CHECK(intersect(pullback_pi(D, X), pullback_pi(E, X)) == intersect(D, E));
    // projection formula for pi
    DivisorQ F = random_divisor(X, rng);
    CHECK(intersect(pullback_pi(D, X), F) == intersect(D, pushforward_pi(F, Y)));
  }
}

TEST_CASE("principal divisors pair to zero") {
  SurfacePtr p2 = p2_surface();
  DivisorQ divx1{p2, {Rational(1), Rational(0), Rational(-1)}};
  Rng rng(42);
  for (int t = 0; t < 5; ++t) {
    DivisorQ E = random_divisor(p2, rng);
    CHECK(intersect(divx1, E) == Rational(0));
  }
}

TEST_CASE("curve class from newton polygon") {
  // 1 + x1 + x2: a line meets each pole of P2 once
  NewtonClass line = curve_class_from_newton({{0, 0}, {1, 0}, {0, 1}});
  Vec2 balance(0, 0);
  for (auto& [ray, len] : line.pole_hits) {
    CHECK(len == 1);
    balance = balance + ray * len;
  }
  CHECK(balance.is_zero());
  CHECK(line.pole_hits.size() == 3);
  CHECK(p2_degree(line.cls) == Rational(1));

  // unit square: bidegree (1,1) meeting all four P1xP1 poles once
  NewtonClass sq = curve_class_from_newton({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(sq.pole_hits.size() == 4);
  for (auto& [ray, len] : sq.pole_hits) CHECK(len == 1);

  CHECK_THROWS(curve_class_from_newton({{0, 0}, {2, 0}}));  // segment
  CHECK_THROWS(curve_class_from_newton({{1, 1}}));          // point
}

TEST_CASE("balance identity on random polygons") {
  Rng rng(2718);
  int done = 0;
  while (done < 20) {
    std::vector<Vec2> pts;
    for (int k = 0; k < 6; ++k) pts.emplace_back(rng.next(-4, 4), rng.next(-4, 4));
    if (convex_hull(pts).size() < 3) continue;
    NewtonClass nc = curve_class_from_newton(pts);
    Vec2 balance(0, 0);
    for (auto& [ray, len] : nc.pole_hits) balance = balance + ray * len;
    CHECK(balance.is_zero());
    ++done;
  }
}

TEST_CASE("intersection pairing of a curve with poles matches edge lengths") {
  // (class . C_tau) computed through the intersection form equals the
  // lattice length of the polygon edge, for the triangle and the square
  for (auto pts : {std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}},
                   std::vector<Vec2>{{0, 0}, {1, 0}, {0, 1}, {1, 1}},
                   std::vector<Vec2>{{0, 0}, {3, 0}, {0, 1}}}) {
    NewtonClass nc = curve_class_from_newton(pts);
    SurfacePtr X = nc.cls.X;
    for (auto& [ray, len] : nc.pole_hits) {
      DivisorQ pole;
      pole.X = X;
      pole.c.assign(X->fan.size(), Rational(0));
      pole.c[X->index_of(ray)] = Rational(1);
      CHECK(intersect(nc.cls, pole) == Rational(len));
    }
  }
}
