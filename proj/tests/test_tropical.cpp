#include <doctest.h>

#include <cmath>
#include <numbers>

#include "toric/tropical.hpp"

using namespace toric;

namespace {
constexpr double kPi = std::numbers::pi;

// Angle-doubling PL cover: eight 45-degree sectors, each mapped linearly onto
// a 90-degree sector; all determinants 1, covering degree 2.
TropMap doubling_cover() {
  Fan f = Fan::from_rays(
      {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}});
  std::vector<IMat2> mats = {
      IMat2(1, -1, 0, 1),  IMat2(1, -1, 1, 0),  IMat2(-1, -1, 1, 0), IMat2(-1, -1, 0, -1),
      IMat2(-1, 1, 0, -1), IMat2(-1, 1, -1, 0), IMat2(1, 1, -1, 0),  IMat2(1, 1, 0, 1)};
  return TropMap(f, mats);
}
}  // namespace

TEST_CASE("apply and apply_ray") {
  TropMap id = TropMap::linear(IMat2(1, 0, 0, 1));
  for (Vec2 v : {Vec2(1, 0), Vec2(-3, 7), Vec2(2, -5)}) CHECK(id.apply_ray(v) == primitive(v));

  TropMap T = TropMap::linear(IMat2(1, -2, 2, 1));
  CHECK(T.apply_ray(Vec2(1, 0)) == Vec2(1, 2));
  CHECK(T.apply(Vec2(1, 1)) == Vec2(-1, 3));
}

TEST_CASE("tropmap invariants are enforced") {
  Fan f = p1xp1_fan();
  // discontinuous across the shared ray (0,1)
  CHECK_THROWS(TropMap(f, {IMat2(1, 0, 0, 1), IMat2(2, 0, 0, 1), IMat2(1, 0, 0, 1),
                           IMat2(1, 0, 0, 1)}));
  // singular sector matrix
  CHECK_THROWS(TropMap(f, {IMat2(1, 1, 1, 1), IMat2(1, 1, 1, 1), IMat2(1, 1, 1, 1),
                           IMat2(1, 1, 1, 1)}));
}

TEST_CASE("compose") {
  TropMap A = TropMap::linear(IMat2(1, -2, 2, 1));
  TropMap id = TropMap::linear(IMat2(1, 0, 0, 1));
  TropMap c1 = compose(id, A);
  for (int k = 0; k < 360; ++k) {
    double th = 2 * kPi * k / 360;
    auto [x1, y1] = c1.apply(std::cos(th), std::sin(th));
    auto [x2, y2] = A.apply(std::cos(th), std::sin(th));
    CHECK(x1 == doctest::Approx(x2));
    CHECK(y1 == doctest::Approx(y2));
  }
  TropMap sq = compose(A, A);
  CHECK(sq.is_linear());
  CHECK(sq.matrices()[0] == IMat2(1, -2, 2, 1).mul(IMat2(1, -2, 2, 1)));

  // PL x PL: |det| multiplies, and evaluation agrees with pointwise composite
  TropMap D = doubling_cover();
  TropMap DD = compose(D, D);
  CHECK(DD.abs_det() == 1);
  CHECK(covering_degree(DD) == 4);
  for (int k = 0; k < 360; ++k) {
    double th = 2 * kPi * k / 360 + 1e-4;
    auto [mx, my] = D.apply(std::cos(th), std::sin(th));
    auto [x1, y1] = D.apply(mx, my);
    auto [x2, y2] = DD.apply(std::cos(th), std::sin(th));
    CHECK(x1 == doctest::Approx(x2).epsilon(1e-9));
    CHECK(y1 == doctest::Approx(y2).epsilon(1e-9));
  }

  // associativity up to fan refinement, checked by evaluation
  TropMap l = compose(compose(D, A), D);
  TropMap r = compose(D, compose(A, D));
  for (int k = 0; k < 360; ++k) {
    double th = 2 * kPi * k / 360 + 1e-4;
    auto [x1, y1] = l.apply(std::cos(th), std::sin(th));
    auto [x2, y2] = r.apply(std::cos(th), std::sin(th));
    CHECK(x1 == doctest::Approx(x2).epsilon(1e-9));
    CHECK(y1 == doctest::Approx(y2).epsilon(1e-9));
  }
}

TEST_CASE("covering degree and homeomorphism test") {
  CHECK(covering_degree(TropMap::linear(IMat2(1, -2, 2, 1))) == 1);
  CHECK(is_homeomorphism(TropMap::linear(IMat2(1, -2, 2, 1))));
  // orientation-reversing linear map is still a homeomorphism
  TropMap rev = TropMap::linear(IMat2(0, 1, 1, 0));
  CHECK(rev.matrices()[0].det() == -1);
  CHECK(covering_degree(rev) == 1);
  CHECK(is_homeomorphism(rev));

  TropMap D = doubling_cover();
  CHECK(covering_degree(D) == 2);
  CHECK_FALSE(is_homeomorphism(D));
}

TEST_CASE("rotation dichotomy for linear maps") {
  RotationClass q = rotation_is_rational_linear(IMat2(0, -1, 1, 0));
  CHECK(q.kind == RotationKind::kRational);
  CHECK(q.p == 1);
  CHECK(q.q == 4);

  RotationClass s = rotation_is_rational_linear(IMat2(1, -1, 1, 0));
  CHECK(s.kind == RotationKind::kRational);
  CHECK(s.p == 1);
  CHECK(s.q == 6);

  RotationClass g = rotation_is_rational_linear(IMat2(1, -2, 2, 1));
  CHECK(g.kind == RotationKind::kIrrationalCertified);

  RotationClass r = rotation_is_rational_linear(IMat2(2, 1, 1, 1));
  CHECK(r.kind == RotationKind::kRealEigenvalues);
  CHECK(r.p == 0);

  // both eigenvalues negative: antipodal rays, rotation number 1/2
  RotationClass h = rotation_is_rational_linear(IMat2(-2, 0, 0, -1));
  CHECK(h.kind == RotationKind::kRealEigenvalues);
  CHECK(h.p == 1);
  CHECK(h.q == 2);
}

TEST_CASE("numeric rotation estimates agree with certificates") {
  long n = 10000;
  RotationEstimate e4 = rotation_number(TropMap::linear(IMat2(0, -1, 1, 0)), n);
  CHECK(std::abs(e4.estimate - 0.25) <= e4.error_bound);
  RotationEstimate e6 = rotation_number(TropMap::linear(IMat2(1, -1, 1, 0)), n);
  CHECK(std::abs(e6.estimate - 1.0 / 6.0) <= e6.error_bound);
  RotationEstimate eg = rotation_number(TropMap::linear(IMat2(1, -2, 2, 1)), n);
  double expect = std::atan2(2.0, 1.0) / (2 * kPi);
  CHECK(std::abs(eg.estimate - expect) <= eg.error_bound);
  CHECK(eg.error_bound == doctest::Approx(1e-4));

  CHECK_THROWS(rotation_number(doubling_cover(), 10));
}

TEST_CASE("ramification") {
  TropMap id = TropMap::linear(IMat2(1, 0, 0, 1));
  for (Vec2 v : {Vec2(1, 0), Vec2(2, 3), Vec2(-1, -5)}) CHECK(ramification(id, v) == 1);
  CHECK(ramification(TropMap::linear(IMat2(2, 0, 0, 1)), Vec2(1, 0)) == 2);
  CHECK(ramification(TropMap::linear(IMat2(1, -2, 2, 1)), Vec2(1, 0)) == 1);
}

TEST_CASE("ramification chain under composition") {
  // content(A^2 v) = content(A primitive(A v)) * content(A v) exactly
  for (IMat2 A : {IMat2(2, 0, 0, 2), IMat2(3, 1, 0, 2), IMat2(1, -2, 2, 1), IMat2(4, 2, 2, 4)}) {
    TropMap T = TropMap::linear(A);
    TropMap T2 = compose(T, T);
    for (Vec2 v : {Vec2(1, 0), Vec2(0, 1), Vec2(1, 1), Vec2(-2, 3)}) {
      Int lhs = ramification(T2, v);
      Int rhs = ramification(T, T.apply_ray(v)) * ramification(T, v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("growth exponent report") {
  TropMap T = TropMap::linear(IMat2(1, -2, 2, 1));
  GrowthReport rep = growth_exponent(T, 50, Int(5), 360, Vec2(1, 0), 2.3, 40);
  CHECK(rep.max_deviation < 0.02);
  // Gaussian similarity: the exponent is sqrt(5) exactly in every direction
  CHECK(rep.min == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  CHECK(rep.max == doctest::Approx(std::sqrt(5.0)).epsilon(1e-6));
  // ram decay: (1+2i)^n has coprime entries, so Ram = 1 and the ratio is mu^-n
  REQUIRE(rep.ram_decay.size() == 40);
  for (size_t k = 1; k < rep.ram_decay.size(); ++k)
    CHECK(rep.ram_decay[k] < rep.ram_decay[k - 1]);
  CHECK(rep.ram_decay.back() < 1e-3);

  GrowthReport idr = growth_exponent(TropMap::linear(IMat2(1, 0, 0, 1)), 10, Int(1), 36);
  CHECK(idr.max_deviation < 1e-9);
}

TEST_CASE("tropmap json round trip") {
  TropMap D = doubling_cover();
  TropMap E = TropMap::from_json(D.json());
  CHECK(E.lin_fan() == D.lin_fan());
  for (size_t i = 0; i < D.matrices().size(); ++i) CHECK(E.matrices()[i] == D.matrices()[i]);
}
