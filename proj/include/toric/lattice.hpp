// Exact lattice arithmetic in rank 2: primitive vectors, integer matrices,
// and smooth complete fans with refinement and domination.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace toric {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::rational<Int>;

double to_double(const Int& n);
double to_double(const Rational& r);
// n * 2^extra as a double, tolerating |n| far outside double range.
double to_double_scaled(const Int& n, double extra_log2);
Rational parse_rational(const std::string& s);
std::string rational_str(const Rational& r);

struct Vec2 {
  Int x{0}, y{0};

  Vec2() = default;
  Vec2(Int xx, Int yy) : x(std::move(xx)), y(std::move(yy)) {}
  Vec2(long xx, long yy) : x(xx), y(yy) {}

  bool operator==(const Vec2& o) const { return x == o.x && y == o.y; }
  bool operator!=(const Vec2& o) const { return !(*this == o); }
  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator-() const { return {-x, -y}; }
  Vec2 operator*(const Int& k) const { return {x * k, y * k}; }
  bool is_zero() const { return x == 0 && y == 0; }
  std::string str() const;
};

inline Int cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline Int dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

Int gcd(Int a, Int b);

// v / gcd(|x|,|y|); throws on the zero vector.
Vec2 primitive(const Vec2& v);
// gcd of the two coordinates (1 for primitive vectors).
Int content(const Vec2& v);

// Strict counterclockwise order starting at direction (1,0).
// Returns -1, 0, +1 comparing the angular positions of a and b.
int angle_cmp(const Vec2& a, const Vec2& b);

struct IMat2 {
  Int a{1}, b{0}, c{0}, d{1};  // [[a,b],[c,d]]

  IMat2() = default;
  IMat2(Int aa, Int bb, Int cc, Int dd)
      : a(std::move(aa)), b(std::move(bb)), c(std::move(cc)), d(std::move(dd)) {}
  IMat2(long aa, long bb, long cc, long dd) : a(aa), b(bb), c(cc), d(dd) {}

  Int det() const { return a * d - b * c; }
  Int trace() const { return a + d; }
  Vec2 apply(const Vec2& v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }
  IMat2 mul(const IMat2& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  IMat2 adjugate() const { return {d, -b, -c, a}; }
  IMat2 pow(unsigned n) const;
  bool operator==(const IMat2& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
  bool is_scalar() const { return b == 0 && c == 0 && a == d; }
  bool is_identity() const { return is_scalar() && a == 1; }
  std::string str() const;
};

// A complete fan in the plane: primitive rays in strict ccw order starting
// from the ray closest to (1,0) going counterclockwise.  Every consecutive
// (cyclic) pair spans a sector of angle < pi.
class Fan {
 public:
  static Fan from_rays(const std::vector<Vec2>& rays);

  const std::vector<Vec2>& rays() const { return rays_; }
  size_t size() const { return rays_.size(); }
  const Vec2& ray(size_t i) const { return rays_[i % rays_.size()]; }

  bool smooth() const;
  bool has_ray(const Vec2& v) const;
  // Index i such that v lies in the closed sector spanned by ray(i), ray(i+1)
  // with cross(ray(i), v) >= 0 and cross(v, ray(i+1)) > 0 (half-open).
  size_t sector_of(const Vec2& v) const;
  // Sector determinants det(v_i, v_{i+1}).
  std::vector<Int> sector_dets() const;
  bool operator==(const Fan& o) const { return rays_ == o.rays_; }

  std::string json() const;
  static Fan from_json(const std::string& text);

 private:
  std::vector<Vec2> rays_;
};

Fan p2_fan();
Fan p1xp1_fan();

// Minimal smooth refinement: Hirzebruch-Jung insertion in every sector with
// determinant > 1.  Idempotent on smooth fans.
Fan smooth_resolution(const Fan& f);

// Fan on the union of the two ray sets.
Fan refine(const Fan& f1, const Fan& f2);

// Ray-set inclusion: every ray of f2 is a ray of f1.
bool dominates(const Fan& f1, const Fan& f2);

// Strict convex hull vertices in ccw order (collinear interior points dropped).
std::vector<Vec2> convex_hull(std::vector<Vec2> pts);

}  // namespace toric
