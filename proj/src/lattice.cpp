#include "toric/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace toric {

using nlohmann::json;

double to_double(const Int& n) { return to_double_scaled(n, 0.0); }

double to_double_scaled(const Int& n, double extra_log2) {
  if (n == 0) return 0.0;
  Int a = abs(n);
  long bits = static_cast<long>(msb(a));  // floor(log2 a)
  double mant;
  long e2;
  if (bits <= 960) {
    mant = a.convert_to<double>();
    e2 = 0;
  } else {
    long shift = bits - 64;
    Int top = a >> shift;
    mant = top.convert_to<double>();
    e2 = shift;
  }
  double v = mant * std::exp2(static_cast<double>(e2) + extra_log2);
  return n < 0 ? -v : v;
}

double to_double(const Rational& r) {
  if (r.numerator() == 0) return 0.0;
  Int num = abs(r.numerator()), den = r.denominator();
  long bn = static_cast<long>(msb(num)), bd = static_cast<long>(msb(den));
  double v;
  if (bn < 500 && bd < 500) {
    v = num.convert_to<double>() / den.convert_to<double>();
  } else {
    long sn = bn > 64 ? bn - 64 : 0;
    long sd = bd > 64 ? bd - 64 : 0;
    Int tn = num >> sn, td = den >> sd;
    v = tn.convert_to<double>() / td.convert_to<double>() *
        std::exp2(static_cast<double>(sn - sd));
  }
  return r.numerator() < 0 ? -v : v;
}

Rational parse_rational(const std::string& s) {
  auto pos = s.find('/');
  auto trim = [](std::string t) {
    size_t b = t.find_first_not_of(" \t");
    size_t e = t.find_last_not_of(" \t");
    if (b == std::string::npos) throw std::invalid_argument("empty rational");
    return t.substr(b, e - b + 1);
  };
  if (pos == std::string::npos) return Rational(Int(trim(s)));
  return Rational(Int(trim(s.substr(0, pos))), Int(trim(s.substr(pos + 1))));
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r.numerator();
  if (r.denominator() != 1) os << "/" << r.denominator();
  return os.str();
}

std::string Vec2::str() const {
  std::ostringstream os;
  os << "(" << x << "," << y << ")";
  return os.str();
}

std::string IMat2::str() const {
  std::ostringstream os;
  os << "[" << a << "," << b << ";" << c << "," << d << "]";
  return os.str();
}

Int gcd(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = std::move(b);
    b = std::move(t);
  }
  return a;
}

Vec2 primitive(const Vec2& v) {
  if (v.is_zero()) throw std::invalid_argument("primitive: zero vector");
  Int g = gcd(v.x, v.y);
  return {v.x / g, v.y / g};
}

Int content(const Vec2& v) {
  if (v.is_zero()) throw std::invalid_argument("content: zero vector");
  return gcd(v.x, v.y);
}

namespace {
// Half-open angular class: 0 on the positive x-axis, increasing ccw.
int octant(const Vec2& v) {
  if (v.y == 0) return v.x > 0 ? 0 : 4;
  if (v.y > 0) {
    if (v.x > 0) return 1;
    return v.x == 0 ? 2 : 3;
  }
  if (v.x < 0) return 5;
  return v.x == 0 ? 6 : 7;
}
}  // namespace

int angle_cmp(const Vec2& a, const Vec2& b) {
  int oa = octant(a), ob = octant(b);
  if (oa != ob) return oa < ob ? -1 : 1;
  Int cr = cross(a, b);
  if (cr > 0) return -1;
  if (cr < 0) return 1;
  return 0;
}

IMat2 IMat2::pow(unsigned n) const {
  IMat2 r;
  IMat2 base = *this;
  while (n > 0) {
    if (n & 1u) r = r.mul(base);
    base = base.mul(base);
    n >>= 1;
  }
  return r;
}

Fan Fan::from_rays(const std::vector<Vec2>& rays) {
  if (rays.empty()) throw std::invalid_argument("fan: no rays");
  std::vector<Vec2> prim;
  prim.reserve(rays.size());
  for (const auto& v : rays) prim.push_back(primitive(v));
  std::sort(prim.begin(), prim.end(),
            [](const Vec2& a, const Vec2& b) { return angle_cmp(a, b) < 0; });
  prim.erase(std::unique(prim.begin(), prim.end()), prim.end());
  if (prim.size() < 3) throw std::invalid_argument("incomplete fan");
  for (size_t i = 0; i < prim.size(); ++i) {
    const Vec2& v = prim[i];
    const Vec2& w = prim[(i + 1) % prim.size()];
    if (cross(v, w) <= 0) throw std::invalid_argument("incomplete fan");
  }
  Fan f;
  f.rays_ = std::move(prim);
  return f;
}

bool Fan::smooth() const {
  for (size_t i = 0; i < rays_.size(); ++i)
    if (cross(rays_[i], rays_[(i + 1) % rays_.size()]) != 1) return false;
  return true;
}

bool Fan::has_ray(const Vec2& v) const {
  Vec2 p = primitive(v);
  return std::any_of(rays_.begin(), rays_.end(), [&](const Vec2& r) { return r == p; });
}

size_t Fan::sector_of(const Vec2& v) const {
  if (v.is_zero()) throw std::invalid_argument("sector_of: zero vector");
  for (size_t i = 0; i < rays_.size(); ++i) {
    const Vec2& a = rays_[i];
    const Vec2& b = rays_[(i + 1) % rays_.size()];
    if (cross(a, v) >= 0 && cross(v, b) > 0) return i;
  }
  // v is on the last sector's closing ray or numerically equal to a ray.
  for (size_t i = 0; i < rays_.size(); ++i)
    if (cross(rays_[i], v) == 0 && dot(rays_[i], v) > 0) return i;
  throw std::logic_error("sector_of: no sector found");
}

std::vector<Int> Fan::sector_dets() const {
  std::vector<Int> d;
  d.reserve(rays_.size());
  for (size_t i = 0; i < rays_.size(); ++i)
    d.push_back(cross(rays_[i], rays_[(i + 1) % rays_.size()]));
  return d;
}

namespace {
json int_json(const Int& n) {
  if (n >= std::numeric_limits<long long>::min() && n <= std::numeric_limits<long long>::max())
    return json(n.convert_to<long long>());
  return json(n.str());
}
Int int_from_json(const json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  return Int(j.get<long long>());
}
}  // namespace

std::string Fan::json() const {
  ::nlohmann::json rays = ::nlohmann::json::array();
  for (const auto& v : rays_) rays.push_back({int_json(v.x), int_json(v.y)});
  ::nlohmann::json j;
  j["rays"] = rays;
  return j.dump();
}

Fan Fan::from_json(const std::string& text) {
  ::nlohmann::json j = ::nlohmann::json::parse(text);
  std::vector<Vec2> rays;
  for (const auto& r : j.at("rays")) rays.emplace_back(int_from_json(r[0]), int_from_json(r[1]));
  return Fan::from_rays(rays);
}

Fan p2_fan() { return Fan::from_rays({{1, 0}, {0, 1}, {-1, -1}}); }

Fan p1xp1_fan() { return Fan::from_rays({{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

namespace {
// Hirzebruch-Jung chain between v1 and v2 with det(v1,v2) = d > 1.
// The next boundary lattice point after v1 on the hull of cone(v1,v2) is
// v1 + w, where w is the Bezout complement normalized so that
// v2 = k v1 + d w with 0 < k < d.
void hj_fill(const Vec2& v1, const Vec2& v2, std::vector<Vec2>& out) {
  Int d = cross(v1, v2);
  if (d <= 0) throw std::logic_error("hj_fill: bad sector");
  if (d == 1) return;
  // Solve det(v1, w0) = v1.x*w0.y - v1.y*w0.x = 1.
  Int g0 = gcd(v1.x, v1.y);
  if (g0 != 1) throw std::logic_error("hj_fill: non-primitive ray");
  // Extended gcd on (v1.x, -v1.y): find (p,q) with v1.x*q - v1.y*p = 1.
  Int old_r = v1.x, r = v1.y, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  // old_s*v1.x + old_t*v1.y = old_r = +-gcd = +-1
  Int sign = old_r;  // +-1
  // w0 = (-old_t, old_s)/sign gives cross(v1, w0) = (v1.x*old_s + v1.y*old_t)/sign = 1.
  Vec2 w0(-old_t * sign, old_s * sign);
  if (cross(v1, w0) != 1) throw std::logic_error("hj_fill: bezout failure");
  // v2 = a*v1 + d*w0 with a = cross(v2, w0).
  Int a = cross(v2, w0);
  Int k = ((a % d) + d) % d;
  if (k == 0) throw std::logic_error("hj_fill: non-primitive v2");
  Int shift = (a - k) / d;
  Vec2 w = w0 + v1 * shift;
  Vec2 u = v1 + w;
  if (cross(v1, u) != 1 || cross(u, v2) != d - k)
    throw std::logic_error("hj_fill: insertion invariant failed");
  out.push_back(u);
  hj_fill(u, v2, out);
}
}  // namespace

Fan smooth_resolution(const Fan& f) {
  std::vector<Vec2> rays = f.rays();
  std::vector<Vec2> extra;
  for (size_t i = 0; i < f.size(); ++i) hj_fill(f.ray(i), f.ray(i + 1), extra);
  rays.insert(rays.end(), extra.begin(), extra.end());
  Fan out = Fan::from_rays(rays);
  if (!out.smooth()) throw std::logic_error("smooth_resolution: result not smooth");
  return out;
}

Fan refine(const Fan& f1, const Fan& f2) {
  std::vector<Vec2> rays = f1.rays();
  rays.insert(rays.end(), f2.rays().begin(), f2.rays().end());
  return Fan::from_rays(rays);
}

bool dominates(const Fan& f1, const Fan& f2) {
  return std::all_of(f2.rays().begin(), f2.rays().end(),
                     [&](const Vec2& r) { return f1.has_ray(r); });
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;
  auto build = [&](auto begin, auto end) {
    std::vector<Vec2> chain;
    for (auto it = begin; it != end; ++it) {
      while (chain.size() >= 2 &&
             cross(chain[chain.size() - 1] - chain[chain.size() - 2], *it - chain.back()) <= 0)
        chain.pop_back();
      chain.push_back(*it);
    }
    return chain;
  };
  std::vector<Vec2> lower = build(pts.begin(), pts.end());
  std::vector<Vec2> upper = build(pts.rbegin(), pts.rend());
  lower.pop_back();
  upper.pop_back();
  lower.insert(lower.end(), upper.begin(), upper.end());
  return lower;
}

}  // namespace toric
