#include "toric/tropical.hpp"

#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

namespace toric {

namespace {
constexpr double kPi = std::numbers::pi;

double angle_of(const Vec2& v) {
  long bx = v.x == 0 ? 0 : static_cast<long>(msb(abs(v.x)));
  long by = v.y == 0 ? 0 : static_cast<long>(msb(abs(v.y)));
  long sh = std::max(bx, by) > 512 ? std::max(bx, by) - 64 : 0;
  double x = to_double(Int(v.x >> sh));
  double y = to_double(Int(v.y >> sh));
  return std::atan2(y, x);
}
}  // namespace

TropMap::TropMap(Fan lin_fan, std::vector<IMat2> mats)
    : fan_(std::move(lin_fan)), mats_(std::move(mats)) {
  if (mats_.size() != fan_.size())
    throw std::invalid_argument("tropmap: one matrix per sector required");
  absdet_ = abs(mats_[0].det());
  for (size_t i = 0; i < mats_.size(); ++i) {
    if (mats_[i].det() == 0) throw std::invalid_argument("tropmap: singular sector matrix");
    if (abs(mats_[i].det()) != absdet_)
      throw std::invalid_argument("tropmap: |det| not constant across sectors");
    // continuity across the shared ray fan.ray(i+1)
    const Vec2& r = fan_.ray(i + 1);
    if (!(mats_[i].apply(r) == mats_[(i + 1) % mats_.size()].apply(r)))
      throw std::invalid_argument("tropmap: discontinuous across a shared ray");
  }
}

TropMap TropMap::linear(const IMat2& A) {
  Fan axes = p1xp1_fan();
  return TropMap(axes, {A, A, A, A});
}

bool TropMap::is_linear() const {
  for (size_t i = 1; i < mats_.size(); ++i)
    if (!(mats_[i] == mats_[0])) return false;
  return true;
}

Vec2 TropMap::apply(const Vec2& v) const {
  if (v.is_zero()) return v;
  return matrix_at(v).apply(v);
}

std::pair<double, double> TropMap::apply(double x, double y) const {
  if (x == 0.0 && y == 0.0) return {0.0, 0.0};
  // sector lookup with double cross products
  size_t n = fan_.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = fan_.ray(i);
    const Vec2& b = fan_.ray(i + 1);
    double ca = to_double(a.x) * y - to_double(a.y) * x;
    double cb = x * to_double(b.y) - y * to_double(b.x);
    if (ca >= 0 && cb > 0) {
      const IMat2& m = mats_[i];
      return {to_double(m.a) * x + to_double(m.b) * y, to_double(m.c) * x + to_double(m.d) * y};
    }
  }
  const IMat2& m = mats_[n - 1];
  return {to_double(m.a) * x + to_double(m.b) * y, to_double(m.c) * x + to_double(m.d) * y};
}

std::string TropMap::json() const {
  nlohmann::json j;
  j["lin_fan"] = nlohmann::json::parse(fan_.json());
  nlohmann::json mats = nlohmann::json::array();
  for (const auto& m : mats_) {
    mats.push_back({{m.a.convert_to<long long>(), m.b.convert_to<long long>()},
                    {m.c.convert_to<long long>(), m.d.convert_to<long long>()}});
  }
  j["matrices"] = mats;
  return j.dump();
}

TropMap TropMap::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  Fan f = Fan::from_json(j.at("lin_fan").dump());
  std::vector<IMat2> mats;
  for (const auto& m : j.at("matrices"))
    mats.emplace_back(Int(m[0][0].get<long long>()), Int(m[0][1].get<long long>()),
                      Int(m[1][0].get<long long>()), Int(m[1][1].get<long long>()));
  return TropMap(f, mats);
}

TropMap compose(const TropMap& T1, const TropMap& T2) {
  // Rays of linearity: those of T2, plus T2-preimages of T1's rays.
  std::vector<Vec2> rays = T2.lin_fan().rays();
  for (size_t i = 0; i < T2.lin_fan().size(); ++i) {
    const IMat2& M = T2.matrices()[i];
    IMat2 adj = M.adjugate();
    int sgn = M.det() < 0 ? -1 : 1;
    const Vec2& a = T2.lin_fan().ray(i);
    const Vec2& b = T2.lin_fan().ray(i + 1);
    for (const auto& r : T1.lin_fan().rays()) {
      Vec2 pre = adj.apply(r) * Int(sgn);  // direction of M^{-1} r
      if (pre.is_zero()) continue;
      if (cross(a, pre) >= 0 && cross(pre, b) >= 0) rays.push_back(primitive(pre));
    }
  }
  Fan fan = Fan::from_rays(rays);
  std::vector<IMat2> mats;
  mats.reserve(fan.size());
  for (size_t i = 0; i < fan.size(); ++i) {
    Vec2 mid = fan.ray(i) + fan.ray(i + 1);  // interior direction of the sector
    const IMat2& m2 = T2.matrix_at(mid);
    const IMat2& m1 = T1.matrix_at(m2.apply(mid));
    mats.push_back(m1.mul(m2));
  }
  return TropMap(fan, mats);  // constructor re-verifies the invariants
}

namespace {
// Does the ccw arc from w to w' (angle < pi) strictly contain direction d?
bool arc_contains(const Vec2& w, const Vec2& wp, const Vec2& d) {
  return cross(w, d) > 0 && cross(d, wp) > 0;
}
}  // namespace

Int winding_number(const TropMap& T) {
  size_t n = T.lin_fan().size();
  std::vector<Vec2> img;
  img.reserve(n);
  for (size_t i = 0; i < n; ++i) img.push_back(T.apply_ray(T.lin_fan().ray(i)));
  // Reference direction not parallel to any image ray.
  Vec2 d(1, 0);
  for (long k = 0; k < 1000; ++k) {
    d = primitive(Vec2(1000003 + k, 2 * k + 1));
    bool clash = false;
    for (const auto& w : img)
      if (cross(w, d) == 0) clash = true;
    if (!clash) break;
  }
  Int wind = 0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& w = img[i];
    const Vec2& wp = img[(i + 1) % n];
    int o = T.matrices()[i].det() < 0 ? -1 : 1;
    if (o > 0) {
      if (arc_contains(w, wp, d)) wind += 1;
    } else {
      if (arc_contains(wp, w, d)) wind -= 1;
    }
  }
  return wind;
}

Int covering_degree(const TropMap& T) { return abs(winding_number(T)); }

bool orientation_consistent(const TropMap& T) {
  int sgn = T.matrices()[0].det() < 0 ? -1 : 1;
  for (const auto& m : T.matrices())
    if ((m.det() < 0 ? -1 : 1) != sgn) return false;
  return true;
}

bool is_homeomorphism(const TropMap& T) {
  return orientation_consistent(T) && covering_degree(T) == 1;
}

Int ramification(const TropMap& T, const Vec2& tau) {
  return content(T.apply(primitive(tau)));
}

RotationEstimate rotation_number(const TropMap& T, long n) {
  if (!is_homeomorphism(T)) throw std::invalid_argument("rotation_number: not a homeomorphism");
  Vec2 v(1, 0);
  double total = 0.0;
  for (long j = 0; j < n; ++j) {
    Vec2 w = T.apply_ray(v);
    double a0 = angle_of(v), a1 = angle_of(w);
    double d = a1 - a0;
    while (d <= -kPi) d += 2 * kPi;
    while (d > kPi) d -= 2 * kPi;
    total += d;
    v = w;
  }
  double rot = total / (2 * kPi * n);
  rot -= std::floor(rot);
  return {rot, 1.0 / static_cast<double>(n)};
}

RotationClass rotation_is_rational_linear(const IMat2& A) {
  if (A.det() == 0) throw std::invalid_argument("rotation: singular matrix");
  Int disc = A.trace() * A.trace() - 4 * A.det();
  if (disc >= 0) {
    // real spectrum: some ray is fixed unless both eigenvalues are negative
    bool both_negative = A.trace() < 0 && A.det() > 0;
    RotationClass rc;
    rc.kind = RotationKind::kRealEigenvalues;
    rc.p = both_negative ? 1 : 0;
    rc.q = both_negative ? 2 : 1;
    return rc;
  }
  // complex pair xi, bar xi with theta = arg xi in (0, pi)
  for (int k : {2, 3, 4, 6}) {
    IMat2 P = A.pow(static_cast<unsigned>(k));
    if (!P.is_scalar()) continue;
    bool rpos = P.a > 0;
    // k theta = 2 pi m (rpos) or pi + 2 pi m; theta in (0,pi), pick via trace sign
    std::vector<std::pair<long, long>> cands;
    if (rpos) {
      for (long m = 1; 2 * m < k; ++m) cands.push_back({m, k});
    } else {
      for (long m = 0; 2 * (2 * m + 1) < 2 * k; ++m) cands.push_back({2 * m + 1, 2 * k});
    }
    double theta = std::atan2(std::sqrt(to_double(Int(-disc))) / 2.0, to_double(A.trace()) / 2.0);
    double rot = theta / (2 * kPi);
    long bp = 0, bq = 1;
    double best = 1e9;
    for (auto [p, q] : cands) {
      double err = std::abs(rot - static_cast<double>(p) / q);
      if (err < best) {
        best = err;
        bp = p;
        bq = q;
      }
    }
    long g = std::gcd(bp, bq);
    return {RotationKind::kRational, bp / g, bq / g};
  }
  return {RotationKind::kIrrationalCertified, 0, 1};
}

GrowthReport growth_exponent(const TropMap& T, int n, const Int& dtop, int directions,
                             const Vec2& ram_ray, double mu, int n_ram) {
  GrowthReport rep;
  rep.sqrt_dtop = std::sqrt(to_double(dtop));
  rep.per_direction.reserve(directions);
  double mn = 1e300, mx = -1e300, dev = 0.0;
  for (int k = 0; k < directions; ++k) {
    double th = 2 * kPi * k / directions;
    double x = std::cos(th), y = std::sin(th);
    for (int j = 0; j < n; ++j) {
      auto [nx, ny] = T.apply(x, y);
      x = nx;
      y = ny;
    }
    double e = std::pow(std::hypot(x, y), 1.0 / n);
    rep.per_direction.push_back(e);
    mn = std::min(mn, e);
    mx = std::max(mx, e);
    dev = std::max(dev, std::abs(e - rep.sqrt_dtop));
  }
  rep.min = mn;
  rep.max = mx;
  rep.max_deviation = dev;
  if (n_ram > 0) {
    // Ram(T^k, tau) = content(T^k v) accumulates multiplicatively along the
    // ray orbit, so track the stepwise contents as a product.
    Vec2 w = primitive(ram_ray);
    double logmu = std::log(mu);
    double log_ram = 0.0;
    for (int k = 1; k <= n_ram; ++k) {
      w = T.apply(w);
      log_ram += std::log(to_double(content(w)));
      w = primitive(w);
      rep.ram_decay.push_back(std::exp(log_ram - k * logmu));
    }
  }
  return rep;
}

}  // namespace toric
