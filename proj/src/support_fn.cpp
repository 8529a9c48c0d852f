#include "toric/support_fn.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace toric {

namespace {
constexpr double kPi = std::numbers::pi;

template <class S>
double as_double(const S& v) {
  if constexpr (std::is_same_v<S, double>) return v;
  else return to_double(v);
}
}  // namespace

template <class S>
double PLFunction<S>::eval(double x, double y) const {
  if (x == 0.0 && y == 0.0) return 0.0;
  // Locate the sector with double cross products; fans are modest in size.
  size_t n = fan.size();
  for (size_t i = 0; i < n; ++i) {
    double ax = to_double(fan.ray(i).x), ay = to_double(fan.ray(i).y);
    double bx = to_double(fan.ray(i + 1).x), by = to_double(fan.ray(i + 1).y);
    double ca = ax * y - ay * x;
    double cb = x * by - y * bx;
    if (ca >= 0 && cb >= 0 && (ca > 0 || cb > 0)) {
      double det = ax * by - ay * bx;
      return (as_double(vals[i]) * cb + as_double(vals[(i + 1) % n]) * ca) / det;
    }
  }
  // Fall back to the nearest ray direction (numerical boundary case).
  size_t best = 0;
  double bestdot = -1e300;
  for (size_t i = 0; i < n; ++i) {
    double ax = to_double(fan.ray(i).x), ay = to_double(fan.ray(i).y);
    double nn = std::hypot(ax, ay);
    double d = (ax * x + ay * y) / nn;
    if (d > bestdot) {
      bestdot = d;
      best = i;
    }
  }
  double ax = to_double(fan.ray(best).x), ay = to_double(fan.ray(best).y);
  return as_double(vals[best]) * std::hypot(x, y) / std::hypot(ax, ay);
}

template <class S>
PLFunction<S> PLFunction<S>::operator+(const PLFunction<S>& o) const {
  Fan common = fan == o.fan ? fan : refine(fan, o.fan);
  PLFunction<S> a = on_fan(common), b = o.on_fan(common);
  for (size_t i = 0; i < a.vals.size(); ++i) a.vals[i] = a.vals[i] + b.vals[i];
  return a;
}

PLFunctionD to_numeric(const PLFunctionQ& f) {
  PLFunctionD out;
  out.fan = f.fan;
  out.vals.reserve(f.vals.size());
  for (const auto& v : f.vals) out.vals.push_back(to_double(v));
  return out;
}

template <class S>
bool pl_convex(const PLFunction<S>& f) {
  size_t n = f.fan.size();
  for (size_t i = 0; i < n; ++i) {
    // Convexity across ray v_i: the linear piece of sector (i-1, i), extended
    // to v_{i+1}, must not exceed the value there.
    const Vec2& vp = f.fan.ray(i + n - 1);
    const Vec2& v = f.fan.ray(i);
    const Vec2& vn = f.fan.ray(i + 1);
    Int det = cross(vp, v);
    Int alpha = cross(vn, v), beta = cross(vp, vn);
    // vn = (alpha * vp + beta * v)/det in exact rationals:
    S lhs = (f.vals[(i + n - 1) % n] * S(alpha) + f.vals[i] * S(beta));
    S rhs = f.vals[(i + 1) % n] * S(det);
    if (lhs > rhs) return false;
  }
  return true;
}

template <class S>
bool pl_linear(const PLFunction<S>& f) {
  size_t n = f.fan.size();
  for (size_t i = 0; i < n; ++i) {
    const Vec2& vp = f.fan.ray(i + n - 1);
    const Vec2& v = f.fan.ray(i);
    const Vec2& vn = f.fan.ray(i + 1);
    Int det = cross(vp, v);
    Int alpha = cross(vn, v), beta = cross(vp, vn);
    S lhs = (f.vals[(i + n - 1) % n] * S(alpha) + f.vals[i] * S(beta));
    S rhs = f.vals[(i + 1) % n] * S(det);
    if (lhs != rhs) return false;
  }
  return true;
}

template <class S>
double growth(const PLFunction<S>& f) {
  size_t n = f.fan.size();
  double best = -1e300;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = f.fan.ray(i);
    const Vec2& b = f.fan.ray(i + 1);
    double ax = to_double(a.x), ay = to_double(a.y);
    double bx = to_double(b.x), by = to_double(b.y);
    double det = ax * by - ay * bx;
    double ca = as_double(f.vals[i]), cb = as_double(f.vals[(i + 1) % n]);
    // gradient of the linear piece
    double gx = (ca * by - cb * ay) / det;
    double gy = (cb * ax - ca * bx) / det;
    best = std::max(best, ca / std::hypot(ax, ay));
    best = std::max(best, cb / std::hypot(bx, by));
    if ((gx != 0 || gy != 0) && ax * gy - ay * gx >= 0 && gx * by - gy * bx >= 0)
      best = std::max(best, std::hypot(gx, gy));
  }
  return best;
}

template double PLFunction<Rational>::eval(double, double) const;
template double PLFunction<double>::eval(double, double) const;
template PLFunction<Rational> PLFunction<Rational>::operator+(const PLFunction<Rational>&) const;
template PLFunction<double> PLFunction<double>::operator+(const PLFunction<double>&) const;
template bool pl_convex(const PLFunction<Rational>&);
template bool pl_convex(const PLFunction<double>&);
template bool pl_linear(const PLFunction<Rational>&);
template bool pl_linear(const PLFunction<double>&);
template double growth(const PLFunction<Rational>&);
template double growth(const PLFunction<double>&);

GrowthResult growth(const NumericConvexFunction& f, int samples, int doublings, double tol) {
  double f0 = f(0.0, 0.0);
  double prev = -1e300, cur = -1e300;
  double R = 1.0;
  for (int k = 0; k < doublings; ++k) {
    double g = -1e300;
    for (int j = 0; j < samples; ++j) {
      double th = 2 * kPi * j / samples;
      g = std::max(g, (f(R * std::cos(th), R * std::sin(th)) - f0) / R);
    }
    prev = cur;
    cur = g;
    if (k > 0 && std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur)))
      return {cur, false};
    if (cur > 1e12) return {cur, true};
    R *= 2;
  }
  bool infinite = cur > 1e9 || (prev > 0 && cur > 1.25 * prev);
  return {cur, infinite};
}

NumericConvexFunction homogenize(const NumericConvexFunction& f, double tol, int doublings) {
  auto base = f.eval;
  auto h = [base, tol, doublings](double x, double y) -> double {
    if (x == 0.0 && y == 0.0) return 0.0;
    double r = std::hypot(x, y);
    double ux = x / r, uy = y / r;
    double f0 = base(0.0, 0.0);
    double t = 1.0, prev = 0.0, cur = 0.0;
    for (int k = 0; k < doublings; ++k) {
      cur = (base(t * ux, t * uy) - f0) / t;
      if (k > 0 && std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return r * cur;
      prev = cur;
      t *= 2;
    }
    std::ostringstream os;
    os << "homogenize: no convergence, last estimates " << prev << " and " << cur;
    throw std::runtime_error(os.str());
  };
  return NumericConvexFunction{h};
}

PLFunctionD restrict_to_fan(const std::function<double(double, double)>& psi_bar, const Fan& fan) {
  PLFunctionD out;
  out.fan = fan;
  out.vals.reserve(fan.size());
  for (const auto& r : fan.rays()) out.vals.push_back(psi_bar(to_double(r.x), to_double(r.y)));
  return out;
}

PLFunctionD restrict_to_fan(const NumericConvexFunction& psi_bar, const Fan& fan) {
  return restrict_to_fan(psi_bar.eval, fan);
}

double fan_pinch_constant(const Fan& fan) {
  double maxang = 0.0;
  for (size_t i = 0; i < fan.size(); ++i) {
    const Vec2& a = fan.ray(i);
    const Vec2& b = fan.ray(i + 1);
    double ang = std::atan2(to_double(cross(a, b)), to_double(dot(a, b)));
    maxang = std::max(maxang, ang);
  }
  return 1.0 / std::cos(maxang / 2.0);
}

RonkinResult ronkin(const LaurentPoly& P, double v1, double v2, int n) {
  if (P.zero()) throw std::invalid_argument("ronkin: zero polynomial");
  if (n < 16) throw std::invalid_argument("ronkin: quadrature size must be >= 16");
  double h = 2 * kPi / n;
  double acc = 0.0;
  int perturbed = 0;
  for (int i = 0; i < n; ++i) {
    double t1 = (i + 0.5) * h;
    for (int j = 0; j < n; ++j) {
      double t2 = (j + 0.5) * h;
      double v = P.log_abs_on_fiber(v1, v2, t1, t2);
      if (!std::isfinite(v)) {
        ++perturbed;
        v = P.log_abs_on_fiber(v1, v2, t1 + h / 4, t2 + h / 4);
        if (!std::isfinite(v)) v = P.log_abs_on_fiber(v1, v2, t1 + h / 8, t2 + 3 * h / 8);
      }
      acc += v;
    }
  }
  return {acc / (static_cast<double>(n) * n), perturbed};
}

NumericConvexFunction ronkin_function(const LaurentPoly& P, int n) {
  return NumericConvexFunction{
      [P, n](double x, double y) { return ronkin(P, x, y, n).value; }};
}

PLFunctionQ newton_support(const LaurentPoly& P) {
  if (P.zero()) throw std::invalid_argument("newton_support: zero polynomial");
  std::vector<Vec2> pts;
  for (const auto& [e, c] : P.terms) {
    (void)c;
    pts.emplace_back(Int(e.first), Int(e.second));
  }
  std::vector<Vec2> hull = convex_hull(pts);
  std::vector<Vec2> rays;
  if (hull.size() >= 3) {
    for (size_t k = 0; k < hull.size(); ++k) {
      Vec2 e = hull[(k + 1) % hull.size()] - hull[k];
      rays.push_back(primitive(Vec2(-e.y, e.x)));
    }
  } else if (hull.size() == 2) {
    Vec2 e = hull[1] - hull[0];
    rays.push_back(primitive(Vec2(-e.y, e.x)));
    rays.push_back(primitive(Vec2(e.y, -e.x)));
    for (const auto& r : p2_fan().rays()) rays.push_back(r);
  } else {
    for (const auto& r : p2_fan().rays()) rays.push_back(r);
  }
  Fan fan = smooth_resolution(Fan::from_rays(rays));
  PLFunctionQ out;
  out.fan = fan;
  out.vals.reserve(fan.size());
  for (const auto& r : fan.rays()) {
    Int best = -dot(hull.front(), r);
    for (const auto& v : hull) best = std::max(best, -dot(v, r));
    out.vals.push_back(Rational(best));
  }
  return out;
}

}  // namespace toric
