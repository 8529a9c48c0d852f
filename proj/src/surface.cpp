#include "toric/surface.hpp"

#include <algorithm>

namespace toric {

ToricSurface ToricSurface::make(const Fan& f) {
  if (!f.smooth()) throw std::invalid_argument("surface: fan is not smooth");
  ToricSurface X;
  X.fan = f;
  size_t n = f.size();
  X.a.reserve(n);
  Int asum = 0;
  for (size_t i = 0; i < n; ++i) {
    Vec2 s = f.ray(i + n - 1) + f.ray(i + 1);
    const Vec2& v = f.ray(i);
    // s = a_i v exactly on a smooth complete fan
    if (cross(s, v) != 0) throw std::logic_error("surface: self-intersection relation failed");
    Int ai = (v.x != 0) ? s.x / v.x : s.y / v.y;
    if (!(v * ai == s)) throw std::logic_error("surface: self-intersection relation failed");
    X.a.push_back(ai);
    asum += ai;
  }
  if (asum != 3 * Int(static_cast<long>(n)) - 12)
    throw std::logic_error("surface: sum of self-intersections violates 3d-12");
  return X;
}

size_t ToricSurface::index_of(const Vec2& ray) const {
  Vec2 p = primitive(ray);
  for (size_t i = 0; i < fan.size(); ++i)
    if (fan.ray(i) == p) return i;
  throw std::invalid_argument("surface: ray not in fan");
}

SurfacePtr make_surface(const Fan& f) {
  return std::make_shared<const ToricSurface>(ToricSurface::make(f));
}

SurfacePtr p2_surface() {
  static SurfacePtr X = make_surface(p2_fan());
  return X;
}

template <class S>
S intersect(const ExternalDivisor<S>& D, const ExternalDivisor<S>& E) {
  if (!(D.X->fan == E.X->fan)) throw std::invalid_argument("intersect: mismatched surfaces");
  size_t n = D.X->fan.size();
  S acc(0);
  for (size_t i = 0; i < n; ++i) {
    // (E . C_i) = e_{i-1} + e_{i+1} - a_i e_i
    S hit = E.c[(i + n - 1) % n] + E.c[(i + 1) % n] - E.c[i] * S(D.X->a[i]);
    acc = acc + D.c[i] * hit;
  }
  return acc;
}

template <class S>
PLFunction<S> support_function(const ExternalDivisor<S>& D) {
  return PLFunction<S>{D.X->fan, D.c};
}

template <class S>
ExternalDivisor<S> divisor_from_support(const PLFunction<S>& psi, SurfacePtr X) {
  ExternalDivisor<S> D;
  D.X = X;
  D.c.reserve(X->fan.size());
  for (const auto& r : X->fan.rays()) D.c.push_back(psi(r));
  // Round-trip check: the PL extension on X must reproduce psi on its rays.
  PLFunction<S> ext{X->fan, D.c};
  for (size_t i = 0; i < psi.fan.size(); ++i) {
    if (ext(psi.fan.ray(i)) != psi.vals[i])
      throw std::invalid_argument("divisor_from_support: psi is not PL on the surface fan");
  }
  return D;
}

template <class S>
bool is_principal(const ExternalDivisor<S>& D) {
  return pl_linear(support_function(D));
}

template <class S>
bool is_nef(const ExternalDivisor<S>& D) {
  return pl_convex(support_function(D));
}

template <class S>
ExternalDivisor<S> normalize(const ExternalDivisor<S>& D) {
  const Fan& f = D.X->fan;
  Vec2 e1(1, 0), e2(0, 1), e3(-1, -1);
  if (!f.has_ray(e1) || !f.has_ray(e2) || !f.has_ray(e3))
    throw std::invalid_argument("normalize: fan does not contain the P^2 rays");
  S c1 = D.c[D.X->index_of(e1)];
  S c2 = D.c[D.X->index_of(e2)];
  S c3 = D.c[D.X->index_of(e3)];
  // Add the linear form l(v) = p v1 + q v2 with c1+p = c2+q = c3-p-q.
  S p = (c2 + c3 - c1 * S(2)) / S(3);
  S q = (c1 + c3 - c2 * S(2)) / S(3);
  ExternalDivisor<S> out = D;
  for (size_t i = 0; i < f.size(); ++i)
    out.c[i] = out.c[i] + p * S(f.ray(i).x) + q * S(f.ray(i).y);
  return out;
}

template <class S>
S p2_degree(const ExternalDivisor<S>& D) {
  const Fan& f = D.X->fan;
  return D.c[D.X->index_of(Vec2(1, 0))] + D.c[D.X->index_of(Vec2(0, 1))] +
         D.c[D.X->index_of(Vec2(-1, -1))];
}

template <class S>
ExternalDivisor<S> pushforward_pi(const ExternalDivisor<S>& D, SurfacePtr Y) {
  if (!dominates(D.X->fan, Y->fan))
    throw std::invalid_argument("pushforward: domination fails");
  ExternalDivisor<S> out;
  out.X = Y;
  out.c.reserve(Y->fan.size());
  for (const auto& r : Y->fan.rays()) out.c.push_back(D.c[D.X->index_of(r)]);
  return out;
}

template <class S>
ExternalDivisor<S> pullback_pi(const ExternalDivisor<S>& D, SurfacePtr X) {
  if (!dominates(X->fan, D.X->fan))
    throw std::invalid_argument("pullback: domination fails");
  PLFunction<S> psi = support_function(D);
  ExternalDivisor<S> out;
  out.X = X;
  out.c.reserve(X->fan.size());
  for (const auto& r : X->fan.rays()) out.c.push_back(psi(r));
  return out;
}

template Rational intersect(const DivisorQ&, const DivisorQ&);
template double intersect(const DivisorD&, const DivisorD&);
template PLFunctionQ support_function(const DivisorQ&);
template PLFunctionD support_function(const DivisorD&);
template DivisorQ divisor_from_support(const PLFunctionQ&, SurfacePtr);
template DivisorD divisor_from_support(const PLFunctionD&, SurfacePtr);
template bool is_principal(const DivisorQ&);
template bool is_nef(const DivisorQ&);
template bool is_nef(const DivisorD&);
template DivisorQ normalize(const DivisorQ&);
template DivisorD normalize(const DivisorD&);
template Rational p2_degree(const DivisorQ&);
template double p2_degree(const DivisorD&);
template DivisorQ pushforward_pi(const DivisorQ&, SurfacePtr);
template DivisorD pushforward_pi(const DivisorD&, SurfacePtr);
template DivisorQ pullback_pi(const DivisorQ&, SurfacePtr);
template DivisorD pullback_pi(const DivisorD&, SurfacePtr);

NewtonClass curve_class_from_newton(const std::vector<Vec2>& points) {
  std::vector<Vec2> hull = convex_hull(points);
  if (hull.size() < 3)
    throw std::invalid_argument("curve_class_from_newton: polygon is degenerate");
  NewtonClass out;
  Vec2 balance(0, 0);
  std::vector<Vec2> rays;
  for (size_t k = 0; k < hull.size(); ++k) {
    Vec2 e = hull[(k + 1) % hull.size()] - hull[k];
    Vec2 ray = primitive(Vec2(-e.y, e.x));  // inner normal: <m,.> minimal on edge
    Int len = content(e);
    out.pole_hits.emplace_back(ray, len);
    balance = balance + ray * len;
    rays.push_back(ray);
  }
  if (!balance.is_zero()) throw std::logic_error("curve_class_from_newton: balance failed");
  for (const auto& r : p2_fan().rays()) rays.push_back(r);
  SurfacePtr X = make_surface(smooth_resolution(Fan::from_rays(rays)));
  // The curve is linearly equivalent to the external divisor with support
  // function max over vertices m of <m, -v>.
  DivisorQ D;
  D.X = X;
  D.c.reserve(X->fan.size());
  for (const auto& r : X->fan.rays()) {
    Int best = -dot(hull.front(), r);
    for (const auto& m : hull) best = std::max(best, -dot(m, r));
    D.c.push_back(Rational(best));
  }
  out.cls = normalize(D);
  return out;
}

}  // namespace toric
