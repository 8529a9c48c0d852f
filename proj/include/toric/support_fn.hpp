// Positively homogeneous piecewise-linear functions on the plane, numeric
// convex functions, growth, homogenization, restriction to fans, and the
// Ronkin / Newton-polygon bridge.
#pragma once

#include <functional>
#include <optional>

#include "toric/lattice.hpp"
#include "toric/laurent.hpp"

namespace toric {

// Values at the primitive generators of a fan, extended linearly on sectors.
// Positively homogeneous of degree 1 by construction.
template <class S>
struct PLFunction {
  Fan fan;
  std::vector<S> vals;  // aligned with fan.rays()

  // Exact evaluation at a lattice point (or rational vector).
  S operator()(const Vec2& v) const {
    if (v.is_zero()) return S(0);
    size_t i = fan.sector_of(v);
    const Vec2& a = fan.ray(i);
    const Vec2& b = fan.ray(i + 1);
    Int det = cross(a, b);
    Int alpha = cross(v, b), beta = cross(a, v);
    return (vals[i] * S(alpha) + vals[(i + 1) % fan.size()] * S(beta)) / S(det);
  }

  double eval(double x, double y) const;

  // Restriction/extension to another fan by exact evaluation at its rays.
  PLFunction<S> on_fan(const Fan& g) const {
    PLFunction<S> out;
    out.fan = g;
    out.vals.reserve(g.size());
    for (const auto& r : g.rays()) out.vals.push_back((*this)(r));
    return out;
  }

  PLFunction<S> operator+(const PLFunction<S>& o) const;
  PLFunction<S> scaled(const S& k) const {
    PLFunction<S> out = *this;
    for (auto& v : out.vals) v = v * k;
    return out;
  }
};

using PLFunctionQ = PLFunction<Rational>;
using PLFunctionD = PLFunction<double>;

PLFunctionD to_numeric(const PLFunctionQ& f);

// Convexity across every ray: vals[i-1] + vals[i+1] >= a_i vals[i], where
// v_{i-1} + v_{i+1} = a_i v_i.  Exactly the per-ray nef test.
template <class S>
bool pl_convex(const PLFunction<S>& f);
template <class S>
bool pl_linear(const PLFunction<S>& f);

// sup over v != 0 of f(v)/||v||: per sector, the max of the linear piece on
// the unit arc (attained at the gradient direction when it lies inside).
template <class S>
double growth(const PLFunction<S>& f);

// A caller-supplied convex function; convexity is the caller's contract and
// is only spot-checked by tests.
struct NumericConvexFunction {
  std::function<double(double, double)> eval;
  double operator()(double x, double y) const { return eval(x, y); }
};

struct GrowthResult {
  double value = 0.0;
  bool infinite = false;
};

// sup over a sampled circle of (f(Rv) - f(0))/R at doubling R; flagged
// infinite if still growing past the iteration budget.
GrowthResult growth(const NumericConvexFunction& f, int samples = 256, int doublings = 48,
                    double tol = 1e-9);

// psi_bar(v) = lim psi(tv)/t at doubling t until the change is below tol.
// Throws (with the last two estimates in the message) on non-convergence.
NumericConvexFunction homogenize(const NumericConvexFunction& f, double tol = 1e-9,
                                 int doublings = 64);

// PL data with values psi_bar(v_tau) on the rays of X's fan.
PLFunctionD restrict_to_fan(const NumericConvexFunction& psi_bar, const Fan& fan);
PLFunctionD restrict_to_fan(const std::function<double(double, double)>& psi_bar, const Fan& fan);

// 1/cos(half of the maximum sector angle) of the fan.
double fan_pinch_constant(const Fan& fan);

// Torus-fiber average of log|P| over Trop(x) = v (Trop = -log|.|), by an
// n x n midpoint rule.  Deterministic; grid points that hit a zero of P are
// perturbed by a quarter step and noted.
struct RonkinResult {
  double value = 0.0;
  int perturbed = 0;
};
RonkinResult ronkin(const LaurentPoly& P, double v1, double v2, int n);
NumericConvexFunction ronkin_function(const LaurentPoly& P, int n);

// Exact homogeneous support data of the Newton polygon:
// psi(v) = max over exponents m of <m, -v>, on the smoothed normal fan.
PLFunctionQ newton_support(const LaurentPoly& P);

}  // namespace toric
