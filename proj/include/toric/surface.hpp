// Intersection theory and divisor-class calculus on a smooth complete toric
// surface, plus transport under the birational morphisms between them.
#pragma once

#include <memory>
#include <optional>

#include "toric/lattice.hpp"
#include "toric/support_fn.hpp"

namespace toric {

// A smooth complete toric surface: fan plus the self-intersection data
// C_i^2 = -a_i read off from v_{i-1} + v_{i+1} = a_i v_i.
struct ToricSurface {
  Fan fan;
  std::vector<Int> a;  // aligned with fan.rays()

  static ToricSurface make(const Fan& f);
  size_t index_of(const Vec2& ray) const;
  // sum a_i = 3d - 12 for d rays; checked at construction.
};

using SurfacePtr = std::shared_ptr<const ToricSurface>;
SurfacePtr make_surface(const Fan& f);
SurfacePtr p2_surface();

template <class S>
struct ExternalDivisor {
  SurfacePtr X;
  std::vector<S> c;  // coefficient on pole C_tau, aligned with fan rays

  bool effective() const {
    for (const auto& v : c)
      if (v < S(0)) return false;
    return true;
  }
};

using DivisorQ = ExternalDivisor<Rational>;
using DivisorD = ExternalDivisor<double>;

// (C_i . C_j): 1 for adjacent rays, 0 otherwise, -a_i on the diagonal.
template <class S>
S intersect(const ExternalDivisor<S>& D, const ExternalDivisor<S>& E);

template <class S>
PLFunction<S> support_function(const ExternalDivisor<S>& D);

// psi must be linear on every sector of X's fan (checked by round-trip
// against psi's own rays); throws otherwise.
template <class S>
ExternalDivisor<S> divisor_from_support(const PLFunction<S>& psi, SurfacePtr X);

template <class S>
bool is_principal(const ExternalDivisor<S>& D);
template <class S>
bool is_nef(const ExternalDivisor<S>& D);

// The representative with equal coefficients on the three P^2 rays; requires
// the fan to contain them.  normalize(D) - D is principal.
template <class S>
ExternalDivisor<S> normalize(const ExternalDivisor<S>& D);

// Degree against the P^2 normalization: sum of the coefficients on the three
// P^2 rays (invariant under adding principal divisors).
template <class S>
S p2_degree(const ExternalDivisor<S>& D);

// X dominates Y.  Pushforward drops coefficients of contracted rays;
// pullback is the total transform (evaluate psi_D at the new rays).
template <class S>
ExternalDivisor<S> pushforward_pi(const ExternalDivisor<S>& D, SurfacePtr Y);
template <class S>
ExternalDivisor<S> pullback_pi(const ExternalDivisor<S>& D, SurfacePtr X);

// Curve class of the zero set of a Laurent polynomial with the given Newton
// polygon (list of exponent vectors; the convex hull is taken).  Returns the
// normalized class and the intersection number with each pole of the hull's
// normal fan: (C . C_tau) = lattice length of the edge on which <m, v_tau>
// is minimal.  The balance identity sum (C.C_tau) v_tau = 0 holds exactly.
struct NewtonClass {
  DivisorQ cls;                                 // normalized representative
  std::vector<std::pair<Vec2, Int>> pole_hits;  // (ray, intersection number)
};
NewtonClass curve_class_from_newton(const std::vector<Vec2>& points);

}  // namespace toric
