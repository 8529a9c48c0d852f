// Laurent polynomials in two variables with exact rational coefficients.
// Text grammar: terms `c*x1^a*x2^b` with integer/rational c and integer a,b,
// separated by `+`/`-`.
#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>

#include "toric/lattice.hpp"

namespace toric {

struct LaurentPoly {
  // exponent (e1,e2) -> coefficient
  std::map<std::pair<long, long>, Rational> terms;

  static LaurentPoly parse(const std::string& text);
  std::string str() const;

  bool zero() const { return terms.empty(); }
  LaurentPoly operator+(const LaurentPoly& o) const;
  LaurentPoly operator-(const LaurentPoly& o) const;
  LaurentPoly operator*(const LaurentPoly& o) const;
  LaurentPoly neg() const;

  static LaurentPoly constant(const Rational& c);
  static LaurentPoly monomial(const Rational& c, long e1, long e2);

  std::complex<double> eval(std::complex<double> x1, std::complex<double> x2) const;

  // log|P(x)| on the torus fiber Trop(x) = (v1,v2), i.e. x_j = exp(-v_j + i t_j),
  // evaluated stably for large |v| by factoring out the dominant term.
  // Returns -inf when the value vanishes.
  double log_abs_on_fiber(double v1, double v2, double t1, double t2) const;

  // Substitute x1 -> x1^A11 x2^A12, x2 -> x1^A21 x2^A22.
  LaurentPoly monomial_subst(const IMat2& A) const;

  // Divide by the unique monomial making all exponents >= 0 and minimal
  // (normal form used when clearing denominators).
  LaurentPoly cleared() const;
};

}  // namespace toric
