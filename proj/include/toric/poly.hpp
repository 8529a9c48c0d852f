// Exact polynomial arithmetic used by the symbolic plane oracle: dense
// univariate and sparse trivariate polynomials over arbitrary-precision
// integers, gcds via content/primitive-part recursion, and a mod-p layer.
#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>

#include "toric/lattice.hpp"

namespace toric {

// ---------------------------------------------------------------- univariate

struct ZPoly1 {
  std::vector<Int> c;  // c[i] is the coefficient of t^i

  void trim();
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  const Int& lc() const { return c.back(); }

  static ZPoly1 constant(Int v);
  ZPoly1 operator+(const ZPoly1& o) const;
  ZPoly1 operator-(const ZPoly1& o) const;
  ZPoly1 operator*(const ZPoly1& o) const;
  ZPoly1 scaled(const Int& k) const;
  ZPoly1 derivative() const;

  Int content() const;                       // gcd of coefficients, >= 0
  ZPoly1 primitive_part() const;             // sign-normalized (positive lc)
  std::optional<ZPoly1> divexact(const ZPoly1& d) const;
  Rational eval(const Rational& x) const;
};

// Pseudo-remainder of a by b (b nonzero).
ZPoly1 prem(const ZPoly1& a, const ZPoly1& b);
// gcd via primitive PRS; result has positive leading coefficient.
ZPoly1 gcd(const ZPoly1& a, const ZPoly1& b);
// Count of rational roots listed exactly (each once), found by testing
// divisors of the extreme coefficients; remaining factor returned.
struct RationalRoots {
  std::vector<Rational> roots;
  ZPoly1 remaining;  // the cofactor carrying no rational roots
};
RationalRoots rational_roots(const ZPoly1& p);

// ---------------------------------------------------------------- trivariate

using Exp3 = std::array<int, 3>;

struct ZPoly3 {
  std::map<Exp3, Int> t;

  bool zero() const { return t.empty(); }
  bool operator==(const ZPoly3& o) const { return t == o.t; }
  int total_deg() const;
  bool homogeneous() const;
  size_t terms() const { return t.size(); }

  static ZPoly3 monomial(Int coeff, int e0, int e1, int e2);
  ZPoly3 operator+(const ZPoly3& o) const;
  ZPoly3 operator-(const ZPoly3& o) const;
  ZPoly3 operator*(const ZPoly3& o) const;
  ZPoly3 neg() const;
  ZPoly3 scaled(const Int& k) const;
  ZPoly3 pow(int e) const;

  Int content() const;
  // Divide out the integer content and the largest monomial factor.
  ZPoly3 primitive_monomial_free(Exp3* stripped = nullptr) const;

  std::optional<ZPoly3> divexact(const ZPoly3& d) const;

  Rational eval(const Rational& x0, const Rational& x1, const Rational& x2) const;
  // Restriction to the parametrized line (a + b s); dense univariate output.
  ZPoly1 restrict_line(const std::array<Int, 3>& a, const std::array<Int, 3>& b) const;

  ZPoly3 d0() const;  // partial derivatives
  ZPoly3 d1() const;
  ZPoly3 d2() const;

  std::string str() const;            // sparse term list `c X0^i X1^j X2^k`
  static ZPoly3 parse(const std::string& text);
};

// gcd of trivariate polynomials (correct for homogeneous inputs, which is the
// only way the oracle calls it): strips monomial factors, dehomogenizes,
// runs a primitive PRS over Z[x], and rehomogenizes.
ZPoly3 gcd(const ZPoly3& a, const ZPoly3& b);

ZPoly3 jacobian_det(const ZPoly3& p0, const ZPoly3& p1, const ZPoly3& p2);

// ------------------------------------------------------------------- mod p

// Dense univariate polynomials over F_p for a fixed 31-bit prime.
struct FpPoly {
  static constexpr uint64_t kP = 2147483629ULL;  // prime < 2^31
  std::vector<uint64_t> c;

  void trim();
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  FpPoly operator+(const FpPoly& o) const;
  FpPoly operator-(const FpPoly& o) const;
  FpPoly operator*(const FpPoly& o) const;
  FpPoly scaled(uint64_t k) const;
  FpPoly pow(int e) const;
  static FpPoly from_z(const ZPoly1& p);
};
FpPoly gcd(FpPoly a, FpPoly b);
uint64_t fp_of(const Int& n);
uint64_t fp_inv(uint64_t a);
// a mod b over F_p
FpPoly fp_rem(FpPoly a, const FpPoly& b);
// all roots of u in F_p (each once)
std::vector<uint64_t> fp_roots(const FpPoly& u);

}  // namespace toric
