// Exact rational maps of the projective plane: composition with cancellation,
// degrees, contracted curves and indeterminacy points.  Ground truth for the
// combinatorial pipeline, plus a fast mod-p line-restriction degree witness.
#pragma once

#include <optional>

#include "toric/poly.hpp"

namespace toric {

struct ProjPointQ {
  std::array<Rational, 3> x{Rational(0), Rational(0), Rational(0)};

  // scale so the first nonzero coordinate is 1
  ProjPointQ normalized() const;
  bool operator==(const ProjPointQ& o) const;
  std::string str() const;
};

class budget_exceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PolyMap {
  std::array<ZPoly3, 3> comp;
  int degree = 0;

  // Validates: homogeneous, equal degrees, not all zero; divides out the gcd.
  static PolyMap make(ZPoly3 c0, ZPoly3 c1, ZPoly3 c2);
  static PolyMap identity();
  static PolyMap monomial(const IMat2& A);
  static PolyMap involution();  // the standard quadratic toric involution
  static PolyMap translation(const Rational& y1, const Rational& y2);

  ProjPointQ eval(const ProjPointQ& p) const;
  bool is_identity() const;

  std::string str() const;  // three sparse term lists, one per line
  static PolyMap parse(const std::string& text);
};

// Substitute q into p and divide out the common factor.  cancel_hints are
// candidate factors tried by exact division before the generic gcd; the
// generic gcd runs on whatever remains (a mod-p witness skips it when the
// remainder is already coprime).  Throws budget_exceeded when the raw
// composition degree exceeds degree_budget.
PolyMap compose(const PolyMap& p, const PolyMap& q, const std::vector<ZPoly3>& cancel_hints = {},
                int degree_budget = 200);

struct ContractedCurve {
  ZPoly3 factor;
  int multiplicity = 0;
  std::optional<ProjPointQ> image;  // set when the image point was identified
};

// Factors of the Jacobian that the map contracts to points.  candidates are
// extra polynomials tried as factors (beyond coordinate lines and small
// integer linear forms); images are verified exactly via
// factor | (c_j p_i - c_i p_j).
std::vector<ContractedCurve> contracted_curves(const PolyMap& p,
                                               const std::vector<ZPoly3>& candidates = {});

struct IndReport {
  std::vector<ProjPointQ> rational_points;
  std::vector<std::string> algebraic;  // minimal-polynomial descriptors, degree <= 2 exact
  bool complete = true;                // false when some locus was left unresolved
};
IndReport indeterminacy_points(const PolyMap& p);

// Number of preimages of a deterministic generic rational point; the x- and
// y-eliminations must agree or an error is thrown.
long fiber_count(const PolyMap& p, long stream = 1);

// Exact identity test for x1 x2 det(Df) = rho f1 f2 in affine coordinates.
bool validates_determinant(const PolyMap& p, const Int& rho);

// ------------------------------------------------------ mod-p degree witness

// State of a word composition restricted to a rational line and reduced
// mod p, with gcd cancellation after every letter.  The resulting degree is
// always a lower bound for the true composed degree.
struct FpLineState {
  std::array<FpPoly, 3> f;
  bool degenerate = false;

  static FpLineState start(long stream);
  void cancel();
  void apply_monomial(const IMat2& A);
  void apply_involution();
  void apply_translation(const Rational& y1, const Rational& y2);
  void apply_polymap(const PolyMap& p);
  long degree() const;
};

}  // namespace toric
