// Integral, positively homogeneous piecewise-linear self-maps of the plane:
// composition, covering degree, rotation numbers, ramification and growth.
#pragma once

#include <optional>

#include "toric/lattice.hpp"

namespace toric {

// Per-sector integer matrices over a fan of linearity.  Adjacent matrices
// agree on the shared ray and |det| is constant across sectors.
class TropMap {
 public:
  TropMap(Fan lin_fan, std::vector<IMat2> mats);
  static TropMap linear(const IMat2& A);

  const Fan& lin_fan() const { return fan_; }
  const std::vector<IMat2>& matrices() const { return mats_; }
  const IMat2& matrix_at(const Vec2& v) const { return mats_[fan_.sector_of(v)]; }
  Int abs_det() const { return absdet_; }
  bool is_linear() const;

  Vec2 apply(const Vec2& v) const;
  std::pair<double, double> apply(double x, double y) const;
  Vec2 apply_ray(const Vec2& v) const { return primitive(apply(v)); }

  std::string json() const;
  static TropMap from_json(const std::string& text);

 private:
  Fan fan_;
  std::vector<IMat2> mats_;
  Int absdet_;
};

// T1 after T2 (sectors refined through T2-preimages of T1's linearity rays).
TropMap compose(const TropMap& T1, const TropMap& T2);

// Winding number of the induced circle map (signed).
Int winding_number(const TropMap& T);
// |winding|; equals the covering degree when the map is a covering.
Int covering_degree(const TropMap& T);
bool orientation_consistent(const TropMap& T);
bool is_homeomorphism(const TropMap& T);

// Exact integer k with T(v_tau) = k * primitive(T(v_tau)).
Int ramification(const TropMap& T, const Vec2& tau);

struct RotationEstimate {
  double estimate = 0.0;    // in [0,1)
  double error_bound = 0.0; // 1/n for monotone circle maps
};
// Average lift displacement over n iterations starting from (1,0).
RotationEstimate rotation_number(const TropMap& T, long n);

enum class RotationKind { kRational, kIrrationalCertified, kRealEigenvalues };
struct RotationClass {
  RotationKind kind;
  long p = 0, q = 1;  // the rotation number p/q when kind != irrational
};
// Exact dichotomy for a linear map: real spectrum gives 0 or 1/2; a complex
// eigenvalue ratio of finite order divides 1,2,3,4 or 6 powers, else the
// rotation number is certified irrational.
RotationClass rotation_is_rational_linear(const IMat2& A);

struct GrowthReport {
  std::vector<double> per_direction;  // ||T^n v||^(1/n) over sampled unit v
  double min = 0.0, max = 0.0;
  double sqrt_dtop = 0.0;
  double max_deviation = 0.0;
  std::vector<double> ram_decay;  // Ram(T^k, tau)/mu^k for k = 1..n_ram
};
GrowthReport growth_exponent(const TropMap& T, int n, const Int& dtop, int directions = 360,
                             const Vec2& ram_ray = Vec2(1, 0), double mu = 0.0, int n_ram = 0);

}  // namespace toric
