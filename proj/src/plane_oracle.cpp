#include "toric/plane_oracle.hpp"

#include <algorithm>
#include <sstream>

namespace toric {

ProjPointQ ProjPointQ::normalized() const {
  ProjPointQ r = *this;
  for (int i = 0; i < 3; ++i) {
    if (r.x[i] != Rational(0)) {
      Rational s = r.x[i];
      for (int j = 0; j < 3; ++j) r.x[j] = r.x[j] / s;
      return r;
    }
  }
  return r;
}

bool ProjPointQ::operator==(const ProjPointQ& o) const {
  // cross products vanish and not both zero
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (x[i] * o.x[j] != x[j] * o.x[i]) return false;
  return true;
}

std::string ProjPointQ::str() const {
  ProjPointQ n = normalized();
  std::ostringstream os;
  os << "[" << rational_str(n.x[0]) << "," << rational_str(n.x[1]) << ","
     << rational_str(n.x[2]) << "]";
  return os.str();
}

namespace {

// Divide the triple by its full gcd (content, monomials, polynomial factors).
void reduce_triple(std::array<ZPoly3, 3>& c) {
  ZPoly3 g = gcd(gcd(c[0], c[1]), c[2]);
  if (g.terms() == 1 && g.t.begin()->first == Exp3{0, 0, 0} && abs(g.t.begin()->second) == 1)
    return;
  for (auto& p : c) {
    auto q = p.divexact(g);
    if (!q) throw std::logic_error("polymap: gcd division failed");
    p = *q;
  }
}

// mod-p check that the triple has no common factor along a fixed line; a
// trivial univariate gcd certifies a trivial trivariate gcd.
bool coprime_witness(const std::array<ZPoly3, 3>& c) {
  static const std::array<Int, 3> a{Int(1), Int(2), Int(-3)};
  static const std::array<Int, 3> b{Int(3), Int(-1), Int(7)};
  FpPoly g = FpPoly::from_z(c[0].restrict_line(a, b));
  g = gcd(g, FpPoly::from_z(c[1].restrict_line(a, b)));
  g = gcd(g, FpPoly::from_z(c[2].restrict_line(a, b)));
  return g.deg() == 0;
}

}  // namespace

PolyMap PolyMap::make(ZPoly3 c0, ZPoly3 c1, ZPoly3 c2) {
  std::array<ZPoly3, 3> c{std::move(c0), std::move(c1), std::move(c2)};
  bool allzero = c[0].zero() && c[1].zero() && c[2].zero();
  if (allzero) throw std::invalid_argument("polymap: zero map");
  int d = -1;
  for (const auto& p : c) {
    if (p.zero()) continue;
    if (!p.homogeneous()) throw std::invalid_argument("polymap: non-homogeneous component");
    if (d < 0) d = p.total_deg();
    if (p.total_deg() != d) throw std::invalid_argument("polymap: mixed degrees");
  }
  if (!coprime_witness(c)) reduce_triple(c);
  PolyMap m;
  m.comp = std::move(c);
  m.degree = -1;
  for (const auto& p : m.comp)
    if (!p.zero()) m.degree = p.total_deg();
  return m;
}

PolyMap PolyMap::identity() {
  return make(ZPoly3::monomial(Int(1), 1, 0, 0), ZPoly3::monomial(Int(1), 0, 1, 0),
              ZPoly3::monomial(Int(1), 0, 0, 1));
}

PolyMap PolyMap::monomial(const IMat2& A) {
  long a = A.a.convert_to<long>(), b = A.b.convert_to<long>();
  long c = A.c.convert_to<long>(), d = A.d.convert_to<long>();
  long s1 = a + b, s2 = c + d;
  long N = std::max({0L, s1, s2});
  long P = -std::min({0L, a, c});
  long Q = -std::min({0L, b, d});
  auto mono = [&](long sig, long e1, long e2) {
    return ZPoly3::monomial(Int(1), static_cast<int>(N - sig), static_cast<int>(P + e1),
                            static_cast<int>(Q + e2));
  };
  return make(mono(0, 0, 0), mono(s1, a, b), mono(s2, c, d));
}

PolyMap PolyMap::involution() {
  ZPoly3 X0 = ZPoly3::monomial(Int(1), 1, 0, 0);
  ZPoly3 X1 = ZPoly3::monomial(Int(1), 0, 1, 0);
  ZPoly3 X2 = ZPoly3::monomial(Int(1), 0, 0, 1);
  return make(X0 * (X1 + X2 - X0), X1 * (X0 - X1 + X2), X2 * (X0 + X1 - X2));
}

PolyMap PolyMap::translation(const Rational& y1, const Rational& y2) {
  if (y1 == Rational(0) || y2 == Rational(0))
    throw std::invalid_argument("translation: coordinates must be non-zero");
  Int q = y1.denominator() * y2.denominator() / gcd(y1.denominator(), y2.denominator());
  ZPoly3 c0 = ZPoly3::monomial(q, 1, 0, 0);
  ZPoly3 c1 = ZPoly3::monomial(y1.numerator() * (q / y1.denominator()), 0, 1, 0);
  ZPoly3 c2 = ZPoly3::monomial(y2.numerator() * (q / y2.denominator()), 0, 0, 1);
  return make(std::move(c0), std::move(c1), std::move(c2));
}

ProjPointQ PolyMap::eval(const ProjPointQ& p) const {
  ProjPointQ r;
  for (int i = 0; i < 3; ++i) r.x[i] = comp[i].eval(p.x[0], p.x[1], p.x[2]);
  return r;
}

bool PolyMap::is_identity() const {
  PolyMap id = identity();
  ProjPointQ a{Rational(1), Rational(2), Rational(3)};
  ProjPointQ b{Rational(1), Rational(-5), Rational(7)};
  if (degree != 1) return false;
  return eval(a) == id.eval(a) && eval(b) == id.eval(b) &&
         comp[0] * ZPoly3::monomial(Int(1), 0, 1, 0) ==
             comp[1] * ZPoly3::monomial(Int(1), 1, 0, 0) &&
         comp[0] * ZPoly3::monomial(Int(1), 0, 0, 1) ==
             comp[2] * ZPoly3::monomial(Int(1), 1, 0, 0);
}

std::string PolyMap::str() const {
  return comp[0].str() + "\n" + comp[1].str() + "\n" + comp[2].str() + "\n";
}

PolyMap PolyMap::parse(const std::string& text) {
  std::istringstream is(text);
  std::vector<ZPoly3> comps;
  std::string line;
  while (std::getline(is, line)) {
    bool blank = true;
    for (char ch : line)
      if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
    if (blank) continue;
    comps.push_back(ZPoly3::parse(line));
  }
  if (comps.size() != 3) throw std::invalid_argument("polymap: expected three components");
  return make(comps[0], comps[1], comps[2]);
}

PolyMap compose(const PolyMap& p, const PolyMap& q, const std::vector<ZPoly3>& cancel_hints,
                int degree_budget) {
  long raw = static_cast<long>(p.degree) * q.degree;
  if (raw > degree_budget)
    throw budget_exceeded("compose: raw degree " + std::to_string(raw) + " exceeds budget " +
                          std::to_string(degree_budget));
  // substitute with cached powers of q's components
  std::array<std::vector<ZPoly3>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].resize(p.degree + 1);
    pw[i][0] = ZPoly3::monomial(Int(1), 0, 0, 0);
    for (int e = 1; e <= p.degree; ++e) pw[i][e] = pw[i][e - 1] * q.comp[i];
  }
  std::array<ZPoly3, 3> c;
  for (int i = 0; i < 3; ++i) {
    ZPoly3 acc;
    for (const auto& [e, v] : p.comp[i].t)
      acc = acc + (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]).scaled(v);
    c[i] = std::move(acc);
  }
  // strip integer content and common monomial factors first
  {
    Exp3 mn{INT32_MAX, INT32_MAX, INT32_MAX};
    Int g = 0;
    for (const auto& comp : c)
      for (const auto& [e, v] : comp.t) {
        for (int i = 0; i < 3; ++i) mn[i] = std::min(mn[i], e[i]);
        g = gcd(g, v);
      }
    if (mn[0] > 0 || mn[1] > 0 || mn[2] > 0 || g > 1) {
      for (auto& comp : c) {
        ZPoly3 out;
        for (const auto& [e, v] : comp.t)
          out.t[{e[0] - mn[0], e[1] - mn[1], e[2] - mn[2]}] = v / g;
        comp = std::move(out);
      }
    }
  }
  // candidate factors first (cheap exact divisions), generic gcd for the rest
  for (const auto& h : cancel_hints) {
    if (h.terms() == 0 || h.total_deg() < 1) continue;
    while (true) {
      auto q0 = c[0].divexact(h);
      if (!q0) break;
      auto q1 = c[1].divexact(h);
      if (!q1) break;
      auto q2 = c[2].divexact(h);
      if (!q2) break;
      c = {*q0, *q1, *q2};
    }
  }
  if (!coprime_witness(c)) reduce_triple(c);
  return PolyMap::make(std::move(c[0]), std::move(c[1]), std::move(c[2]));
}

namespace {

// Rational reconstruction of r mod kP with numerator/denominator below
// sqrt(p/2); nullopt when none exists.
std::optional<Rational> rational_reconstruct(uint64_t r) {
  long long p = static_cast<long long>(FpPoly::kP);
  long long bound = 32749;  // ~ sqrt(p/2)
  long long r0 = p, r1 = static_cast<long long>(r);
  long long t0 = 0, t1 = 1;
  while (r1 > bound) {
    long long qq = r0 / r1;
    long long tmp = r0 - qq * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - qq * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (std::abs(t1) > bound || t1 == 0) return std::nullopt;
  Rational out(Int(r1), Int(std::abs(t1)));
  if (t1 < 0) out = -out;
  return out;
}

uint64_t fp_pow_local(uint64_t b, uint64_t e) {
  uint64_t r = 1;
  b %= FpPoly::kP;
  while (e) {
    if (e & 1) r = (r * b) % FpPoly::kP;
    b = (b * b) % FpPoly::kP;
    e >>= 1;
  }
  return r;
}

uint64_t eval_fp(const ZPoly3& p, uint64_t x0, uint64_t x1, uint64_t x2) {
  uint64_t acc = 0;
  for (const auto& [e, v] : p.t) {
    uint64_t term = fp_of(v);
    term = (term * fp_pow_local(x0, e[0])) % FpPoly::kP;
    term = (term * fp_pow_local(x1, e[1])) % FpPoly::kP;
    term = (term * fp_pow_local(x2, e[2])) % FpPoly::kP;
    acc = (acc + term) % FpPoly::kP;
  }
  return acc;
}

// univariate slice of h with chart variable `fixed` set to 1 and variable
// `free` set to the value v; the remaining variable is the indeterminate
FpPoly fp_slice(const ZPoly3& h, int fixed, int free, uint64_t v) {
  int rem = 3 - fixed - free;
  FpPoly u;
  for (const auto& [e, coeff] : h.t) {
    uint64_t c = fp_of(coeff);
    c = (c * fp_pow_local(v, e[free])) % FpPoly::kP;
    if (static_cast<size_t>(e[rem]) >= u.c.size()) u.c.resize(e[rem] + 1, 0);
    u.c[e[rem]] = (u.c[e[rem]] + c) % FpPoly::kP;
  }
  u.trim();
  return u;
}

// Sample points of {h = 0} over F_p across the three charts.
std::vector<std::array<uint64_t, 3>> curve_points_fp(const ZPoly3& h, size_t want) {
  std::vector<std::array<uint64_t, 3>> pts;
  for (int fixed = 0; fixed < 3 && pts.size() < want; ++fixed) {
    int free = fixed == 0 ? 1 : 0;
    int rem = 3 - fixed - free;
    for (uint64_t v = 1; v < 40 && pts.size() < want; ++v) {
      FpPoly u = fp_slice(h, fixed, free, v);
      if (u.deg() < 1) continue;
      for (uint64_t root : fp_roots(u)) {
        if (pts.size() >= want) break;
        std::array<uint64_t, 3> pt{};
        pt[fixed] = 1;
        pt[free] = v;
        pt[rem] = root;
        if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) continue;
        pts.push_back(pt);
      }
    }
  }
  return pts;
}

// Attempt to identify the common image point of the contracted curve {h = 0}:
// sample points on the curve mod p, push them through the map, lift the
// coordinates by rational reconstruction, then verify exactly via
// h | (c_j p_i - c_i p_j).
std::optional<ProjPointQ> find_image(const PolyMap& p, const ZPoly3& h) {
  auto pts = curve_points_fp(h, 6);
  for (const auto& pt : pts) {
    std::array<uint64_t, 3> img{eval_fp(p.comp[0], pt[0], pt[1], pt[2]),
                                eval_fp(p.comp[1], pt[0], pt[1], pt[2]),
                                eval_fp(p.comp[2], pt[0], pt[1], pt[2])};
    int nz = -1;
    for (int i = 0; i < 3; ++i)
      if (img[i] != 0) nz = i;
    if (nz < 0) continue;  // an indeterminacy point on the curve
    ProjPointQ cand;
    bool ok = true;
    uint64_t inv = fp_inv(img[nz]);
    for (int i = 0; i < 3; ++i) {
      auto rec = rational_reconstruct((img[i] * inv) % FpPoly::kP);
      if (!rec)
        ok = false;
      else
        cand.x[i] = *rec;
    }
    if (!ok) continue;
    Int scale = 1;
    for (int i = 0; i < 3; ++i) scale *= cand.x[i].denominator();
    std::array<Int, 3> ci;
    for (int i = 0; i < 3; ++i) ci[i] = cand.x[i].numerator() * (scale / cand.x[i].denominator());
    bool verified = true;
    for (int i = 0; i < 3 && verified; ++i)
      for (int j = i + 1; j < 3 && verified; ++j) {
        ZPoly3 crossij = p.comp[i].scaled(ci[j]) - p.comp[j].scaled(ci[i]);
        if (crossij.zero()) continue;
        if (!crossij.divexact(h)) verified = false;
      }
    if (verified) return cand;
  }
  return std::nullopt;
}

}  // namespace

std::vector<ContractedCurve> contracted_curves(const PolyMap& p,
                                               const std::vector<ZPoly3>& candidates) {
  ZPoly3 J = jacobian_det(p.comp[0], p.comp[1], p.comp[2]);
  if (J.zero()) throw std::invalid_argument("contracted_curves: degenerate map");
  Exp3 mono;
  ZPoly3 rest = J.primitive_monomial_free(&mono);
  std::vector<std::pair<ZPoly3, int>> factors;
  // coordinate lines first (the monomial part)
  for (int i = 0; i < 3; ++i)
    if (mono[i] > 0)
      factors.push_back({ZPoly3::monomial(Int(1), i == 0, i == 1, i == 2), mono[i]});
  // caller-supplied candidates
  auto try_factor = [&rest, &factors](const ZPoly3& h) {
    if (h.total_deg() < 1) return;
    int mult = 0;
    while (true) {
      auto q = rest.divexact(h);
      if (!q) break;
      rest = *q;
      ++mult;
    }
    if (mult > 0) factors.push_back({h, mult});
  };
  for (const auto& h : candidates) try_factor(h);
  // small-coefficient linear forms
  for (int a = -2; a <= 2; ++a)
    for (int b = -2; b <= 2; ++b)
      for (int c = -2; c <= 2; ++c) {
        if (rest.total_deg() < 1) break;
        bool lead_ok = a > 0 || (a == 0 && b > 0) || (a == 0 && b == 0 && c > 0);
        if (!lead_ok) continue;
        ZPoly3 lin = ZPoly3::monomial(Int(a), 1, 0, 0) + ZPoly3::monomial(Int(b), 0, 1, 0) +
                     ZPoly3::monomial(Int(c), 0, 0, 1);
        if (lin.zero() || lin.total_deg() < 1) continue;
        try_factor(lin);
      }
  std::vector<ContractedCurve> out;
  for (auto& [h, mult] : factors) {
    // contracted iff the map collapses the curve to a point
    std::optional<ProjPointQ> img = find_image(p, h);
    if (!img) continue;
    ContractedCurve cc;
    cc.factor = h;
    cc.multiplicity = mult;
    cc.image = img;
    out.push_back(std::move(cc));
  }
  if (rest.total_deg() >= 1) {
    // unfactored Jacobian remainder: report it so callers can flag the run
    ContractedCurve cc;
    cc.factor = rest;
    cc.multiplicity = -1;
    out.push_back(std::move(cc));
  }
  return out;
}

namespace {

// Sylvester-style resultant of two bivariate polynomials (univariate in y
// over Z[x]) via fraction-free Bareiss elimination.
ZPoly1 resultant_y(const std::vector<ZPoly1>& a, const std::vector<ZPoly1>& b) {
  long da = static_cast<long>(a.size()) - 1, db = static_cast<long>(b.size()) - 1;
  if (da < 0 || db < 0) return {};
  long n = da + db;
  if (n == 0) return ZPoly1::constant(Int(1));
  std::vector<std::vector<ZPoly1>> m(n, std::vector<ZPoly1>(n));
  for (long r = 0; r < db; ++r)
    for (long k = 0; k <= da; ++k) m[r][r + k] = a[da - k];
  for (long r = 0; r < da; ++r)
    for (long k = 0; k <= db; ++k) m[db + r][r + k] = b[db - k];
  ZPoly1 prev = ZPoly1::constant(Int(1));
  for (long k = 0; k < n - 1; ++k) {
    if (m[k][k].zero()) {
      long sw = -1;
      for (long r = k + 1; r < n; ++r)
        if (!m[r][k].zero()) {
          sw = r;
          break;
        }
      if (sw < 0) return {};  // resultant vanishes identically
      std::swap(m[k], m[sw]);
      for (auto& v : m[k]) v = v.scaled(Int(-1));
    }
    for (long r = k + 1; r < n; ++r) {
      for (long c = k + 1; c < n; ++c) {
        ZPoly1 num = m[r][c] * m[k][k] - m[r][k] * m[k][c];
        auto q = num.divexact(prev);
        if (!q) throw std::logic_error("resultant: bareiss division failed");
        m[r][c] = *q;
      }
      m[r][k] = {};
    }
    prev = m[k][k];
  }
  return m[n - 1][n - 1];
}

std::vector<ZPoly1> coeffs_in_y(const ZPoly3& p) {
  // dehomogenize X0 = 1; coefficients of powers of X2 as polynomials in X1
  std::vector<ZPoly1> c;
  for (const auto& [e, v] : p.t) {
    if (static_cast<size_t>(e[2]) >= c.size()) c.resize(e[2] + 1);
    auto& coeff = c[e[2]];
    if (static_cast<size_t>(e[1]) >= coeff.c.size()) coeff.c.resize(e[1] + 1, Int(0));
    coeff.c[e[1]] += v;
  }
  for (auto& coeff : c) coeff.trim();
  while (!c.empty() && c.back().zero()) c.pop_back();
  return c;
}

ZPoly1 univariate_in_y_at(const ZPoly3& p, const Rational& x1) {
  // p(1, x1, y) scaled to integer coefficients
  std::vector<ZPoly1> cy = coeffs_in_y(p);
  std::vector<Rational> vals;
  vals.reserve(cy.size());
  Int den = 1;
  for (const auto& coeff : cy) {
    Rational v = coeff.eval(x1);
    vals.push_back(v);
    den = den / gcd(den, v.denominator()) * v.denominator();
  }
  ZPoly1 out;
  for (const auto& v : vals) out.c.push_back(v.numerator() * (den / v.denominator()));
  out.trim();
  return out;
}

}  // namespace

IndReport indeterminacy_points(const PolyMap& p) {
  IndReport rep;
  // affine chart X0 = 1
  std::array<std::vector<ZPoly1>, 3> cy{coeffs_in_y(p.comp[0]), coeffs_in_y(p.comp[1]),
                                        coeffs_in_y(p.comp[2])};
  ZPoly1 g;
  bool any = false;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      ZPoly1 r = resultant_y(cy[i], cy[j]);
      if (r.zero()) continue;  // the pair shares a curve; another pair separates it
      g = any ? gcd(g, r) : r;
      any = true;
    }
  if (!any) {
    rep.complete = false;
    rep.algebraic.push_back("all pairwise resultants vanish");
    return rep;
  }
  RationalRoots roots = rational_roots(g);
  if (roots.remaining.deg() >= 1) {
    if (roots.remaining.deg() == 2) {
      std::ostringstream os;
      os << "x-coordinates with minimal polynomial";
      for (size_t i = 0; i < roots.remaining.c.size(); ++i)
        os << " " << roots.remaining.c[i] << (i ? "t^" + std::to_string(i) : "");
      rep.algebraic.push_back(os.str());
    } else {
      rep.algebraic.push_back("unresolved x-factor of degree " +
                              std::to_string(roots.remaining.deg()));
      rep.complete = false;
    }
  }
  for (const Rational& x1 : roots.roots) {
    ZPoly1 gy = gcd(gcd(univariate_in_y_at(p.comp[0], x1), univariate_in_y_at(p.comp[1], x1)),
                     univariate_in_y_at(p.comp[2], x1));
    if (gy.zero()) continue;
    RationalRoots yr = rational_roots(gy);
    for (const Rational& y : yr.roots)
      rep.rational_points.push_back(ProjPointQ{Rational(1), x1, y});
    if (yr.remaining.deg() == 2)
      rep.algebraic.push_back("conjugate pair over x = " + rational_str(x1));
    else if (yr.remaining.deg() > 2)
      rep.complete = false;
  }
  // points at infinity: common zeros on X0 = 0
  {
    // restrict to X0 = 0: binary forms in (X1, X2); gcd detects common roots
    std::array<ZPoly1, 3> rb;
    bool nonzero = false;
    for (int i = 0; i < 3; ++i) {
      ZPoly1 f;  // coefficients of X1^k X2^(d-k) as coefficient of t^k
      for (const auto& [e, v] : p.comp[i].t)
        if (e[0] == 0) {
          if (static_cast<size_t>(e[1]) >= f.c.size()) f.c.resize(e[1] + 1, Int(0));
          f.c[e[1]] += v;
        }
      f.trim();
      rb[i] = f;
      if (!f.zero()) nonzero = true;
    }
    if (nonzero) {
      ZPoly1 gb = gcd(gcd(rb[0], rb[1]), rb[2]);
      // roots t = X1/X2; t power content means [1:0] i.e. X1 = 0... each
      // rational root [t:1] gives the point [0 : t : 1]
      if (!gb.zero() && gb.deg() >= 1) {
        RationalRoots br = rational_roots(gb);
        for (const Rational& tval : br.roots)
          rep.rational_points.push_back(ProjPointQ{Rational(0), tval, Rational(1)});
        if (br.remaining.deg() >= 1) rep.algebraic.push_back("conjugate pair at infinity");
      }
      // [0:1:0] sits at t = infinity; let the exact filter below decide
      rep.rational_points.push_back(ProjPointQ{Rational(0), Rational(1), Rational(0)});
    } else {
      // X0 divides every component only if the map was not reduced
      rep.complete = false;
    }
  }
  // keep only genuine common zeros (the resultant gcd may have spurious roots)
  std::vector<ProjPointQ> filtered;
  for (const auto& pt : rep.rational_points) {
    bool allzero = true;
    for (int i = 0; i < 3; ++i)
      if (p.comp[i].eval(pt.x[0], pt.x[1], pt.x[2]) != Rational(0)) allzero = false;
    if (allzero) filtered.push_back(pt);
  }
  std::sort(filtered.begin(), filtered.end(), [](const ProjPointQ& a, const ProjPointQ& b) {
    return a.str() < b.str();
  });
  filtered.erase(std::unique(filtered.begin(), filtered.end()), filtered.end());
  rep.rational_points = std::move(filtered);
  return rep;
}

namespace {
// X1 -> X1 + lambda X2 (unimodular shear separating x-coordinates).
ZPoly3 shear_x(const ZPoly3& q, long lambda) {
  ZPoly3 r;
  for (const auto& [e, v] : q.t) {
    // expand (X1 + lambda X2)^e1
    Int binom = 1;
    Int lpow = 1;
    for (int k = 0; k <= e[1]; ++k) {
      if (k > 0) {
        binom = binom * Int(e[1] - k + 1) / Int(k);
        lpow *= lambda;
      }
      Exp3 f{e[0], e[1] - k, e[2] + k};
      Int add = v * binom * lpow;
      auto it = r.t.find(f);
      if (it == r.t.end())
        r.t[f] = add;
      else {
        it->second += add;
        if (it->second == 0) r.t.erase(it);
      }
    }
  }
  return r;
}
}  // namespace

long fiber_count(const PolyMap& p, long stream) {
  // deterministic generic rational target
  Rational y1(Int(17 + 5 * stream), Int(7));
  Rational y2(Int(23 - 3 * stream), Int(11));
  // G1 = p1 - y1 p0, G2 = p2 - y2 p0 with cleared denominators
  ZPoly3 G1 = p.comp[1].scaled(y1.denominator()) - p.comp[0].scaled(y1.numerator());
  ZPoly3 G2 = p.comp[2].scaled(y2.denominator()) - p.comp[0].scaled(y2.numerator());
  {
    ZPoly3 w = gcd(G1, G2);
    if (w.total_deg() >= 1) throw std::runtime_error("fiber_count: degenerate target");
  }
  IndReport ind = indeterminacy_points(p);
  if (!ind.complete)
    throw std::runtime_error("fiber_count: indeterminacy locus not fully resolved");
  if (!ind.algebraic.empty())
    throw std::runtime_error("fiber_count: non-rational indeterminacy points");

  auto count_via = [&](long lambda) -> std::optional<long> {
    ZPoly3 S1 = shear_x(G1, lambda), S2 = shear_x(G2, lambda);
    // the elimination is spurious-free when one sheared form has constant
    // leading coefficient in X2, i.e. S(0, 0, 1) != 0 after the shear puts
    // the X2-leading term at X1 = 0
    bool ok1 = S1.eval(Rational(0), Rational(0), Rational(1)) != Rational(0);
    bool ok2 = S2.eval(Rational(0), Rational(0), Rational(1)) != Rational(0);
    if (!ok1 && !ok2) return std::nullopt;
    std::vector<ZPoly1> c1 = coeffs_in_y(S1);
    std::vector<ZPoly1> c2 = coeffs_in_y(S2);
    if (!ok1) std::swap(c1, c2);  // the first argument carries the good lead
    ZPoly1 res = resultant_y(c1, c2);
    if (res.zero()) return std::nullopt;
    ZPoly1 sf = *res.divexact(gcd(res, res.derivative()));
    long drop = 0;
    std::vector<Rational> seen;
    for (const auto& pt : ind.rational_points) {
      if (pt.x[0] == Rational(0)) continue;  // infinity does not enter the chart
      Rational xv = (pt.x[1] - Rational(lambda) * pt.x[2]) / pt.x[0];
      bool dup = false;
      for (const auto& s : seen) dup = dup || s == xv;
      if (dup) continue;
      seen.push_back(xv);
      if (sf.eval(xv) == Rational(0)) ++drop;
    }
    return sf.deg() - drop;
  };
  std::optional<long> first;
  for (long lambda : {2, 3, 5, 7, 11, 13}) {
    auto c = count_via(lambda);
    if (!c) continue;
    if (!first) {
      first = c;
      continue;
    }
    if (*first != *c) throw std::runtime_error("fiber_count: eliminations disagree");
    return *first;
  }
  throw std::runtime_error("fiber_count: no usable shear found");
}

bool validates_determinant(const PolyMap& p, const Int& rho) {
  // affine identity: x y (A_x C - A C_x)(B_y C - B C_y) - (A_y C - A C_y)(B_x C - B C_x))
  //                  = rho A B C^2, with A = P1, B = P2, C = P0 at X0 = 1.
  auto dehom_affine = [](const ZPoly3& q) {
    ZPoly3 r;
    for (const auto& [e, v] : q.t) {
      Exp3 f{0, e[1], e[2]};
      auto it = r.t.find(f);
      if (it == r.t.end()) r.t[f] = v;
      else {
        it->second += v;
        if (it->second == 0) r.t.erase(it);
      }
    }
    return r;
  };
  ZPoly3 C = dehom_affine(p.comp[0]), A = dehom_affine(p.comp[1]), B = dehom_affine(p.comp[2]);
  ZPoly3 Ax = A.d1(), Ay = A.d2(), Bx = B.d1(), By = B.d2(), Cx = C.d1(), Cy = C.d2();
  ZPoly3 lhs = (Ax * C - A * Cx) * (By * C - B * Cy) - (Ay * C - A * Cy) * (Bx * C - B * Cx);
  ZPoly3 x = ZPoly3::monomial(Int(1), 0, 1, 0), y = ZPoly3::monomial(Int(1), 0, 0, 1);
  return x * y * lhs == A * B * C * C.scaled(rho);
}

// ------------------------------------------------------ mod-p degree witness

FpLineState FpLineState::start(long stream) {
  FpLineState s;
  std::array<std::array<Int, 3>, 2> lines{{{Int(3), Int(5), Int(-2)}, {Int(7), Int(-4), Int(9)}}};
  std::array<Int, 3> a = lines[stream % 2];
  std::array<Int, 3> b{Int(1 + stream), Int(2), Int(11 - stream)};
  for (int i = 0; i < 3; ++i) {
    ZPoly1 lin;
    lin.c = {a[i], b[i]};
    lin.trim();
    s.f[i] = FpPoly::from_z(lin);
  }
  return s;
}

void FpLineState::cancel() {
  if (degenerate) return;
  if (f[0].zero() || f[1].zero() || f[2].zero()) {
    degenerate = true;
    return;
  }
  FpPoly g = gcd(gcd(f[0], f[1]), f[2]);
  if (g.deg() <= 0) return;
  for (auto& q : f) {
    // exact division in F_p[t]
    FpPoly rem = q, quo;
    quo.c.assign(q.deg() - g.deg() + 1, 0);
    uint64_t inv = fp_inv(g.c.back());
    while (!rem.zero() && rem.deg() >= g.deg()) {
      uint64_t fac = (rem.c.back() * inv) % FpPoly::kP;
      size_t sh = rem.deg() - g.deg();
      quo.c[sh] = fac;
      for (size_t i = 0; i < g.c.size(); ++i) {
        uint64_t sub = (fac * g.c[i]) % FpPoly::kP;
        rem.c[i + sh] = rem.c[i + sh] >= sub ? rem.c[i + sh] - sub : rem.c[i + sh] + FpPoly::kP - sub;
      }
      rem.trim();
    }
    quo.trim();
    q = quo;
  }
  // strip t^k common factors
  size_t k = SIZE_MAX;
  for (const auto& q : f) {
    size_t z = 0;
    while (z < q.c.size() && q.c[z] == 0) ++z;
    k = std::min(k, z);
  }
  if (k != SIZE_MAX && k > 0)
    for (auto& q : f) q.c.erase(q.c.begin(), q.c.begin() + k);
}

void FpLineState::apply_monomial(const IMat2& A) {
  if (degenerate) return;
  long a = A.a.convert_to<long>(), b = A.b.convert_to<long>();
  long c = A.c.convert_to<long>(), d = A.d.convert_to<long>();
  long s1 = a + b, s2 = c + d;
  long N = std::max({0L, s1, s2});
  long P = -std::min({0L, a, c});
  long Q = -std::min({0L, b, d});
  std::array<FpPoly, 3> nf;
  auto mono = [&](long e0, long e1, long e2) {
    return f[0].pow(static_cast<int>(e0)) * f[1].pow(static_cast<int>(e1)) *
           f[2].pow(static_cast<int>(e2));
  };
  nf[0] = mono(N, P, Q);
  nf[1] = mono(N - s1, P + a, Q + b);
  nf[2] = mono(N - s2, P + c, Q + d);
  f = std::move(nf);
  cancel();
}

void FpLineState::apply_involution() {
  if (degenerate) return;
  FpPoly s12 = f[1] + f[2] - f[0];
  FpPoly s01 = f[0] + f[1] - f[2];
  FpPoly s02 = f[0] + f[2] - f[1];
  std::array<FpPoly, 3> nf{f[0] * s12, f[1] * s02, f[2] * s01};
  f = std::move(nf);
  cancel();
}

void FpLineState::apply_translation(const Rational& y1, const Rational& y2) {
  if (degenerate) return;
  uint64_t q1 = fp_of(y1.denominator()), p1 = fp_of(y1.numerator());
  uint64_t q2 = fp_of(y2.denominator()), p2 = fp_of(y2.numerator());
  f[0] = f[0].scaled((q1 * q2) % FpPoly::kP);
  f[1] = f[1].scaled((p1 * q2) % FpPoly::kP);
  f[2] = f[2].scaled((p2 * q1) % FpPoly::kP);
  cancel();
}

void FpLineState::apply_polymap(const PolyMap& p) {
  if (degenerate) return;
  std::array<std::vector<FpPoly>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].resize(p.degree + 1);
    pw[i][0].c = {1};
    for (int e = 1; e <= p.degree; ++e) pw[i][e] = pw[i][e - 1] * f[i];
  }
  std::array<FpPoly, 3> nf;
  for (int i = 0; i < 3; ++i) {
    FpPoly acc;
    for (const auto& [e, v] : p.comp[i].t)
      acc = acc + (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]).scaled(fp_of(v));
    nf[i] = std::move(acc);
  }
  f = std::move(nf);
  cancel();
}

long FpLineState::degree() const {
  if (degenerate) return -1;
  long d = -1;
  for (const auto& q : f) d = std::max(d, q.deg());
  return d;
}

}  // namespace toric
