#include "toric/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace toric {

// ---------------------------------------------------------------- univariate

void ZPoly1::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

ZPoly1 ZPoly1::constant(Int v) {
  ZPoly1 p;
  if (v != 0) p.c.push_back(std::move(v));
  return p;
}

ZPoly1 ZPoly1::operator+(const ZPoly1& o) const {
  ZPoly1 r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < c.size()) r.c[i] += c[i];
    if (i < o.c.size()) r.c[i] += o.c[i];
  }
  r.trim();
  return r;
}

ZPoly1 ZPoly1::operator-(const ZPoly1& o) const {
  ZPoly1 r;
  r.c.resize(std::max(c.size(), o.c.size()));
  for (size_t i = 0; i < r.c.size(); ++i) {
    if (i < c.size()) r.c[i] += c[i];
    if (i < o.c.size()) r.c[i] -= o.c[i];
  }
  r.trim();
  return r;
}

ZPoly1 ZPoly1::operator*(const ZPoly1& o) const {
  if (zero() || o.zero()) return {};
  ZPoly1 r;
  r.c.assign(c.size() + o.c.size() - 1, Int(0));
  for (size_t i = 0; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    for (size_t j = 0; j < o.c.size(); ++j) {
      if (o.c[j] == 0) continue;
      r.c[i + j] += c[i] * o.c[j];
    }
  }
  r.trim();
  return r;
}

ZPoly1 ZPoly1::scaled(const Int& k) const {
  if (k == 0) return {};
  ZPoly1 r = *this;
  for (auto& v : r.c) v *= k;
  return r;
}

ZPoly1 ZPoly1::derivative() const {
  ZPoly1 r;
  for (size_t i = 1; i < c.size(); ++i) r.c.push_back(c[i] * Int(static_cast<long>(i)));
  r.trim();
  return r;
}

Int ZPoly1::content() const {
  Int g = 0;
  for (const auto& v : c) g = toric::gcd(g, v);
  return g;
}

ZPoly1 ZPoly1::primitive_part() const {
  if (zero()) return {};
  Int g = content();
  if (lc() < 0) g = -g;
  ZPoly1 r = *this;
  for (auto& v : r.c) v /= g;
  return r;
}

std::optional<ZPoly1> ZPoly1::divexact(const ZPoly1& d) const {
  if (d.zero()) return std::nullopt;
  if (zero()) return ZPoly1{};
  if (deg() < d.deg()) return std::nullopt;
  ZPoly1 rem = *this;
  ZPoly1 q;
  q.c.assign(deg() - d.deg() + 1, Int(0));
  while (!rem.zero() && rem.deg() >= d.deg()) {
    if (rem.lc() % d.lc() != 0) return std::nullopt;
    Int f = rem.lc() / d.lc();
    long sh = rem.deg() - d.deg();
    q.c[sh] = f;
    for (size_t i = 0; i < d.c.size(); ++i) rem.c[i + sh] -= f * d.c[i];
    rem.trim();
  }
  if (!rem.zero()) return std::nullopt;
  q.trim();
  return q;
}

Rational ZPoly1::eval(const Rational& x) const {
  Rational acc(0);
  for (size_t i = c.size(); i-- > 0;) acc = acc * x + Rational(c[i]);
  return acc;
}

ZPoly1 prem(const ZPoly1& a, const ZPoly1& b) {
  ZPoly1 rem = a;
  long db = b.deg();
  if (rem.deg() < db) return rem;
  long steps = rem.deg() - db + 1;
  for (long s = 0; s < steps && !rem.zero() && rem.deg() >= db; ++s) {
    Int f = rem.lc();
    long sh = rem.deg() - db;
    ZPoly1 next = rem.scaled(b.lc());
    for (size_t i = 0; i < b.c.size(); ++i) next.c[i + sh] -= f * b.c[i];
    next.trim();
    rem = std::move(next);
  }
  return rem;
}

ZPoly1 gcd(const ZPoly1& a, const ZPoly1& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  Int cg = toric::gcd(a.content(), b.content());
  ZPoly1 A = a.primitive_part(), B = b.primitive_part();
  if (A.deg() < B.deg()) std::swap(A, B);
  while (!B.zero()) {
    ZPoly1 r = prem(A, B);
    if (!r.zero()) r = r.primitive_part();
    A = std::move(B);
    B = std::move(r);
  }
  return A.primitive_part().scaled(cg);
}

RationalRoots rational_roots(const ZPoly1& p) {
  RationalRoots out;
  out.remaining = p;
  if (p.zero()) return out;
  size_t k = 0;
  while (k < out.remaining.c.size() && out.remaining.c[k] == 0) ++k;
  if (k > 0) {
    out.roots.push_back(Rational(0));
    out.remaining.c.erase(out.remaining.c.begin(), out.remaining.c.begin() + k);
  }
  auto divisors = [](Int n) {
    n = abs(n);
    std::vector<Int> ds;
    for (Int d = 1; d * d <= n; ++d)
      if (n % d == 0) {
        ds.push_back(d);
        ds.push_back(n / d);
      }
    return ds;
  };
  bool progress = true;
  while (progress && out.remaining.deg() >= 1) {
    progress = false;
    Int a0 = out.remaining.c.front(), an = out.remaining.lc();
    if (abs(a0) > Int(1000000000) || abs(an) > Int(1000000000)) break;  // desk scale only
    for (const Int& num : divisors(a0)) {
      for (const Int& den : divisors(an)) {
        for (int sgn : {1, -1}) {
          Rational r(num * sgn, den);
          if (out.remaining.eval(r) == Rational(0)) {
            ZPoly1 lin;
            lin.c = {-r.numerator(), r.denominator()};
            auto q = out.remaining.divexact(lin);
            if (q) {
              out.roots.push_back(r);
              out.remaining = *q;
              progress = true;
            }
          }
          if (progress) break;
        }
        if (progress) break;
      }
      if (progress) break;
    }
  }
  return out;
}

// ---------------------------------------------------------------- trivariate

int ZPoly3::total_deg() const {
  int d = -1;
  for (const auto& [e, v] : t) {
    (void)v;
    d = std::max(d, e[0] + e[1] + e[2]);
  }
  return d;
}

bool ZPoly3::homogeneous() const {
  if (t.empty()) return true;
  int d = t.begin()->first[0] + t.begin()->first[1] + t.begin()->first[2];
  for (const auto& [e, v] : t) {
    (void)v;
    if (e[0] + e[1] + e[2] != d) return false;
  }
  return true;
}

ZPoly3 ZPoly3::monomial(Int coeff, int e0, int e1, int e2) {
  ZPoly3 p;
  if (coeff != 0) p.t[{e0, e1, e2}] = std::move(coeff);
  return p;
}

ZPoly3 ZPoly3::operator+(const ZPoly3& o) const {
  ZPoly3 r = *this;
  for (const auto& [e, v] : o.t) {
    auto it = r.t.find(e);
    if (it == r.t.end()) {
      r.t[e] = v;
    } else {
      it->second += v;
      if (it->second == 0) r.t.erase(it);
    }
  }
  return r;
}

ZPoly3 ZPoly3::neg() const {
  ZPoly3 r = *this;
  for (auto& [e, v] : r.t) v = -v;
  return r;
}

ZPoly3 ZPoly3::operator-(const ZPoly3& o) const { return *this + o.neg(); }

ZPoly3 ZPoly3::operator*(const ZPoly3& o) const {
  if (zero() || o.zero()) return {};
  // dense grid fast path for large homogeneous operands
  if (t.size() * o.t.size() > 4096 && homogeneous() && o.homogeneous()) {
    int d = total_deg() + o.total_deg();
    std::vector<Int> grid(static_cast<size_t>(d + 1) * (d + 1));
    for (const auto& [e1, v1] : t)
      for (const auto& [e2, v2] : o.t) {
        size_t idx = static_cast<size_t>(e1[1] + e2[1]) * (d + 1) + (e1[2] + e2[2]);
        grid[idx] += v1 * v2;
      }
    ZPoly3 r;
    for (int i = 0; i <= d; ++i)
      for (int j = 0; j + i <= d; ++j) {
        Int& v = grid[static_cast<size_t>(i) * (d + 1) + j];
        if (v != 0) r.t[{d - i - j, i, j}] = std::move(v);
      }
    return r;
  }
  ZPoly3 r;
  for (const auto& [e1, v1] : t)
    for (const auto& [e2, v2] : o.t) {
      Exp3 e{e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]};
      auto it = r.t.find(e);
      if (it == r.t.end()) {
        r.t[e] = v1 * v2;
      } else {
        it->second += v1 * v2;
        if (it->second == 0) r.t.erase(it);
      }
    }
  return r;
}

ZPoly3 ZPoly3::scaled(const Int& k) const {
  if (k == 0) return {};
  ZPoly3 r = *this;
  for (auto& [e, v] : r.t) v *= k;
  return r;
}

ZPoly3 ZPoly3::pow(int e) const {
  ZPoly3 r = monomial(Int(1), 0, 0, 0);
  ZPoly3 base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Int ZPoly3::content() const {
  Int g = 0;
  for (const auto& [e, v] : t) {
    (void)e;
    g = toric::gcd(g, v);
  }
  return g;
}

ZPoly3 ZPoly3::primitive_monomial_free(Exp3* stripped) const {
  if (zero()) {
    if (stripped) *stripped = {0, 0, 0};
    return *this;
  }
  Exp3 mn = t.begin()->first;
  for (const auto& [e, v] : t) {
    (void)v;
    for (int i = 0; i < 3; ++i) mn[i] = std::min(mn[i], e[i]);
  }
  Int g = content();
  ZPoly3 r;
  for (const auto& [e, v] : t) r.t[{e[0] - mn[0], e[1] - mn[1], e[2] - mn[2]}] = v / g;
  if (stripped) *stripped = mn;
  return r;
}

std::optional<ZPoly3> ZPoly3::divexact(const ZPoly3& d) const {
  if (d.zero()) return std::nullopt;
  ZPoly3 rem = *this;
  ZPoly3 q;
  auto lead = std::prev(d.t.end());
  while (!rem.zero()) {
    auto rl = std::prev(rem.t.end());
    Exp3 e{rl->first[0] - lead->first[0], rl->first[1] - lead->first[1],
           rl->first[2] - lead->first[2]};
    if (e[0] < 0 || e[1] < 0 || e[2] < 0) return std::nullopt;
    if (rl->second % lead->second != 0) return std::nullopt;
    Int f = rl->second / lead->second;
    ZPoly3 m = monomial(f, e[0], e[1], e[2]);
    q = q + m;
    rem = rem - (d * m);
  }
  return q;
}

Rational ZPoly3::eval(const Rational& x0, const Rational& x1, const Rational& x2) const {
  auto rpow = [](const Rational& b, int e) {
    Rational r(1);
    for (int i = 0; i < e; ++i) r = r * b;
    return r;
  };
  Rational acc(0);
  for (const auto& [e, v] : t)
    acc = acc + Rational(v) * rpow(x0, e[0]) * rpow(x1, e[1]) * rpow(x2, e[2]);
  return acc;
}

ZPoly1 ZPoly3::restrict_line(const std::array<Int, 3>& a, const std::array<Int, 3>& b) const {
  std::array<ZPoly1, 3> lin;
  for (int i = 0; i < 3; ++i) {
    lin[i].c = {a[i], b[i]};
    lin[i].trim();
  }
  int d = std::max(total_deg(), 0);
  std::array<std::vector<ZPoly1>, 3> pw;
  for (int i = 0; i < 3; ++i) {
    pw[i].resize(d + 1);
    pw[i][0] = ZPoly1::constant(Int(1));
    for (int e = 1; e <= d; ++e) pw[i][e] = pw[i][e - 1] * lin[i];
  }
  ZPoly1 acc;
  for (const auto& [e, v] : t)
    acc = acc + (pw[0][e[0]] * pw[1][e[1]] * pw[2][e[2]]).scaled(v);
  return acc;
}

ZPoly3 ZPoly3::d0() const {
  ZPoly3 r;
  for (const auto& [e, v] : t)
    if (e[0] > 0) r.t[{e[0] - 1, e[1], e[2]}] = v * Int(e[0]);
  return r;
}
ZPoly3 ZPoly3::d1() const {
  ZPoly3 r;
  for (const auto& [e, v] : t)
    if (e[1] > 0) r.t[{e[0], e[1] - 1, e[2]}] = v * Int(e[1]);
  return r;
}
ZPoly3 ZPoly3::d2() const {
  ZPoly3 r;
  for (const auto& [e, v] : t)
    if (e[2] > 0) r.t[{e[0], e[1], e[2] - 1}] = v * Int(e[2]);
  return r;
}

std::string ZPoly3::str() const {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, v] : t) {
    if (!first)
      os << (v > 0 ? " + " : " - ");
    else if (v < 0)
      os << "-";
    first = false;
    Int av = abs(v);
    bool need_coeff = av != 1 || (e[0] == 0 && e[1] == 0 && e[2] == 0);
    if (need_coeff) os << av;
    bool space = need_coeff;
    for (int i = 0; i < 3; ++i) {
      if (e[i] == 0) continue;
      if (space) os << " ";
      os << "X" << i;
      if (e[i] > 1) os << "^" << e[i];
      space = true;
    }
  }
  return os.str();
}

ZPoly3 ZPoly3::parse(const std::string& text) {
  ZPoly3 p;
  size_t i = 0;
  auto skip = [&]() {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool first = true;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
    } else if (!first) {
      throw std::invalid_argument("poly: expected +/-");
    }
    first = false;
    skip();
    std::string digits;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      digits.push_back(text[i++]);
    Int coeff = digits.empty() ? Int(1) : Int(digits);
    Exp3 e{0, 0, 0};
    while (true) {
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
      if (i + 1 < text.size() && text[i] == 'X' &&
          std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
        int var = text[i + 1] - '0';
        if (var > 2) throw std::invalid_argument("poly: variable out of range");
        i += 2;
        int ex = 1;
        skip();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip();
          std::string ds;
          while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
            ds.push_back(text[i++]);
          ex = std::stoi(ds);
        }
        e[var] += ex;
      } else {
        break;
      }
    }
    p = p + monomial(coeff * sign, e[0], e[1], e[2]);
  }
  return p;
}

// Bivariate polynomials as univariate in y over Z[x], used for the gcd.
namespace {

struct ZPoly2 {
  std::vector<ZPoly1> c;  // c[j] is the coefficient of y^j

  void trim() {
    while (!c.empty() && c.back().zero()) c.pop_back();
  }
  long deg() const { return static_cast<long>(c.size()) - 1; }
  bool zero() const { return c.empty(); }
  const ZPoly1& lc() const { return c.back(); }

  ZPoly2 scaled(const ZPoly1& k) const {
    ZPoly2 r;
    r.c.reserve(c.size());
    for (const auto& v : c) r.c.push_back(v * k);
    r.trim();
    return r;
  }
  ZPoly2 operator-(const ZPoly2& o) const {
    ZPoly2 r;
    r.c.resize(std::max(c.size(), o.c.size()));
    for (size_t i = 0; i < r.c.size(); ++i) {
      if (i < c.size()) r.c[i] = r.c[i] + c[i];
      if (i < o.c.size()) r.c[i] = r.c[i] - o.c[i];
    }
    r.trim();
    return r;
  }
};

ZPoly1 content_y(const ZPoly2& p) {
  ZPoly1 g;
  for (const auto& v : p.c) g = gcd(g, v);
  return g;
}

ZPoly2 divexact_coeff(const ZPoly2& p, const ZPoly1& d) {
  ZPoly2 r;
  r.c.reserve(p.c.size());
  for (const auto& v : p.c) {
    if (v.zero()) {
      r.c.push_back(v);
      continue;
    }
    auto q = v.divexact(d);
    if (!q) throw std::logic_error("bivariate gcd: inexact content division");
    r.c.push_back(*q);
  }
  r.trim();
  return r;
}

ZPoly2 prem2(const ZPoly2& a, const ZPoly2& b) {
  ZPoly2 rem = a;
  long db = b.deg();
  if (rem.deg() < db) return rem;
  long steps = rem.deg() - db + 1;
  for (long s = 0; s < steps && !rem.zero() && rem.deg() >= db; ++s) {
    ZPoly1 f = rem.lc();
    long sh = rem.deg() - db;
    ZPoly2 shifted;
    shifted.c.assign(static_cast<size_t>(db + sh + 1), ZPoly1{});
    for (long j = 0; j <= db; ++j) shifted.c[j + sh] = b.c[j] * f;
    shifted.trim();
    rem = rem.scaled(b.lc()) - shifted;
  }
  return rem;
}

ZPoly2 primitive2(const ZPoly2& p) {
  if (p.zero()) return p;
  ZPoly1 g = content_y(p);
  return divexact_coeff(p, g);
}

ZPoly2 gcd2(ZPoly2 A, ZPoly2 B) {
  if (A.zero()) return B;
  if (B.zero()) return A;
  ZPoly1 contg = gcd(content_y(A), content_y(B));
  A = primitive2(A);
  B = primitive2(B);
  if (A.deg() < B.deg()) std::swap(A, B);
  while (!B.zero()) {
    ZPoly2 r = prem2(A, B);
    if (!r.zero()) r = primitive2(r);
    A = std::move(B);
    B = std::move(r);
  }
  return primitive2(A).scaled(contg);
}

ZPoly2 dehom(const ZPoly3& p) {
  // X0 = 1, x = X1, y = X2
  ZPoly2 r;
  for (const auto& [e, v] : p.t) {
    if (static_cast<size_t>(e[2]) >= r.c.size()) r.c.resize(e[2] + 1);
    auto& coeff = r.c[e[2]];
    if (static_cast<size_t>(e[1]) >= coeff.c.size()) coeff.c.resize(e[1] + 1, Int(0));
    coeff.c[e[1]] += v;
  }
  for (auto& coeff : r.c) coeff.trim();
  r.trim();
  return r;
}

ZPoly3 rehom(const ZPoly2& p) {
  int d = 0;
  for (long j = 0; j <= p.deg(); ++j)
    for (long i = 0; i <= p.c[j].deg(); ++i)
      if (p.c[j].c[i] != 0) d = std::max<int>(d, static_cast<int>(i + j));
  ZPoly3 r;
  for (long j = 0; j <= p.deg(); ++j)
    for (long i = 0; i <= p.c[j].deg(); ++i)
      if (p.c[j].c[i] != 0)
        r.t[{static_cast<int>(d - i - j), static_cast<int>(i), static_cast<int>(j)}] =
            p.c[j].c[i];
  return r;
}

}  // namespace

ZPoly3 gcd(const ZPoly3& a, const ZPoly3& b) {
  if (a.zero()) return b;
  if (b.zero()) return a;
  Exp3 sa, sb;
  ZPoly3 A = a.primitive_monomial_free(&sa);
  ZPoly3 B = b.primitive_monomial_free(&sb);
  Int cg = toric::gcd(a.content(), b.content());
  Exp3 sm{std::min(sa[0], sb[0]), std::min(sa[1], sb[1]), std::min(sa[2], sb[2])};
  ZPoly2 g2 = gcd2(dehom(A), dehom(B));
  ZPoly3 g = rehom(g2);
  return g * ZPoly3::monomial(cg, sm[0], sm[1], sm[2]);
}

ZPoly3 jacobian_det(const ZPoly3& p0, const ZPoly3& p1, const ZPoly3& p2) {
  ZPoly3 a = p0.d0(), b = p0.d1(), c = p0.d2();
  ZPoly3 d = p1.d0(), e = p1.d1(), f = p1.d2();
  ZPoly3 g = p2.d0(), h = p2.d1(), i = p2.d2();
  return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
}

// ------------------------------------------------------------------- mod p

namespace {
uint64_t addp(uint64_t a, uint64_t b) {
  uint64_t s = a + b;
  return s >= FpPoly::kP ? s - FpPoly::kP : s;
}
uint64_t subp(uint64_t a, uint64_t b) { return a >= b ? a - b : a + FpPoly::kP - b; }
uint64_t mulp(uint64_t a, uint64_t b) { return (a * b) % FpPoly::kP; }
}  // namespace

uint64_t fp_of(const Int& n) {
  Int r = n % Int(FpPoly::kP);
  if (r < 0) r += Int(FpPoly::kP);
  return r.convert_to<uint64_t>();
}

uint64_t fp_inv(uint64_t a) {
  uint64_t r = 1, b = a, e = FpPoly::kP - 2;
  while (e) {
    if (e & 1) r = mulp(r, b);
    b = mulp(b, b);
    e >>= 1;
  }
  return r;
}

void FpPoly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

FpPoly FpPoly::operator+(const FpPoly& o) const {
  FpPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    uint64_t v = i < c.size() ? c[i] : 0;
    uint64_t w = i < o.c.size() ? o.c[i] : 0;
    r.c[i] = addp(v, w);
  }
  r.trim();
  return r;
}

FpPoly FpPoly::operator-(const FpPoly& o) const {
  FpPoly r;
  r.c.resize(std::max(c.size(), o.c.size()), 0);
  for (size_t i = 0; i < r.c.size(); ++i) {
    uint64_t v = i < c.size() ? c[i] : 0;
    uint64_t w = i < o.c.size() ? o.c[i] : 0;
    r.c[i] = subp(v, w);
  }
  r.trim();
  return r;
}

namespace {
// schoolbook into a target slice
void mul_school(const uint64_t* a, size_t na, const uint64_t* b, size_t nb, uint64_t* out) {
  for (size_t i = 0; i < na; ++i) {
    if (a[i] == 0) continue;
    uint64_t ai = a[i];
    for (size_t j = 0; j < nb; ++j) out[i + j] = (out[i + j] + ai * b[j]) % FpPoly::kP;
  }
}

void mul_karatsuba(const uint64_t* a, size_t na, const uint64_t* b, size_t nb,
                   std::vector<uint64_t>& out);

// out (size na+nb-1, zero-initialized) += a*b
void mul_dispatch(const uint64_t* a, size_t na, const uint64_t* b, size_t nb, uint64_t* out) {
  if (na == 0 || nb == 0) return;
  if (std::min(na, nb) <= 64) {
    mul_school(a, na, b, nb, out);
    return;
  }
  std::vector<uint64_t> tmp;
  mul_karatsuba(a, na, b, nb, tmp);
  for (size_t i = 0; i < tmp.size(); ++i) {
    uint64_t s = out[i] + tmp[i];
    out[i] = s >= FpPoly::kP ? s - FpPoly::kP : s;
  }
}

void mul_karatsuba(const uint64_t* a, size_t na, const uint64_t* b, size_t nb,
                   std::vector<uint64_t>& out) {
  out.assign(na + nb - 1, 0);
  if (std::min(na, nb) <= 64) {
    mul_school(a, na, b, nb, out.data());
    return;
  }
  size_t h = std::max(na, nb) / 2;
  size_t na0 = std::min(na, h), nb0 = std::min(nb, h);
  size_t na1 = na - na0, nb1 = nb - nb0;
  // a = a0 + t^h a1, b = b0 + t^h b1
  std::vector<uint64_t> z0, z2;
  mul_karatsuba(a, na0, b, nb0, z0);
  std::vector<uint64_t> z1;
  if (na1 > 0 && nb1 > 0) {
    mul_karatsuba(a + na0, na1, b + nb0, nb1, z2);
    // (a0+a1)(b0+b1)
    std::vector<uint64_t> sa(std::max(na0, na1), 0), sb(std::max(nb0, nb1), 0);
    for (size_t i = 0; i < na0; ++i) sa[i] = a[i];
    for (size_t i = 0; i < na1; ++i) {
      uint64_t s = sa[i] + a[na0 + i];
      sa[i] = s >= FpPoly::kP ? s - FpPoly::kP : s;
    }
    for (size_t i = 0; i < nb0; ++i) sb[i] = b[i];
    for (size_t i = 0; i < nb1; ++i) {
      uint64_t s = sb[i] + b[nb0 + i];
      sb[i] = s >= FpPoly::kP ? s - FpPoly::kP : s;
    }
    mul_karatsuba(sa.data(), sa.size(), sb.data(), sb.size(), z1);
    // z1 -= z0 + z2
    for (size_t i = 0; i < z0.size(); ++i)
      z1[i] = z1[i] >= z0[i] ? z1[i] - z0[i] : z1[i] + FpPoly::kP - z0[i];
    for (size_t i = 0; i < z2.size(); ++i)
      z1[i] = z1[i] >= z2[i] ? z1[i] - z2[i] : z1[i] + FpPoly::kP - z2[i];
  } else if (na1 > 0 || nb1 > 0) {
    // one side has no high part: z1 = a1*b0 or a0*b1
    if (na1 > 0)
      mul_karatsuba(a + na0, na1, b, nb0, z1);
    else
      mul_karatsuba(a, na0, b + nb0, nb1, z1);
  }
  for (size_t i = 0; i < z0.size(); ++i) {
    uint64_t s = out[i] + z0[i];
    out[i] = s >= FpPoly::kP ? s - FpPoly::kP : s;
  }
  for (size_t i = 0; i < z1.size(); ++i) {
    uint64_t s = out[i + h] + z1[i];
    out[i + h] = s >= FpPoly::kP ? s - FpPoly::kP : s;
  }
  for (size_t i = 0; i < z2.size(); ++i) {
    uint64_t s = out[i + 2 * h] + z2[i];
    out[i + 2 * h] = s >= FpPoly::kP ? s - FpPoly::kP : s;
  }
}
}  // namespace

FpPoly FpPoly::operator*(const FpPoly& o) const {
  if (zero() || o.zero()) return {};
  FpPoly r;
  r.c.assign(c.size() + o.c.size() - 1, 0);
  mul_dispatch(c.data(), c.size(), o.c.data(), o.c.size(), r.c.data());
  r.trim();
  return r;
}

FpPoly FpPoly::scaled(uint64_t k) const {
  FpPoly r = *this;
  for (auto& v : r.c) v = mulp(v, k % kP);
  r.trim();
  return r;
}

FpPoly FpPoly::pow(int e) const {
  FpPoly r;
  r.c = {1};
  FpPoly base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

FpPoly FpPoly::from_z(const ZPoly1& p) {
  FpPoly r;
  r.c.reserve(p.c.size());
  for (const auto& v : p.c) r.c.push_back(fp_of(v));
  r.trim();
  return r;
}

FpPoly gcd(FpPoly a, FpPoly b) {
  while (!b.zero()) {
    uint64_t inv = fp_inv(b.c.back());
    while (!a.zero() && a.deg() >= b.deg()) {
      uint64_t f = mulp(a.c.back(), inv);
      size_t sh = a.deg() - b.deg();
      for (size_t i = 0; i < b.c.size(); ++i) a.c[i + sh] = subp(a.c[i + sh], mulp(f, b.c[i]));
      a.trim();
    }
    std::swap(a, b);
  }
  if (!a.zero()) a = a.scaled(fp_inv(a.c.back()));
  return a;
}

FpPoly fp_rem(FpPoly a, const FpPoly& b) {
  uint64_t inv = fp_inv(b.c.back());
  while (!a.zero() && a.deg() >= b.deg()) {
    uint64_t f = mulp(a.c.back(), inv);
    size_t sh = a.deg() - b.deg();
    for (size_t i = 0; i < b.c.size(); ++i) a.c[i + sh] = subp(a.c[i + sh], mulp(f, b.c[i]));
    a.trim();
  }
  return a;
}

namespace {
FpPoly fp_powmod(const FpPoly& base, uint64_t e, const FpPoly& mod) {
  FpPoly r;
  r.c = {1};
  FpPoly b = fp_rem(base, mod);
  while (e) {
    if (e & 1) r = fp_rem(r * b, mod);
    b = fp_rem(b * b, mod);
    e >>= 1;
  }
  return r;
}

void fp_split(const FpPoly& u, std::vector<uint64_t>& out, uint64_t shift) {
  if (u.deg() <= 0) return;
  if (u.deg() == 1) {
    // c0 + c1 t = 0
    out.push_back(mulp(subp(0, u.c[0]), fp_inv(u.c[1])));
    return;
  }
  // split with gcd(u, (t + shift)^((p-1)/2) - 1)
  for (uint64_t s = shift; s < shift + 64; ++s) {
    FpPoly lin;
    lin.c = {s % FpPoly::kP, 1};
    FpPoly w = fp_powmod(lin, (FpPoly::kP - 1) / 2, u);
    if (w.c.empty()) w.c = {0};
    w.c[0] = subp(w.c[0], 1);
    w.trim();
    FpPoly g = gcd(w, u);
    if (g.deg() > 0 && g.deg() < u.deg()) {
      FpPoly rest = u;
      // divide u by g
      FpPoly quo;
      quo.c.assign(u.deg() - g.deg() + 1, 0);
      uint64_t inv = fp_inv(g.c.back());
      FpPoly rem = u;
      while (!rem.zero() && rem.deg() >= g.deg()) {
        uint64_t f = mulp(rem.c.back(), inv);
        size_t sh = rem.deg() - g.deg();
        quo.c[sh] = f;
        for (size_t i = 0; i < g.c.size(); ++i)
          rem.c[i + sh] = subp(rem.c[i + sh], mulp(f, g.c[i]));
        rem.trim();
      }
      quo.trim();
      fp_split(g, out, s + 1);
      fp_split(quo, out, s + 1);
      return;
    }
  }
}
}  // namespace

std::vector<uint64_t> fp_roots(const FpPoly& u) {
  std::vector<uint64_t> out;
  if (u.deg() <= 0) return out;
  // keep only the linear factors: gcd(u, t^p - t)
  FpPoly t;
  t.c = {0, 1};
  FpPoly tp = fp_powmod(t, FpPoly::kP, u);
  FpPoly diff = tp - t;
  FpPoly lin = gcd(diff, u);
  if (lin.deg() <= 0) return out;
  fp_split(lin, out, 1);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace toric
