#include "toric/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace toric {

namespace {

struct Cursor {
  const std::string& s;
  size_t i = 0;
  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip_ws();
    return s[i++];
  }
};

std::string take_int(Cursor& c) {
  c.skip_ws();
  std::string out;
  if (c.i < c.s.size() && (c.s[c.i] == '+' || c.s[c.i] == '-')) out.push_back(c.s[c.i++]);
  while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i])))
    out.push_back(c.s[c.i++]);
  if (out.empty() || out == "+" || out == "-")
    throw std::invalid_argument("laurent: expected integer at position " + std::to_string(c.i));
  return out;
}

}  // namespace

LaurentPoly LaurentPoly::parse(const std::string& text) {
  LaurentPoly p;
  Cursor c{text};
  bool first = true;
  while (!c.done()) {
    int sign = 1;
    if (c.peek() == '+' || c.peek() == '-') {
      sign = c.take() == '-' ? -1 : 1;
    } else if (!first) {
      throw std::invalid_argument("laurent: expected +/- at position " + std::to_string(c.i));
    }
    first = false;
    Rational coeff(1);
    bool have_coeff = false;
    long e1 = 0, e2 = 0;
    // term: [c][*x1[^a]][*x2[^b]] in any sensible order, '*' optional
    c.skip_ws();
    if (c.i < c.s.size() && (std::isdigit(static_cast<unsigned char>(c.s[c.i])))) {
      std::string num = take_int(c);
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == '/') {
        ++c.i;
        std::string den = take_int(c);
        coeff = Rational(Int(num), Int(den));
      } else {
        coeff = Rational(Int(num));
      }
      have_coeff = true;
    }
    bool any_var = false;
    while (true) {
      c.skip_ws();
      if (c.i < c.s.size() && c.s[c.i] == '*') {
        ++c.i;
        c.skip_ws();
      }
      if (c.i + 1 < c.s.size() && c.s[c.i] == 'x' && (c.s[c.i + 1] == '1' || c.s[c.i + 1] == '2')) {
        int which = c.s[c.i + 1] - '0';
        c.i += 2;
        long e = 1;
        c.skip_ws();
        if (c.i < c.s.size() && c.s[c.i] == '^') {
          ++c.i;
          e = std::stol(take_int(c));
        }
        (which == 1 ? e1 : e2) += e;
        any_var = true;
      } else {
        break;
      }
    }
    if (!have_coeff && !any_var)
      throw std::invalid_argument("laurent: empty term at position " + std::to_string(c.i));
    Rational v = coeff * Rational(sign);
    auto key = std::make_pair(e1, e2);
    auto it = p.terms.find(key);
    if (it == p.terms.end()) {
      if (v != Rational(0)) p.terms[key] = v;
    } else {
      it->second = it->second + v;
      if (it->second == Rational(0)) p.terms.erase(it);
    }
  }
  return p;
}

std::string LaurentPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms) {
    Rational a = c;
    if (first) {
      if (a < Rational(0)) {
        os << "-";
        a = -a;
      }
    } else {
      os << (a < Rational(0) ? " - " : " + ");
      if (a < Rational(0)) a = -a;
    }
    first = false;
    bool unit = (a == Rational(1)) && (e.first != 0 || e.second != 0);
    if (!unit) os << rational_str(a);
    if (e.first != 0) {
      if (!unit) os << "*";
      os << "x1";
      if (e.first != 1) os << "^" << e.first;
      unit = false;
    }
    if (e.second != 0) {
      if (!unit) os << "*";
      os << "x2";
      if (e.second != 1) os << "^" << e.second;
    }
  }
  return os.str();
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
  LaurentPoly out = *this;
  for (const auto& [e, c] : o.terms) {
    auto it = out.terms.find(e);
    if (it == out.terms.end()) {
      out.terms[e] = c;
    } else {
      it->second = it->second + c;
      if (it->second == Rational(0)) out.terms.erase(it);
    }
  }
  return out;
}

LaurentPoly LaurentPoly::neg() const {
  LaurentPoly out = *this;
  for (auto& [e, c] : out.terms) c = -c;
  return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const { return *this + o.neg(); }

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
  LaurentPoly out;
  for (const auto& [e1, c1] : terms)
    for (const auto& [e2, c2] : o.terms) {
      auto key = std::make_pair(e1.first + e2.first, e1.second + e2.second);
      auto it = out.terms.find(key);
      Rational v = c1 * c2;
      if (it == out.terms.end()) {
        if (v != Rational(0)) out.terms[key] = v;
      } else {
        it->second = it->second + v;
        if (it->second == Rational(0)) out.terms.erase(it);
      }
    }
  return out;
}

LaurentPoly LaurentPoly::constant(const Rational& c) {
  LaurentPoly p;
  if (c != Rational(0)) p.terms[{0, 0}] = c;
  return p;
}

LaurentPoly LaurentPoly::monomial(const Rational& c, long e1, long e2) {
  LaurentPoly p;
  if (c != Rational(0)) p.terms[{e1, e2}] = c;
  return p;
}

std::complex<double> LaurentPoly::eval(std::complex<double> x1, std::complex<double> x2) const {
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms) {
    acc += to_double(c) * std::pow(x1, static_cast<double>(e.first)) *
           std::pow(x2, static_cast<double>(e.second));
  }
  return acc;
}

double LaurentPoly::log_abs_on_fiber(double v1, double v2, double t1, double t2) const {
  if (terms.empty()) return -std::numeric_limits<double>::infinity();
  // log x_j = -v_j + i t_j; term exponent: log|c| - <m, v>.
  double emax = -std::numeric_limits<double>::infinity();
  for (const auto& [e, c] : terms) {
    double le = std::log(std::abs(to_double(c))) - e.first * v1 - e.second * v2;
    emax = std::max(emax, le);
  }
  std::complex<double> acc = 0.0;
  for (const auto& [e, c] : terms) {
    double le = std::log(std::abs(to_double(c))) - e.first * v1 - e.second * v2;
    double phase = e.first * t1 + e.second * t2;
    double sgn = to_double(c) < 0 ? -1.0 : 1.0;
    acc += sgn * std::exp(le - emax) * std::complex<double>(std::cos(phase), std::sin(phase));
  }
  double a = std::abs(acc);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return emax + std::log(a);
}

LaurentPoly LaurentPoly::monomial_subst(const IMat2& A) const {
  LaurentPoly out;
  for (const auto& [e, c] : terms) {
    // x^m -> x^(A^T m): x1^e1 x2^e2 -> (x1^a x2^b)^e1 (x1^c x2^d)^e2
    Int f1 = A.a * e.first + A.c * e.second;
    Int f2 = A.b * e.first + A.d * e.second;
    out.terms[{f1.convert_to<long>(), f2.convert_to<long>()}] = c;
  }
  return out;
}

LaurentPoly LaurentPoly::cleared() const {
  if (terms.empty()) return *this;
  long m1 = std::numeric_limits<long>::max(), m2 = m1;
  for (const auto& [e, c] : terms) {
    (void)c;
    m1 = std::min(m1, e.first);
    m2 = std::min(m2, e.second);
  }
  LaurentPoly out;
  for (const auto& [e, c] : terms) out.terms[{e.first - m1, e.second - m2}] = c;
  return out;
}

}  // namespace toric
