#pragma once

// Quadratic polynomials in the time parameter and their roots as exact
// quadratic algebraic numbers (p + q*sqrt(d)) / r.

#include "obmorph/numtheory.hpp"
#include "obmorph/rational.hpp"

#include <optional>
#include <vector>

namespace obmorph {

// ---------------------------------------------------------------------------
// Radical sign machinery.

// Sign of a + b*sqrt(D) for rational a, b and integer D >= 0 (D need not be
// square-free here).
inline int sign_radical(const Rational& a, const Rational& b, const Integer& D) {
  if (b == 0 || D == 0) return sign(a);
  if (a == 0) return sign(b);
  int sa = sign(a), sb = sign(b);
  if (sa == sb) return sa;
  Rational a2 = a * a, b2d = b * b * Rational(D);
  if (a2 == b2d) return 0;
  return (a2 > b2d) ? sa : sb;
}

// Sign of a + b*sqrt(D1) + c*sqrt(D2), D1, D2 >= 0.
inline int sign_two_radicals(const Rational& a, Rational b, Integer D1, Rational c, Integer D2) {
  if (D1 == 0) b = 0;
  if (D2 == 0) c = 0;
  if (b == 0) return sign_radical(a, c, D2);
  if (c == 0) return sign_radical(a, b, D1);
  if (D1 == D2) return sign_radical(a, b + c, D1);
  // u = b*sqrt(D1) + c*sqrt(D2)
  int su;
  if (sign(b) == sign(c)) {
    su = sign(b);
  } else {
    Rational lhs = b * b * Rational(D1), rhs = c * c * Rational(D2);
    if (lhs == rhs) su = 0;
    else su = (lhs > rhs) ? sign(b) : sign(c);
  }
  if (su == 0) return sign(a);
  if (a == 0) return su;
  if (sign(a) == su) return su;
  // Compare a^2 against u^2 = b^2 D1 + c^2 D2 + 2bc sqrt(D1 D2).
  Rational A = a * a - b * b * Rational(D1) - c * c * Rational(D2);
  Rational B = -2 * b * c;
  int cmp = sign_radical(A, B, D1 * D2);  // sign(a^2 - u^2)
  if (cmp == 0) return 0;
  return (cmp > 0) ? sign(a) : su;
}

// ---------------------------------------------------------------------------
// AlgebraicTime: (p + q*sqrt(d)) / r with integer p, q, r (r > 0) and d a
// square-free non-negative integer.  Canonical form: gcd(p, q, r) == 1,
// q == 0 iff d == 0, and d != 1.

struct AlgebraicTime {
  Integer p{0}, q{0}, r{1}, d{0};

  AlgebraicTime() = default;

  static AlgebraicTime from_rational(const Rational& v) {
    AlgebraicTime t;
    t.p = num(v);
    t.r = den(v);
    return t;
  }

  // (pp + qq*sqrt(dd)) / rr, dd >= 0 arbitrary; normalizes.
  static AlgebraicTime make(Integer pp, Integer qq, Integer rr, Integer dd) {
    if (rr == 0) throw std::invalid_argument("AlgebraicTime: zero denominator");
    if (dd < 0) throw std::invalid_argument("AlgebraicTime: negative radicand");
    if (rr < 0) { rr = -rr; pp = -pp; qq = -qq; }
    if (dd == 0) qq = 0;
    if (qq == 0) dd = 0;
    if (dd != 0) {
      auto [f, s] = squarefree_decompose(dd);
      dd = f;
      qq *= s;
      if (dd == 1) { pp += qq; qq = 0; dd = 0; }
    }
    Integer g = boost::multiprecision::gcd(boost::multiprecision::gcd(
                    pp < 0 ? Integer(-pp) : pp, qq < 0 ? Integer(-qq) : qq), rr);
    if (g > 1) { pp /= g; qq /= g; rr /= g; }
    AlgebraicTime t;
    t.p = pp; t.q = qq; t.r = rr; t.d = dd;
    return t;
  }

  bool is_rational() const { return q == 0; }
  Rational rational_value() const {
    if (!is_rational()) throw std::logic_error("AlgebraicTime: not rational");
    return Rational(p, r);
  }

  int sign_value() const { return sign_radical(Rational(p, r), Rational(q, r), d); }

  // sign(*this - v)
  int compare(const Rational& v) const {
    // (p - v r) + q sqrt(d), scaled by r > 0.
    return sign_radical(Rational(p, r) - v, Rational(q, r), d);
  }
  int compare(const AlgebraicTime& o) const {
    return sign_two_radicals(Rational(p, r) - Rational(o.p, o.r),
                             Rational(q, r), d, Rational(-o.q, o.r), o.d);
  }

  friend bool operator==(const AlgebraicTime& a, const AlgebraicTime& b) { return a.compare(b) == 0; }
  friend bool operator<(const AlgebraicTime& a, const AlgebraicTime& b) { return a.compare(b) < 0; }
  friend bool operator<=(const AlgebraicTime& a, const AlgebraicTime& b) { return a.compare(b) <= 0; }
};

// A rational strictly between lo and hi (requires lo < hi); both bounds may
// be irrational.  Bisection over dyadic rationals, seeded by an integer
// bracket around lo.
inline Rational rational_between(const AlgebraicTime& lo, const AlgebraicTime& hi) {
  if (!(lo.compare(hi) < 0)) throw std::invalid_argument("rational_between: lo >= hi");
  // Integer bracket [L, L+1] around lo (coarse is fine).
  Integer L = (lo.p - (lo.q < 0 ? -lo.q : lo.q) * (isqrt_floor(lo.d) + 1)) / lo.r - 2;
  Rational a(L), b(L);
  while (hi.compare(b) > 0 && lo.compare(b) >= 0) b += 1;  // first integer > lo (or inside)
  if (lo.compare(b) < 0 && hi.compare(b) > 0) return b;
  a = b - 1;
  // Now lo in (a, b]; shrink until the midpoint separates lo and hi.
  while (true) {
    Rational m = (a + b) / 2;
    int cl = lo.compare(m);
    if (cl < 0) {
      if (hi.compare(m) > 0) return m;
      b = m;  // m >= hi: interval (lo, hi) is left of m
    } else {
      a = m;  // m <= lo
    }
  }
}

// ---------------------------------------------------------------------------
// Elements of Q(sqrt(d)): a + b*sqrt(d) with a shared square-free d >= 0.

struct QExt {
  Rational a{0}, b{0};
  Integer d{0};

  QExt() = default;
  explicit QExt(Rational av) : a(std::move(av)) {}
  QExt(Rational av, Rational bv, Integer dv) : a(std::move(av)), b(std::move(bv)), d(std::move(dv)) {
    if (b == 0) d = 0;
  }

  static QExt of_time(const AlgebraicTime& t) {
    return QExt(Rational(t.p, t.r), Rational(t.q, t.r), t.d);
  }

  int sign_value() const { return sign_radical(a, b, d); }
  bool is_zero() const { return a == 0 && b == 0; }

  friend Integer common_d(const QExt& x, const QExt& y) {
    if (x.d == 0) return y.d;
    if (y.d == 0 || x.d == y.d) return x.d;
    throw std::logic_error("QExt: mixed radicands");
  }
  friend QExt operator+(const QExt& x, const QExt& y) {
    return QExt(x.a + y.a, x.b + y.b, common_d(x, y));
  }
  friend QExt operator-(const QExt& x, const QExt& y) {
    return QExt(x.a - y.a, x.b - y.b, common_d(x, y));
  }
  friend QExt operator*(const QExt& x, const QExt& y) {
    Integer d = common_d(x, y);
    return QExt(x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d);
  }
};

struct QPoint {
  QExt x, y;
};

// ---------------------------------------------------------------------------
// Quadratic polynomial c0 + c1 t + c2 t^2 with rational coefficients.

struct QuadraticPoly {
  Rational c0{0}, c1{0}, c2{0};

  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  bool is_constant() const { return c1 == 0 && c2 == 0; }

  Rational eval(const Rational& t) const { return c0 + t * (c1 + t * c2); }
  QExt eval(const AlgebraicTime& t) const {
    QExt tt = QExt::of_time(t);
    return QExt(c0) + tt * (QExt(c1) + tt * QExt(c2));
  }
  QuadraticPoly operator-(const QuadraticPoly& o) const {
    return {c0 - o.c0, c1 - o.c1, c2 - o.c2};
  }
};

enum class RootStatus { Ok, IdenticallyZero };

struct UnitRoots {
  RootStatus status = RootStatus::Ok;
  std::vector<AlgebraicTime> roots;  // sorted ascending, within [0, 1]
};

// All real roots of the polynomial inside [0, 1].  An identically zero
// polynomial is reported as a distinct condition, never as "roots".
inline UnitRoots roots_in_unit_interval(const QuadraticPoly& f) {
  UnitRoots out;
  if (f.is_zero()) { out.status = RootStatus::IdenticallyZero; return out; }

  auto push_if_unit = [&out](AlgebraicTime t) {
    if (t.compare(Rational(0)) >= 0 && t.compare(Rational(1)) <= 0)
      out.roots.push_back(std::move(t));
  };

  if (f.c2 == 0) {
    if (f.c1 == 0) return out;  // non-zero constant
    push_if_unit(AlgebraicTime::from_rational(-f.c0 / f.c1));
    return out;
  }

  // Clear denominators: A t^2 + B t + C with integers.
  Integer l0 = den(f.c0), l1 = den(f.c1), l2 = den(f.c2);
  Integer L = boost::multiprecision::lcm(boost::multiprecision::lcm(l0, l1), l2);
  Integer C = num(f.c0) * (L / l0);
  Integer B = num(f.c1) * (L / l1);
  Integer A = num(f.c2) * (L / l2);
  if (A < 0) { A = -A; B = -B; C = -C; }
  Integer D = B * B - 4 * A * C;
  if (D < 0) return out;
  if (D == 0) {
    push_if_unit(AlgebraicTime::from_rational(Rational(-B, 2 * A)));
    return out;
  }
  Integer rt;
  if (is_perfect_square(D, &rt)) {
    Rational r1(-B - rt, 2 * A), r2(-B + rt, 2 * A);
    if (r1 > r2) std::swap(r1, r2);
    push_if_unit(AlgebraicTime::from_rational(r1));
    push_if_unit(AlgebraicTime::from_rational(r2));
    return out;
  }
  AlgebraicTime t1 = AlgebraicTime::make(-B, -1, 2 * A, D);
  AlgebraicTime t2 = AlgebraicTime::make(-B, 1, 2 * A, D);
  if (t2 < t1) std::swap(t1, t2);
  push_if_unit(std::move(t1));
  push_if_unit(std::move(t2));
  return out;
}

}  // namespace obmorph
