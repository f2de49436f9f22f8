#include <catch2/catch_amalgamated.hpp>

#include "obmorph/algebraic.hpp"
#include "obmorph/numtheory.hpp"
#include "obmorph/rational.hpp"

#include <random>

using namespace obmorph;

TEST_CASE("rational serialization round trip") {
  CHECK(to_string(Rational(7)) == "7");
  CHECK(to_string(Rational(-3, 4)) == "-3/4");
  CHECK(parse_rational("7").value() == Rational(7));
  CHECK(parse_rational("6/-8").value() == Rational(-3, 4));
  CHECK(parse_rational("-3/4").value() == Rational(-3, 4));
  CHECK(parse_rational("+10/4").value() == Rational(5, 2));
  CHECK(!parse_rational("").has_value());
  CHECK(!parse_rational("1/0").has_value());
  CHECK(!parse_rational("1.5").has_value());
  CHECK(!parse_rational("2/").has_value());
  CHECK(!parse_rational("a").has_value());

  std::mt19937_64 rng(12345);
  for (int i = 0; i < 200; ++i) {
    Integer n = Integer(static_cast<long long>(rng()) % 1000000);
    Integer d = Integer(static_cast<long long>(rng() % 999999) + 1);
    Rational q(n, d);
    CHECK(parse_rational(to_string(q)).value() == q);
  }
}

TEST_CASE("rational_below_sqrt gives a power-of-two lower witness") {
  for (Rational s : {Rational(2), Rational(1, 3), Rational(10), Rational(1000000), Rational(1)}) {
    Rational r = rational_below_sqrt(s);
    CHECK(r > 0);
    CHECK(r * r <= s);
    CHECK((2 * r) * (2 * r) > s);
  }
}

TEST_CASE("perfect squares and integer square roots") {
  CHECK(isqrt_floor(Integer(0)) == 0);
  CHECK(isqrt_floor(Integer(35)) == 5);
  CHECK(isqrt_floor(Integer(36)) == 6);
  Integer big = Integer("123456789123456789");
  Integer r = isqrt_floor(big * big);
  CHECK(r == big);
  Integer root;
  CHECK(is_perfect_square(big * big, &root));
  CHECK(root == big);
  CHECK(!is_perfect_square(big * big + 1, &root));
}

TEST_CASE("squarefree decomposition") {
  // n == free * s^2 with free square-free.
  auto [f1, s1] = squarefree_decompose(Integer(360));  // 36 * 10
  CHECK(f1 == 10);
  CHECK(s1 == 6);
  auto [f2, s2] = squarefree_decompose(Integer(1));
  CHECK(f2 == 1);
  CHECK(s2 == 1);
  // 13 * (2*7919)^2; 7919 is prime.
  Integer n3 = Integer(13) * Integer(15838) * Integer(15838);
  auto [f3, s3] = squarefree_decompose(n3);
  CHECK(f3 == 13);
  CHECK(s3 == 15838);
  // Square of a semiprime with both factors above the trial-division bound.
  Integer sp = Integer(1000003) * Integer(1000033);
  auto [f4, s4] = squarefree_decompose(sp * sp);
  CHECK(f4 == 1);
  CHECK(s4 == sp);
  // Large square-free semiprime (forces the probabilistic factoring path).
  Integer big = Integer("1000000007") * Integer("1000000009");
  auto [f5, s5] = squarefree_decompose(big);
  CHECK(f5 == big);
  CHECK(s5 == 1);

  std::mt19937_64 rng(777);
  for (int i = 0; i < 100; ++i) {
    Integer n = Integer(static_cast<long long>(rng() % 1000000) + 1);
    auto [f, s] = squarefree_decompose(n);
    CHECK(f * s * s == n);
    // f must have no small square divisor.
    for (long long p : {2LL, 3LL, 5LL, 7LL, 11LL, 13LL})
      CHECK(f % (p * p) != 0);
  }
}

TEST_CASE("signs of radical expressions") {
  CHECK(sign_radical(Rational(3), Rational(-2), Integer(2)) > 0);    // 9 > 8
  CHECK(sign_radical(Rational(7, 5), Rational(-1), Integer(2)) < 0);  // 1.96 < 2
  CHECK(sign_radical(Rational(-3), Rational(1), Integer(9)) == 0);    // sqrt(9) == 3
  CHECK(sign_radical(Rational(0), Rational(0), Integer(5)) == 0);
  CHECK(sign_radical(Rational(0), Rational(-2), Integer(3)) < 0);

  // 3 - sqrt(2) - sqrt(3) < 0, 16/5 - sqrt(2) - sqrt(3) > 0.
  CHECK(sign_two_radicals(Rational(3), Rational(-1), Integer(2), Rational(-1), Integer(3)) < 0);
  CHECK(sign_two_radicals(Rational(16, 5), Rational(-1), Integer(2), Rational(-1), Integer(3)) > 0);
  // sqrt(8) - 2 sqrt(2) == 0.
  CHECK(sign_two_radicals(Rational(0), Rational(1), Integer(8), Rational(-2), Integer(2)) == 0);
  // 1 + sqrt(2) - sqrt(6) < 0 since (1 + sqrt2)^2 = 3 + 2 sqrt2 < 6.
  CHECK(sign_two_radicals(Rational(1), Rational(1), Integer(2), Rational(-1), Integer(6)) < 0);

  std::mt19937_64 rng(4242);
  for (int i = 0; i < 500; ++i) {
    auto rnd = [&](int lim) { return static_cast<long long>(rng() % (2 * lim + 1)) - lim; };
    Rational a(rnd(20)), b(rnd(20)), c(rnd(20));
    Integer d1 = Integer(static_cast<long long>(rng() % 30));
    Integer d2 = Integer(static_cast<long long>(rng() % 30));
    double val = static_cast<double>(a) + static_cast<double>(b) * sqrt(static_cast<double>(d1)) +
                 static_cast<double>(c) * sqrt(static_cast<double>(d2));
    int got = sign_two_radicals(a, b, d1, c, d2);
    if (val > 1e-6) CHECK(got > 0);
    if (val < -1e-6) CHECK(got < 0);
  }
}

TEST_CASE("algebraic time normalization and comparison") {
  AlgebraicTime t = AlgebraicTime::make(Integer(1), Integer(1), Integer(2), Integer(8));
  CHECK(t.p == 1);
  CHECK(t.q == 2);
  CHECK(t.r == 2);
  CHECK(t.d == 2);
  CHECK(!t.is_rational());
  // (1 + 2 sqrt2)/2 ~ 1.914.
  CHECK(t.compare(Rational(2)) < 0);
  CHECK(t.compare(Rational(19, 10)) > 0);

  // sqrt(9) folds to rational 3.
  AlgebraicTime u = AlgebraicTime::make(Integer(0), Integer(1), Integer(1), Integer(9));
  CHECK(u.is_rational());
  CHECK(u.rational_value() == 3);

  AlgebraicTime a = AlgebraicTime::make(Integer(0), Integer(1), Integer(1), Integer(2));  // sqrt2
  AlgebraicTime b = AlgebraicTime::make(Integer(0), Integer(1), Integer(1), Integer(3));  // sqrt3
  CHECK(a < b);
  CHECK(a.compare(a) == 0);
  CHECK(a == AlgebraicTime::make(Integer(0), Integer(2), Integer(2), Integer(2)));

  // Negative denominator normalizes away.
  AlgebraicTime c = AlgebraicTime::make(Integer(-1), Integer(0), Integer(-2), Integer(0));
  CHECK(c.rational_value() == Rational(1, 2));
}

TEST_CASE("quadratic roots in the unit interval") {
  // (t - 1/4)(t - 3/4) = t^2 - t + 3/16.
  QuadraticPoly f{Rational(3, 16), Rational(-1), Rational(1)};
  UnitRoots rr = roots_in_unit_interval(f);
  REQUIRE(rr.status == RootStatus::Ok);
  REQUIRE(rr.roots.size() == 2);
  CHECK(rr.roots[0].rational_value() == Rational(1, 4));
  CHECK(rr.roots[1].rational_value() == Rational(3, 4));

  // 2 t^2 - 2 t + 1/4: roots (2 -+ sqrt2)/4, both irrational, both in (0,1).
  QuadraticPoly g{Rational(1, 4), Rational(-2), Rational(2)};
  rr = roots_in_unit_interval(g);
  REQUIRE(rr.roots.size() == 2);
  CHECK(rr.roots[0] == AlgebraicTime::make(Integer(2), Integer(-1), Integer(4), Integer(2)));
  CHECK(rr.roots[1] == AlgebraicTime::make(Integer(2), Integer(1), Integer(4), Integer(2)));
  CHECK(rr.roots[0] < rr.roots[1]);
  for (auto& t : rr.roots) CHECK(g.eval(t).sign_value() == 0);

  // Double root at 1/2: (2t - 1)^2 = 4t^2 - 4t + 1.
  QuadraticPoly h{Rational(1), Rational(-4), Rational(4)};
  rr = roots_in_unit_interval(h);
  REQUIRE(rr.roots.size() == 1);
  CHECK(rr.roots[0].rational_value() == Rational(1, 2));

  // Linear: 2t - 1.
  QuadraticPoly lin{Rational(-1), Rational(2), Rational(0)};
  rr = roots_in_unit_interval(lin);
  REQUIRE(rr.roots.size() == 1);
  CHECK(rr.roots[0].rational_value() == Rational(1, 2));

  // No real roots / roots outside [0,1] / constants.
  CHECK(roots_in_unit_interval({Rational(1), Rational(0), Rational(1)}).roots.empty());
  CHECK(roots_in_unit_interval({Rational(6), Rational(-5), Rational(1)}).roots.empty());  // 2, 3
  CHECK(roots_in_unit_interval({Rational(5), Rational(0), Rational(0)}).roots.empty());
  CHECK(roots_in_unit_interval({Rational(0), Rational(0), Rational(0)}).status ==
        RootStatus::IdenticallyZero);
}

TEST_CASE("rational separation between algebraic numbers") {
  AlgebraicTime a = AlgebraicTime::make(Integer(2), Integer(-1), Integer(4), Integer(2));
  AlgebraicTime b = AlgebraicTime::make(Integer(2), Integer(1), Integer(4), Integer(2));
  Rational m = rational_between(a, b);
  CHECK(a.compare(m) < 0);
  CHECK(b.compare(m) > 0);

  // Very tight gap: sqrt(2) and 665857/470832 (a convergent) straddle closely.
  AlgebraicTime s2 = AlgebraicTime::make(Integer(0), Integer(1), Integer(1), Integer(2));
  AlgebraicTime conv = AlgebraicTime::from_rational(Rational(665857, 470832));
  REQUIRE(s2 < conv);
  Rational mid = rational_between(s2, conv);
  CHECK(s2.compare(mid) < 0);
  CHECK(conv.compare(mid) > 0);

  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    long long p1 = static_cast<long long>(rng() % 40), d1 = 1 + static_cast<long long>(rng() % 30);
    long long p2 = static_cast<long long>(rng() % 40), d2 = 1 + static_cast<long long>(rng() % 30);
    AlgebraicTime x = AlgebraicTime::make(Integer(p1), Integer(1), Integer(7), Integer(d1));
    AlgebraicTime y = AlgebraicTime::make(Integer(p2), Integer(1), Integer(5), Integer(d2));
    if (x.compare(y) == 0) continue;
    if (y < x) std::swap(x, y);
    Rational z = rational_between(x, y);
    CHECK(x.compare(z) < 0);
    CHECK(y.compare(z) > 0);
  }
}

TEST_CASE("quadratic field arithmetic evaluates polynomials exactly") {
  // t = (1 + sqrt5)/2 satisfies t^2 - t - 1 = 0.
  AlgebraicTime phi = AlgebraicTime::make(Integer(1), Integer(1), Integer(2), Integer(5));
  QuadraticPoly f{Rational(-1), Rational(-1), Rational(1)};
  CHECK(f.eval(phi).sign_value() == 0);
  QuadraticPoly g{Rational(-1), Rational(-1), Rational(2)};
  CHECK(g.eval(phi).sign_value() > 0);
}
