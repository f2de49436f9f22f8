#pragma once

// Square-free decomposition of integers, used to canonicalize the radicand
// of quadratic algebraic numbers.  Strategy: strip small primes by trial
// division, detect perfect-square cofactors, and fall back to Pollard rho
// for the rare large composite cofactor.

#include "obmorph/rational.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace obmorph {

inline Integer isqrt_floor(const Integer& n) {
  if (n < 0) throw std::invalid_argument("isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n, Integer* root = nullptr) {
  if (n < 0) return false;
  Integer r = isqrt_floor(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

namespace detail {

inline const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 100000;
    std::vector<bool> comp(limit + 1, false);
    std::vector<std::uint32_t> ps;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (!comp[i]) {
        ps.push_back(i);
        for (std::uint64_t j = static_cast<std::uint64_t>(i) * i; j <= limit; j += i)
          comp[static_cast<std::uint32_t>(j)] = true;
      }
    }
    return ps;
  }();
  return primes;
}

inline Integer mulmod(const Integer& a, const Integer& b, const Integer& m) { return (a * b) % m; }

inline Integer powmod(Integer base, Integer exp, const Integer& m) {
  Integer r = 1;
  base %= m;
  while (exp > 0) {
    if (boost::multiprecision::bit_test(exp, 0)) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return r;
}

inline bool miller_rabin(const Integer& n) {
  if (n < 2) return false;
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) { d >>= 1; ++s; }
  for (std::uint32_t a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    Integer x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (unsigned i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

inline Integer pollard_rho(const Integer& n) {
  if (n % 2 == 0) return 2;
  Integer x = 2, y = 2, c = 1, d = 1;
  std::uint64_t salt = 1;
  while (true) {
    x = 2; y = 2; d = 1;
    c = Integer(salt++);
    while (d == 1) {
      x = (mulmod(x, x, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      y = (mulmod(y, y, n) + c) % n;
      Integer diff = x > y ? x - y : y - x;
      if (diff == 0) { d = n; break; }
      d = boost::multiprecision::gcd(diff, n);
    }
    if (d != n) return d;
  }
}

inline void factor_into(Integer n, std::map<Integer, unsigned>& out) {
  if (n <= 1) return;
  if (miller_rabin(n)) { ++out[n]; return; }
  Integer d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace detail

// Decompose n > 0 as s^2 * f with f square-free; returns {f, s}.
inline std::pair<Integer, Integer> squarefree_decompose(Integer n) {
  if (n <= 0) throw std::invalid_argument("squarefree_decompose: n must be positive");
  Integer square_part = 1, free_part = 1;
  for (std::uint32_t p : detail::small_primes()) {
    if (Integer(p) * p > n) break;
    unsigned e = 0;
    while (n % p == 0) { n /= p; ++e; }
    if (e) {
      for (unsigned i = 0; i + 1 < e; i += 2) square_part *= p;
      if (e % 2) free_part *= p;
    }
  }
  if (n > 1) {
    Integer r;
    if (is_perfect_square(n, &r)) {
      square_part *= r;
    } else if (n < Integer("1000000000000000")) {
      // No prime factor below 1e5 survives trial division, so a cofactor
      // under 1e15 that is not a perfect square cannot contain a square.
      free_part *= n;
    } else {
      std::map<Integer, unsigned> fac;
      detail::factor_into(n, fac);
      for (auto& [p, e] : fac) {
        for (unsigned i = 0; i + 1 < e; i += 2) square_part *= p;
        if (e % 2) free_part *= p;
      }
    }
  }
  return {free_part, square_part};
}

}  // namespace obmorph
