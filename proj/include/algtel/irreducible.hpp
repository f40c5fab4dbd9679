#pragma once

// Sufficient test for irreducibility of m over Q(t)(x): if m(x0, t0, y) keeps
// its y-degree and is irreducible modulo a prime p that keeps its degree, then
// m has no factorization of positive y-degrees over Q[x, t], hence none over
// Q(t)(x).

#include <cstdint>
#include <optional>
#include <vector>

#include "algtel/algfun.hpp"

namespace algtel {

namespace irred {

using U = std::uint64_t;
using Vec = std::vector<U>;  // coefficients mod p, index = degree

inline void trim(Vec& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline U powmod(U a, U e, U p) {
  U r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

inline Vec rem(Vec a, const Vec& b, U p) {
  trim(a);
  const U inv = powmod(b.back(), p - 2, p);
  while (a.size() >= b.size()) {
    const U c = a.back() * inv % p;
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = (a[s + i] + p - c * b[i] % p) % p;
    trim(a);
  }
  return a;
}

inline Vec mulmod(const Vec& a, const Vec& b, const Vec& f, U p) {
  if (a.empty() || b.empty()) return {};
  Vec r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return rem(std::move(r), f, p);
}

inline Vec gcd(Vec a, Vec b, U p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Vec r = rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^k) mod f by repeated p-th powering.
inline Vec frobenius_power(const Vec& f, U p, int k) {
  Vec r = rem(Vec{0, 1}, f, p);
  for (int i = 0; i < k; ++i) {
    Vec acc{1}, base = r;
    for (U e = p; e; e >>= 1) {
      if (e & 1) acc = mulmod(acc, base, f, p);
      base = mulmod(base, base, f, p);
    }
    r = acc;
  }
  return r;
}

// Rabin's test for a monic-able f of degree n >= 1 over F_p.
inline bool irreducible_mod_p(const Vec& f, U p) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 1) return n == 1;
  auto minus_x = [p](Vec v) {
    if (v.size() < 2) v.resize(2, 0);
    v[1] = (v[1] + p - 1) % p;
    trim(v);
    return v;
  };
  if (!minus_x(frobenius_power(f, p, n)).empty()) return false;
  for (int q = 2; q <= n; ++q) {
    bool prime = true;
    for (int d = 2; d * d <= q; ++d) prime = prime && q % d != 0;
    if (!prime || n % q != 0) continue;
    Vec g = gcd(f, minus_x(frobenius_power(f, p, n / q)), p);
    if (g.size() > 1) return false;
  }
  return true;
}

inline std::optional<U> image(const Q& q, U p) {
  mpz_class num = q.numerator() % static_cast<unsigned long>(p), den = q.denominator() % static_cast<unsigned long>(p);
  if (num < 0) num += static_cast<unsigned long>(p);
  if (den == 0) return std::nullopt;
  return num.get_ui() * powmod(den.get_ui(), p - 2, p) % p;
}

inline std::optional<Q> specialize(const KPoly& c, long x0, long t0) {
  Q acc(0);
  for (int k = c.degree(); k >= 0; --k) {
    const QT& ck = c.coeff(k);
    Q den = ck.den()(Q(t0));
    if (den.is_zero()) return std::nullopt;
    acc = acc * Q(x0) + ck.num()(Q(t0)) / den;
  }
  return acc;
}

}  // namespace irred

// True when irreducibility is proven; false means "not certified", not "reducible".
inline bool certify_irreducible(const MinPoly& m) {
  const int n = m.degree();
  if (n == 1) return true;
  static constexpr irred::U kPrimes[] = {10007, 10009, 10037, 10039, 10061, 10067, 10069, 10079};
  for (long x0 : {2L, 3L, -5L, 7L, 11L})
    for (long t0 : {5L, -3L, 13L}) {
      std::vector<Q> c;
      bool ok = true;
      for (const auto& p : m.coeffs()) {
        auto v = irred::specialize(p, x0, t0);
        if (!v) ok = false;
        else c.push_back(*v);
      }
      if (!ok || c.back().is_zero()) continue;
      for (irred::U p : kPrimes) {
        irred::Vec f;
        for (const auto& q : c) {
          auto v = irred::image(q, p);
          if (!v) {
            ok = false;
            break;
          }
          f.push_back(*v);
        }
        if (!ok) {
          ok = true;
          continue;
        }
        if (f.back() == 0) continue;
        if (irred::irreducible_mod_p(f, p)) return true;
      }
    }
  return false;
}

}  // namespace algtel
