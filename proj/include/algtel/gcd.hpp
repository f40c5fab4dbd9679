#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "algtel/bigrational.hpp"
#include "algtel/poly.hpp"
#include "algtel/ratfunc.hpp"

// Gcds over Q and Q(t) without rational coefficient swell: a modular image
// settles the (very common) coprime case, otherwise a primitive remainder
// sequence runs on integer / Z[t] coefficients.

namespace algtel {

namespace modp {

inline constexpr std::uint64_t kPrime = 2147483629ULL;  // largest prime below 2^31

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) { return a * b % kPrime; }
inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return (a + kPrime - b) % kPrime; }
inline std::uint64_t power(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}
inline std::uint64_t inv(std::uint64_t a) { return power(a, kPrime - 2); }

inline std::optional<std::uint64_t> image(const BigRational& q) {
  mpz_class n = q.numerator() % static_cast<unsigned long>(kPrime);
  if (n < 0) n += static_cast<unsigned long>(kPrime);
  mpz_class d = q.denominator() % static_cast<unsigned long>(kPrime);
  if (d == 0) return std::nullopt;
  return mul(n.get_ui(), inv(d.get_ui()));
}

inline std::optional<std::uint64_t> image(const Poly<BigRational>& p, std::uint64_t at) {
  std::uint64_t acc = 0;
  for (int i = p.degree(); i >= 0; --i) {
    auto c = image(p.coeff(i));
    if (!c) return std::nullopt;
    acc = (mul(acc, at) + *c) % kPrime;
  }
  return acc;
}

inline std::optional<std::uint64_t> image(const Frac<BigRational>& r, std::uint64_t at) {
  auto n = image(r.num(), at);
  auto d = image(r.den(), at);
  if (!n || !d || *d == 0) return std::nullopt;
  return mul(*n, inv(*d));
}

using Vec = std::vector<std::uint64_t>;

inline void trim(Vec& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

// Degree of gcd in F_p[x].
inline int gcd_degree(Vec a, Vec b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    const std::uint64_t il = inv(b.back());
    while (a.size() >= b.size()) {
      const std::uint64_t c = mul(a.back(), il);
      const std::size_t shift = a.size() - b.size();
      for (std::size_t j = 0; j < b.size(); ++j) a[shift + j] = sub(a[shift + j], mul(c, b[j]));
      trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// Image of p with nonvanishing leading coefficient, or nothing.
template <class C, class Img>
std::optional<Vec> poly_image(const Poly<C>& p, Img&& img) {
  Vec v;
  for (const auto& c : p.coeffs()) {
    auto x = img(c);
    if (!x) return std::nullopt;
    v.push_back(*x);
  }
  if (v.empty() || v.back() == 0) return std::nullopt;
  return v;
}

}  // namespace modp

namespace detail {

inline mpz_class content_z(const Poly<BigRational>& p) {
  mpz_class g = 0;
  for (const auto& c : p.coeffs()) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.numerator().get_mpz_t());
  }
  return g;
}

// Scales p to an integer polynomial with content 1 and positive leading coefficient.
inline Poly<BigRational> primitive_z(const Poly<BigRational>& p) {
  if (p.is_zero()) return p;
  mpz_class l = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
  Poly<BigRational> q = p * BigRational(l);
  mpz_class g = content_z(q);
  if (q.lc().sign() < 0) g = -g;
  return q * BigRational(mpz_class(1), g);
}

// lc(b)^(deg a - deg b + 1) a mod b without divisions.
template <class C>
Poly<C> pseudo_rem(Poly<C> a, const Poly<C>& b) {
  const int db = b.degree();
  const C lb = b.lc();
  while (!a.is_zero() && a.degree() >= db) {
    Poly<C> t = Poly<C>::monomial(a.lc(), a.degree() - db) * b;
    a = a * lb - t;
  }
  return a;
}

// --- heuristic gcd (evaluation at a large integer, then xi-adic reconstruction)

inline mpz_class max_norm(const Poly<BigRational>& p) {
  mpz_class m = 0;
  for (const auto& c : p.coeffs()) {
    mpz_class a = abs(c.numerator());
    if (a > m) m = a;
  }
  return m;
}

inline mpz_class eval_z(const Poly<BigRational>& p, const mpz_class& at) {
  mpz_class acc = 0;
  for (int i = p.degree(); i >= 0; --i) acc = acc * at + p.coeff(i).numerator();
  return acc;
}

// Symmetric xi-adic digits of v as a polynomial.
inline Poly<BigRational> xi_adic(mpz_class v, const mpz_class& xi) {
  std::vector<BigRational> digits;
  const mpz_class half = xi / 2;
  while (v != 0) {
    mpz_class r;
    mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), xi.get_mpz_t());
    if (r > half) r -= xi;
    digits.emplace_back(r);
    v = (v - r) / xi;
  }
  return Poly<BigRational>(std::move(digits));
}

inline bool divides_q(const Poly<BigRational>& g, const Poly<BigRational>& a) { return (a % g).is_zero(); }

}  // namespace detail

template <>
struct GcdAlgorithm<BigRational> {
  using P = Poly<BigRational>;
  static P apply(const P& a, const P& b) {
    auto ia = modp::poly_image(a, [](const BigRational& c) { return modp::image(c); });
    auto ib = modp::poly_image(b, [](const BigRational& c) { return modp::image(c); });
    if (ia && ib && modp::gcd_degree(*ia, *ib) == 0) return P(BigRational(1));
    P x = detail::primitive_z(a), y = detail::primitive_z(b);
    if (x.degree() < y.degree()) std::swap(x, y);
    if (detail::divides_q(y, x)) return y.monic();
    if (auto h = heuristic(x, y)) return *h;
    if (x.degree() < y.degree()) std::swap(x, y);
    while (!y.is_zero()) {
      P r = detail::primitive_z(detail::pseudo_rem(x, y));
      x = std::move(y);
      y = std::move(r);
    }
    return x.monic();
  }

 private:
  // a, b primitive integer polynomials of positive degree.
  static std::optional<P> heuristic(const P& a, const P& b) {
    mpz_class na = detail::max_norm(a), nb = detail::max_norm(b);
    mpz_class xi = 2 * (na < nb ? na : nb) + 29;
    for (int attempt = 0; attempt < 6; ++attempt) {
      mpz_class va = detail::eval_z(a, xi), vb = detail::eval_z(b, xi);
      mpz_class h;
      mpz_gcd(h.get_mpz_t(), va.get_mpz_t(), vb.get_mpz_t());
      P g = detail::primitive_z(detail::xi_adic(h, xi));
      if (g.degree() >= 0 && detail::divides_q(g, a) && detail::divides_q(g, b)) return g.monic();
      xi = xi * 73794 / 27011 + 1;
    }
    return std::nullopt;
  }
};

template <>
struct GcdAlgorithm<Frac<BigRational>> {
  using QP = Poly<BigRational>;
  using QF = Frac<BigRational>;
  using P = Poly<QF>;
  using Biv = std::vector<QP>;  // coefficient of x^i, each in Z[t]

  static P apply(const P& a, const P& b) {
    for (std::uint64_t at : {1234577ULL, 7654321ULL}) {
      auto img = [at](const QF& c) { return modp::image(c, at); };
      auto ia = modp::poly_image(a, img);
      auto ib = modp::poly_image(b, img);
      if (ia && ib) {
        if (modp::gcd_degree(*ia, *ib) == 0) return P(QF(1));
        break;
      }
    }
    Biv x = to_zt(a), y = to_zt(b);
    if (x.size() < y.size()) std::swap(x, y);
    if (divides(y, x)) return from_biv(y);
    if (auto h = heuristic(x, y)) return from_biv(*h);
    if (x.size() < y.size()) std::swap(x, y);
    while (!y.empty()) {
      Biv r = primitive(prem(x, y));
      x = std::move(y);
      y = std::move(r);
    }
    return from_biv(x);
  }

  struct ModInverse {
    bool unit = false;
    P value;  // the inverse, or the monic gcd when a is a zero divisor
  };

  // Inverse of a modulo m by a primitive remainder sequence with cofactors in
  // Z[t][x]; avoids the coefficient swell of Euclid over Q(t).
  static ModInverse inverse_mod(const P& a, const P& m) {
    if (m.degree() < 1) return {true, P()};
    const P ar = a % m;
    if (ar.is_zero()) return {false, m.monic()};
    QP alpha(BigRational(1));
    for (const auto& c : ar.coeffs()) alpha = lcm(alpha, c.den());
    Biv r1;
    for (const auto& c : ar.coeffs()) r1.push_back(c.num() * exact_div(alpha, c.den()));
    Biv r0 = to_zt(m);
    Biv s0, s1{QP(BigRational(1))};
    while (r1.size() > 1) {
      const QP lb = r1.back();
      Biv q(r0.size() - r1.size() + 1), r = r0;
      QP scale(BigRational(1));
      while (r.size() >= r1.size()) {
        const QP la = r.back();
        const std::size_t shift = r.size() - r1.size();
        for (auto& c : q) c = c * lb;
        q[shift] += la;
        for (auto& c : r) c = c * lb;
        for (std::size_t j = 0; j < r1.size(); ++j) r[shift + j] -= la * r1[j];
        scale = scale * lb;
        trim(r);
      }
      Biv s = mul(q, s1);
      for (auto& c : s) c = -c;
      for (std::size_t i = 0; i < s0.size(); ++i) {
        if (i >= s.size()) s.resize(i + 1);
        s[i] += scale * s0[i];
      }
      trim(s);
      if (r.empty()) return {false, from_biv(r1)};
      QP g;
      for (const auto& c : r) g = gcd(g, c);
      for (const auto& c : s) g = gcd(g, c);
      for (auto& c : r) c = exact_div(c, g);
      for (auto& c : s) c = exact_div(c, g);
      r0 = std::move(r1);
      s0 = std::move(s1);
      r1 = std::move(r);
      s1 = std::move(s);
    }
    const QF k = QF(alpha) / QF(r1[0]);
    std::vector<QF> c;
    for (const auto& v : s1) c.push_back(QF(v) * k);
    return {true, P(std::move(c)) % m};
  }

 private:
  static Biv mul(const Biv& a, const Biv& b) {
    if (a.empty() || b.empty()) return {};
    Biv out(a.size() + b.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!a[i].is_zero())
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    trim(out);
    return out;
  }
  static P from_biv(const Biv& v) {
    std::vector<QF> c;
    for (const auto& q : v) c.emplace_back(q);
    return P(std::move(c)).monic();
  }
  static void trim(Biv& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
  }
  // Content-free representative in Z[t][x].
  static Biv primitive(Biv v) {
    trim(v);
    if (v.empty()) return v;
    QP g;
    for (const auto& c : v) g = gcd(g, c);
    for (auto& c : v) c = exact_div(c, g);
    mpz_class l = 1, cont = 0;
    for (const auto& c : v)
      for (const auto& q : c.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.denominator().get_mpz_t());
    for (auto& c : v) {
      c = c * BigRational(l);
      for (const auto& q : c.coeffs()) mpz_gcd(cont.get_mpz_t(), cont.get_mpz_t(), q.numerator().get_mpz_t());
    }
    if (v.back().lc().sign() < 0) cont = -cont;
    for (auto& c : v) c = c * BigRational(mpz_class(1), cont);
    return v;
  }
  static Biv to_zt(const P& p) {
    QP den(BigRational(1));
    for (const auto& c : p.coeffs()) den = lcm(den, c.den());
    Biv v;
    for (const auto& c : p.coeffs()) v.push_back(c.num() * exact_div(den, c.den()));
    return primitive(std::move(v));
  }
  static Biv prem(Biv a, const Biv& b) {
    const std::size_t db = b.size() - 1;
    const QP lb = b.back();
    while (!a.empty() && a.size() - 1 >= db) {
      const QP la = a.back();
      const std::size_t shift = a.size() - 1 - db;
      for (auto& c : a) c = c * lb;
      for (std::size_t j = 0; j <= db; ++j) a[shift + j] -= la * b[j];
      trim(a);
    }
    return a;
  }
  // Exact division test in Q[t][x] without leaving the polynomial ring.
  static bool divides(const Biv& g, Biv a) {
    const std::size_t dg = g.size() - 1;
    const QP& lg = g.back();
    while (!a.empty() && a.size() - 1 >= dg) {
      auto [q, r] = divmod(a.back(), lg);
      if (!r.is_zero()) return false;
      const std::size_t shift = a.size() - 1 - dg;
      for (std::size_t j = 0; j <= dg; ++j) a[shift + j] -= q * g[j];
      if (!a.back().is_zero()) return false;
      trim(a);
    }
    return a.empty();
  }
  static std::optional<Biv> heuristic(const Biv& a, const Biv& b) {
    // gcd of the leading coefficients over Z[t], integer content included.
    mpz_class ic;
    mpz_gcd(ic.get_mpz_t(), detail::content_z(a.back()).get_mpz_t(), detail::content_z(b.back()).get_mpz_t());
    QP gamma = detail::primitive_z(gcd(a.back(), b.back())) * BigRational(ic);
    auto norm = [](const Biv& v) {
      mpz_class m = 0;
      for (const auto& c : v) {
        mpz_class n = detail::max_norm(c);
        if (n > m) m = n;
      }
      return m;
    };
    mpz_class na = norm(a), nb = norm(b);
    mpz_class xi = 2 * (na < nb ? na : nb) * (detail::max_norm(gamma) + 1) + 29;
    for (int attempt = 0; attempt < 5; ++attempt, xi = xi * 73794 / 27011 + 1) {
      auto at = [&](const Biv& v) {
        std::vector<BigRational> c;
        for (const auto& q : v) c.emplace_back(detail::eval_z(q, xi));
        return QP(std::move(c));
      };
      QP ea = at(a), eb = at(b);
      if (ea.degree() + 1 != static_cast<int>(a.size()) || eb.degree() + 1 != static_cast<int>(b.size())) continue;
      QP g = gcd(ea, eb) * BigRational(detail::eval_z(gamma, xi));
      Biv cand;
      bool integral = true;
      for (const auto& c : g.coeffs()) {
        if (!c.is_integer()) {
          integral = false;
          break;
        }
        cand.push_back(detail::xi_adic(c.numerator(), xi));
      }
      if (!integral) continue;
      cand = primitive(std::move(cand));
      if (cand.size() == g.coeffs().size() && divides(cand, a) && divides(cand, b)) return cand;
    }
    return std::nullopt;
  }
};

// Fast path for the K[x] inverse; the generic template runs Euclid over Q(t).
inline Poly<Frac<BigRational>> inverse_mod(const Poly<Frac<BigRational>>& a, const Poly<Frac<BigRational>>& m) {
  auto r = GcdAlgorithm<Frac<BigRational>>::inverse_mod(a, m);
  if (!r.unit) throw DomainError("inverse_mod: not invertible");
  return r.value;
}

}  // namespace algtel
