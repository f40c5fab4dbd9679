#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algtel/field.hpp"

namespace algtel {

// Dense univariate polynomial over a field. Coefficients are stored from the
// constant term upwards and the top coefficient is never zero; the zero
// polynomial has an empty coefficient vector and degree kZeroDegree.
template <Field F>
class Poly {
 public:
  using coeff_type = F;
  static constexpr int kZeroDegree = -1;

  Poly() = default;
  Poly(const F& c) {  // NOLINT(google-explicit-constructor)
    if (!c.is_zero()) c_.push_back(c);
  }
  Poly(long c) : Poly(F(c)) {}  // NOLINT(google-explicit-constructor)
  explicit Poly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<F> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(const F& c, int k) {
    if (c.is_zero()) return Poly();
    std::vector<F> v(static_cast<std::size_t>(k) + 1, F(0));
    v.back() = c;
    return Poly(std::move(v));
  }
  static Poly x() { return monomial(F(1), 1); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == F(1); }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int i) const {
    if (i < 0 || i > degree()) return F(0);
    return c_[static_cast<std::size_t>(i)];
  }
  const F& lc() const {
    if (c_.empty()) throw DomainError("Poly: leading coefficient of zero polynomial");
    return c_.back();
  }
  // Coefficient of x^0, zero for the zero polynomial.
  F constant_term() const { return coeff(0); }

  Poly monic() const {
    if (is_zero() || c_.back() == F(1)) return *this;
    return *this * lc().inverse();
  }

  Poly derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<F> v(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * F(static_cast<long>(i));
    return Poly(std::move(v));
  }

  F operator()(const F& at) const {
    F acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= at;
      acc += *it;
    }
    return acc;
  }

  // Applies fn to every coefficient, producing a polynomial over G.
  template <class G, class Fn>
  Poly<G> map(Fn&& fn) const {
    std::vector<G> v;
    v.reserve(c_.size());
    for (const auto& c : c_) v.push_back(fn(c));
    return Poly<G>(std::move(v));
  }

  // this * x^k
  Poly shift(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<F> v(static_cast<std::size_t>(k), F(0));
    v.insert(v.end(), c_.begin(), c_.end());
    return Poly(std::move(v));
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), F(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  Poly& operator*=(const F& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const F& s) { return a *= s; }
  friend Poly operator*(const F& s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<F> v(a.c_.size() + b.c_.size() - 1, F(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(v));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  std::string to_string(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
      const F& c = c_[static_cast<std::size_t>(i)];
      if (c.is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << c << ")";
      if (i >= 1) os << "*" << var;
      if (i >= 2) os << "^" << i;
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;
};

template <Field F>
struct DivMod {
  Poly<F> quotient;
  Poly<F> remainder;
};

template <Field F>
DivMod<F> divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw DomainError("Poly: division by zero polynomial");
  if (a.degree() < b.degree()) return {Poly<F>(), a};
  std::vector<F> rem = a.coeffs();
  const int db = b.degree();
  const bool monic = b.lc() == F(1);
  const F inv_lc = monic ? F(1) : b.lc().inverse();
  std::vector<F> quo(static_cast<std::size_t>(a.degree() - db + 1), F(0));
  for (int k = a.degree(); k >= db; --k) {
    F c = rem[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    if (!monic) c *= inv_lc;
    quo[static_cast<std::size_t>(k - db)] = c;
    for (int j = 0; j <= db; ++j) {
      rem[static_cast<std::size_t>(k - db + j)] -= c * b.coeffs()[static_cast<std::size_t>(j)];
    }
  }
  rem.resize(static_cast<std::size_t>(db));
  return {Poly<F>(std::move(quo)), Poly<F>(std::move(rem))};
}

template <Field F>
Poly<F> operator/(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).quotient;
}
template <Field F>
Poly<F> operator%(const Poly<F>& a, const Poly<F>& b) {
  return divmod(a, b).remainder;
}

// Division that must leave no remainder.
template <Field F>
Poly<F> exact_div(const Poly<F>& a, const Poly<F>& b) {
  auto [q, r] = divmod(a, b);
  if (!r.is_zero()) throw DomainError("Poly: inexact division");
  return q;
}

template <Field F>
bool divides(const Poly<F>& d, const Poly<F>& a) {
  if (d.is_zero()) return a.is_zero();
  return (a % d).is_zero();
}

template <Field F>
Poly<F> pow(const Poly<F>& p, int k) {
  Poly<F> r(F(1));
  Poly<F> b = p;
  while (k > 0) {
    if (k & 1) r *= b;
    k >>= 1;
    if (k > 0) b = b * b;
  }
  return r;
}

// Plain Euclidean gcd; coefficient fields with a faster method specialize
// GcdAlgorithm below.
template <Field F>
Poly<F> euclid_gcd(Poly<F> a, Poly<F> b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly<F>(F(1));
  a = a.monic();
  b = b.monic();
  while (!b.is_zero()) {
    Poly<F> r = (a % b).monic();
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

template <Field F>
struct GcdAlgorithm {
  static Poly<F> apply(const Poly<F>& a, const Poly<F>& b) { return euclid_gcd(a, b); }
};

// Monic gcd; gcd(0, 0) = 0.
template <Field F>
Poly<F> gcd(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return Poly<F>(F(1));
  return GcdAlgorithm<F>::apply(a, b);
}

template <Field F>
Poly<F> lcm(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return Poly<F>();
  return (a / gcd(a, b) * b).monic();
}

template <Field F>
struct ExtGcd {
  Poly<F> g;  // monic
  Poly<F> s;
  Poly<F> t;  // s*p + t*q = g
};

// Extended Euclid. Cofactors are the minimal ones produced by the remainder
// sequence: deg s < deg q - deg g and deg t < deg p - deg g.
template <Field F>
ExtGcd<F> ext_gcd(const Poly<F>& p, const Poly<F>& q) {
  if (p.is_zero() && q.is_zero()) throw DomainError("ext_gcd: both inputs are zero");
  Poly<F> r0 = p, r1 = q;
  Poly<F> s0(F(1)), s1;
  Poly<F> t0, t1(F(1));
  while (!r1.is_zero()) {
    auto [quo, rem] = divmod(r0, r1);
    Poly<F> s2 = s0 - quo * s1;
    Poly<F> t2 = t0 - quo * t1;
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  F inv = r0.lc().inverse();
  return {r0 * inv, s0 * inv, t0 * inv};
}

// Inverse of a modulo m; throws when gcd(a, m) is nontrivial.
template <Field F>
Poly<F> inverse_mod(const Poly<F>& a, const Poly<F>& m) {
  auto [g, s, t] = ext_gcd(a % m, m);
  if (!g.is_one()) throw DomainError("inverse_mod: not invertible");
  return s % m;
}

template <Field F>
struct SquarefreeFactor {
  Poly<F> factor;  // monic, squarefree
  int multiplicity;
  friend bool operator==(const SquarefreeFactor&, const SquarefreeFactor&) = default;
};

// Yun's algorithm (characteristic zero). The result lists nonconstant monic
// factors in increasing multiplicity; p = lc(p) * prod factor^multiplicity.
template <Field F>
std::vector<SquarefreeFactor<F>> squarefree_factorization(const Poly<F>& p) {
  if (p.is_zero()) throw DomainError("squarefree_factorization: zero input");
  std::vector<SquarefreeFactor<F>> out;
  Poly<F> f = p.monic();
  if (f.is_constant()) return out;
  Poly<F> fp = f.derivative();
  Poly<F> a0 = gcd(f, fp);
  Poly<F> b = exact_div(f, a0);
  Poly<F> c = exact_div(fp, a0);
  Poly<F> d = c - b.derivative();
  int i = 1;
  while (!b.is_constant()) {
    Poly<F> a = gcd(b, d);
    if (!a.is_constant()) out.push_back({a, i});
    b = exact_div(b, a);
    c = exact_div(d, a);
    d = c - b.derivative();
    ++i;
  }
  return out;
}

template <Field F>
Poly<F> squarefree_part(const Poly<F>& p) {
  Poly<F> r(F(1));
  for (const auto& sf : squarefree_factorization(p)) r *= sf.factor;
  return r;
}

// Resultant over a field via the Euclidean remainder sequence.
template <Field F>
F resultant(const Poly<F>& p, const Poly<F>& q) {
  if (p.is_zero() || q.is_zero()) return F(0);
  const int dp = p.degree(), dq = q.degree();
  if (dq == 0) {
    F r(1);
    for (int i = 0; i < dp; ++i) r *= q.lc();
    return r;
  }
  if (dp == 0) {
    F r(1);
    for (int i = 0; i < dq; ++i) r *= p.lc();
    return r;
  }
  if (dp < dq) {
    F r = resultant(q, p);
    return ((dp * dq) % 2 == 0) ? r : -r;
  }
  Poly<F> rem = p % q;
  if (rem.is_zero()) return F(0);
  F r = resultant(q, rem);
  for (int i = 0; i < dp - rem.degree(); ++i) r *= q.lc();
  return ((dp * dq) % 2 == 0) ? r : -r;
}

}  // namespace algtel
