#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algtel/tower.hpp"

namespace algtel {

// Thrown when a computation in K(x)[y]/<m> stumbles on a proper factor of m.
class ReducibleMinPolyError : public DomainError {
 public:
  explicit ReducibleMinPolyError(YPoly factor)
      : DomainError("minimal polynomial is reducible over K(x); factor of y-degree " +
                    std::to_string(factor.degree()) + " found"),
        factor_(std::move(factor)) {}
  const YPoly& factor() const { return factor_; }

 private:
  YPoly factor_;
};

// m(x, y) = sum_k c_k(x) y^k with c_k in K[x], deg_y m = n >= 1.
class MinPoly {
 public:
  MinPoly() = default;
  explicit MinPoly(std::vector<KPoly> coeffs) : c_(std::move(coeffs)) {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    if (c_.size() < 2) throw DomainError("MinPoly: y-degree must be at least 1");
  }

  // Clears K(x)-denominators and the K[x]-content of a polynomial in y.
  static MinPoly from_ypoly(const YPoly& p) {
    if (p.degree() < 1) throw DomainError("MinPoly: y-degree must be at least 1");
    KPoly den(QT(1));
    for (const auto& c : p.coeffs()) den = lcm(den, c.den());
    std::vector<KPoly> cs;
    for (const auto& c : p.coeffs()) cs.push_back(c.num() * (den / c.den()));
    KPoly content;
    for (const auto& c : cs) content = gcd(content, c);
    std::vector<QT> flat;
    for (auto& c : cs) {
      c = exact_div(c, content);
      flat.insert(flat.end(), c.coeffs().begin(), c.coeffs().end());
    }
    QT s = primitive_scale(flat, cs.back().lc());
    for (auto& c : cs) c *= s;
    return MinPoly(std::move(cs));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<KPoly>& coeffs() const { return c_; }
  const KPoly& lc() const { return c_.back(); }
  int x_degree() const {
    int d = 0;
    for (const auto& c : c_) d = std::max(d, c.degree());
    return d;
  }

  YPoly as_ypoly() const {
    std::vector<KX> v;
    for (const auto& c : c_) v.emplace_back(c);
    return YPoly(std::move(v));
  }
  YPoly dy() const { return as_ypoly().derivative(); }
  YPoly dx() const {
    std::vector<KX> v;
    for (const auto& c : c_) v.emplace_back(c.derivative());
    return YPoly(std::move(v));
  }
  YPoly dt() const {
    std::vector<KX> v;
    for (const auto& c : c_) v.emplace_back(d_dt(c));
    return YPoly(std::move(v));
  }

  friend bool operator==(const MinPoly&, const MinPoly&) = default;

 private:
  std::vector<KPoly> c_;
};

// Element of A = K(x)[y]/<m>, as coordinates over {1, y, ..., y^(n-1)}.
struct AlgElem {
  std::vector<KX> c;

  AlgElem() = default;
  explicit AlgElem(std::vector<KX> coords) : c(std::move(coords)) {}

  std::size_t size() const { return c.size(); }
  bool is_zero() const {
    for (const auto& v : c)
      if (!v.is_zero()) return false;
    return true;
  }
  AlgElem& operator+=(const AlgElem& o) {
    check(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  AlgElem& operator-=(const AlgElem& o) {
    check(o);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= o.c[i];
    return *this;
  }
  AlgElem& operator*=(const KX& s) {
    for (auto& v : c) v *= s;
    return *this;
  }
  friend AlgElem operator+(AlgElem a, const AlgElem& b) { return a += b; }
  friend AlgElem operator-(AlgElem a, const AlgElem& b) { return a -= b; }
  friend AlgElem operator*(AlgElem a, const KX& s) { return a *= s; }
  friend AlgElem operator*(const KX& s, AlgElem a) { return a *= s; }
  AlgElem operator-() const {
    AlgElem r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend bool operator==(const AlgElem&, const AlgElem&) = default;

 private:
  void check(const AlgElem& o) const {
    if (o.c.size() != c.size()) throw DomainError("AlgElem: size mismatch");
  }
};

// The field A together with the derivations d/dx and d/dt.
class FunctionField {
 public:
  explicit FunctionField(MinPoly m) : m_(std::move(m)), n_(m_.degree()) {
    YPoly mp = m_.as_ypoly();
    monic_ = mp.monic();
    YPoly my = m_.dy();
    auto eg = ext_gcd(my, monic_);
    if (eg.g.degree() > 0) throw DomainError("minimal polynomial is not squarefree in y");
    AlgElem my_inv = reduce(eg.s);
    y_dx_ = -mul(reduce(m_.dx()), my_inv);
    y_dt_ = -mul(reduce(m_.dt()), my_inv);
    power_traces_ = newton_power_sums();
  }

  int degree() const { return n_; }
  const MinPoly& minpoly() const { return m_; }

  AlgElem zero() const { return AlgElem(std::vector<KX>(static_cast<std::size_t>(n_), KX(0))); }
  AlgElem one() const { return constant(KX(1)); }
  AlgElem constant(const KX& c) const {
    AlgElem r = zero();
    r.c[0] = c;
    return r;
  }
  AlgElem y() const { return y_power(1); }
  AlgElem y_power(int k) const { return reduce(YPoly::monomial(KX(1), k)); }

  AlgElem reduce(const YPoly& p) const {
    YPoly r = p % monic_;
    AlgElem e = zero();
    for (int i = 0; i <= r.degree(); ++i) e.c[static_cast<std::size_t>(i)] = r.coeff(i);
    return e;
  }
  YPoly to_ypoly(const AlgElem& a) const { return YPoly(a.c); }

  AlgElem mul(const AlgElem& a, const AlgElem& b) const {
    if (a.is_zero() || b.is_zero()) return zero();
    return reduce(to_ypoly(a) * to_ypoly(b));
  }
  AlgElem pow(const AlgElem& a, int k) const {
    AlgElem r = one(), b = a;
    while (k > 0) {
      if (k & 1) r = mul(r, b);
      k >>= 1;
      if (k > 0) b = mul(b, b);
    }
    return r;
  }

  // Throws ReducibleMinPolyError if the extended gcd exposes a factor of m.
  AlgElem inverse(const AlgElem& a) const {
    if (a.is_zero()) throw DomainError("inverse of zero element");
    auto eg = ext_gcd(to_ypoly(a), monic_);
    if (eg.g.degree() > 0) throw ReducibleMinPolyError(eg.g);
    return reduce(eg.s);
  }

  AlgElem dx(const AlgElem& a) const {
    AlgElem r = zero();
    YPoly dpdy;
    {
      std::vector<KX> v;
      for (int k = 1; k < n_; ++k) v.push_back(a.c[static_cast<std::size_t>(k)] * KX(k));
      dpdy = YPoly(std::move(v));
    }
    for (int k = 0; k < n_; ++k) r.c[static_cast<std::size_t>(k)] = d_dx(a.c[static_cast<std::size_t>(k)]);
    if (!dpdy.is_zero()) r += mul(reduce(dpdy), y_dx_);
    return r;
  }
  AlgElem dt(const AlgElem& a) const {
    AlgElem r = zero();
    std::vector<KX> v;
    for (int k = 1; k < n_; ++k) v.push_back(a.c[static_cast<std::size_t>(k)] * KX(k));
    YPoly dpdy(std::move(v));
    for (int k = 0; k < n_; ++k) r.c[static_cast<std::size_t>(k)] = d_dt(a.c[static_cast<std::size_t>(k)]);
    if (!dpdy.is_zero()) r += mul(reduce(dpdy), y_dt_);
    return r;
  }
  const AlgElem& y_dx() const { return y_dx_; }
  const AlgElem& y_dt() const { return y_dt_; }

  KX trace(const AlgElem& a) const {
    KX s(0);
    for (int k = 0; k < n_; ++k) {
      if (!a.c[static_cast<std::size_t>(k)].is_zero())
        s += a.c[static_cast<std::size_t>(k)] * power_traces_[static_cast<std::size_t>(k)];
    }
    return s;
  }

  // Matrix of multiplication by a: row k holds a*y^k.
  Matrix<KX> mult_matrix(const AlgElem& a) const {
    Matrix<KX> mm(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
    AlgElem cur = a;
    for (int k = 0; k < n_; ++k) {
      mm.set_row(static_cast<std::size_t>(k), cur.c);
      if (k + 1 < n_) cur = mul(cur, y());
    }
    return mm;
  }
  // Characteristic polynomial of a over K(x) (a power of its minimal polynomial).
  YPoly charpoly(const AlgElem& a) const { return algtel::charpoly(mult_matrix(a)); }

 private:
  std::vector<KX> newton_power_sums() const {
    // monic m = y^n + a_{n-1} y^{n-1} + ... + a_0
    std::vector<KX> p(static_cast<std::size_t>(n_), KX(0));
    auto a = [&](int i) { return monic_.coeff(i); };
    p[0] = KX(n_);
    for (int k = 1; k < n_; ++k) {
      KX s = a(n_ - k) * KX(k);
      for (int i = 1; i < k; ++i) s += a(n_ - i) * p[static_cast<std::size_t>(k - i)];
      p[static_cast<std::size_t>(k)] = -s;
    }
    return p;
  }

  MinPoly m_;
  int n_;
  YPoly monic_;
  AlgElem y_dx_, y_dt_;
  std::vector<KX> power_traces_;
};

// --- change of variables x -> a + 1/x -----------------------------------

// r(a + 1/x) for r in K(x).
inline KX compose_shift_inverse(const KX& r, const Q& a) {
  const KX arg = KX(QT(a)) + x_var().inverse();
  auto horner = [&](const KPoly& p) {
    KX acc(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * arg + KX(p.coeff(i));
    return acc;
  };
  return horner(r.num()) / horner(r.den());
}

// r(1/(x - a)), the inverse of compose_shift_inverse.
inline KX compose_inverse_shift(const KX& r, const Q& a) {
  const KX arg = (x_var() - KX(QT(a))).inverse();
  auto horner = [&](const KPoly& p) {
    KX acc(0);
    for (int i = p.degree(); i >= 0; --i) acc = acc * arg + KX(p.coeff(i));
    return acc;
  };
  return horner(r.num()) / horner(r.den());
}

struct Substitution {
  Q a;  // x_old = a + 1/x_new
};

struct SubstitutedProblem {
  MinPoly m;
  AlgElem f;
  Substitution record;
};

// Numerator of m(a + 1/x, y) and f(a + 1/x, y) * (-1/x^2), without any
// regularity check.
inline SubstitutedProblem substitute_at_infinity(const MinPoly& m, const AlgElem& f, const Q& a) {
  const int dx = m.x_degree();
  std::vector<KPoly> cs;
  for (const auto& c : m.coeffs()) {
    KX v = compose_shift_inverse(KX(c), a) * KX(KPoly::monomial(QT(1), dx));
    if (!v.is_polynomial()) throw DomainError("substitution produced a non-polynomial coefficient");
    cs.push_back(v.num());
  }
  MinPoly mt = MinPoly::from_ypoly(YPoly([&] {
    std::vector<KX> v;
    for (const auto& c : cs) v.emplace_back(c);
    return v;
  }()));
  const KX chain = -(x_var() * x_var()).inverse();
  AlgElem ft(std::vector<KX>(f.c.size(), KX(0)));
  for (std::size_t i = 0; i < f.c.size(); ++i) ft.c[i] = compose_shift_inverse(f.c[i], a) * chain;
  return {std::move(mt), std::move(ft), Substitution{a}};
}

// Maps an element of the substituted field back: x_new = 1/(x_old - a).
inline AlgElem substitute_back(const AlgElem& g, const Substitution& s) {
  AlgElem r(std::vector<KX>(g.c.size(), KX(0)));
  for (std::size_t i = 0; i < g.c.size(); ++i) r.c[i] = compose_inverse_shift(g.c[i], s.a);
  return r;
}

// (-1)^(n(n-1)/2) res_y(m, dm/dy) / lc_y(m), as an element of K(x).
inline KX discriminant_y(const MinPoly& m) {
  const int n = m.degree();
  KX r = resultant(m.as_ypoly(), m.dy()) / KX(m.lc());
  return ((n * (n - 1) / 2) % 2 == 0) ? r : -r;
}

struct RegularityCheck {
  bool regular = true;
  std::string failed_test;
};

inline RegularityCheck check_regular_point(const MinPoly& m, const AlgElem& f, const Q& a) {
  const QT at(a);
  if (m.lc()(at).is_zero()) return {false, "leading coefficient of m in y vanishes at the point"};
  KX disc = discriminant_y(m);
  if (disc.den()(at).is_zero() || disc.num()(at).is_zero())
    return {false, "discriminant of m in y vanishes at the point"};
  for (const auto& c : f.c) {
    if (c.den()(at).is_zero()) return {false, "a coordinate denominator of f vanishes at the point"};
  }
  return {};
}

class NotRegularError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline SubstitutedProblem move_regular_point_to_infinity(const MinPoly& m, const AlgElem& f, const Q& a) {
  auto chk = check_regular_point(m, f, a);
  if (!chk.regular) throw NotRegularError("point " + a.to_string() + " is not regular: " + chk.failed_test);
  return substitute_at_infinity(m, f, a);
}

// Search order 0, 1, -1, 2, -2, ...
inline Q find_regular_point(const MinPoly& m, const AlgElem& f) {
  for (long k = 0;; ++k) {
    for (long s : {k, -k}) {
      if (k == 0 && s != 0) continue;
      if (check_regular_point(m, f, Q(s)).regular) return Q(s);
      if (k == 0) break;
    }
  }
}

}  // namespace algtel
