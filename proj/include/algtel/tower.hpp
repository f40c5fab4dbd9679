#pragma once

#include <string>
#include <vector>

#include "algtel/bigrational.hpp"
#include "algtel/gcd.hpp"
#include "algtel/matrix.hpp"
#include "algtel/ratfunc.hpp"

namespace algtel {

// The concrete tower used by the engine:
//   Q            constants
//   QT  = Q(t)   the scalar field K
//   KPoly = K[x]
//   KX  = K(x)   coefficients of algebraic elements
using Q = BigRational;
using QPoly = Poly<Q>;
using QT = Frac<Q>;
using KPoly = Poly<QT>;
using KX = Frac<QT>;
using YPoly = Poly<KX>;

inline QT t_var() { return QT(QPoly::x()); }
inline KX x_var() { return KX(KPoly::x()); }

// d/dt on every level of the tower (x is constant for d/dt).
inline QT d_dt(const QT& c) { return c.derivative(); }
inline KPoly d_dt(const KPoly& p) {
  return p.map<QT>([](const QT& c) { return c.derivative(); });
}
inline KX d_dt(const KX& r) {
  if (r.is_polynomial()) return KX(d_dt(r.num()));
  KPoly n = d_dt(r.num()) * r.den() - r.num() * d_dt(r.den());
  return KX(n, r.den() * r.den());
}
inline KX d_dx(const KX& r) { return r.derivative(); }

inline KPoly to_kpoly(const QPoly& p) {
  return p.map<QT>([](const Q& c) { return QT(c); });
}

// Degree in x of a matrix of K[x] polynomials; -1 for the zero matrix.
inline int max_degree(const Matrix<KPoly>& m) {
  int d = -1;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) d = std::max(d, m(i, j).degree());
  return d;
}

inline mpz_class lcm_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}
inline mpz_class gcd_z(const mpz_class& a, const mpz_class& b) {
  mpz_class r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Scalar s in K such that s * values are polynomials in Z[t] whose overall
// content (in Z[t]) is 1 and whose designated leader has a positive leading
// integer coefficient. Used for every user-facing normalization.
inline QT primitive_scale(const std::vector<QT>& values, const QT& leader) {
  QPoly den(Q(1));
  for (const auto& v : values) {
    if (!v.is_zero()) den = lcm(den, v.den());
  }
  std::vector<QPoly> polys;
  for (const auto& v : values) {
    if (v.is_zero()) continue;
    polys.push_back(v.num() * (den / v.den()));
  }
  if (polys.empty()) return QT(1);
  QPoly g;
  for (const auto& p : polys) g = gcd(g, p);
  // Clear rational coefficients and strip the integer content.
  mpz_class lden = 1, icontent = 0;
  for (const auto& p : polys) {
    QPoly q = p / g;
    for (const auto& c : q.coeffs()) {
      lden = lcm_z(lden, c.denominator());
    }
  }
  for (const auto& p : polys) {
    QPoly q = p / g;
    for (const auto& c : q.coeffs()) {
      mpz_class z = c.numerator() * (lden / c.denominator());
      icontent = gcd_z(icontent, z);
    }
  }
  QT s = QT(den, g) * QT(Q(lden, icontent));
  QT lead = leader * s;
  if (!lead.is_zero() && lead.num().lc().sign() < 0) s = -s;
  return s;
}

}  // namespace algtel
