#pragma once

#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "algtel/expr.hpp"

namespace algtel {

inline void PrintTo(const AlgElem& a, std::ostream* os) { *os << to_string(a); }

}  // namespace algtel

namespace algtel::testing {

inline FunctionField field(const std::string& m) { return FunctionField(parse_minpoly(m)); }
inline AlgElem elem(const FunctionField& ff, const std::string& s) { return parse_element(s, ff); }
inline KX kx(const std::string& s) { return eval_ypoly(*parse_expression(s)).coeff(0); }
inline QT qt(const std::string& s) {
  KX r = kx(s);
  if (!r.is_polynomial() || r.num().degree() > 0) throw DomainError("qt: expression depends on x");
  return r.num().coeff(0);
}
inline KPoly kpoly(const std::string& s) {
  KX r = kx(s);
  if (!r.is_polynomial()) throw DomainError("kpoly: not a polynomial in x");
  return r.num();
}

inline Q random_q(std::mt19937& rng, int height) {
  std::uniform_int_distribution<int> d(-height, height);
  return Q(d(rng));
}

inline QT random_qt(std::mt19937& rng, int deg, int height) {
  std::vector<Q> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_q(rng, height));
  return QT(QPoly(std::move(c)));
}

inline KPoly random_kpoly(std::mt19937& rng, int deg, int tdeg, int height) {
  std::vector<QT> c;
  for (int i = 0; i <= deg; ++i) c.push_back(random_qt(rng, tdeg, height));
  return KPoly(std::move(c));
}

// Random nonzero element of K(x) with a small denominator.
inline KX random_kx(std::mt19937& rng, int height) {
  KPoly num = random_kpoly(rng, 2, 1, height);
  KPoly den = random_kpoly(rng, 1, 0, height);
  if (den.is_zero()) den = KPoly(QT(1));
  if (num.is_zero()) num = KPoly(QT(1));
  return KX(num, den);
}

inline AlgElem random_elem(std::mt19937& rng, const FunctionField& ff, int height = 3) {
  AlgElem a = ff.zero();
  std::bernoulli_distribution use(0.7);
  for (auto& c : a.c)
    if (use(rng)) c = random_kx(rng, height);
  if (a.is_zero()) a.c[0] = KX(1);
  return a;
}

}  // namespace algtel::testing
