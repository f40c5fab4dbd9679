#pragma once

#include <string>
#include <utility>
#include <vector>

#include "algtel/bases.hpp"

namespace algtel {

// f = g' + h over a global integral basis W with derivation data (e, M):
// h = h_num / (d e) in W-coordinates, d squarefree, gcd(d, e) = 1.
struct HermiteResult {
  std::vector<KX> g;
  std::vector<KX> h;
  KPoly d;
  std::vector<KPoly> h_num;
};

// One reduction step state: f = G' + F / D in W-coordinates.
struct HermiteState {
  std::vector<KX> g;
  std::vector<KPoly> f;
  KPoly den;
};

namespace detail {

// g with g s = f modulo v; v squarefree and s invertible modulo v. Zero
// divisors met while pivoting split v, and the pieces are glued by CRT.
inline std::vector<KPoly> solve_left_mod(const Matrix<KPoly>& s, const std::vector<KPoly>& f, const KPoly& v) {
  const std::size_t n = f.size();
  if (v.degree() < 1) return std::vector<KPoly>(n);
  Matrix<KPoly> a(n, n);
  std::vector<KPoly> b(n);
  for (std::size_t j = 0; j < n; ++j) {
    b[j] = f[j] % v;
    for (std::size_t i = 0; i < n; ++i) a(j, i) = s(i, j) % v;
  }
  try {
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      while (p < n && a(p, c).is_zero()) ++p;
      if (p == n) throw DomainError("hermite_step: singular system modulo the repeated factor");
      if (p != c) {
        for (std::size_t k = 0; k < n; ++k) std::swap(a(p, k), a(c, k));
        std::swap(b[p], b[c]);
      }
      const KPoly inv = inverse_mod_or_split(a(c, c), v);
      for (std::size_t k = c; k < n; ++k) a(c, k) = (a(c, k) * inv) % v;
      b[c] = (b[c] * inv) % v;
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c || a(r, c).is_zero()) continue;
        const KPoly fac = a(r, c);
        for (std::size_t k = c; k < n; ++k) a(r, k) = (a(r, k) - fac * a(c, k)) % v;
        b[r] = (b[r] - fac * b[c]) % v;
      }
    }
  } catch (const ZeroDivisorFound& z) {
    const KPoly v1 = z.factor.monic();
    const KPoly v2 = exact_div(v, v1);
    std::vector<KPoly> g1 = solve_left_mod(s, f, v1), g2 = solve_left_mod(s, f, v2);
    const KPoly inv = inverse_mod(v1 % v2, v2);
    for (std::size_t i = 0; i < n; ++i) g1[i] = g1[i] + v1 * (((g2[i] - g1[i]) * inv) % v2);
    return g1;
  }
  return b;
}

}  // namespace detail

inline HermiteState hermite_start(const std::vector<KX>& f, const DerivationData& dd) {
  KPoly den = lcm(dd.e, common_denominator(f)).monic();
  std::vector<KPoly> num;
  for (const auto& c : f) num.push_back(as_poly(c * KX(den), "hermite_start"));
  return {std::vector<KX>(f.size(), KX(0)), std::move(num), den};
}

// Lowers the highest multiplicity in the denominator by one. Returns false
// when the denominator is already squarefree.
inline bool hermite_step(HermiteState& st, const DerivationData& dd) {
  const std::size_t n = st.f.size();
  auto sf = squarefree_factorization(st.den);
  if (sf.empty() || sf.back().multiplicity < 2) return false;
  const KPoly v = sf.back().factor.monic();
  const int mu = sf.back().multiplicity;
  const KPoly vmu = pow(v, mu);
  const KPoly u = exact_div(st.den, vmu);
  const KPoly uve = exact_div(u * v, dd.e);
  const KPoly diag = u * v.derivative() * KPoly(QT(1 - mu));
  Matrix<KPoly> s(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      s(i, j) = uve * dd.m(i, j);
      if (i == j) s(i, j) += diag;
    }
  const std::vector<KPoly> g = detail::solve_left_mod(s, st.f, v);
  const KPoly uv = u * v;
  for (std::size_t j = 0; j < n; ++j) {
    KPoly acc = st.f[j] - uv * g[j].derivative();
    for (std::size_t i = 0; i < n; ++i)
      if (!g[i].is_zero()) acc -= g[i] * s(i, j);
    st.f[j] = exact_div(acc, v);
  }
  const KPoly vm1 = pow(v, mu - 1);
  for (std::size_t i = 0; i < n; ++i)
    if (!g[i].is_zero()) st.g[i] += KX(g[i], vm1);
  st.den = u * vm1;
  return true;
}

inline HermiteResult hermite_finish(const HermiteState& st, const DerivationData& dd) {
  HermiteResult r;
  r.g = st.g;
  for (const auto& c : st.f) r.h.push_back(KX(c, st.den));
  KPoly l = common_denominator(r.h);
  r.d = exact_div(l, gcd(l, dd.e)).monic();
  const KX de(r.d * dd.e);
  for (const auto& c : r.h) r.h_num.push_back(as_poly(c * de, "hermite remainder"));
  return r;
}

inline HermiteResult hermite_reduce(const std::vector<KX>& f, const DerivationData& dd) {
  if (dd.direction != DerivationData::Direction::X) throw DomainError("hermite_reduce: needs d/dx derivation data");
  HermiteState st = hermite_start(f, dd);
  while (hermite_step(st, dd)) {
  }
  return hermite_finish(st, dd);
}

inline HermiteResult hermite_reduce(const AlgElem& f, const BasisData& w, const DerivationData& dd) {
  return hermite_reduce(w.coords(f), dd);
}

class PreconditionError : public DomainError {
 public:
  using DomainError::DomainError;
};

struct IntegrabilityResult {
  bool integrable = false;
  std::vector<KX> g;  // W-coordinates of an antiderivative when integrable
  HermiteResult reduction;
};

// Decides integrability of f when f has a double root at infinity and W is normal there.
inline IntegrabilityResult is_integrable(const AlgElem& f, const BasisData& w, const BasisData& winf,
                                         const DerivationData& dd) {
  if (!w.normal_at_infinity) throw PreconditionError("is_integrable: basis is not normal at infinity");
  if (!has_double_root_at_infinity(f, winf))
    throw PreconditionError(
        "is_integrable: the integrand has no double root at infinity; move a regular point to "
        "infinity first or use the polynomial-reduction approach");
  IntegrabilityResult r;
  r.reduction = hermite_reduce(f, w, dd);
  bool zero = true;
  for (const auto& c : r.reduction.h) zero = zero && c.is_zero();
  r.integrable = zero;
  if (zero) r.g = r.reduction.g;
  return r;
}

}  // namespace algtel
