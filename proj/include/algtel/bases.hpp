#pragma once

#include <algorithm>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algtel/algfun.hpp"

namespace algtel {

// A K(x)-basis W = (w_1, ..., w_n) of A. Row i of to_std holds the standard
// coordinates of w_i; from_std is its inverse.
struct BasisData {
  std::vector<AlgElem> omega;
  Matrix<KX> to_std;
  Matrix<KX> from_std;
  bool globally_integral = false;
  bool integral_at_infinity = false;
  bool normal_at_infinity = false;
  // Normality witnesses: {r_i w_i} is a local integral basis at infinity, r_i = x^(-tau_i).
  std::vector<int> tau;
  std::vector<KX> r;

  std::size_t size() const { return omega.size(); }
  std::vector<KX> coords(const AlgElem& f) const { return row_times(f.c, from_std); }
  AlgElem element(const std::vector<KX>& c) const { return AlgElem(row_times(c, to_std)); }
};

inline BasisData make_basis(const Matrix<KX>& rows) {
  BasisData b;
  b.to_std = rows;
  b.from_std = inverse(rows);
  for (std::size_t i = 0; i < rows.rows(); ++i) b.omega.emplace_back(rows.row(i));
  return b;
}

inline BasisData make_basis(const std::vector<AlgElem>& elems) {
  if (elems.empty()) throw DomainError("basis: empty");
  Matrix<KX> m(elems.size(), elems[0].size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].size() != m.cols()) throw DomainError("basis: element size mismatch");
    m.set_row(i, elems[i].c);
  }
  if (determinant(m).is_zero()) throw DomainError("basis: elements are linearly dependent over K(x)");
  return make_basis(m);
}

inline BasisData standard_basis(const FunctionField& ff) {
  return make_basis(Matrix<KX>::identity(static_cast<std::size_t>(ff.degree())));
}

// --- helpers on K(x) ---------------------------------------------------------

inline KX lc_at_infinity(const KX& r) { return KX(r.num().lc() / r.den().lc()); }

// r(1/x).
inline KX invert_variable(const KX& r) {
  auto rev = [](const KPoly& p) {
    std::vector<QT> c(p.coeffs().rbegin(), p.coeffs().rend());
    return KPoly(std::move(c));
  };
  if (r.is_zero()) return r;
  const int shift = r.den().degree() - r.num().degree();
  KPoly n = rev(r.num()), d = rev(r.den());
  if (shift >= 0) return KX(n.shift(shift), d);
  return KX(n, d.shift(-shift));
}

inline KPoly common_denominator(const std::vector<KX>& v) {
  KPoly d(QT(1));
  for (const auto& c : v)
    if (!c.is_zero()) d = lcm(d, c.den());
  return d;
}

inline KPoly common_denominator(const Matrix<KX>& m) {
  KPoly d(QT(1));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) d = lcm(d, m(i, j).den());
  return d;
}

inline KPoly as_poly(const KX& r, const char* what) {
  if (!r.is_polynomial()) throw DomainError(std::string(what) + ": expected a polynomial in x");
  return r.num();
}

// Lower-triangular Hermite normal form over K[x] of a nonsingular matrix:
// row i is supported on columns <= i, diagonal monic, entries left of the
// diagonal reduced modulo the diagonal entry of their column.
inline Matrix<KPoly> hermite_normal_form(Matrix<KPoly> a) {
  const std::size_t n = a.rows();
  auto sub_row = [&](std::size_t dst, std::size_t src, const KPoly& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (!a(src, j).is_zero()) a(dst, j) -= q * a(src, j);
  };
  for (std::size_t col = n; col-- > 0;) {
    for (;;) {
      std::optional<std::size_t> best;
      for (std::size_t r = 0; r <= col; ++r)
        if (!a(r, col).is_zero() && (!best || a(r, col).degree() < a(*best, col).degree())) best = r;
      if (!best) throw DomainError("hermite_normal_form: singular matrix");
      if (*best != col)
        for (std::size_t j = 0; j < n; ++j) std::swap(a(*best, j), a(col, j));
      bool done = true;
      for (std::size_t r = 0; r < col; ++r) {
        if (a(r, col).is_zero()) continue;
        sub_row(r, col, a(r, col) / a(col, col));
        if (!a(r, col).is_zero()) done = false;
      }
      if (done) break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    QT inv = a(i, i).lc().inverse();
    for (std::size_t j = 0; j <= i; ++j) a(i, j) *= inv;
  }
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = i; j-- > 0;) {
      KPoly q = a(i, j) / a(j, j);
      if (!q.is_zero()) sub_row(i, j, q);
    }
  return a;
}

// Canonical representative of the K[x]-module spanned by the rows of b.
inline Matrix<KX> normalize_module(const Matrix<KX>& b) {
  KPoly d = common_denominator(b);
  Matrix<KPoly> p = b.map<KPoly>([&](const KX& c) { return as_poly(c * KX(d), "normalize_module"); });
  Matrix<KPoly> h = hermite_normal_form(std::move(p));
  return h.map<KX>([&](const KPoly& c) { return KX(c, d); });
}

// --- Round 2 with dynamic evaluation -----------------------------------------

// A nontrivial factor of the modulus exposed by a failed inversion.
struct ZeroDivisorFound {
  KPoly factor;
};

namespace detail {

inline KPoly inverse_mod_or_split(const KPoly& a, const KPoly& q) {
  auto r = GcdAlgorithm<QT>::inverse_mod(a, q);
  if (!r.unit) throw ZeroDivisorFound{r.value};
  return r.value;
}

// Rows v (length a.rows()) of a basis of the K[x]-lattice {v : v a = 0 mod q}.
inline Matrix<KPoly> left_kernel_lattice(const Matrix<KPoly>& a, const KPoly& q) {
  const std::size_t r = a.rows(), c = a.cols();
  Matrix<KPoly> m(c, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(j, i) = a(i, j) % q;
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < r && row < c; ++col) {
    std::size_t p = row;
    while (p < c && m(p, col).is_zero()) ++p;
    if (p == c) continue;
    if (p != row)
      for (std::size_t j = 0; j < r; ++j) std::swap(m(p, j), m(row, j));
    KPoly inv = inverse_mod_or_split(m(row, col), q);
    for (std::size_t j = 0; j < r; ++j) m(row, j) = (m(row, j) * inv) % q;
    for (std::size_t i = 0; i < c; ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      KPoly f = m(i, col);
      for (std::size_t j = 0; j < r; ++j)
        if (!m(row, j).is_zero()) m(i, j) = (m(i, j) - f * m(row, j)) % q;
    }
    pivots.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(r, false);
  for (auto p : pivots) is_pivot[p] = true;
  Matrix<KPoly> out(r, r);
  for (std::size_t f = 0; f < r; ++f) {
    if (is_pivot[f]) {
      out(f, f) = q;
      continue;
    }
    out(f, f) = KPoly(QT(1));
    for (std::size_t s = 0; s < pivots.size(); ++s) out(f, pivots[s]) = (-m(s, f)) % q;
  }
  return out;
}

inline bool is_scalar_lattice(const Matrix<KPoly>& l, const KPoly& q) {
  for (std::size_t i = 0; i < l.rows(); ++i)
    if (!(l(i, i) == q)) return false;
  return true;
}

}  // namespace detail

// Multiplicative data of the order spanned by the rows of b (standard coordinates).
struct OrderData {
  Matrix<KX> basis;
  Matrix<KX> basis_inv;
  std::vector<std::vector<std::vector<KPoly>>> structure;  // coords of w_i w_l
  Matrix<KPoly> trace_form;
};

inline OrderData order_data(const FunctionField& ff, const Matrix<KX>& b) {
  const std::size_t n = b.rows();
  OrderData od{b, inverse(b), {}, Matrix<KPoly>(n, n)};
  std::vector<AlgElem> w;
  for (std::size_t i = 0; i < n; ++i) w.emplace_back(b.row(i));
  std::vector<KX> traces;
  for (const auto& wi : w) traces.push_back(ff.trace(wi));
  od.structure.assign(n, std::vector<std::vector<KPoly>>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = i; l < n; ++l) {
      std::vector<KX> c = row_times(ff.mul(w[i], w[l]).c, od.basis_inv);
      std::vector<KPoly> pc;
      for (const auto& v : c) pc.push_back(as_poly(v, "order is not closed under multiplication"));
      od.structure[i][l] = pc;
      od.structure[l][i] = pc;
      KX tr(0);
      for (std::size_t k = 0; k < n; ++k) tr += c[k] * traces[k];
      od.trace_form(i, l) = as_poly(tr, "trace of an integral element");
      od.trace_form(l, i) = od.trace_form(i, l);
    }
  return od;
}

inline KPoly order_discriminant(const FunctionField& ff, const Matrix<KX>& b) {
  Matrix<KX> t = order_data(ff, b).trace_form.map<KX>([](const KPoly& p) { return KX(p); });
  return as_poly(determinant(t), "discriminant");
}

// One Round-2 step at the squarefree modulus q: replaces b by the
// multiplier ring of the q-radical. Returns false when b is maximal at q.
inline bool enlarge_at(const FunctionField& ff, Matrix<KX>& b, const KPoly& q) {
  const std::size_t n = b.rows();
  OrderData od = order_data(ff, b);
  Matrix<KPoly> h = detail::left_kernel_lattice(od.trace_form, q);
  if (detail::is_scalar_lattice(h, q)) return false;
  Matrix<KX> hinv = inverse(h.map<KX>([](const KPoly& p) { return KX(p); }));
  Matrix<KPoly> nmat(n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<KX> prod(n, KX(0));
      for (std::size_t l = 0; l < n; ++l) {
        if (h(k, l).is_zero()) continue;
        for (std::size_t mm = 0; mm < n; ++mm) prod[mm] += KX(h(k, l) * od.structure[i][l][mm]);
      }
      std::vector<KX> ci = row_times(prod, hinv);
      for (std::size_t mm = 0; mm < n; ++mm) nmat(i, k * n + mm) = as_poly(ci[mm], "radical coordinates") % q;
    }
  Matrix<KPoly> u = detail::left_kernel_lattice(nmat, q);
  if (detail::is_scalar_lattice(u, q)) return false;
  Matrix<KX> ux = u.map<KX>([&](const KPoly& p) { return KX(p, q); });
  b = normalize_module(ux * b);
  return true;
}

// Maximal order at every modulus in the worklist, splitting moduli on zero divisors.
inline void round2(const FunctionField& ff, Matrix<KX>& b, std::deque<KPoly> work) {
  while (!work.empty()) {
    KPoly q = work.front().monic();
    work.pop_front();
    if (q.degree() < 1) continue;
    try {
      while (enlarge_at(ff, b, q)) {
      }
    } catch (const ZeroDivisorFound& z) {
      KPoly g = z.factor.monic();
      work.push_back(g);
      work.push_back(exact_div(q, g));
    }
  }
}

inline std::deque<KPoly> repeated_factors(const KPoly& disc) {
  std::deque<KPoly> work;
  for (const auto& sf : squarefree_factorization(disc))
    if (sf.multiplicity >= 2) work.push_back(sf.factor);
  return work;
}

// Equation order of z = lc_y(m) y, integral over K[x].
inline Matrix<KX> monic_equation_order(const FunctionField& ff) {
  const std::size_t n = static_cast<std::size_t>(ff.degree());
  Matrix<KX> b(n, n);
  KX lc(ff.minpoly().lc());
  KX p(1);
  for (std::size_t k = 0; k < n; ++k) {
    b(k, k) = p;
    p *= lc;
  }
  return b;
}

inline bool is_integral_element(const FunctionField& ff, const AlgElem& a) {
  YPoly cp = ff.charpoly(a);
  for (const auto& c : cp.coeffs())
    if (!c.is_polynomial()) return false;
  return true;
}

// Integrality at infinity via the characteristic polynomial: every coefficient
// c_k of lambda^(n-k) must satisfy deg c_k <= 0.
inline bool is_integral_at_infinity_element(const FunctionField& ff, const AlgElem& a) {
  YPoly cp = ff.charpoly(a);
  for (const auto& c : cp.coeffs())
    if (!c.is_zero() && c.degree_at_infinity() > 0) return false;
  return true;
}

struct DerivationData {
  enum class Direction { X, T };
  KPoly e;
  Matrix<KPoly> m;
  Direction direction = Direction::X;
  int lambda = 0;
};

namespace detail {

inline std::vector<std::vector<KX>> derivative_coords(const FunctionField& ff, const BasisData& w,
                                                       DerivationData::Direction dir) {
  std::vector<std::vector<KX>> out;
  for (const auto& om : w.omega)
    out.push_back(w.coords(dir == DerivationData::Direction::X ? ff.dx(om) : ff.dt(om)));
  return out;
}

}  // namespace detail

// e w_i' = sum_j m_ij w_j with gcd(e, m_ij) = 1, scaled to be primitive over Z[t].
inline DerivationData derivation_data(const FunctionField& ff, const BasisData& w) {
  const std::size_t n = w.size();
  auto d = detail::derivative_coords(ff, w, DerivationData::Direction::X);
  KPoly e(QT(1));
  for (const auto& row : d) e = lcm(e, common_denominator(row));
  Matrix<KPoly> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = as_poly(d[i][j] * KX(e), "derivation matrix");
  std::vector<QT> all = e.coeffs();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) all.insert(all.end(), m(i, j).coeffs().begin(), m(i, j).coeffs().end());
  QT s = primitive_scale(all, e.lc());
  e *= s;
  m = m * KPoly(s);
  return {e, m, DerivationData::Direction::X, 0};
}

// d/dt data over the same denominator e as the d/dx data.
inline DerivationData derivation_data_t(const FunctionField& ff, const BasisData& w, const DerivationData& dx) {
  const std::size_t n = w.size();
  auto d = detail::derivative_coords(ff, w, DerivationData::Direction::T);
  KPoly et(QT(1));
  for (const auto& row : d) et = lcm(et, common_denominator(row));
  if (!divides(et, dx.e)) throw DomainError("derivation data: d/dt denominator does not divide e");
  Matrix<KPoly> m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = as_poly(d[i][j] * KX(dx.e), "d/dt derivation matrix");
  return {dx.e, m, DerivationData::Direction::T, 0};
}

inline DerivationData derivation_data(const FunctionField& ff, const BasisData& w, DerivationData::Direction dir) {
  DerivationData dx = derivation_data(ff, w);
  return dir == DerivationData::Direction::X ? dx : derivation_data_t(ff, w, dx);
}

// Coordinates of f' (resp. d/dt f) from the coordinates of f: c' + c M / e.
inline std::vector<KX> derivative_in_basis(const std::vector<KX>& c, const DerivationData& dd) {
  const std::size_t n = c.size();
  std::vector<KX> out(n, KX(0));
  const KX einv = KX(dd.e).inverse();
  for (std::size_t i = 0; i < n; ++i)
    out[i] = dd.direction == DerivationData::Direction::X ? d_dx(c[i]) : d_dt(c[i]);
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!dd.m(i, j).is_zero()) out[j] += c[i] * KX(dd.m(i, j)) * einv;
  }
  return out;
}

class BasisError : public DomainError {
 public:
  using DomainError::DomainError;
};

inline BasisData compute_integral_basis(const FunctionField& ff) {
  Matrix<KX> b = monic_equation_order(ff);
  if (ff.degree() > 1) round2(ff, b, repeated_factors(order_discriminant(ff, b)));
  b = normalize_module(b);
  BasisData w = make_basis(b);
  for (const auto& om : w.omega)
    if (!is_integral_element(ff, om)) throw BasisError("integral basis: computed element is not integral");
  DerivationData dd = derivation_data(ff, w);
  if (gcd(dd.e, dd.e.derivative()).degree() > 0)
    throw BasisError("integral basis: derivation denominator is not squarefree");
  w.globally_integral = true;
  return w;
}

// Function field of m(1/z, y) z^(deg_x m); y is unchanged.
inline MinPoly minpoly_at_infinity(const MinPoly& m) {
  const int d = m.x_degree();
  std::vector<KPoly> c;
  for (const auto& p : m.coeffs()) {
    std::vector<QT> v(static_cast<std::size_t>(d) + 1, QT(0));
    for (int j = 0; j <= p.degree(); ++j) v[static_cast<std::size_t>(d - j)] = p.coeff(j);
    c.emplace_back(std::move(v));
  }
  return MinPoly(std::move(c));
}

inline BasisData local_integral_basis_at_infinity(const FunctionField& ff) {
  FunctionField finf(minpoly_at_infinity(ff.minpoly()));
  Matrix<KX> b = monic_equation_order(finf);
  if (ff.degree() > 1) {
    KPoly disc = order_discriminant(finf, b);
    int val = 0;
    for (KPoly r = disc; !r.is_zero() && r.constant_term().is_zero(); r = r / KPoly::x()) ++val;
    if (val >= 2) round2(finf, b, std::deque<KPoly>{KPoly::x()});
  }
  Matrix<KX> back = b.map<KX>([](const KX& c) { return invert_variable(c); });
  BasisData w = make_basis(back);
  w.integral_at_infinity = true;
  w.tau.assign(w.size(), 0);
  w.r.assign(w.size(), KX(1));
  return w;
}

// Normalization of a global integral basis w against a local
// integral basis winf at infinity. Returns a basis of the same K[x]-module
// whose rows scaled by x^(-tau_i) form a local integral basis at infinity.
inline BasisData normalize_at_infinity(const BasisData& w, const BasisData& winf) {
  const std::size_t n = w.size();
  Matrix<KX> rows = w.to_std;
  std::vector<int> delta(n);
  for (;;) {
    Matrix<KX> m = rows * winf.from_std;
    Matrix<QT> lead(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      int d = std::numeric_limits<int>::min();
      for (std::size_t j = 0; j < n; ++j)
        if (!m(i, j).is_zero()) d = std::max(d, m(i, j).degree_at_infinity());
      delta[i] = d;
      for (std::size_t j = 0; j < n; ++j)
        if (!m(i, j).is_zero() && m(i, j).degree_at_infinity() == d) lead(i, j) = lc_at_infinity(m(i, j)).num().lc();
    }
    auto ker = nullspace(lead.transpose());
    if (ker.empty()) break;
    const auto& c = ker.front();
    std::size_t k = n;
    for (std::size_t i = 0; i < n; ++i)
      if (!c[i].is_zero() && (k == n || delta[i] > delta[k])) k = i;
    std::vector<KX> nr(n, KX(0));
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i].is_zero()) continue;
      KX s = KX(KPoly::monomial(c[i], delta[k] - delta[i]));
      for (std::size_t j = 0; j < n; ++j) nr[j] += s * rows(i, j);
    }
    rows.set_row(k, nr);
  }
  BasisData out = make_basis(rows);
  out.globally_integral = w.globally_integral;
  out.normal_at_infinity = true;
  out.tau = delta;
  for (int d : delta) out.r.push_back(d >= 0 ? KX(1) / KX(KPoly::monomial(QT(1), d)) : KX(KPoly::monomial(QT(1), -d)));
  return out;
}

// True when w is normal at infinity as given, i.e. normalization changes nothing.
inline bool is_normal_at_infinity(const BasisData& w, const BasisData& winf) {
  return normalize_at_infinity(w, winf).to_std == w.to_std;
}

// Order of f at infinity is at least k, measured in a basis with exponents tau.
inline bool vanishes_at_infinity_to_order(const AlgElem& f, const BasisData& w, int k) {
  std::vector<KX> c = w.coords(f);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    int t = w.tau.empty() ? 0 : w.tau[i];
    if (c[i].degree_at_infinity() + t > -k) return false;
  }
  return true;
}

inline bool is_integral_at_infinity(const AlgElem& f, const BasisData& w) {
  if (!w.normal_at_infinity && !w.integral_at_infinity)
    throw DomainError("is_integral_at_infinity: basis is neither normal nor integral at infinity");
  return vanishes_at_infinity_to_order(f, w, 0);
}

// f integral at every root of the squarefree polynomial p.
inline bool is_integral_at(const AlgElem& f, const BasisData& w, const KPoly& p) {
  if (!w.globally_integral) throw DomainError("is_integral_at: basis is not an integral basis");
  for (const auto& c : w.coords(f))
    if (!c.is_zero() && gcd(c.den(), p).degree() > 0) return false;
  return true;
}

inline bool is_integral(const AlgElem& f, const BasisData& w) {
  if (!w.globally_integral) throw DomainError("is_integral: basis is not an integral basis");
  for (const auto& c : w.coords(f))
    if (!c.is_polynomial()) return false;
  return true;
}

// x^2 f integral at infinity.
inline bool has_double_root_at_infinity(const AlgElem& f, const BasisData& winf) {
  if (!winf.normal_at_infinity && !winf.integral_at_infinity)
    throw DomainError("has_double_root_at_infinity: basis is neither normal nor integral at infinity");
  return vanishes_at_infinity_to_order(f, winf, 2);
}

// Rows of a and b span the same K[x]-module.
inline bool same_module(const Matrix<KX>& a, const Matrix<KX>& b) {
  Matrix<KX> t = a * inverse(b);
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j)
      if (!t(i, j).is_polynomial()) return false;
  KX d = determinant(t);
  return d.is_polynomial() && d.num().degree() == 0;
}

// Integral basis normal at infinity, with the local basis at infinity it was normalized against.
struct BasisBundle {
  BasisData w;
  BasisData winf;
};

inline BasisBundle normal_integral_basis(const FunctionField& ff) {
  BasisData winf = local_integral_basis_at_infinity(ff);
  return {normalize_at_infinity(compute_integral_basis(ff), winf), winf};
}

// Accepts a user basis if it spans the integral closure of K[x] in A.
// With require_normal the basis must already be normal at infinity;
// otherwise it is normalized.
inline BasisBundle verified_basis(const FunctionField& ff, const Matrix<KX>& rows, bool require_normal) {
  BasisData winf = local_integral_basis_at_infinity(ff);
  BasisData ref = compute_integral_basis(ff);
  if (determinant(rows).is_zero()) throw BasisError("basis elements are linearly dependent");
  for (std::size_t i = 0; i < rows.rows(); ++i)
    if (!is_integral_element(ff, AlgElem(rows.row(i))))
      throw BasisError("basis element " + std::to_string(i + 1) + " is not integral over K[x]");
  if (!same_module(rows, ref.to_std)) throw BasisError("basis does not span the integral closure of K[x]");
  BasisData w = make_basis(rows);
  w.globally_integral = true;
  BasisData nw = normalize_at_infinity(w, winf);
  if (require_normal && !(nw.to_std == w.to_std)) throw BasisError("basis is not normal at infinity");
  return {nw, winf};
}

}  // namespace algtel
