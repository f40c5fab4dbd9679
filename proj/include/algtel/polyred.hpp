#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "algtel/hermite.hpp"

namespace algtel {

using PolyVec = std::vector<KPoly>;

// V = T W with T = diag(x^(-shift_i)); a V' = B V with a = x^lambda e.
struct ShiftedBasis {
  BasisData v;
  std::vector<int> shift;
  int lambda = 0;
  KPoly a;
  Matrix<KPoly> b;
  bool identity = true;
};

inline KX x_power(int k) {
  return k >= 0 ? KX(KPoly::monomial(QT(1), k)) : KX(KPoly(QT(1)), KPoly::monomial(QT(1), -k));
}

inline ShiftedBasis shift_basis(const BasisData& w, const DerivationData& dd) {
  const std::size_t n = w.size();
  ShiftedBasis sb;
  if (max_degree(dd.m) < dd.e.degree()) {
    sb.v = w;
    sb.shift.assign(n, 0);
    sb.a = dd.e;
    sb.b = dd.m;
    return sb;
  }
  if (!w.normal_at_infinity) throw PreconditionError("shift_basis: basis is not normal at infinity");
  sb.identity = false;
  sb.shift = w.tau;
  for (int s : sb.shift)
    if (s < 0) throw DomainError("shift_basis: negative normality exponent");
  // e D_V = diag(-tau_i e / x) + x^(tau_j - tau_i) m_ij.
  Matrix<KX> ed(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      KX c = KX(dd.m(i, j)) * x_power(sb.shift[j] - sb.shift[i]);
      if (i == j) c -= KX(QT(sb.shift[i])) * KX(dd.e) / x_var();
      ed(i, j) = c;
    }
  int lambda = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (!ed(i, j).is_zero()) lambda = std::max(lambda, ed(i, j).den().degree());
  sb.lambda = lambda;
  const KX xl = x_power(lambda);
  sb.a = dd.e * KPoly::monomial(QT(1), lambda);
  sb.b = Matrix<KPoly>(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) sb.b(i, j) = as_poly(ed(i, j) * xl, "shift_basis");
  Matrix<KX> rows = w.to_std;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rows(i, j) *= x_power(-sb.shift[i]);
  sb.v = make_basis(rows);
  if (max_degree(sb.b) >= sb.a.degree()) throw DomainError("shift_basis: degree condition deg B < deg a fails");
  return sb;
}

// phi(p) = a p' + p B.
inline PolyVec phi_v(const PolyVec& p, const ShiftedBasis& sb) {
  const std::size_t n = p.size();
  PolyVec out(n);
  for (std::size_t j = 0; j < n; ++j) out[j] = sb.a * p[j].derivative();
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i].is_zero()) continue;
    for (std::size_t j = 0; j < n; ++j)
      if (!sb.b(i, j).is_zero()) out[j] += p[i] * sb.b(i, j);
  }
  return out;
}

inline int vec_degree(const PolyVec& v) {
  int d = -1;
  for (const auto& p : v) d = std::max(d, p.degree());
  return d;
}

// --- integer roots -----------------------------------------------------------

namespace detail {

// Nonnegative integer roots of a nonzero polynomial in Q[s].
inline std::vector<long> nonnegative_integer_roots(const QPoly& p) {
  std::vector<long> out;
  if (p.is_zero()) throw DomainError("integer roots: zero polynomial");
  mpz_class den = 1;
  for (const auto& c : p.coeffs()) den = lcm_z(den, c.denominator());
  std::vector<mpz_class> z;
  for (const auto& c : p.coeffs()) z.push_back(c.numerator() * (den / c.denominator()));
  std::size_t k = 0;
  while (z[k] == 0) ++k;
  if (k > 0) out.push_back(0);
  z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(k));
  if (z.size() <= 1) return out;
  mpz_class bound = 0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    mpz_class q = abs(z[i]) / abs(z.back()) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  mpz_class a0 = abs(z.front());
  if (a0 < bound) bound = a0;
  if (bound > 50000000) throw DomainError("integer roots: search bound too large");
  const long lim = bound.get_si();
  for (long r = 1; r <= lim; ++r) {
    if (mpz_divisible_ui_p(a0.get_mpz_t(), static_cast<unsigned long>(r)) == 0) continue;
    mpz_class acc = 0;
    for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * r + *it;
    if (acc == 0) out.push_back(r);
  }
  return out;
}

}  // namespace detail

// Largest nonnegative integer root of p in K[s] with constant roots only
// counted; -1 if none. Candidates come from a seeded specialization of t and
// are confirmed symbolically.
inline int largest_nonnegative_integer_root(const Poly<QT>& p, std::uint64_t seed) {
  if (p.is_zero()) throw DomainError("integer roots: zero polynomial");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> pick(-1000, 1000);
  QPoly spec;
  for (int attempt = 0;; ++attempt) {
    const Q t0(attempt == 0 ? pick(rng) : pick(rng) + attempt);
    bool ok = true;
    std::vector<Q> c;
    for (const auto& q : p.coeffs()) {
      if (q.den()(t0).is_zero()) {
        ok = false;
        break;
      }
      c.push_back(q(t0));
    }
    if (!ok) continue;
    spec = QPoly(std::move(c));
    if (spec.degree() == p.degree()) break;
  }
  int best = -1;
  for (long r : detail::nonnegative_integer_roots(spec))
    if (p(QT(Q(r))).is_zero()) best = std::max(best, static_cast<int>(r));
  return best;
}

// Complement N_V of im(phi) in K[x]^n, with the echelon data used for reduction.
struct NVData {
  int mu = 0;    // deg a - 1
  int ell = -1;  // largest nonnegative integer root, or -1
  int top = 0;   // ell + mu: truncation degree
  QT lca;
  Matrix<QT> lead;  // coefficient of x^mu in B
  std::vector<std::pair<int, int>> basis;  // (degree j, index i), sorted
  std::vector<std::vector<QT>> rows;       // reduced echelon rows of the truncated image
  std::vector<std::size_t> pivots;
  std::vector<PolyVec> preimages;

  std::size_t dim() const { return basis.size(); }
};

namespace detail {

inline std::size_t nv_column(int n, int top, int deg, int i) {
  return static_cast<std::size_t>((top - deg) * n + i);
}

inline std::vector<QT> vectorize(const PolyVec& p, int top) {
  const int n = static_cast<int>(p.size());
  std::vector<QT> v(static_cast<std::size_t>(n * (top + 1)), QT(0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k <= p[static_cast<std::size_t>(i)].degree(); ++k) {
      if (k > top) throw DomainError("vectorize: degree exceeds truncation");
      v[nv_column(n, top, k, i)] = p[static_cast<std::size_t>(i)].coeff(k);
    }
  return v;
}

inline PolyVec devectorize(const std::vector<QT>& v, int n, int top) {
  PolyVec p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<QT> c(static_cast<std::size_t>(top + 1), QT(0));
    for (int k = 0; k <= top; ++k) c[static_cast<std::size_t>(k)] = v[nv_column(n, top, k, i)];
    p[static_cast<std::size_t>(i)] = KPoly(std::move(c));
  }
  return p;
}

inline PolyVec unit_monomial(int n, int i, int deg, const QT& c) {
  PolyVec p(static_cast<std::size_t>(n));
  p[static_cast<std::size_t>(i)] = KPoly::monomial(c, deg);
  return p;
}

inline void add_scaled(PolyVec& dst, const PolyVec& src, const QT& c) {
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (!src[i].is_zero()) dst[i] += src[i] * c;
}

}  // namespace detail

inline NVData compute_nv(const ShiftedBasis& sb, std::uint64_t seed = 0) {
  const int n = static_cast<int>(sb.b.rows());
  NVData nv;
  nv.mu = sb.a.degree() - 1;
  nv.lca = sb.a.lc();
  nv.lead = Matrix<QT>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < nv.lead.rows(); ++i)
    for (std::size_t j = 0; j < nv.lead.cols(); ++j) nv.lead(i, j) = nv.mu >= 0 ? sb.b(i, j).coeff(nv.mu) : QT(0);
  // det(s lc(a) I + L) = lc(a)^n charpoly(-L / lc(a))(s).
  Matrix<QT> x = nv.lead * (-nv.lca.inverse());
  nv.ell = largest_nonnegative_integer_root(charpoly(x), seed);
  nv.top = nv.ell + nv.mu;
  if (nv.top < 0) {
    nv.top = -1;
    return nv;
  }
  const std::size_t cols = static_cast<std::size_t>(n * (nv.top + 1));
  std::vector<PolyVec> gens;
  for (int j = 0; j <= nv.ell; ++j)
    for (int i = 0; i < n; ++i) gens.push_back(detail::unit_monomial(n, i, j, QT(1)));
  Matrix<QT> aug(gens.size(), cols + gens.size());
  for (std::size_t g = 0; g < gens.size(); ++g) {
    std::vector<QT> v = detail::vectorize(phi_v(gens[g], sb), nv.top);
    for (std::size_t c = 0; c < cols; ++c) aug(g, c) = v[c];
    aug(g, cols + g) = QT(1);
  }
  auto rr = rref(aug);
  std::vector<bool> used(cols, false);
  for (std::size_t r = 0; r < rr.pivots.size(); ++r) {
    const std::size_t pc = rr.pivots[r];
    if (pc >= cols) break;
    used[pc] = true;
    nv.pivots.push_back(pc);
    std::vector<QT> row(cols);
    for (std::size_t c = 0; c < cols; ++c) row[c] = rr.reduced(r, c);
    nv.rows.push_back(std::move(row));
    PolyVec pre(static_cast<std::size_t>(n));
    for (std::size_t g = 0; g < gens.size(); ++g)
      if (!rr.reduced(r, cols + g).is_zero()) detail::add_scaled(pre, gens[g], rr.reduced(r, cols + g));
    nv.preimages.push_back(std::move(pre));
  }
  for (int j = 0; j <= nv.top; ++j)
    for (int i = 0; i < n; ++i)
      if (!used[detail::nv_column(n, nv.top, j, i)]) nv.basis.emplace_back(j, i);
  return nv;
}

struct PolyReduction {
  PolyVec u1;  // U = phi(u1) + u2
  PolyVec u2;  // in the span of N_V
};

inline PolyReduction poly_reduce(PolyVec u, const ShiftedBasis& sb, const NVData& nv) {
  const int n = static_cast<int>(u.size());
  PolyVec u1(u.size());
  Matrix<QT> ident = Matrix<QT>::identity(static_cast<std::size_t>(n));
  for (int k = vec_degree(u); k > nv.top; k = vec_degree(u)) {
    const int s = k - nv.mu;
    std::vector<QT> c(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) c[i] = u[i].coeff(k);
    Matrix<QT> a = ident * (nv.lca * QT(s)) + nv.lead;
    std::vector<QT> r = row_times(c, inverse(a));
    PolyVec p(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) p[i] = KPoly::monomial(r[i], s);
    PolyVec ph = phi_v(p, sb);
    for (std::size_t i = 0; i < u.size(); ++i) {
      u[i] -= ph[i];
      u1[i] += p[i];
    }
  }
  if (nv.top < 0) return {u1, u};
  std::vector<QT> v = detail::vectorize(u, nv.top);
  for (std::size_t r = 0; r < nv.rows.size(); ++r) {
    const QT c = v[nv.pivots[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < v.size(); ++j)
      if (!nv.rows[r][j].is_zero()) v[j] -= c * nv.rows[r][j];
    detail::add_scaled(u1, nv.preimages[r], c);
  }
  return {u1, detail::devectorize(v, n, nv.top)};
}

// Coordinates of u (in the span of N_V) with respect to the N_V monomials.
inline std::vector<QT> nv_coordinates(const PolyVec& u, const NVData& nv) {
  std::vector<QT> out;
  for (const auto& [j, i] : nv.basis) out.push_back(u[static_cast<std::size_t>(i)].coeff(j));
  return out;
}

// f = g' + (1/d) P W + (1/a) Q V in W-coordinates.
struct AdditiveDecomposition {
  std::vector<KX> g;
  KPoly d;
  PolyVec p;
  PolyVec q;

  bool remainder_is_zero() const {
    for (const auto& c : p)
      if (!c.is_zero()) return false;
    for (const auto& c : q)
      if (!c.is_zero()) return false;
    return true;
  }
};

// The pieces needed for additive decompositions over one field.
struct ReductionContext {
  BasisData w;
  BasisData winf;
  DerivationData dx;
  DerivationData dt;
  ShiftedBasis sb;
  NVData nv;

  // W-coordinates of (1/d) P W + (1/a) Q V.
  std::vector<KX> remainder(const AdditiveDecomposition& ad) const {
    std::vector<KX> out(w.size(), KX(0));
    const KX a(sb.a);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = KX(ad.p[i], ad.d) + KX(ad.q[i]) / a * x_power(-sb.shift[i]);
    }
    return out;
  }
};

inline ReductionContext make_context(const FunctionField& ff, const BasisBundle& bundle, std::uint64_t seed = 0) {
  ReductionContext c;
  c.w = bundle.w;
  c.winf = bundle.winf;
  c.dx = derivation_data(ff, c.w);
  c.dt = derivation_data_t(ff, c.w, c.dx);
  c.sb = shift_basis(c.w, c.dx);
  c.nv = compute_nv(c.sb, seed);
  return c;
}

inline AdditiveDecomposition additive_decompose(const std::vector<KX>& f, const ReductionContext& ctx) {
  const std::size_t n = f.size();
  HermiteResult hr = hermite_reduce(f, ctx.dx);
  const KPoly& e = ctx.dx.e;
  AdditiveDecomposition ad;
  ad.d = hr.d;
  ad.p.resize(n);
  PolyVec u(n);
  const bool trivial_d = hr.d.degree() == 0;
  const KPoly einv = trivial_d ? KPoly() : inverse_mod(e % hr.d, hr.d);
  for (std::size_t i = 0; i < n; ++i) {
    if (!trivial_d) ad.p[i] = (hr.h_num[i] * einv) % hr.d;
    KPoly ui = exact_div(hr.h_num[i] - ad.p[i] * e, hr.d);
    u[i] = ui * KPoly::monomial(QT(1), ctx.sb.lambda + ctx.sb.shift[i]);
  }
  PolyReduction pr = poly_reduce(std::move(u), ctx.sb, ctx.nv);
  ad.q = std::move(pr.u2);
  ad.g = hr.g;
  for (std::size_t i = 0; i < n; ++i)
    if (!pr.u1[i].is_zero()) ad.g[i] += KX(pr.u1[i]) * x_power(-ctx.sb.shift[i]);
  return ad;
}

}  // namespace algtel
