#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algtel/expr.hpp"
#include "algtel/polyred.hpp"

namespace algtel {

// L = sum_k p_k Dt^k with p_k in Z[t], content 1, p_r with positive leading integer.
struct Telescoper {
  std::vector<QT> coeffs;

  int order() const { return static_cast<int>(coeffs.size()) - 1; }

  std::string to_string() const {
    std::vector<std::string> terms;
    for (int k = order(); k >= 0; --k) {
      const QT& c = coeffs[static_cast<std::size_t>(k)];
      if (c.is_zero()) continue;
      const QPoly& p = c.num();
      if (k == 0) {
        terms.push_back(algtel::to_string(p));
        continue;
      }
      std::size_t nonzero = 0;
      int deg = 0;
      for (int i = 0; i <= p.degree(); ++i)
        if (!p.coeff(i).is_zero()) ++nonzero, deg = i;
      if (nonzero == 1)
        terms.push_back(detail::monomial_string(p.coeff(deg), {{"t", deg}, {"Dt", k}}));
      else
        terms.push_back("(" + algtel::to_string(p) + ")*Dt" + (k > 1 ? "^" + std::to_string(k) : ""));
    }
    return detail::join_terms(terms);
  }

  friend bool operator==(const Telescoper&, const Telescoper&) = default;
};

// Scalar s with s * c normalized as a telescoper.
inline QT telescoper_scale(const std::vector<QT>& c) { return primitive_scale(c, c.back()); }

enum class Approach { Hermite, PolyRed };

struct TraceStep {
  int order = 0;
  std::size_t rank = 0;
  std::size_t dimension = 0;  // length of the coordinate vectors
};

struct TelescopingOptions {
  int max_order = 30;
  bool certificate = false;
  std::uint64_t seed = 0;
  std::optional<Q> regular_point;
  std::optional<Matrix<KX>> basis;  // user basis; verified before use
  bool basis_require_normal = false;
};

struct TelescopingResult {
  Telescoper op;
  std::optional<AlgElem> certificate;  // L(f) = d/dx certificate, original coordinates
  std::vector<AlgElem> basis;          // integral basis of the field the reduction ran in
  std::optional<Q> regular_point;      // point moved to infinity (Hermite approach)
  std::vector<TraceStep> trace;
};

class OrderLimitError : public DomainError {
 public:
  using DomainError::DomainError;
};

namespace detail {

// Incremental search for the first K-linear dependency among remainder vectors.
// Each vector is reduced against a semi-echelon basis whose rows record their
// combination of the inputs, so a zero residue yields the relation directly.
class RelationFinder {
 public:
  std::optional<std::vector<QT>> add(std::vector<QT> v) {
    const std::size_t k = count_++;
    std::vector<QT> comb(count_, QT(0));
    comb[k] = QT(1);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const QT c = v[pivots_[r]];
      if (c.is_zero()) continue;
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!rows_[r][i].is_zero()) v[i] -= c * rows_[r][i];
      for (std::size_t i = 0; i < combs_[r].size(); ++i)
        if (!combs_[r][i].is_zero()) comb[i] -= c * combs_[r][i];
    }
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return comb;
    const QT inv = QT(1) / v[p];
    for (auto& x : v) x *= inv;
    for (auto& x : comb) x *= inv;
    rows_.push_back(std::move(v));
    combs_.push_back(std::move(comb));
    pivots_.push_back(p);
    return std::nullopt;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::vector<QT>> rows_, combs_;
  std::vector<std::size_t> pivots_;
  std::size_t count_ = 0;
};

// Remainders of successive derivatives as coefficient vectors over one common
// denominator and coefficient window. When a new remainder does not fit, both
// grow and the earlier vectors are re-entered; their independence is intrinsic.
class RemainderSpace {
 public:
  std::optional<std::vector<QT>> add(std::vector<KX> rem, std::vector<QT> extra, TraceStep& step) {
    const KPoly den = lcm(den_, common_denominator(rem));
    int window = window_;
    for (const auto& c : rem) window = std::max(window, as_poly(c * KX(den), "RemainderSpace").degree());
    rems_.push_back(std::move(rem));
    extras_.push_back(std::move(extra));
    if (den != den_ || window != window_) {
      den_ = den;
      window_ = window;
      finder_ = RelationFinder();
      for (std::size_t k = 0; k + 1 < rems_.size(); ++k)
        if (finder_.add(vectorize(k))) throw DomainError("telescoping: dependency without the newest derivative");
    }
    std::vector<QT> v = vectorize(rems_.size() - 1);
    step.dimension = v.size();
    auto rel = finder_.add(std::move(v));
    step.rank = finder_.rank();
    return rel;
  }

 private:
  std::vector<QT> vectorize(std::size_t k) const {
    std::vector<QT> v;
    for (const auto& c : rems_[k]) {
      KPoly p = as_poly(c * KX(den_), "RemainderSpace");
      for (int i = 0; i <= window_; ++i) v.push_back(p.coeff(i));
    }
    v.insert(v.end(), extras_[k].begin(), extras_[k].end());
    return v;
  }

  KPoly den_{QT(1)};
  int window_ = 0;
  std::vector<std::vector<KX>> rems_;
  std::vector<std::vector<QT>> extras_;
  RelationFinder finder_;
};

inline void finish(TelescopingResult& res, const std::vector<QT>& c, const std::optional<std::vector<KX>>& cert_w,
                   const BasisData& w) {
  QT s = telescoper_scale(c);
  for (const auto& v : c) res.op.coeffs.push_back(v * s);
  if (cert_w) {
    std::vector<KX> g = *cert_w;
    for (auto& v : g) v *= KX(s);
    res.certificate = w.element(g);
  }
  for (const auto& om : w.omega) res.basis.push_back(om);
}

inline std::vector<KX> combine(const std::vector<std::vector<KX>>& gs, const std::vector<QT>& c) {
  std::vector<KX> out(gs[0].size(), KX(0));
  for (std::size_t k = 0; k < gs.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i)
      if (!c[k].is_zero()) out[i] += gs[k][i] * KX(c[k]);
  return out;
}

}  // namespace detail

inline BasisBundle choose_basis(const FunctionField& ff, const TelescopingOptions& opt) {
  if (opt.basis) return verified_basis(ff, *opt.basis, opt.basis_require_normal);
  return normal_integral_basis(ff);
}

// n deg(d*) + dim N_V, where d* also covers the pole at x = 0 that the shift
// x^(-tau) can introduce.
inline int order_bound(const ReductionContext& ctx, const AdditiveDecomposition& ad0) {
  KPoly dstar = ad0.d;
  const bool shifted = !ctx.sb.identity || ctx.sb.lambda > 0;
  if (shifted && !ctx.dx.e.constant_term().is_zero()) dstar = lcm(dstar, KPoly::x());
  return static_cast<int>(ctx.w.size()) * std::max(dstar.degree(), 0) + static_cast<int>(ctx.nv.dim());
}

inline int order_bound(const FunctionField& ff, const AlgElem& f, const TelescopingOptions& opt = {}) {
  ReductionContext ctx = make_context(ff, choose_basis(ff, opt), opt.seed);
  return order_bound(ctx, additive_decompose(ctx.w.coords(f), ctx));
}

// Telescoper via additive decompositions of d/dt remainders.
inline TelescopingResult telescope_polyred(const FunctionField& ff, const AlgElem& f,
                                           const TelescopingOptions& opt = {}) {
  ReductionContext ctx = make_context(ff, choose_basis(ff, opt), opt.seed);
  TelescopingResult res;
  AdditiveDecomposition ad = additive_decompose(ctx.w.coords(f), ctx);
  std::vector<std::vector<KX>> gs{ad.g};
  detail::RemainderSpace space;
  for (int k = 0;; ++k) {
    std::vector<KX> p;
    for (const auto& c : ad.p) p.push_back(KX(c, ad.d));
    TraceStep step{k, 0, 0};
    auto rel = space.add(std::move(p), nv_coordinates(ad.q, ctx.nv), step);
    res.trace.push_back(step);
    if (rel) {
      std::optional<std::vector<KX>> cert;
      if (opt.certificate) cert = detail::combine(gs, *rel);
      detail::finish(res, *rel, cert, ctx.w);
      return res;
    }
    if (k >= opt.max_order) throw OrderLimitError("no telescoper of order <= " + std::to_string(opt.max_order));
    ad = additive_decompose(derivative_in_basis(ctx.remainder(ad), ctx.dt), ctx);
    if (opt.certificate) {
      std::vector<KX> g = derivative_in_basis(gs.back(), ctx.dt);
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += ad.g[i];
      gs.push_back(std::move(g));
    }
  }
}

namespace detail {

// Splits W-coordinates into proper rational parts and polynomial parts.
inline std::pair<std::vector<KX>, std::vector<KX>> split_proper(const std::vector<KX>& c) {
  std::vector<KX> proper, poly;
  for (const auto& r : c) {
    auto [q, rem] = divmod(r.num(), r.den());
    proper.push_back(KX(rem, r.den()));
    poly.push_back(KX(q));
  }
  return {proper, poly};
}

}  // namespace detail

// Telescoper via Hermite reduction; moves a regular point to infinity when f
// lacks a double root there. The integral part G_i of d^i f / dt^i is kept
// proper so that h_i is the Hermite remainder of d^i f / dt^i itself.
inline TelescopingResult telescope_hermite(const FunctionField& ff, const AlgElem& f,
                                           const TelescopingOptions& opt = {}) {
  std::optional<SubstitutedProblem> sub;
  BasisBundle bundle;
  if (!opt.regular_point) {
    bundle = choose_basis(ff, opt);
    if (!has_double_root_at_infinity(f, bundle.winf))
      sub = move_regular_point_to_infinity(ff.minpoly(), f, find_regular_point(ff.minpoly(), f));
  } else {
    sub = move_regular_point_to_infinity(ff.minpoly(), f, *opt.regular_point);
  }
  const FunctionField work = sub ? FunctionField(sub->m) : ff;
  const AlgElem g0 = sub ? sub->f : f;
  if (sub) bundle = normal_integral_basis(work);
  if (!has_double_root_at_infinity(g0, bundle.winf))
    throw PreconditionError("telescope_hermite: integrand has no double root at infinity after substitution");
  const DerivationData dx = derivation_data(work, bundle.w);
  const DerivationData dt = derivation_data_t(work, bundle.w, dx);

  TelescopingResult res;
  if (sub) res.regular_point = sub->record.a;
  HermiteResult r0 = hermite_reduce(bundle.w.coords(g0), dx);
  std::vector<KX> h = r0.h;
  std::vector<std::vector<KX>> gs{r0.g};
  detail::RemainderSpace space;
  for (int k = 0;; ++k) {
    TraceStep step{k, 0, 0};
    auto rel = space.add(h, {}, step);
    res.trace.push_back(step);
    if (rel) {
      std::optional<std::vector<KX>> cert;
      if (opt.certificate) cert = detail::combine(gs, *rel);
      detail::finish(res, *rel, cert, bundle.w);
      if (sub && res.certificate) res.certificate = substitute_back(*res.certificate, sub->record);
      return res;
    }
    if (k >= opt.max_order) throw OrderLimitError("no telescoper of order <= " + std::to_string(opt.max_order));
    auto [proper, poly] = detail::split_proper(derivative_in_basis(gs.back(), dt));
    std::vector<KX> next = derivative_in_basis(h, dt);
    std::vector<KX> dpoly = derivative_in_basis(poly, dx);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += dpoly[i];
    HermiteResult r = hermite_reduce(next, dx);
    h = r.h;
    for (std::size_t i = 0; i < proper.size(); ++i) proper[i] += r.g[i];
    gs.push_back(std::move(proper));
  }
}

inline TelescopingResult telescope(const FunctionField& ff, const AlgElem& f, Approach approach,
                                   const TelescopingOptions& opt = {}) {
  return approach == Approach::Hermite ? telescope_hermite(ff, f, opt) : telescope_polyred(ff, f, opt);
}

// L(f) = sum_k p_k d^k f / dt^k.
inline AlgElem apply_telescoper(const FunctionField& ff, const Telescoper& op, const AlgElem& f) {
  AlgElem acc = ff.zero();
  AlgElem d = f;
  for (int k = 0; k <= op.order(); ++k) {
    if (k > 0) d = ff.dt(d);
    const QT& c = op.coeffs[static_cast<std::size_t>(k)];
    if (!c.is_zero()) acc += d * KX(c);
  }
  return acc;
}

// Checks L(f) = g' directly.
inline bool verify_with_certificate(const FunctionField& ff, const AlgElem& f, const Telescoper& op,
                                    const AlgElem& g) {
  return apply_telescoper(ff, op, f) == ff.dx(g);
}

// Checks that L(f) has a zero additive-decomposition remainder.
inline bool verify_telescoper(const FunctionField& ff, const AlgElem& f, const Telescoper& op,
                              const TelescopingOptions& opt = {}) {
  ReductionContext ctx = make_context(ff, choose_basis(ff, opt), opt.seed);
  return additive_decompose(ctx.w.coords(apply_telescoper(ff, op, f)), ctx).remainder_is_zero();
}

}  // namespace algtel
