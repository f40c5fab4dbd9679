#include <gtest/gtest.h>

#include <random>

#include "algtel/tower.hpp"

using namespace algtel;

namespace {

QPoly qx() { return QPoly::x(); }
QT tt() { return t_var(); }
KPoly kx() { return KPoly::x(); }

QPoly random_qpoly(std::mt19937& rng, int deg) {
  std::uniform_int_distribution<int> d(-5, 5);
  std::vector<Q> c;
  for (int i = 0; i <= deg; ++i) c.emplace_back(d(rng));
  return QPoly(std::move(c));
}

}  // namespace

TEST(BigRational, CanonicalForm) {
  Q a(mpz_class(6), mpz_class(-4));
  EXPECT_EQ(a.numerator(), -3);
  EXPECT_EQ(a.denominator(), 2);
  EXPECT_EQ(Q(0).denominator(), 1);
  EXPECT_EQ(Q::parse("-6/4"), a * Q(5, 3) * Q(3, 5));
  EXPECT_THROW(Q(0).inverse(), std::domain_error);
  EXPECT_THROW(Q::parse("1/0"), std::domain_error);
  EXPECT_LT(Q(-1), Q(1, 2));
}

TEST(ExtGcd, DivisorCase) {
  auto [g, s, t] = ext_gcd(qx() * qx() - QPoly(1), qx() - QPoly(1));
  EXPECT_EQ(g, qx() - QPoly(1));
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(t, QPoly(1));
}

TEST(ExtGcd, EqualInputs) {
  auto [g, s, t] = ext_gcd(qx(), qx());
  EXPECT_EQ(g, qx());
  EXPECT_TRUE(s.is_zero());
  EXPECT_EQ(t, QPoly(1));
}

TEST(ExtGcd, BezoutIdentity) {
  QPoly p = pow(qx(), 3) + qx() + QPoly(1);
  QPoly q = qx() * qx() + QPoly(1);
  auto [g, s, t] = ext_gcd(p, q);
  EXPECT_EQ(g, QPoly(1));
  EXPECT_EQ(s * p + t * q, QPoly(1));
  EXPECT_LT(s.degree(), q.degree());
}

TEST(ExtGcd, BothZeroThrows) { EXPECT_THROW(ext_gcd(QPoly(), QPoly()), DomainError); }

TEST(ExtGcd, RandomIdentity) {
  std::mt19937 rng(7);
  for (int it = 0; it < 50; ++it) {
    QPoly p = random_qpoly(rng, 1 + it % 5), q = random_qpoly(rng, it % 4);
    if (p.is_zero() && q.is_zero()) continue;
    auto [g, s, t] = ext_gcd(p, q);
    EXPECT_EQ(s * p + t * q, g);
    EXPECT_TRUE(g.is_zero() || g.lc() == Q(1));
    if (!p.is_zero()) EXPECT_TRUE(divides(g, p));
    if (!q.is_zero()) EXPECT_TRUE(divides(g, q));
  }
}

TEST(Squarefree, ExampleDenominator) {
  KPoly e = KPoly({QT(27) * tt() * tt() + QT(4), QT(54) * tt(), QT(27)});
  auto sf = squarefree_factorization(kx() * kx() * e);
  ASSERT_EQ(sf.size(), 2u);
  EXPECT_EQ(sf[0].factor, e.monic());
  EXPECT_EQ(sf[0].multiplicity, 1);
  EXPECT_EQ(sf[1].factor, kx());
  EXPECT_EQ(sf[1].multiplicity, 2);
}

TEST(Squarefree, Trivial) {
  auto sf = squarefree_factorization(qx());
  ASSERT_EQ(sf.size(), 1u);
  EXPECT_EQ(sf[0].factor, qx());
  EXPECT_EQ(sf[0].multiplicity, 1);
  EXPECT_THROW(squarefree_factorization(QPoly()), DomainError);
}

TEST(Squarefree, ConstructedInput) {
  QPoly a = qx() - QPoly(1), b = qx() + QPoly(2);
  auto sf = squarefree_factorization(pow(a, 3) * pow(b, 2));
  ASSERT_EQ(sf.size(), 2u);
  EXPECT_EQ(sf[0].factor, b);
  EXPECT_EQ(sf[0].multiplicity, 2);
  EXPECT_EQ(sf[1].factor, a);
  EXPECT_EQ(sf[1].multiplicity, 3);
}

TEST(Squarefree, ReconstructsRandomInputs) {
  std::mt19937 rng(11);
  for (int it = 0; it < 40; ++it) {
    QPoly p = random_qpoly(rng, 1 + it % 3) * pow(random_qpoly(rng, 1 + it % 2), 2) *
              pow(random_qpoly(rng, 1), 1 + it % 3);
    if (p.is_zero()) continue;
    auto sf = squarefree_factorization(p);
    QPoly prod(p.lc());
    for (const auto& f : sf) {
      EXPECT_EQ(gcd(f.factor, f.factor.derivative()), QPoly(1));
      prod *= pow(f.factor, f.multiplicity);
    }
    EXPECT_EQ(prod, p);
    for (std::size_t i = 0; i < sf.size(); ++i)
      for (std::size_t j = i + 1; j < sf.size(); ++j) EXPECT_EQ(gcd(sf[i].factor, sf[j].factor), QPoly(1));
  }
}

TEST(Resultant, Examples) {
  // res_y(y^2 - x, 2y): Sylvester determinant det[[1,0,-x],[2,0,0],[0,2,0]] = -4x.
  YPoly p({-x_var(), KX(0), KX(1)});
  EXPECT_EQ(resultant(p, p.derivative()), KX(-4) * x_var());
  YPoly q({KX(-1), KX(1)});
  EXPECT_TRUE(resultant(q, q).is_zero());
  KX xt = x_var() + KX(tt());
  YPoly m({xt, KX(1), KX(0), KX(1)});
  EXPECT_EQ(resultant(m, m.derivative()), KX(27) * xt * xt + KX(4));
}

TEST(Resultant, MatchesSylvesterDeterminant) {
  std::mt19937 rng(3);
  for (int it = 0; it < 30; ++it) {
    QPoly p = random_qpoly(rng, 1 + it % 4), q = random_qpoly(rng, 1 + it % 3);
    if (p.degree() < 1 || q.degree() < 1) continue;
    const int dp = p.degree(), dq = q.degree(), n = dp + dq;
    Matrix<Q> s(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int r = 0; r < dq; ++r)
      for (int k = 0; k <= dp; ++k) s(r, r + k) = p.coeff(dp - k);
    for (int r = 0; r < dp; ++r)
      for (int k = 0; k <= dq; ++k) s(dq + r, r + k) = q.coeff(dq - k);
    EXPECT_EQ(resultant(p, q), determinant(s));
  }
}

TEST(Rref, Examples) {
  auto id = Matrix<Q>::identity(3);
  auto r = rref(id);
  EXPECT_EQ(r.reduced, id);
  EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(r.rank, 3u);
  Matrix<Q> z(2, 3);
  EXPECT_EQ(rref(z).reduced, z);
  EXPECT_EQ(rref(z).rank, 0u);
  auto m = Matrix<Q>::from_rows({{1, 2}, {2, 4}});
  auto rm = rref(m);
  EXPECT_EQ(rm.reduced, Matrix<Q>::from_rows({{1, 2}, {0, 0}}));
  EXPECT_EQ(rm.rank, 1u);
}

TEST(Rref, IdempotentAndRankNullity) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int it = 0; it < 30; ++it) {
    std::size_t r = 1 + it % 4, c = 1 + (it / 4) % 5;
    Matrix<Q> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = Q(d(rng) * (it % 3 == 0 && j == 1 ? 0 : 1));
    auto red = rref(m);
    EXPECT_EQ(rref(red.reduced).reduced, red.reduced);
    auto ns = nullspace(m);
    EXPECT_EQ(red.rank + ns.size(), c);
    for (const auto& v : ns) {
      for (std::size_t i = 0; i < r; ++i) {
        Q s(0);
        for (std::size_t j = 0; j < c; ++j) s += m(i, j) * v[j];
        EXPECT_TRUE(s.is_zero());
      }
    }
  }
}

TEST(Nullspace, Examples) {
  EXPECT_TRUE(nullspace(Matrix<Q>::identity(3)).empty());
  auto ns = nullspace(Matrix<Q>::from_rows({{1, 1}}));
  ASSERT_EQ(ns.size(), 1u);
  EXPECT_EQ(ns[0][0], -ns[0][1]);
}

TEST(Charpoly, Examples) {
  QPoly lam = QPoly::x();
  EXPECT_EQ(charpoly(Matrix<Q>::identity(2)), pow(lam - QPoly(1), 2));
  auto dg = Matrix<Q>::from_rows({{3, 0}, {0, -7}});
  EXPECT_EQ(charpoly(dg), (lam - QPoly(3)) * (lam + QPoly(7)));
  // [[t, 1], [2, t^2]]: det(lam I - m) = (lam - t)(lam - t^2) - 2.
  Poly<QT> l = Poly<QT>::x();
  auto m = Matrix<QT>::from_rows({{tt(), QT(1)}, {QT(2), tt() * tt()}});
  EXPECT_EQ(charpoly(m), (l - Poly<QT>(tt())) * (l - Poly<QT>(tt() * tt())) - Poly<QT>(QT(2)));
  EXPECT_THROW(charpoly(Matrix<Q>(2, 3)), DomainError);
}

TEST(Charpoly, MatchesCofactorDeterminant) {
  std::mt19937 rng(9);
  std::uniform_int_distribution<int> d(-4, 4);
  for (int it = 0; it < 20; ++it) {
    std::size_t n = 1 + it % 4;
    Matrix<Q> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = Q(d(rng));
    QPoly cp = charpoly(m);
    EXPECT_EQ(cp.degree(), static_cast<int>(n));
    for (int s = -3; s <= 3; ++s) {
      Matrix<Q> a = Matrix<Q>::identity(n) * Q(s) - m;
      EXPECT_EQ(cp(Q(s)), determinant(a));
    }
  }
}

TEST(Frac, CanonicalAfterOperations) {
  std::mt19937 rng(13);
  for (int it = 0; it < 40; ++it) {
    QPoly a = random_qpoly(rng, 2), b = random_qpoly(rng, 2), c = random_qpoly(rng, 1);
    if (b.is_zero() || c.is_zero()) continue;
    QT r(a * c, b * c);
    QT s = r + QT(c, b) - QT(c, b);
    EXPECT_EQ(s, r);
    EXPECT_EQ(gcd(r.num(), r.den()), QPoly(1));
    EXPECT_EQ(r.den().lc(), Q(1));
    if (!r.is_zero()) EXPECT_EQ(r * r.inverse(), QT(1));
  }
  EXPECT_THROW(QT(QPoly(1), QPoly()), DomainError);
}

TEST(Frac, DerivativesAlongTower) {
  KX r = KX(KPoly({QT(tt()), QT(1)}), KPoly({QT(0), QT(0), QT(1)}));  // (x + t)/x^2
  EXPECT_EQ(d_dt(r), KX(KPoly(QT(1)), KPoly({QT(0), QT(0), QT(1)})));
  EXPECT_EQ(d_dx(KX(tt())), KX(0));
  EXPECT_EQ(d_dt(KX(tt())), KX(1));
  EXPECT_EQ(d_dt(x_var()), KX(0));
}

TEST(PrimitiveScale, NormalizesOverZt) {
  std::vector<QT> v = {QT(Q(3, 2)) * tt(), QT(Q(-9, 4))};
  QT s = primitive_scale(v, v[0]);
  EXPECT_EQ(v[0] * s, QT(2) * tt());
  EXPECT_EQ(v[1] * s, QT(-3));
}

TEST(ModInverse, AgreesWithEuclidOverQt) {
  std::mt19937 rng(31);
  auto random_kpoly = [&](int deg) {
    std::vector<QT> c;
    for (int i = 0; i <= deg; ++i) c.push_back(QT(random_qpoly(rng, 2), random_qpoly(rng, 0) + QPoly(Q(7))));
    return KPoly(std::move(c));
  };
  int units = 0;
  for (int it = 0; it < 40; ++it) {
    KPoly m = random_kpoly(1 + it % 5);
    KPoly a = random_kpoly(it % 7);
    if (it % 5 == 0) a = a * m + KPoly(QT(1));
    if (m.degree() < 1) continue;
    auto fast = GcdAlgorithm<QT>::inverse_mod(a, m);
    auto slow = ext_gcd(a % m, m);
    EXPECT_EQ(fast.unit, slow.g.degree() == 0);
    if (fast.unit) {
      ++units;
      EXPECT_EQ(fast.value, slow.s % m);
      EXPECT_TRUE(((fast.value * a - KPoly(QT(1))) % m).is_zero());
    } else {
      EXPECT_EQ(fast.value, slow.g);
    }
  }
  EXPECT_GT(units, 20);
  KPoly m({QT(Q(-1)), QT(0), QT(1)});  // x^2 - 1
  auto split = GcdAlgorithm<QT>::inverse_mod(KPoly({QT(Q(1)), QT(Q(1))}) * KPoly({QT(Q(2)), QT(Q(1))}), m);
  EXPECT_FALSE(split.unit);
  EXPECT_EQ(split.value, KPoly({QT(Q(1)), QT(Q(1))}));
}
