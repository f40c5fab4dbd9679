#include <gtest/gtest.h>

#include "algtel/hermite.hpp"
#include "test_support.hpp"

using namespace algtel;
using namespace algtel::testing;

namespace {

const char* kRef = "y^3 + y + x + t";

struct Fixture {
  FunctionField ff;
  BasisBundle b;
  DerivationData dx, dt;
  explicit Fixture(const std::string& m)
      : ff(field(m)), b(normal_integral_basis(ff)), dx(derivation_data(ff, b.w)), dt(derivation_data_t(ff, b.w, dx)) {}
  AlgElem el(const std::vector<KX>& c) const { return b.w.element(c); }
};

bool all_zero(const std::vector<KX>& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

}  // namespace

TEST(Hermite, RefCurveFirstStep) {
  Fixture fx(kRef);
  HermiteResult r = hermite_reduce(elem(fx.ff, "y/x^2"), fx.b.w, fx.dx);
  EXPECT_EQ(fx.el(r.g), elem(fx.ff, "-y/x"));
  EXPECT_EQ(fx.el(r.h), elem(fx.ff, "(-6*y^2 + 9*(x + t)*y - 4)/(x*(27*x^2 + 54*x*t + 27*t^2 + 4))"));
  EXPECT_EQ(r.d, kpoly("x"));
}

TEST(Hermite, RefCurveAlignedDerivatives) {
  Fixture fx(kRef);
  HermiteResult r0 = hermite_reduce(elem(fx.ff, "y/x^2"), fx.b.w, fx.dx);
  HermiteResult r1 = hermite_reduce(derivative_in_basis(r0.h, fx.dt), fx.dx);
  // d/dt f = G1' + h1 with G1 = d/dt g0 + g~1.
  EXPECT_EQ(fx.ff.dt(fx.el(r0.g)) + fx.el(r1.g), elem(fx.ff, "(6*y^2 - 9*t*y + 4)/(x*(27*t^2 + 4))"));
  EXPECT_EQ(fx.el(r1.h), elem(fx.ff,
                              "6*((9*x + 27*t)*y^2 - (27*x*t + 27*t^2 - 2)*y + 6*x + 18*t)/"
                              "(x*(27*t^2 + 4)*(27*x^2 + 54*x*t + 27*t^2 + 4))"));
  HermiteResult r2 = hermite_reduce(derivative_in_basis(r1.h, fx.dt), fx.dx);
  EXPECT_EQ(fx.el(r2.h), elem(fx.ff,
                              "6*((-729*x*t - 1539*t^2 + 96)*y^2 + (1215*x*t^2 - 144*x + 1215*t^3 - 306*t)*y"
                              " - 486*x*t - 1026*t^2 + 64)/(x*(27*t^2 + 4)^2*(27*x^2 + 54*x*t + 27*t^2 + 4))"));
}

TEST(Hermite, DecompositionIdentityAndShape) {
  for (const char* m : {kRef, "y^2 - x^3", "y^3 - x^2", "y^2 - x*t - 1"}) {
    SCOPED_TRACE(m);
    Fixture fx(m);
    std::mt19937 rng(11);
    for (int i = 0; i < 8; ++i) {
      AlgElem base = random_elem(rng, fx.ff, 2);
      KX s = kx("1/((x - 1)^2*(x + t)^3)");
      AlgElem f = base * s;
      HermiteResult r = hermite_reduce(f, fx.b.w, fx.dx);
      EXPECT_EQ(fx.el(derivative_in_basis(r.g, fx.dx)) + fx.el(r.h), f);
      EXPECT_EQ(gcd(r.d, r.d.derivative()), KPoly(QT(1)));
      EXPECT_EQ(gcd(r.d, fx.dx.e), KPoly(QT(1)));
      for (const auto& c : r.g) EXPECT_TRUE(c.is_proper());
      for (std::size_t k = 0; k < r.h.size(); ++k) EXPECT_EQ(KX(r.h_num[k], r.d * fx.dx.e), r.h[k]);
    }
  }
}

// Derivatives of random proper elements reduce to zero.
TEST(Hermite, IntegrableRandomSuite) {
  Fixture fx(kRef);
  std::mt19937 rng(12);
  for (int i = 0; i < 40; ++i) {
    std::vector<KX> gc(3, KX(0));
    for (auto& c : gc) c = KX(random_kpoly(rng, 1, 1, 3), kpoly(i % 2 ? "x^2*(x - 1)" : "(x + t)^3"));
    AlgElem g = fx.el(gc);
    AlgElem f = fx.ff.dx(g);
    HermiteResult r = hermite_reduce(f, fx.b.w, fx.dx);
    EXPECT_TRUE(all_zero(r.h));
    EXPECT_EQ(fx.el(derivative_in_basis(r.g, fx.dx)), f);
  }
}

TEST(Hermite, IsIntegrableChecksInfinity) {
  Fixture fx(kRef);
  EXPECT_THROW(is_integrable(elem(fx.ff, "y/x^2"), fx.b.w, fx.b.winf, fx.dx), PreconditionError);
  AlgElem g = elem(fx.ff, "y^2/(x^2*(x - 1))");
  auto r = is_integrable(fx.ff.dx(g), fx.b.w, fx.b.winf, fx.dx);
  EXPECT_TRUE(r.integrable);
  EXPECT_EQ(fx.el(r.g), g);
  auto r2 = is_integrable(elem(fx.ff, "y/x^3"), fx.b.w, fx.b.winf, fx.dx);
  EXPECT_FALSE(r2.integrable);
}

TEST(Hermite, RationalCase) {
  Fixture fx("y - 1");
  HermiteResult r = hermite_reduce(elem(fx.ff, "1/x^3 + 1/(x - 1)"), fx.b.w, fx.dx);
  EXPECT_EQ(fx.el(r.g), elem(fx.ff, "-1/(2*x^2)"));
  EXPECT_EQ(fx.el(r.h), elem(fx.ff, "1/(x - 1)"));
  EXPECT_EQ(r.d, kpoly("x - 1"));
}
