#include <gtest/gtest.h>

#include "algtel/telescoping.hpp"
#include "test_support.hpp"

using namespace algtel;
using namespace algtel::testing;

namespace {

const char* kRef = "y^3 + y + x + t";

Telescoper op(const std::vector<std::string>& coeffs) {
  Telescoper t;
  for (const auto& c : coeffs) t.coeffs.push_back(qt(c));
  return t;
}

}  // namespace

TEST(Telescoper, Printing) {
  EXPECT_EQ(op({"24", "81*t", "27*t^2 + 4"}).to_string(), "(27*t^2 + 4)*Dt^2 + 81*t*Dt + 24");
  EXPECT_EQ(op({"1", "2*t"}).to_string(), "2*t*Dt + 1");
  EXPECT_EQ(op({"-1", "0", "1"}).to_string(), "Dt^2 - 1");
  EXPECT_EQ(op({"1"}).to_string(), "1");
}

TEST(Telescoping, RefCurveBothApproaches) {
  FunctionField ff = field(kRef);
  AlgElem f = elem(ff, "y/x^2");
  const Telescoper expected = op({"24", "81*t", "27*t^2 + 4"});
  TelescopingOptions opt;
  opt.certificate = true;
  for (Approach a : {Approach::PolyRed, Approach::Hermite}) {
    TelescopingResult r = telescope(ff, f, a, opt);
    EXPECT_EQ(r.op, expected);
    ASSERT_TRUE(r.certificate.has_value());
    EXPECT_TRUE(verify_with_certificate(ff, f, r.op, *r.certificate));
  }
  TelescopingResult h = telescope_hermite(ff, f, opt);
  ASSERT_TRUE(h.regular_point.has_value());
  EXPECT_EQ(*h.regular_point, Q(1));
  EXPECT_TRUE(verify_telescoper(ff, f, expected));
  EXPECT_FALSE(verify_telescoper(ff, f, op({"0", "1"})));
  EXPECT_LE(expected.order(), order_bound(ff, f));
}

TEST(Telescoping, ExplicitRegularPoint) {
  FunctionField ff = field(kRef);
  AlgElem f = elem(ff, "y/x^2");
  TelescopingOptions opt;
  opt.regular_point = Q(-1);
  EXPECT_EQ(telescope_hermite(ff, f, opt).op, op({"24", "81*t", "27*t^2 + 4"}));
  opt.regular_point = Q(0);
  EXPECT_THROW(telescope_hermite(ff, f, opt), NotRegularError);
}

TEST(Telescoping, RationalIntegrand) {
  FunctionField ff = field("y - 1");
  AlgElem f = elem(ff, "1/(x^2 + t)");
  TelescopingOptions opt;
  opt.certificate = true;
  for (Approach a : {Approach::PolyRed, Approach::Hermite}) {
    TelescopingResult r = telescope(ff, f, a, opt);
    EXPECT_EQ(r.op, op({"1", "2*t"}));
    EXPECT_TRUE(verify_with_certificate(ff, f, r.op, *r.certificate));
  }
}

TEST(Telescoping, IntegrableHasOrderZero) {
  FunctionField ff = field("y^2 - x*t - 1");
  AlgElem f = elem(ff, "1/y");
  TelescopingOptions opt;
  opt.certificate = true;
  for (Approach a : {Approach::PolyRed, Approach::Hermite}) {
    TelescopingResult r = telescope(ff, f, a, opt);
    EXPECT_EQ(r.op, op({"1"}));
    EXPECT_EQ(*r.certificate, elem(ff, "2*y/t"));
  }
}

TEST(Telescoping, ApproachesAgree) {
  struct Case {
    const char* m;
    const char* f;
  };
  const std::vector<Case> cases = {
      {"y^2 - x^2 - t", "1/y"},
      {"y^2 - x*(x - t)", "x/y"},
      {"y^2 - x^3 - t", "1/(x*y)"},
      {"y^3 - x*t - 1", "y/(x + 1)"},
      {"(y - t*x^2)^2 - x^3 - 1", "y/x^2"},
  };
  for (const auto& c : cases) {
    SCOPED_TRACE(std::string(c.m) + " | " + c.f);
    FunctionField ff = field(c.m);
    AlgElem f = elem(ff, c.f);
    TelescopingOptions opt;
    opt.certificate = true;
    TelescopingResult p = telescope_polyred(ff, f, opt);
    TelescopingResult h = telescope_hermite(ff, f, opt);
    EXPECT_EQ(p.op, h.op);
    EXPECT_TRUE(verify_with_certificate(ff, f, p.op, *p.certificate));
    EXPECT_TRUE(verify_with_certificate(ff, f, h.op, *h.certificate));
    EXPECT_LE(p.op.order(), order_bound(ff, f));
  }
}

TEST(Telescoping, OrderLimit) {
  FunctionField ff = field(kRef);
  TelescopingOptions opt;
  opt.max_order = 1;
  EXPECT_THROW(telescope_polyred(ff, elem(ff, "y/x^2"), opt), OrderLimitError);
}
