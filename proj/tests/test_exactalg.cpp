#include <gtest/gtest.h>

#include "oracles.hpp"

using namespace stabgraph;

namespace {

constexpr std::size_t kIterations = 300;

const GaussianRational I = GaussianRational::i();

UniPoly z1poly(std::vector<GaussianRational> c) { return UniPoly(Var::z1, std::move(c)); }

}  // namespace

TEST(GaussianRational, FieldExamples) {
  EXPECT_EQ((GaussianRational(1) + I) * (GaussianRational(1) - I), GaussianRational(2));
  const GaussianRational z(make_rational(3, 5), make_rational(4, 5));
  EXPECT_EQ(conj(z), GaussianRational(make_rational(3, 5), make_rational(-4, 5)));
  EXPECT_EQ(inv(I), -I);
  EXPECT_THROW(inv(GaussianRational()), Error);
  EXPECT_THROW(GaussianRational(1) / GaussianRational(0), Error);
}

TEST(GaussianRational, ComponentsStayReduced) {
  const GaussianRational z = GaussianRational(make_rational(2, 4), make_rational(-6, 8)) * GaussianRational(2);
  EXPECT_EQ(z.re().get_str(), "1");
  EXPECT_EQ(z.im().get_str(), "-3/2");
  EXPECT_GT(sgn(z.im().get_den()), 0);
}

TEST(GaussianRational, TextForm) {
  EXPECT_EQ(GaussianRational(make_rational(3, 5), make_rational(-4, 5)).str(), "3/5-4/5*i");
  EXPECT_EQ(GaussianRational(make_rational(1, 2), make_rational(2)).str(), "1/2+2*i");
  EXPECT_EQ(I.str(), "i");
  EXPECT_EQ((-I).str(), "-i");
  EXPECT_EQ(GaussianRational(7).str(), "7");
}

TEST(GaussianRational, ParseRational) {
  EXPECT_EQ(parse_rational("3/6"), make_rational(1, 2));
  EXPECT_EQ(parse_rational("-4"), make_rational(-4));
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("x"), Error);
  EXPECT_THROW(parse_rational("1/-2"), Error);
  EXPECT_THROW(parse_rational(""), Error);
}

TEST(GaussianRationalProperty, FieldAxioms) {
  oracle::Random rnd(11);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const auto a = rnd.gaussian();
    const auto b = rnd.gaussian();
    const auto c = rnd.gaussian();
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(conj(a * b), conj(a) * conj(b));
    EXPECT_EQ(conj(conj(a)), a);
    if (!b.is_zero()) EXPECT_EQ(a / b * b, a);
    EXPECT_EQ((a * conj(a)).im(), 0);
    EXPECT_EQ((a * conj(a)).re(), a.norm());
  }
}

TEST(UniPoly, ZeroHasNoDegree) {
  const UniPoly zero(Var::x);
  EXPECT_FALSE(zero.degree().has_value());
  EXPECT_TRUE(zero.is_zero());
  EXPECT_EQ(to_string(zero), "0");
  EXPECT_THROW(zero.leading(), Error);
  EXPECT_EQ(z1poly({1, 2, 0, 0}).length(), 2u);
}

TEST(UniPoly, RingExamples) {
  const UniPoly z2m1 = z1poly({-1, 0, 1});
  EXPECT_EQ(exact_div(z2m1, z1poly({-1, 1})), z1poly({1, 1}));
  EXPECT_EQ(evaluate(z1poly({0, -1}), GaussianRational(-1)), GaussianRational(1));
  EXPECT_EQ(evaluate(z1poly({0, 2, 0, -1}), GaussianRational(1)), GaussianRational(1));
  EXPECT_THROW(exact_div(z2m1, z1poly({-2, 1})), Error);
  EXPECT_THROW(z2m1 + UniPoly(Var::x), Error);
  EXPECT_EQ(derivative(z1poly({5, 2, 0, -1})), z1poly({2, 0, -3}));
}

TEST(UniPoly, GcdExamples) {
  EXPECT_EQ(gcd(z1poly({-1, 0, 1}), z1poly({1, -2, 1})), z1poly({-1, 1}));
  EXPECT_EQ(gcd(z1poly({4, 2}), UniPoly(Var::z1)), z1poly({2, 1}));
  EXPECT_EQ(gcd(z1poly({1, 0, 1}), z1poly({-I, 1})), z1poly({-I, 1}));
  EXPECT_TRUE(gcd(UniPoly(Var::z1), UniPoly(Var::z1)).is_zero());
}

TEST(UniPoly, ConjCoeffsExamples) {
  EXPECT_EQ(conj_coeffs(z1poly({1, -I})), z1poly({1, I}));
  const UniPoly real = z1poly({3, 0, -2});
  EXPECT_EQ(conj_coeffs(real), real);
  EXPECT_EQ(conj_coeffs(UniPoly(Var::x, {1, -I})), UniPoly(Var::x, {1, I}));
}

TEST(UniPoly, FlipExamples) {
  EXPECT_EQ(flip(z1poly({0, -1}), -1), z1poly({1}));
  EXPECT_EQ(flip(z1poly({-1, 0, 1}), 1), z1poly({1, 0, -1}));
  EXPECT_EQ(flip(z1poly({0, 2, 0, -1}), -1), z1poly({1, 0, -2}));
  EXPECT_THROW(flip(UniPoly(Var::z1), 1), Error);
}

TEST(UniPoly, TextForm) {
  EXPECT_EQ(to_string(z1poly({0, 2, 0, -1})), "2*z1 - z1^3");
  EXPECT_EQ(to_string(UniPoly(Var::x, {GaussianRational(1), -I})), "1 - i*x");
  EXPECT_EQ(to_string(UniPoly(Var::x, {0, GaussianRational(1) + I})), "(1+i)*x");
}

TEST(UniPolyProperty, DegreeAndExactDivision) {
  oracle::Random rnd(21);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const UniPoly p = rnd.nonzero_poly(5);
    const UniPoly q = rnd.nonzero_poly(5);
    EXPECT_EQ(*(p * q).degree(), *p.degree() + *q.degree());
    EXPECT_EQ(exact_div(p * q, q), p);
  }
}

TEST(UniPolyProperty, GcdDividesCombinations) {
  oracle::Random rnd(22);
  for (std::size_t k = 0; k < kIterations / 3; ++k) {
    const UniPoly common = rnd.nonzero_poly(2);
    const UniPoly a = common * rnd.nonzero_poly(3);
    const UniPoly b = common * rnd.nonzero_poly(3);
    const UniPoly g = gcd(a, b);
    EXPECT_TRUE(g.leading().is_one());
    EXPECT_TRUE(divides(g, a));
    EXPECT_TRUE(divides(g, b));
    EXPECT_TRUE(divides(common, g * common.leading()));
    const UniPoly combo = a * rnd.poly(2) + b * rnd.poly(2);
    EXPECT_TRUE(divides(g, combo));
  }
}

TEST(UniPolyProperty, ConjCoeffsIsRingInvolution) {
  oracle::Random rnd(23);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const UniPoly p = rnd.poly(4);
    const UniPoly q = rnd.poly(4);
    EXPECT_EQ(conj_coeffs(conj_coeffs(p)), p);
    EXPECT_EQ(conj_coeffs(p + q), conj_coeffs(p) + conj_coeffs(q));
    EXPECT_EQ(conj_coeffs(p * q), conj_coeffs(p) * conj_coeffs(q));
    const GaussianRational x(rnd.rational());
    EXPECT_EQ(evaluate(conj_coeffs(p), x), conj(evaluate(p, x)));
  }
}

// flip(flip(p, s), s) = s^deg(p) * p once the constant term is nonzero.
TEST(UniPolyProperty, FlipTwice) {
  oracle::Random rnd(24);
  for (std::size_t k = 0; k < kIterations; ++k) {
    UniPoly p = rnd.nonzero_poly(5);
    if (p.coefficient(0).is_zero()) p += UniPoly::constant(1);
    EXPECT_EQ(flip(flip(p, 1), 1), p);
    EXPECT_EQ(flip(flip(p, -1), -1), *p.degree() % 2 ? -p : p);
    const GaussianRational x = rnd.gaussian();
    if (!x.is_zero())
      EXPECT_EQ(evaluate(flip(p, -1), x), evaluate(power(UniPoly::variable(), *p.degree()), x) * evaluate(p, -inv(x)));
  }
}

TEST(UniPolyProperty, EvaluationIsHomomorphism) {
  oracle::Random rnd(25);
  for (std::size_t k = 0; k < kIterations; ++k) {
    const UniPoly p = rnd.poly(4);
    const UniPoly q = rnd.poly(4);
    const GaussianRational x = rnd.gaussian();
    EXPECT_EQ(evaluate(p + q, x), evaluate(p, x) + evaluate(q, x));
    EXPECT_EQ(evaluate(p * q, x), evaluate(p, x) * evaluate(q, x));
  }
}

TEST(UniPolyProperty, SquarefreePartHasSimpleRoots) {
  oracle::Random rnd(26);
  for (std::size_t k = 0; k < 60; ++k) {
    const UniPoly a = z1poly({rnd.gaussian(3), 1});
    const UniPoly b = z1poly({rnd.gaussian(3), 1});
    const UniPoly p = a * a * a * b;
    const UniPoly s = squarefree_part(p);
    EXPECT_TRUE(divides(s, p));
    EXPECT_TRUE(gcd(s, derivative(s)).is_constant());
    EXPECT_EQ(*s.degree(), a == b ? 1u : 2u);
  }
}
