#include <gtest/gtest.h>

#include <random>

#include "dsmodp/gfpoly.hpp"

using namespace dsmodp;

namespace {

FpPoly P(Coeff p, std::initializer_list<std::int64_t> c) { return FpPoly::from_ints(p, c); }

FpPoly random_poly(Coeff p, int max_deg, std::mt19937& rng) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<Coeff> coef(0, p - 1);
  std::vector<Coeff> v(static_cast<std::size_t>(deg(rng)) + 1);
  for (auto& c : v) c = coef(rng);
  return FpPoly(p, v);
}

// Naive product straight from the definition.
FpPoly naive_mul(const FpPoly& a, const FpPoly& b) {
  const Coeff p = a.p();
  std::vector<std::int64_t> acc(a.coeffs().size() + b.coeffs().size() + 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) acc[i + j] = (acc[i + j] + std::int64_t(a[i]) * b[j]) % p;
  std::vector<Coeff> v(acc.begin(), acc.end());
  return FpPoly(p, v);
}

}  // namespace

TEST(PrimeModulus, RejectsComposites) {
  EXPECT_NO_THROW(PrimeModulus(7));
  EXPECT_NO_THROW(PrimeModulus(4294967291ull));
  for (std::uint64_t n : {0ull, 1ull, 4ull, 9ull, 561ull, 4294967297ull}) {
    try {
      PrimeModulus m(n);
      FAIL() << n;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotPrime);
    }
  }
}

TEST(Fp, SqrtMatchesBruteForce) {
  for (Coeff p : {5u, 7u, 11u, 13u, 17u, 97u}) {
    for (Coeff a = 0; a < p; ++a) {
      bool sq = false;
      for (Coeff x = 0; x < p; ++x) sq |= Fp::mul(x, x, p) == a;
      auto r = Fp::sqrt(a, p);
      ASSERT_EQ(r.has_value(), sq) << p << " " << a;
      if (r) EXPECT_EQ(Fp::mul(*r, *r, p), a);
    }
  }
}

TEST(PolyMul, Examples) {
  EXPECT_EQ(P(5, {1, 1}) * P(5, {4, 1}), P(5, {4, 0, 1}));
  EXPECT_TRUE((P(5, {-1, 0, 1}) * FpPoly::zero(5)).is_zero());
  FpPoly tm1 = P(7, {-1, 1});
  EXPECT_EQ(tm1 * tm1 * tm1, P(7, {6, 3, 4, 1}));
  EXPECT_EQ(to_string(tm1 * tm1 * tm1), "t^3+4*t^2+3*t+6");
  EXPECT_EQ(FpPoly::zero(5).degree(), kNegInf);
}

TEST(PolyMul, MatchesNaive) {
  std::mt19937 rng(1);
  for (Coeff p : {5u, 7u, 13u, 2147483647u}) {
    for (int i = 0; i < 200; ++i) {
      FpPoly a = random_poly(p, 20, rng), b = random_poly(p, 20, rng);
      EXPECT_EQ(a * b, naive_mul(a, b));
    }
  }
}

TEST(PolyMul, ModulusMismatch) {
  try {
    (void)(P(5, {1, 1}) * P(7, {1, 1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ModulusMismatch);
  }
}

TEST(PolyDivrem, Examples) {
  FpPoly a = FpPoly::monomial(5, 1, 9) * P(5, {-1, 1}) * P(5, {-1, 1});
  auto [q, r] = poly_divrem(a, FpPoly::monomial(5, 1, 3));
  EXPECT_EQ(q, FpPoly::monomial(5, 1, 6) * P(5, {-1, 1}) * P(5, {-1, 1}));
  EXPECT_TRUE(r.is_zero());

  auto [q2, r2] = poly_divrem(P(7, {1, 0, 1}), P(7, {1, 1}));
  EXPECT_EQ(q2, P(7, {6, 1}));
  EXPECT_EQ(r2, P(7, {2}));
  EXPECT_EQ(q2 * P(7, {1, 1}) + r2, P(7, {1, 0, 1}));

  auto [q3, r3] = poly_divrem(P(5, {1}), FpPoly::t(5));
  EXPECT_TRUE(q3.is_zero());
  EXPECT_EQ(r3, P(5, {1}));

  EXPECT_THROW(poly_divrem(P(5, {1}), FpPoly::zero(5)), Error);
}

TEST(PolyDivrem, Identity) {
  std::mt19937 rng(2);
  for (Coeff p : {5u, 7u, 11u}) {
    for (int i = 0; i < 200; ++i) {
      FpPoly a = random_poly(p, 25, rng), b = random_poly(p, 10, rng);
      if (b.is_zero()) continue;
      auto [q, r] = poly_divrem(a, b);
      EXPECT_EQ(q * b + r, a);
      EXPECT_LT(r.degree(), b.degree());
    }
  }
}

TEST(PolyGcd, Examples) {
  FpPoly t = FpPoly::t(7), tm1 = P(7, {-1, 1});
  FpPoly a = poly_pow(t, 9) * tm1 * tm1, b = poly_pow(t, 3) * tm1;
  EXPECT_EQ(poly_gcd(a, b), poly_pow(t, 3) * tm1);
  EXPECT_TRUE(poly_gcd(P(5, {-1, 0, 1}), P(5, {1, 0, 1})).is_one());
  EXPECT_EQ(poly_gcd(P(5, {2, 4}), FpPoly::zero(5)), P(5, {3, 1}));
  try {
    poly_gcd(FpPoly::zero(5), FpPoly::zero(5));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ZeroInput);
  }
}

TEST(PolyCompose, Examples) {
  EXPECT_EQ(poly_compose(FpPoly::monomial(5, 1, 2), P(5, {1, 1})), P(5, {1, 2, 1}));
  FpPoly f = P(5, {-1, 0, 1});
  EXPECT_EQ(poly_compose(f, FpPoly::monomial(5, 1, 5)), poly_pow(f, 5));
  EXPECT_EQ(poly_compose(f, FpPoly::monomial(5, 1, 5)), FpPoly::monomial(5, 1, 10) - FpPoly::one(5));
  EXPECT_EQ(poly_compose(f, FpPoly::t(5)), f);
}

TEST(PolyCompose, FrobeniusIdentity) {
  std::mt19937 rng(3);
  for (Coeff p : {5u, 7u, 11u, 13u}) {
    for (int i = 0; i < 50; ++i) {
      FpPoly f = random_poly(p, 12, rng);
      EXPECT_EQ(poly_compose(f, FpPoly::monomial(p, 1, p)), poly_pow(f, p));
      EXPECT_EQ(stretch(f, p), poly_pow(f, p));
    }
  }
}

TEST(Factor, Examples) {
  FpPoly t = FpPoly::t(7), tm1 = P(7, {-1, 1});
  auto fz = factor((poly_pow(t, 9) * tm1 * tm1).scaled(3));
  ASSERT_EQ(fz.factors.size(), 2u);
  EXPECT_EQ(fz.unit, 3u);
  EXPECT_EQ(fz.factors[0], std::make_pair(t, 9));
  EXPECT_EQ(fz.factors[1], std::make_pair(tm1, 2));

  EXPECT_TRUE(is_irreducible(P(7, {1, 0, 1})));
  for (Coeff x = 0; x < 7; ++x) EXPECT_NE(P(7, {1, 0, 1}).eval(x), 0u);

  FpPoly a = FpPoly::monomial(5, 1, 25) - FpPoly::one(5);
  auto fz5 = factor(a);
  ASSERT_EQ(fz5.factors.size(), 1u);
  EXPECT_EQ(fz5.factors[0], std::make_pair(P(5, {-1, 1}), 25));
  EXPECT_EQ(fz5.expand(5), a);
}

TEST(Factor, SortedByDegreeThenCoefficients) {
  // (t+2)(t+1)(t^2+1) over F_7
  FpPoly a = P(7, {2, 1}) * P(7, {1, 1}) * P(7, {1, 0, 1});
  auto fz = factor(a);
  ASSERT_EQ(fz.factors.size(), 3u);
  EXPECT_EQ(fz.factors[0].first, P(7, {1, 1}));
  EXPECT_EQ(fz.factors[1].first, P(7, {2, 1}));
  EXPECT_EQ(fz.factors[2].first, P(7, {1, 0, 1}));
}

TEST(Factor, RandomRoundTrip) {
  std::mt19937 rng(4);
  for (Coeff p : {5u, 7u, 11u, 13u}) {
    for (int i = 0; i < 1000; ++i) {
      FpPoly a = random_poly(p, 30, rng);
      if (a.is_zero()) continue;
      auto fz = factor(a);
      ASSERT_EQ(fz.expand(p), a) << to_string(a);
      for (std::size_t j = 0; j < fz.factors.size(); ++j) {
        EXPECT_TRUE(fz.factors[j].first.is_monic());
        EXPECT_GE(fz.factors[j].second, 1);
        if (j) EXPECT_LT(fz.factors[j - 1].first, fz.factors[j].first);
      }
    }
  }
}

TEST(Factor, IrreducibleFactorsHaveNoSmallerFactors) {
  // cross-check irreducibility against gcd with t^(p^k) - t
  std::mt19937 rng(5);
  for (Coeff p : {5u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      FpPoly a = random_poly(p, 12, rng);
      if (a.degree() < 1) continue;
      for (const auto& [f, m] : factor(a).factors) {
        FpPoly x = FpPoly::t(p), h = x;
        for (int k = 1; k < f.degree(); ++k) {
          h = powmod(h, p, f);
          EXPECT_TRUE(poly_gcd(f, h - x).is_one()) << to_string(f);
        }
      }
    }
  }
}

TEST(Factor, Reproducible) {
  FpPoly a = P(13, {3, 1, 4, 1, 5, 9, 2, 6, 5, 3, 5, 8, 9, 7, 9});
  EXPECT_EQ(factor(a), factor(a));
}

TEST(PolySqrt, Examples) {
  FpPoly s = P(7, {-1, 0, 1});
  EXPECT_EQ(poly_sqrt(s * s), s);
  EXPECT_FALSE(poly_sqrt(FpPoly::monomial(5, 1, 3)).has_value());
  auto r = poly_sqrt(P(7, {1, 1}) * P(7, {1, 1}).scaled(4));
  ASSERT_TRUE(r);
  EXPECT_EQ(*r, P(7, {2, 2}));
  EXPECT_FALSE(poly_sqrt(P(7, {3})).has_value());
}

TEST(PolySqrt, RecoversCanonicalSign) {
  std::mt19937 rng(6);
  for (Coeff p : {5u, 7u, 11u, 13u}) {
    for (int i = 0; i < 200; ++i) {
      FpPoly s = random_poly(p, 10, rng);
      if (s.is_zero()) continue;
      auto r = poly_sqrt(s * s);
      ASSERT_TRUE(r);
      EXPECT_TRUE(*r == s || *r == -s);
      EXPECT_LE(r->lead(), (p - 1) / 2);
    }
  }
}

TEST(Valuation, Examples) {
  FpPoly t = FpPoly::t(7), tm1 = P(7, {-1, 1});
  FpPoly a = poly_pow(t, 9) * tm1 * tm1;
  EXPECT_EQ(valuation(a, t), 9);
  EXPECT_EQ(valuation(a, tm1), 2);
  FpPoly q = P(7, {1, 0, 1});
  EXPECT_EQ(valuation(q, q), 1);
  EXPECT_THROW(valuation(FpPoly::zero(7), t), Error);
}

TEST(Valuation, Additive) {
  std::mt19937 rng(7);
  FpPoly pi = P(5, {2, 0, 1});
  for (int i = 0; i < 200; ++i) {
    FpPoly a = random_poly(5, 8, rng) * poly_pow(pi, static_cast<std::uint64_t>(i % 3));
    FpPoly b = random_poly(5, 8, rng) * poly_pow(pi, static_cast<std::uint64_t>(i % 2));
    if (a.is_zero() || b.is_zero()) continue;
    EXPECT_EQ(valuation(a * b, pi), valuation(a, pi) + valuation(b, pi));
  }
}

TEST(TextForm, Canonical) {
  EXPECT_EQ(to_string(P(7, {0, 0, 0, 3, 6, 6})), "6*t^5+6*t^4+3*t^3");
  EXPECT_EQ(to_string(P(7, {-1, 1})), "t+6");
  EXPECT_EQ(to_string(FpPoly::zero(7)), "0");
  EXPECT_EQ(to_string(P(7, {5})), "5");
  EXPECT_EQ(to_string(P(7, {1, 0, 1})), "t^2+1");
}

TEST(Place, Ordering) {
  Place a = Place::make_finite(P(7, {0, 1}));
  Place b = Place::make_finite(P(7, {1, 0, 1}));
  EXPECT_LT(a, b);
  EXPECT_LT(b, Place::infinity());
  EXPECT_EQ(Place::infinity().degree(), 1);
  EXPECT_THROW(Place::make_finite(P(7, {-1, 0, 1})), Error);
}
