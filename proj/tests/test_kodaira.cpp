#include <gtest/gtest.h>

#include "dsmodp/kodaira.hpp"

using namespace dsmodp;
using FT = FibreType;

namespace {

struct Vals {
  int a, b, d;
};

// generic valuations of a minimal model with the given type
Vals rep(FT t) {
  switch (t.kind) {
    case FibreKind::I: return {0, 0, t.index};
    case FibreKind::IStar: return {2, 3, 6 + t.index};
    case FibreKind::II: return {1, 1, 2};
    case FibreKind::III: return {1, 2, 3};
    case FibreKind::IV: return {2, 2, 4};
    case FibreKind::IVStar: return {3, 4, 8};
    case FibreKind::IIIStar: return {3, 5, 9};
    case FibreKind::IIStar: return {4, 5, 10};
  }
  return {0, 0, 0};
}

FT reduce(long long a, long long b, long long d) {
  long long k = std::min(a / 4, b / 6);
  return classify_local(static_cast<int>(a - 4 * k), static_cast<int>(b - 6 * k), static_cast<int>(d - 12 * k));
}

const std::vector<FT> kAll = {FT::i(0), FT::i(1), FT::i(7), FT::ii(), FT::iii(), FT::iv(), FT::i_star(0),
                              FT::i_star(3), FT::iv_star(), FT::iii_star(), FT::ii_star()};

}  // namespace

TEST(Kodaira, ClassifyExamples) {
  EXPECT_EQ(classify_local(3, 5, 9), FT::iii_star());
  EXPECT_EQ(classify_local(1, 1, 2), FT::ii());
  EXPECT_EQ(classify_local(2, 3, 8), FT::i_star(2));
  EXPECT_EQ(classify_local(0, 0, 1), FT::i(1));
  EXPECT_EQ(classify_local(5, 0, 0), FT::i(0));
}

TEST(Kodaira, ClassifyRejectsNonMinimal) {
  try {
    classify_local(4, 6, 12);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonMinimal);
  }
}

TEST(Kodaira, LocalInvariants) {
  auto li = local_invariants(FT::iii_star());
  EXPECT_EQ(li.euler, 9);
  EXPECT_EQ(li.components, 8);
  EXPECT_EQ(li.conductor_exponent, 2);
  li = local_invariants(FT::i(25));
  EXPECT_EQ(li.euler, 25);
  EXPECT_EQ(li.components, 25);
  EXPECT_EQ(li.conductor_exponent, 1);
  li = local_invariants(FT::i(0));
  EXPECT_EQ(li.euler, 0);
  EXPECT_EQ(li.components, 1);
  EXPECT_EQ(li.conductor_exponent, 0);
  EXPECT_EQ(euler_number(FT::i_star(4)), 10);
}

TEST(Kodaira, EulerMatchesDiscriminantValuation) {
  for (FT t : kAll) EXPECT_EQ(euler_number(t), rep(t).d) << to_string(t);
}

TEST(Kodaira, BaseChangeExamples) {
  EXPECT_EQ(base_change_type(FT::i_star(2), 25), FT::i_star(50));
  EXPECT_EQ(base_change_type(FT::ii(), 4), FT::iv_star());
  EXPECT_EQ(base_change_type(FT::i(1), 31), FT::i(31));
  EXPECT_EQ(base_change_type(FT::iii(), 2), FT::i_star(0));
  EXPECT_EQ(base_change_type(FT::iii_star(), 2), FT::i_star(0));
}

TEST(Kodaira, BaseChangeAgreesWithValuations) {
  for (FT t : kAll) {
    for (int r = 1; r <= 13; ++r) {
      Vals v = rep(t);
      EXPECT_EQ(base_change_type(t, r), reduce(1LL * r * v.a, 1LL * r * v.b, 1LL * r * v.d)) << to_string(t) << " r=" << r;
    }
  }
}

TEST(Kodaira, BaseChangeComposes) {
  for (FT t : kAll)
    for (int r = 1; r <= 6; ++r)
      for (int s = 1; s <= 6; ++s) EXPECT_EQ(base_change_type(base_change_type(t, r), s), base_change_type(t, r * s));
}

TEST(Kodaira, Twist) {
  EXPECT_EQ(twist_type(FT::ii()), FT::iv_star());
  EXPECT_EQ(twist_type(FT::i(25)), FT::i_star(25));
  for (FT t : kAll) {
    Vals v = rep(t);
    EXPECT_EQ(twist_type(t), reduce(v.a + 2, v.b + 3, v.d + 6)) << to_string(t);
    EXPECT_EQ(twist_type(twist_type(t)), t);
    EXPECT_LE(euler_number(untwisted(t)), euler_number(t));
  }
}

TEST(Kodaira, ConductorUnderTameBaseChange) {
  for (FT t : kAll) {
    if (!t.is_additive()) continue;
    for (int r : {1, 5, 7, 11, 13}) EXPECT_EQ(local_invariants(base_change_type(t, r)).conductor_exponent, 2);
  }
}

TEST(Kodaira, TextRoundTrip) {
  for (FT t : kAll) EXPECT_EQ(parse_fibre_type(to_string(t)), t);
  EXPECT_EQ(to_string(FT::i_star(25)), "I25*");
  EXPECT_THROW(parse_fibre_type("V"), Error);
  EXPECT_THROW(parse_fibre_type("I"), Error);
}
