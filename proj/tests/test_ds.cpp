#include <gtest/gtest.h>

#include <set>

#include "dsmodp/ds.hpp"

using namespace dsmodp;
using FT = FibreType;

namespace {

FpPoly P(Coeff p, std::initializer_list<std::int64_t> c) { return FpPoly::from_ints(p, c); }
FpPoly T(Coeff p) { return FpPoly::t(p); }

// exists n with 5M <= np <= 6M - c
bool criterion_oracle(int M, Coeff p) {
  int c = M % 2 ? 4 : (p % 12 == 7 ? 5 : 6);
  for (long long n = 1; n * p <= 6LL * M; ++n)
    if (5LL * M <= n * p && n * p <= 6LL * M - c) return false;
  return true;
}

void expect_structure(const FpPoly& f, const FpPoly& g) {
  auto v = counterexample_structure_violations(f, g);
  EXPECT_TRUE(v.empty()) << (v.empty() ? "" : v.front()) << " for f=" << to_string(f);
}

}  // namespace

TEST(DS, ReportDeg4) {
  const Coeff p = 5;
  FpPoly u = P(p, {-1, 0, 1});
  auto r = ds_report(poly_pow(u, 9), FpPoly::monomial(p, 1, 25) * u);
  EXPECT_EQ(r.M, 9);
  EXPECT_EQ(r.defect, 4);
  EXPECT_TRUE(r.is_counterexample);
  EXPECT_TRUE(r.is_maximal);
  EXPECT_EQ(r.difference, -(u * u));
  EXPECT_EQ(r.infinity_type, FT::i_star(50));
  EXPECT_EQ(format_types(r.configuration), "[I50*, 2 II]");
  expect_structure(poly_pow(u, 9), FpPoly::monomial(p, 1, 25) * u);
}

TEST(DS, ReportY25Twisted) {
  const Coeff p = 5;
  FpPoly t = T(p), s = t - P(p, {1});
  FpPoly f = t * poly_pow(s, 9), g = poly_pow(t, 14) * s;
  auto r = ds_report(f, g);
  EXPECT_EQ(r.M, 5);
  EXPECT_EQ(r.defect, 5);
  EXPECT_EQ(g * g - f * f * f, poly_pow(t, 3) * s * s);
  EXPECT_TRUE(r.is_counterexample);
  EXPECT_FALSE(r.is_maximal);
  expect_structure(f, g);
}

TEST(DS, ReportY31) {
  const Coeff p = 31;
  FpPoly t = T(p), s = t - P(p, {1});
  FpPoly f = t * poly_pow(s, 11), g = poly_pow(t, 17) * s;
  auto r = ds_report(f, g);
  EXPECT_EQ(r.M, 6);
  EXPECT_EQ(r.defect, 5);
  EXPECT_EQ(g * g - f * f * f, poly_pow(t, 3) * s * s);
  EXPECT_TRUE(r.is_counterexample);
  EXPECT_TRUE(r.is_maximal);
  expect_structure(f, g);
}

TEST(DS, ReportYIsNotACounterexample) {
  const Coeff p = 7;
  FpPoly t = T(p), s = t - P(p, {1});
  FpPoly f = poly_pow(t, 3) * s, g = poly_pow(t, 5) * s;
  auto r = ds_report(f, g);
  EXPECT_EQ(r.M, 2);
  // f^3 - g^2 = -t^9 (t-1)^2
  EXPECT_EQ(r.difference, -(poly_pow(t, 9) * s * s));
  EXPECT_EQ(r.defect, 11);
  EXPECT_TRUE(r.ds_holds_for_pair);
  EXPECT_FALSE(r.is_counterexample);
  EXPECT_EQ(r.common_factors.size(), 2u);
}

TEST(DS, ReportErrors) {
  const Coeff p = 7;
  EXPECT_THROW(ds_report(P(p, {1, 1, 1}), P(p, {1, 1})), Error);
  EXPECT_THROW(ds_report(poly_pow(T(p), 2), poly_pow(T(p), 3)), Error);
}

TEST(DS, MinDefectBound) {
  EXPECT_EQ(min_defect_bound(9, 5), 4);
  EXPECT_EQ(min_defect_bound(6, 31), 5);
  EXPECT_EQ(min_defect_bound(6, 5), 6);
  EXPECT_EQ(min_defect_bound(4, 5), 5);
  EXPECT_EQ(min_defect_bound(1, 5), 2);
  EXPECT_EQ(min_defect_bound(2, 5), 3);
}

TEST(DS, Criterion) {
  EXPECT_TRUE(criterion_holds(10, 7));
  EXPECT_FALSE(criterion_holds(9, 7));
  EXPECT_EQ(criterion_witness(9, 7), 7);
  EXPECT_FALSE(criterion_holds(5, 13));
  EXPECT_EQ(criterion_witness(5, 13), 2);
  EXPECT_TRUE(criterion_holds(26, 31));
  for (Coeff p : {5u, 7u, 11u, 13u, 17u, 19u, 31u, 37u, 43u})
    for (int M = 1; M <= 80; ++M) EXPECT_EQ(criterion_holds(M, p), criterion_oracle(M, p)) << M << " " << p;
}

TEST(DS, Mod31HoldsSet) {
  const std::set<int> holds = {1, 2, 3, 4, 5, 7, 8, 9, 10, 13, 14, 15, 16, 19, 20, 21, 25, 26};
  for (int M : holds) EXPECT_TRUE(criterion_holds(M, 31)) << M;
  for (int M = 1; M <= 26; ++M)
    if (!holds.count(M)) EXPECT_FALSE(criterion_holds(M, 31)) << M;
}

TEST(DS, MZeroFormula) {
  EXPECT_EQ(m_zero(31).value, 27);
  EXPECT_EQ(m_zero(31).provenance, "FORMULA");
  EXPECT_EQ(m_zero(37).value, 32);
  EXPECT_EQ(m_zero(43).value, 37);
  EXPECT_EQ(m_zero(41).value, 43);
  EXPECT_EQ(m_zero_window(7), 42);
  EXPECT_EQ(m_zero_window(5), 22);
  EXPECT_EQ(theorem_value(31), 26);
  EXPECT_EQ(theorem_value(11), 12);
}

TEST(DS, Pad) {
  const Coeff p = 5;
  FpPoly u = P(p, {-1, 0, 1});
  DSPair deg4{poly_pow(u, 9), FpPoly::monomial(p, 1, 25) * u, 9};
  auto padded = pad_counterexample(deg4, T(p));
  EXPECT_EQ(padded.M, 10);
  auto r = ds_report(padded.f, padded.g);
  EXPECT_TRUE(r.is_counterexample);
  EXPECT_EQ(r.M, 10);

  try {
    pad_counterexample(deg4, T(p) - P(p, {1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
  FpPoly t7 = T(7), s7 = t7 - P(7, {1});
  try {
    pad_counterexample({poly_pow(t7, 3) * s7, poly_pow(t7, 5) * s7, 2}, t7 - P(7, {3}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PadInsufficient);
  }
}

TEST(DS, NormalizePair) {
  const Coeff p = 7;
  FpPoly t = T(p), s = t - P(p, {1});
  FpPoly f = poly_pow(t, 3) * s, g = poly_pow(t, 5) * s;
  DSPair n = normalize_pair(f, g);
  EXPECT_TRUE(n.f.is_monic());
  EXPECT_TRUE(n.g.is_monic());
  EXPECT_EQ(normalize_pair(n.f, n.g), n);
  FpPoly f2 = affine_substitute(f, 3, 5).scaled(4), g2 = affine_substitute(g, 3, 5).scaled(Fp::pow(2, 3, p));
  EXPECT_EQ(normalize_pair(f2, g2), n);
}

TEST(DS, Catalogue) {
  for (Coeff p : {5u, 7u, 11u, 13u}) {
    EXPECT_EQ(format_types(configuration(catalogue_surface(CatalogueName::Y, p))), "[III*, II, I1]");
    EXPECT_EQ(format_types(configuration(catalogue_surface(CatalogueName::YTilde, p))), "[I2*, 2 II]");
    EXPECT_EQ(format_types(configuration(catalogue_surface(CatalogueName::YHat, p))), "[I6, 3 II]");
  }
  EXPECT_EQ(parse_catalogue_name("Yhat"), CatalogueName::YHat);
  EXPECT_THROW(parse_catalogue_name("Z"), Error);
}

TEST(DS, ExplicitMapsOverF7) {
  std::set<std::string> names;
  for (const auto& m : explicit_maps(7)) {
    names.insert(m.name);
    EXPECT_EQ(ramification_profile(m.map), m.profile);
  }
  for (const char* n : {"pi3", "pi6", "pi5~", "pi9", "pi11"}) EXPECT_TRUE(names.count(n)) << n;
  // index 7 over infinity is wild mod 7
  EXPECT_FALSE(names.count("pi_lambda"));
  bool found = false;
  for (const auto& m : explicit_maps(13)) found |= m.name == "pi_lambda";
  EXPECT_TRUE(found);
  // and pi_lambda does not reduce well mod 5
  for (const auto& m : explicit_maps(5)) EXPECT_NE(m.name, "pi_lambda");
}

TEST(DS, ConstructSmall) {
  auto w9 = construct_witness(7, 9);
  ASSERT_TRUE(w9);
  EXPECT_EQ(format_types(w9->configuration), "[I49*, III, II]");
  auto w8 = construct_witness(7, 8);
  ASSERT_TRUE(w8);
  EXPECT_EQ(format_types(w8->configuration), "[I42, 3 II]");
  EXPECT_FALSE(construct_counterexample(7, 10));
  for (const auto* w : {&*w8, &*w9}) {
    EXPECT_TRUE(ds_report(w->pair.f, w->pair.g).is_counterexample);
    expect_structure(w->pair.f, w->pair.g);
  }
}

TEST(DS, ConstructDeg4) {
  const Coeff p = 5;
  FpPoly u = P(p, {-1, 0, 1});
  auto w = construct_counterexample(5, 9);
  ASSERT_TRUE(w);
  EXPECT_EQ(*w, normalize_pair(poly_pow(u, 9), FpPoly::monomial(p, 1, 25) * u));
}

TEST(DS, Status13) {
  auto t = status_table(13, 5, 5);
  EXPECT_EQ(t.at(5).status, Status::Fails);
  ASSERT_TRUE(t.at(5).witness);
  expect_structure(t.at(5).witness->pair.f, t.at(5).witness->pair.g);
}

TEST(DS, StatusReasons) {
  auto t = status_table(7, 1, 12);
  EXPECT_EQ(t.at(1).reason, "weak_bound");
  EXPECT_EQ(t.at(2).reason, "weak_bound");
  EXPECT_EQ(t.at(3).reason, "criterion");
  EXPECT_EQ(t.at(10).reason, "criterion");
  for (int M : {7, 8, 9, 11, 12}) EXPECT_EQ(t.at(M).status, Status::Fails) << M;
  EXPECT_EQ(status_of(31, 26).status, Status::Holds);
  EXPECT_EQ(status_of(11, 12).reason, "theorem");
  EXPECT_THROW(status_table(7, 5, 3), Error);
}

TEST(DS, MultFibre) {
  auto a = Configuration::from_types(7, {FT::i(7), FT::i(1), FT::ii(), FT::ii()});
  EXPECT_TRUE(multfibre_condition(a));
  auto b = Configuration::from_types(7, {FT::i(6), FT::i(1), FT::iii(), FT::ii()});
  EXPECT_TRUE(multfibre_condition(b));
  auto c = Configuration::from_types(7, {FT::i(5), FT::i(1), FT::ii(), FT::ii(), FT::ii()});
  EXPECT_FALSE(multfibre_condition(c));
  auto d = Configuration::from_types(7, {FT::ii(), FT::i(1)});
  EXPECT_THROW(multfibre_condition(d), Error);
}
