#include <gtest/gtest.h>

#include <cmath>

#include "psolv/census.hpp"

using namespace psolv;

TEST(Census, RankTwoExamples) {
  auto x3 = rank2_parameters(3);
  ASSERT_EQ(x3.size(), 1u);
  EXPECT_EQ(x3[0], (RankTwoParams{Rank2Kind::I, 2, 1, 1, std::nullopt}));

  auto x4 = rank2_parameters(4);
  ASSERT_EQ(x4.size(), 2u);
  EXPECT_EQ(x4[0], (RankTwoParams{Rank2Kind::I, 2, 2, 1, std::nullopt}));
  EXPECT_EQ(x4[1], (RankTwoParams{Rank2Kind::I, 3, 1, 2, std::nullopt}));

  auto x5 = rank2_parameters(5);
  EXPECT_EQ(x5.size(), 4u);
  for (const auto& t : x5) EXPECT_EQ(t.kind, Rank2Kind::I);
  EXPECT_EQ(x5.size() + abelian_rank2_count(5), 6u);

  EXPECT_EQ(rank2_count_formula(3), 2);
  EXPECT_EQ(rank2_count_formula(4), 4);
  EXPECT_EQ(rank2_count_formula(7), 13);

  EXPECT_EQ(rank2_nonpn_counts(5), std::make_pair(2, 0));
  EXPECT_EQ(rank2_nonpn_counts(6), std::make_pair(2, 1));
  EXPECT_EQ(rank2_nonpn_counts(4), std::make_pair(1, 0));
}

TEST(Census, RankTwoFormulaMatchesEnumeration) {
  for (int x = 3; x <= 14; ++x) {
    auto params = rank2_parameters(x);
    EXPECT_EQ(rank2_count_formula(x), static_cast<long long>(params.size()) + abelian_rank2_count(x)) << x;
    int r1_semi = 0, r1_non = 0;
    for (const auto& t : params)
      if (t.r == 1) (t.kind == Rank2Kind::I ? r1_semi : r1_non)++;
    EXPECT_EQ(rank2_nonpn_counts(x), std::make_pair(r1_semi, r1_non)) << x;
  }
}

TEST(Census, RankTwoPowerfullyNilpotentIffRAtLeastTwo) {
  for (int x = 3; x <= 6; ++x)
    for (const auto& t : rank2_parameters(x)) {
      Group g(t.presentation(3));
      EXPECT_EQ(g.order(), static_cast<std::uint32_t>(std::pow(3, x))) << t.to_string();
      EXPECT_TRUE(is_powerful(g)) << t.to_string();
      EXPECT_EQ(is_powerfully_nilpotent(g).has_value(), t.r >= 2) << t.to_string();
    }
}

TEST(Census, Partitions) {
  EXPECT_EQ(partitions(3).size(), 3u);
  EXPECT_EQ(partitions(4).size(), 5u);
  EXPECT_EQ(partitions(5).size(), 7u);
  EXPECT_EQ(partitions(4).front(), (std::vector<int>{4}));
  EXPECT_EQ(partitions(4).back(), (std::vector<int>{1, 1, 1, 1}));
}

TEST(Census, FamiliesMatchNamedGroups) {
  auto t4 = census_table(4, 3);
  auto find = [&](const std::vector<CensusEntry>& t, const std::string& label) {
    for (const auto& e : t)
      if (e.label == label) return e.presentation;
    throw std::runtime_error("missing " + label);
  };
  Group g4(find(t4, "G4")), a221(family_A(3, 2, 2, 1));
  EXPECT_TRUE(isomorphic(g4, a221).has_value());
  Group g5(find(t4, "G5")), b220(family_B(3, 2, 2, 0));
  EXPECT_TRUE(isomorphic(g5, b220).has_value());
  EXPECT_FALSE(isomorphic(g4, g5).has_value());

  for (int t = 1; t <= 6; ++t) {
    int a = 0, b = 0;
    for (int s = 0; s <= t; ++s) {
      if (s >= 1 && s <= t / 2) ++a;
      if (2 * s < t) ++b;
    }
    EXPECT_EQ(a, t / 2);
    EXPECT_EQ(b, (t + 1) / 2);
  }
  EXPECT_THROW(family_A(3, 2, 2, 0), PreconditionError);
  EXPECT_THROW(family_B(3, 2, 2, 1), PreconditionError);
}

TEST(Census, FamilyPowerfulNilpotence) {
  const int p = 3;
  for (int n = 2; n <= 3; ++n)
    for (int t = 1; t + n <= 6; ++t) {
      for (int s = 1; s <= t / 2; ++s) {
        Group g(family_A(p, n, t, s));
        EXPECT_TRUE(is_powerful(g));
        EXPECT_TRUE(is_powerfully_nilpotent(g).has_value()) << "A" << n << t << s;
      }
      for (int s = 0; 2 * s < t; ++s) {
        Group g(family_B(p, n, t, s));
        EXPECT_TRUE(is_powerful(g));
        EXPECT_EQ(is_powerfully_nilpotent(g).has_value(), n >= 3) << "B" << n << t << s;
      }
    }
}

TEST(Census, SmallOrderTables) {
  auto t3 = census_table(3, 3);
  auto t4 = census_table(4, 3);
  EXPECT_EQ(t3.size(), 4u);
  EXPECT_EQ(t4.size(), 9u);
  auto r3 = verify_census(t3, true);
  auto r4 = verify_census(t4, true);
  EXPECT_TRUE(r3.ok) << (r3.failures.empty() ? "" : r3.failures[0]);
  EXPECT_TRUE(r4.ok) << (r4.failures.empty() ? "" : r4.failures[0]);
  for (const auto& e : t4) {
    EXPECT_TRUE(e.verified);
    EXPECT_TRUE(e.derived_length.has_value());
  }
}

TEST(Census, OrderP5TableShape) {
  EXPECT_EQ(census_table(5, 3).size(), 28u);
  EXPECT_EQ(census_table(5, 5).size(), 32u);
  EXPECT_EQ(census_table(5, 97).size(), 22u + 2 * 97);
  // emitted tables serialize and reload exactly
  for (const auto& e : census_table(5, 7))
    EXPECT_EQ(PcPresentation::from_json(e.presentation.to_json()), e.presentation) << e.label;
}

TEST(Census, OrderP5VerifiesAtFive) {
  auto t = census_table(5, 5);
  std::vector<CensusEntry> sample;
  for (const auto& e : t)
    if (e.label == "G16" || e.label == "G18" || e.label == "G21(2)" || e.label == "G22(0)") sample.push_back(e);
  ASSERT_EQ(sample.size(), 4u);
  auto rep = verify_census(sample, false);
  EXPECT_TRUE(rep.ok) << (rep.failures.empty() ? "" : rep.failures[0]);
}

// a -> a^-1, b -> b, c -> c^-1 carries G21(beta) onto G21(-beta), and likewise for G22.
TEST(Census, BetaIsOnlyAnInvariantUpToSign) {
  for (int p : {3, 5}) {
    auto t = census_table(5, p);
    auto find = [&](const std::string& label) {
      for (const auto& e : t)
        if (e.label == label) return e.presentation;
      throw std::runtime_error("missing " + label);
    };
    for (const char* fam : {"G21", "G22"}) {
      const int beta = 1;
      Group a(find(std::string(fam) + "(" + std::to_string(beta) + ")"));
      Group b(find(std::string(fam) + "(" + std::to_string(p - beta) + ")"));
      std::vector<Elem> images{b.inv(b.generator(0)), b.generator(1), b.inv(b.generator(2))};
      EXPECT_TRUE(verify_embedding(a, b, images)) << fam << " p=" << p;
    }
  }
}

TEST(Census, PresentationCountExamples) {
  EXPECT_EQ(count_solvable_presentations(4, 1).h, 3);
  EXPECT_EQ(count_solvable_presentations(6, 2).h, 11);
  EXPECT_EQ(count_solvable_presentations(7, 0).h, 0);
  EXPECT_EQ(count_powerful_presentations(4, 1).h, 3);
  EXPECT_EQ(count_powerful_presentations(6, 2).h, 12);
  EXPECT_EQ(count_powerful_presentations(7, 0).h, 0);
  EXPECT_EQ(count_classP_presentations(6).h, 9);
  EXPECT_EQ(count_classP_presentations(2).h, 0);
  EXPECT_EQ(count_classP_presentations(8).h, 24);
  EXPECT_THROW(count_solvable_presentations(4, 3), PreconditionError);
  EXPECT_THROW(count_classP_presentations(5), PreconditionError);
}

TEST(Census, PresentationCountsAgree) {
  for (int n = 0; n <= 10; ++n)
    for (int x = 0; 2 * x <= n; ++x) {
      auto s = count_solvable_presentations(n, x);
      auto w = count_powerful_presentations(n, x);
      EXPECT_EQ(s.h, s.h_enumerated) << n << "," << x;
      EXPECT_EQ(w.h, w.h_enumerated) << n << "," << x;
      EXPECT_LE(s.h, w.h);
    }
  for (int n = 0; n <= 10; n += 2) {
    auto c = count_classP_presentations(n);
    EXPECT_EQ(c.h, c.h_enumerated);
  }
}

TEST(Census, GrowthConstants) {
  const double n3 = 1e9;
  EXPECT_NEAR(optimal_x(1000, CountScheme::Solvable).second / n3, (std::sqrt(2.0) - 1) / 6, 2e-3);
  EXPECT_NEAR(optimal_x(1000, CountScheme::Powerful).second / n3, 2.0 / 27, 2e-3);
  EXPECT_NEAR(optimal_x(1000, CountScheme::ClassP).second / n3, 1.0 / 16, 2e-3);
  EXPECT_EQ(optimal_x(4, CountScheme::Solvable).first, 1);
}
