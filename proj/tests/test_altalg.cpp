#include <gtest/gtest.h>


#include "psolv/altalg.hpp"
#include "psolv/dim3class.hpp"

using namespace psolv;

namespace {

AltAlgebra named(int p, ClassName n, std::optional<std::uint32_t> a = std::nullopt) {
  PrimeField f(p);
  return matrix_to_algebra(named_matrix(f, {n, a, f.canonical_nonsquare().v}));
}

Vec vec(const PrimeField& f, std::initializer_list<long long> xs) {
  Vec v;
  for (auto x : xs) v.push_back(f.from_int(x));
  return v;
}

Subspace span(const PrimeField& f, int d, std::initializer_list<std::initializer_list<long long>> rows) {
  std::vector<Vec> vs;
  for (auto r : rows) vs.push_back(vec(f, r));
  return Subspace::span(f, d, vs);
}

}  // namespace

TEST(Subspace, EchelonIsCanonical) {
  PrimeField f(3);
  auto a = span(f, 3, {{1, 1, 0}, {0, 1, 1}});
  auto b = span(f, 3, {{1, 2, 1}, {2, 0, 1}});  // same plane, different basis
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.dim(), 2);
  EXPECT_EQ(a.pivots(), (std::vector<int>{0, 1}));
  EXPECT_TRUE(a.contains(vec(f, {1, 2, 1})));
  EXPECT_FALSE(a.contains(vec(f, {1, 0, 0})));
}

TEST(Subspace, SumAndIntersection) {
  PrimeField f(5);
  auto u = span(f, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  auto w = span(f, 4, {{0, 1, 0, 0}, {0, 0, 1, 0}});
  EXPECT_EQ((u + w).dim(), 3);
  EXPECT_EQ(u.intersect(w), span(f, 4, {{0, 1, 0, 0}}));
  EXPECT_TRUE(u.intersect(Subspace(f, 4)).is_zero());
  EXPECT_THROW(u.intersect(Subspace(f, 3)), DimensionMismatch);
}

TEST(Subspace, EnumerationCounts) {
  // Gaussian binomial totals
  EXPECT_EQ(all_subspaces(PrimeField(3), 3).size(), 28u);
  EXPECT_EQ(all_subspaces(PrimeField(5), 4).size(), 1u + 156 + 806 + 156 + 1);
  auto all = all_subspaces(PrimeField(3), 4);
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
  EXPECT_THROW(all_subspaces(PrimeField(11), 2), BoundExceeded);
  EXPECT_THROW(all_subspaces(PrimeField(3), 6), BoundExceeded);
}

TEST(AltAlgebra, BracketExamples) {
  PrimeField f(3);
  auto a1 = named(3, ClassName::A1);
  EXPECT_EQ(a1.bracket(a1.unit(1), a1.unit(2)), a1.unit(0));
  auto c2 = named(3, ClassName::C2);
  EXPECT_EQ(c2.bracket(c2.unit(2), c2.unit(0)), c2.zero_vec());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto v = random_algebra(5, 4, seed);
    auto u = vec(v.field(), {1, 2, 3, 4});
    auto w = vec(v.field(), {4, 0, 1, 2});
    EXPECT_EQ(v.bracket(u, u), v.zero_vec());
    auto uw = v.bracket(u, w), wu = v.bracket(w, u);
    for (int i = 0; i < 4; ++i) EXPECT_EQ(uw[i], v.field().neg(wu[i]));
  }
  EXPECT_THROW(a1.bracket(Vec(2), Vec(3)), DimensionMismatch);
}

TEST(AltAlgebra, ProductSpace) {
  PrimeField f(3);
  auto full = Subspace::full(f, 3);
  EXPECT_TRUE(product_space(named(3, ClassName::D), full, full).is_zero());
  EXPECT_EQ(product_space(named(3, ClassName::C2), full, full), span(f, 3, {{1, 0, 0}}));
  EXPECT_TRUE(product_space(named(3, ClassName::A1), full, full).is_full());
}

TEST(AltAlgebra, Ideals) {
  PrimeField f(3);
  auto full = Subspace::full(f, 3);
  auto e1 = span(f, 3, {{1, 0, 0}});
  EXPECT_TRUE(is_ideal(named(3, ClassName::A1), Subspace(f, 3), full));
  EXPECT_TRUE(is_ideal(named(3, ClassName::C2), e1, full));
  EXPECT_FALSE(is_ideal(named(3, ClassName::A1), e1, full));
  EXPECT_THROW(is_ideal(named(3, ClassName::A1), full, e1), PreconditionError);
  EXPECT_EQ(all_ideals(named(3, ClassName::D)).size(), 28u);
  EXPECT_EQ(all_ideals(named(3, ClassName::A1)).size(), 2u);
  auto c2 = all_ideals(named(3, ClassName::C2));
  EXPECT_NE(std::find(c2.begin(), c2.end(), e1), c2.end());
}

TEST(AltAlgebra, Simplicity) {
  EXPECT_TRUE(is_simple(named(3, ClassName::A1)));
  EXPECT_FALSE(is_simple(named(3, ClassName::B2)));
  EXPECT_TRUE(is_simple(AltAlgebra(PrimeField(3), 1)));
  EXPECT_FALSE(is_simple(AltAlgebra(PrimeField(3), 0)));
  // no 2-dimensional simple algebra
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_FALSE(is_simple(random_algebra(3, 2, s)));
}

TEST(AltAlgebra, QuotientAndSubalgebra) {
  PrimeField f(3);
  auto c2 = named(3, ClassName::C2);
  auto q = quotient(c2, span(f, 3, {{1, 0, 0}}));
  EXPECT_EQ(q, AltAlgebra(f, 2));
  EXPECT_EQ(quotient(named(3, ClassName::D), span(f, 3, {{1, 1, 0}})), AltAlgebra(f, 2));
  auto a1 = named(3, ClassName::A1);
  auto same = quotient(a1, Subspace(f, 3));
  EXPECT_EQ(same, a1);
  EXPECT_THROW(quotient(a1, span(f, 3, {{1, 0, 0}})), PreconditionError);
  EXPECT_THROW(subalgebra(a1, span(f, 3, {{0, 1, 0}, {0, 0, 1}})), PreconditionError);
  auto sub = subalgebra(c2, span(f, 3, {{1, 0, 0}, {0, 1, 0}}));
  EXPECT_EQ(sub.dim(), 2);
}

TEST(CompositionSeries, Examples) {
  auto d = composition_series(named(3, ClassName::D));
  EXPECT_EQ(d.length(), 3);
  EXPECT_EQ(d.factor_tags, (std::vector<std::string>{"1", "1", "1"}));
  auto a1 = composition_series(named(3, ClassName::A1));
  EXPECT_EQ(a1.length(), 1);
  EXPECT_EQ(a1.factor_tags.front(), "A1");
  auto b2 = named(3, ClassName::B2);
  auto s = composition_series(b2);
  EXPECT_TRUE(is_composition_series(b2, s));
  EXPECT_EQ(s.terms.back().dim(), 3);
  EXPECT_EQ(s.factor_tags.front(), "1");
}

TEST(CompositionSeries, JordanHolderOnFlags) {
  auto d = named(3, ClassName::D);
  auto all = all_composition_series(d);
  EXPECT_EQ(all.size(), 13u * 4u);  // complete flags of F_3^3
  EXPECT_TRUE(jordan_holder_check(d, all.front(), all.back()));
  auto a1 = named(3, ClassName::A1);
  auto s = composition_series(a1);
  EXPECT_TRUE(jordan_holder_check(a1, s, s));
  auto bad = s;
  bad.factor_tags[0] = "1";
  EXPECT_THROW(jordan_holder_check(a1, s, bad), PreconditionError);
}

TEST(Zassenhaus, Definitions) {
  PrimeField f(3);
  auto v = random_algebra(3, 4, 7);
  auto full = Subspace::full(f, 4);
  auto zero = Subspace(f, 4);
  for (const auto& x : all_subspaces(f, 4)) {
    EXPECT_EQ(zassenhaus_project(v, zero, full, zero, full, x, ProjectionDirection::Up), x);
  }
  auto d = named(3, ClassName::D);
  auto A = span(f, 3, {{1, 0, 0}});
  auto B = span(f, 3, {{1, 0, 0}, {0, 1, 0}});
  auto a = span(f, 3, {{0, 1, 1}});
  auto b = Subspace::full(f, 3);
  EXPECT_EQ(zassenhaus_project(d, A, B, a, b, a, ProjectionDirection::Up), A + B.intersect(a));
  EXPECT_THROW(zassenhaus_project(d, A, B, a, b, A, ProjectionDirection::Up), PreconditionError);
}

TEST(IsomorphismSearch, SmallCases) {
  auto a1 = named(3, ClassName::A1);
  auto m = named_matrix(PrimeField(3), {ClassName::A1, std::nullopt, 2});
  Mat3 p = mat3::identity();
  p[0][1] = Fp{1};
  p[2][0] = Fp{2};
  auto twisted = matrix_to_algebra({PrimeField(3), mat3::twist(PrimeField(3), m.a, p)});
  EXPECT_TRUE(find_isomorphism(a1, twisted).has_value());
  EXPECT_FALSE(find_isomorphism(a1, named(3, ClassName::A2)).has_value());
}

TEST(AltAlgebra, JsonRoundTrip) {
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto v = random_algebra(7, 5, s);
    auto j = algebra_to_json(v);
    EXPECT_EQ(algebra_from_json(j), v);
    EXPECT_EQ(algebra_from_json(nlohmann::json::parse(j.dump())), v);
  }
  EXPECT_THROW(algebra_from_json(nlohmann::json::parse(R"({"p":3,"dim":2,"bracket":[[0,1,[0,5]]]})")),
               std::invalid_argument);
  EXPECT_EQ(random_algebra(5, 4, 42), random_algebra(5, 4, 42));
}
