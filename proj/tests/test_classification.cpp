#include <gtest/gtest.h>

#include <set>

#include "holoscope/classification.hpp"
#include "support.hpp"

using namespace holoscope;
using namespace holoscope::testing;

namespace {

bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::set<std::string> labels(const std::vector<SimpleCandidate>& v) {
  std::set<std::string> out;
  for (const auto& c : v) out.insert(c.label());
  return out;
}

CliffordParams one_j(std::uint32_t m, std::uint64_t p, std::uint32_t r, std::uint32_t y, std::uint32_t z,
                     std::uint32_t d, std::uint32_t vp) {
  return CliffordParams{m, p, {{r, y, z, d, vp}}};
}

}  // namespace

TEST(Arithmetic, PrimalityAgainstTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), trial_prime(n)) << n;
  EXPECT_TRUE(is_prime(8191));
  EXPECT_TRUE(is_prime(2147483647ull));
  EXPECT_FALSE(is_prime(2047));
  EXPECT_EQ(as_prime_power(27), (std::pair<std::uint64_t, std::uint32_t>{3, 3}));
  EXPECT_EQ(as_prime_power(12), std::nullopt);
  EXPECT_EQ(valuation(std::uint64_t{168}, 2), 3u);
  EXPECT_EQ(valuation(std::uint64_t{168} * 168 * 2, 2), 7u);
}

TEST(Arithmetic, AutomorphismValuations) {
  EXPECT_EQ(group_order(SimpleGroup::psl(3, 2)), 168);
  EXPECT_EQ(group_order(SimpleGroup::psl(2, 7)), 168);
  EXPECT_EQ(group_order(SimpleGroup::psl(3, 3)), 5616);
  EXPECT_EQ(group_order(SimpleGroup::psl(2, 8)), 504);
  EXPECT_EQ(group_order(SimpleGroup::alt(5)), 60);
  EXPECT_EQ(outer_order(SimpleGroup::psl(3, 2)), 2u);
  EXPECT_EQ(outer_order(SimpleGroup::psl(2, 8)), 3u);
  EXPECT_EQ(outer_order(SimpleGroup::psl(2, 16)), 4u);
  EXPECT_EQ(outer_order(SimpleGroup::psl(2, 256)), 8u);
  // |Aut GL3(2)| computed from the group itself.
  const auto aut = automorphism_group(canonical_group()).order();
  EXPECT_EQ(valuation(std::uint64_t{aut}, 2), vp_aut(SimpleGroup::psl(3, 2), 2));
  EXPECT_EQ(vp_aut(SimpleGroup::psl(3, 2), 2), 4u);
  EXPECT_EQ(vp_aut(SimpleGroup::psl(3, 3), 13), 1u);
  EXPECT_EQ(vp_aut(SimpleGroup::psl(2, 8), 3), 3u);  // |Aut| = 1512 = 2^3 3^3 7
}

TEST(Clifford, MkRy) {
  EXPECT_TRUE(check_mk_ry(one_j(1, 2, 1, 1, 1, 3, 4)));
  EXPECT_TRUE(check_mk_ry(one_j(1, 2, 2, 2, 1, 3, 4)));
  EXPECT_FALSE(check_mk_ry(one_j(2, 2, 2, 2, 1, 3, 4)));
  EXPECT_THROW(check_mk_ry(one_j(1, 2, 1, 2, 1, 3, 4)), PreconditionError);
  EXPECT_THROW(check_mk_ry(one_j(1, 2, 1, 1, 2, 3, 4)), PreconditionError);
  EXPECT_THROW(check_mk_ry(CliffordParams{1, 2, {}}), PreconditionError);
}

TEST(Clifford, KeyInequality) {
  const auto v = check_key_inequality(one_j(1, 2, 1, 1, 1, 3, 4));
  EXPECT_EQ(v.lhs, Rational(3));
  EXPECT_EQ(v.rhs, Rational(5));
  EXPECT_TRUE(v.holds);
  for (std::uint32_t y = 1; y <= 6; ++y)
    for (std::uint32_t d = 2; d <= 4; ++d) EXPECT_FALSE(tj_inequality(d, y, 1, 13).holds) << d << " " << y;
  EXPECT_FALSE(tj_inequality(7, 1, 2, 3).holds);
  EXPECT_FALSE(tj_inequality(7, 1, vp_aut(SimpleGroup::psl(2, 8), 3), 3).holds);
  const auto t = tj_inequality(3, 2, 4, 2);
  EXPECT_EQ(t.lhs, Rational(9, 2));
  EXPECT_TRUE(t.holds);
  EXPECT_FALSE(tj_inequality(3, 3, 4, 2).holds);
  // Two minimal normals each with y=1: 9 < 10.
  const auto two = check_key_inequality(CliffordParams{1, 2, {{1, 1, 1, 3, 4}, {1, 1, 1, 3, 4}}});
  EXPECT_EQ(two.lhs, Rational(9));
  EXPECT_EQ(two.rhs, Rational(10));
  EXPECT_TRUE(two.holds);
}

TEST(Clifford, BTable) {
  EXPECT_EQ(b_table(3, 1), Rational(3, 5));
  EXPECT_EQ(b_table(3, 2), Rational(9, 10));
  EXPECT_EQ(b_table(5, 1), Rational(15, 7));
  EXPECT_GT(b_table(3, 3), Rational(1));
  for (std::uint32_t a = 5; a <= 13; a += 2)
    for (std::uint32_t y = 1; y <= 8; ++y) EXPECT_GE(b_table(a, y), Rational(15, 7));
  EXPECT_THROW(b_table(2, 1), PreconditionError);
  EXPECT_THROW(b_table(3, 0), PreconditionError);
}

TEST(Clifford, DimensionBound) {
  EXPECT_TRUE(dimension_bound_check(168, 3, 2));
  EXPECT_TRUE(dimension_bound_check(std::uint64_t{168} * 168 * 2, 6, 2));
  EXPECT_FALSE(dimension_bound_check(std::uint64_t{168} * 168 * 2, 8, 2));
  EXPECT_FALSE(dimension_bound_check(21, 1, 2));
  EXPECT_THROW(dimension_bound_check(std::uint64_t{0}, 1, 2), PreconditionError);
}

TEST(Candidates, GuralnickTable) {
  const auto t = guralnick_table();
  auto has = [&](const std::string& tg, const std::string& r, bool sol) {
    for (const auto& c : t)
      if (c.t == tg && c.r == r) return c.r_soluble_possible == sol;
    return false;
  };
  EXPECT_TRUE(has("M23", "M22", false));
  EXPECT_TRUE(has("PSL2(11)", "A5", false));
  EXPECT_TRUE(has("A_n", "A_{n-1}", true));
  EXPECT_EQ(t.size(), 6u);
}

TEST(Candidates, ListAtBound200And2000) {
  const auto at200 = labels(soluble_index_candidates(200));
  for (const char* want : {"(PSL3(2),7,1)", "(PSL2(4),5,1)", "(PSL2(16),17,1)", "(PSL2(7),2,3)", "(PSL2(31),2,5)",
                           "(PSL2(127),2,7)", "(PSL3(3),13,1)", "(PSL2(8),3,2)"})
    EXPECT_TRUE(at200.count(want)) << want;
  const auto at2000 = soluble_index_candidates(2000);
  EXPECT_EQ(at2000.size(), 10u);
  EXPECT_TRUE(labels(at2000).count("(PSL2(256),257,1)"));
  EXPECT_TRUE(labels(at2000).count("(PSL2(8191),2,13)"));
  for (const auto& c : at2000) EXPECT_TRUE(std::set<std::string>({"i", "ii", "iii", "iv", "v"}).count(c.shape));
  EXPECT_THROW(soluble_index_candidates(7), PreconditionError);
}

TEST(Candidates, BruteForceFamilies) {
  for (std::uint64_t bound : {16ull, 200ull, 2000ull, 70000ull}) {
    std::set<std::string> want{"(PSL3(2),7,1)", "(PSL3(3),13,1)", "(PSL2(8),3,2)"};
    for (std::uint32_t a = 1; (1ull << a) + 1 <= bound; ++a)
      if (trial_prime((1ull << a) + 1) && (1ull << a) + 1 >= 5)
        want.insert("(PSL2(" + std::to_string(1ull << a) + ")," + std::to_string((1ull << a) + 1) + ",1)");
    for (std::uint32_t a = 2; a <= 13; ++a)
      if (trial_prime((1ull << a) - 1) && (1ull << a) - 1 >= 7)
        want.insert("(PSL2(" + std::to_string((1ull << a) - 1) + "),2," + std::to_string(a) + ")");
    EXPECT_EQ(labels(soluble_index_candidates(bound)), want) << bound;
  }
}

TEST(Candidates, AgreesWithGuralnickWalk) {
  for (std::uint64_t bound : {8ull, 64ull, 200ull, 2000ull, 10000ull}) {
    std::uint32_t cap = 0;
    while ((1ull << (cap + 1)) <= bound) ++cap;
    EXPECT_EQ(labels(candidates_from_guralnick(bound)), labels(soluble_index_candidates(bound, cap))) << bound;
  }
}

TEST(Degrees, Table) {
  EXPECT_EQ(degree_table("GL3(2)", 2).degrees, (std::vector<std::uint32_t>{1, 3, 3, 8}));
  EXPECT_TRUE(degree_table("GL3(2)", 2).complete);
  EXPECT_EQ(degree_table("PSL2(8)", 3).minimal_nontrivial(), 7u);
  EXPECT_EQ(degree_table("PSL2(31)", 2).minimal_nontrivial(), 15u);
  for (std::uint32_t a = 3; a <= 13; ++a) {
    const std::uint64_t q = (1ull << a) - 1;
    if (!trial_prime(q)) continue;
    EXPECT_EQ(degree_table(SimpleGroup::psl(2, q), 2).minimal_nontrivial(), (q - 1) / 2);
  }
  EXPECT_THROW(degree_table("M11", 2), PreconditionError);
  EXPECT_THROW(degree_table("PSL2(x)", 2), PreconditionError);
}

TEST(Elimination, Survivors) {
  const auto rep = just168_elimination();
  EXPECT_EQ(rep.tj_survivors, (std::set<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {3, 2}}));
  EXPECT_EQ(rep.tj_survivor_groups, std::vector<std::string>{"PSL2(7)"});
  ASSERT_EQ(rep.product_survivors.size(), 2u);
  EXPECT_EQ(rep.product_survivors[0].product, Rational(3, 5));
  EXPECT_EQ(rep.product_survivors[1].product, Rational(9, 10));
  EXPECT_TRUE(rep.b_monotone);
  ASSERT_EQ(rep.cases.size(), 3u);
  EXPECT_EQ(rep.cases[0].minimal_normals, 2u);
  EXPECT_EQ(rep.cases[1].y, std::vector<std::uint32_t>{2});
  EXPECT_EQ(rep.cases[1].r_in_terms_of_m, "r = 2m");
  EXPECT_EQ(rep.cases[2].y, std::vector<std::uint32_t>{1});
  EXPECT_EQ(rep.cases[2].r_in_terms_of_m, "r = m");
  for (const auto& c : rep.cases)
    for (auto z : c.z) EXPECT_EQ(z, 1u);
  // Every TJ row re-evaluated independently.
  for (const auto& row : rep.tj)
    for (const auto& [y, lhs, rhs, holds] : row.evaluations) {
      EXPECT_EQ(lhs, Rational(boost::multiprecision::pow(BigInt(row.d), y), y));
      EXPECT_EQ(holds, lhs < rhs);
    }
}

TEST(Elimination, MonotoneInBound) {
  const auto base = just168_elimination(200, 7);
  for (auto [b, cap] : std::vector<std::pair<std::uint64_t, std::uint32_t>>{{2000, 13}, {70000, 19}, {1 << 20, 31}}) {
    const auto rep = just168_elimination(b, cap);
    EXPECT_EQ(rep.tj_survivors, base.tj_survivors);
    EXPECT_EQ(rep.product_survivors.size(), base.product_survivors.size());
    EXPECT_TRUE(rep.b_monotone);
  }
}

TEST(Tensor, FixedPointArgument) {
  const auto& m = canonical_generators();
  const auto v = tensor_fixed_point_argument({m.a, m.b}, {m.a, m.b});
  EXPECT_TRUE(v.applicable);
  EXPECT_TRUE(v.b_part_fixes_zero);
  EXPECT_TRUE(v.tensor_fixed_point_free);
  EXPECT_EQ(v.kernel_dim, 0u);

  // Brute force over F_2^9: kernel of alpha (x) I - I and common fixed points.
  const auto alpha = kronecker(*v.alpha, GFMatrix::identity(2, 3));
  std::vector<GFMatrix> kron{kronecker(m.a, GFMatrix::identity(2, 3)), kronecker(m.b, GFMatrix::identity(2, 3)),
                             kronecker(GFMatrix::identity(2, 3), m.a), kronecker(GFMatrix::identity(2, 3), m.b)};
  std::size_t ker = 0, fixed = 0;
  for (std::uint32_t i = 0; i < 512; ++i) {
    GFVector y(2, 9);
    for (std::uint32_t k = 0; k < 9; ++k) y = y.with_entry(k, (i >> k) & 1);
    ker += alpha * y == y;
    bool all = true;
    for (const auto& g : kron) all = all && g * y == y;
    fixed += all;
  }
  EXPECT_EQ(ker, 1u);
  EXPECT_EQ(fixed, 1u);

  const auto none = tensor_fixed_point_argument({GFMatrix::identity(2, 3)}, {m.a});
  EXPECT_FALSE(none.applicable);
  EXPECT_THROW(require_tensor_argument({GFMatrix::identity(2, 3)}, {m.a}), PreconditionError);
}

TEST(Measured, ConstructedGroups) {
  const auto w1 = build_wreath(find_transitive_soluble(1, ""));
  const auto p1 = measure_parameters(w1);
  EXPECT_EQ(p1.socle_order, 168u);
  EXPECT_TRUE(p1.mk_ry);
  EXPECT_TRUE(p1.key.holds);
  EXPECT_EQ(p1.matched_case, "iii");
  EXPECT_TRUE(p1.dimension_bound);

  const auto p2 = measure_parameters(wreath_r2());
  EXPECT_EQ(p2.minimal_normal_count, 1u);
  EXPECT_EQ(p2.socle_order, 168u * 168u);
  EXPECT_EQ(p2.params.m, 2u);
  EXPECT_EQ(p2.params.js[0].r, 2u);
  EXPECT_EQ(p2.params.js[0].y, 1u);
  EXPECT_EQ(p2.params.js[0].z, 1u);
  EXPECT_TRUE(p2.mk_ry);
  EXPECT_EQ(p2.key.lhs, Rational(6));
  EXPECT_EQ(p2.key.rhs, Rational(10));
  EXPECT_TRUE(p2.key.holds);
  EXPECT_EQ(p2.matched_case, "iii");
  EXPECT_TRUE(p2.dimension_bound);
  EXPECT_THROW(measure_parameters(build_wreath(find_transitive_soluble(3, "C3"))), PreconditionError);
}
