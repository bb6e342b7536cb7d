#include <gtest/gtest.h>

#include <map>

#include "holoscope/small_groups.hpp"
#include "support.hpp"

using namespace holoscope;
using namespace holoscope::testing;

namespace {

const std::vector<SmallGroup>& catalogue() {
  static const auto all = small_groups(16);
  return all;
}

}  // namespace

TEST(SmallGroups, CountsPerOrder) {
  // Number of isomorphism types of each order 1..16.
  const std::map<std::size_t, std::size_t> expected = {{1, 1},  {2, 1},  {3, 1},  {4, 2},  {5, 1},  {6, 2},
                                                       {7, 1},  {8, 5},  {9, 2},  {10, 2}, {11, 1}, {12, 5},
                                                       {13, 1}, {14, 2}, {15, 1}, {16, 14}};
  std::map<std::size_t, std::size_t> seen;
  for (const auto& g : catalogue()) {
    EXPECT_EQ(g.group.order(), g.table.size());
    ++seen[g.group.order()];
  }
  EXPECT_EQ(seen, expected);
}

TEST(SmallGroups, PairwiseNonIsomorphic) {
  const auto& all = catalogue();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      if (all[i].table.size() != all[j].table.size()) continue;
      SCOPED_TRACE(all[i].name + " vs " + all[j].name);
      EXPECT_FALSE(are_isomorphic(all[i].table, all[j].table));
    }
}

TEST(SmallGroups, IdentifyRoundTrip) {
  for (const auto& g : catalogue()) EXPECT_EQ(identify_small_group(g.table), g.name);
  EXPECT_EQ(identify_small_group(CayleyTable::of(sym4())), std::nullopt);
  const auto v4 = perm_group(4, {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}});
  EXPECT_EQ(identify_small_group(CayleyTable::of(v4)), "C2^2");
  const auto& m = canonical_generators();
  EXPECT_EQ(identify_small_group(CayleyTable::of(FiniteGroup<GFMatrix>::close({m.c, m.d}))), "D8");
}

TEST(SmallGroups, AbelianAndOrderStatistics) {
  std::size_t abelian16 = 0;
  for (const auto& g : catalogue())
    if (g.group.order() == 16 && g.table.is_abelian()) ++abelian16;
  EXPECT_EQ(abelian16, 5u);
  const auto q8 = realize(small_group_entry("Q8"));
  EXPECT_EQ(q8.table.order_statistics(), (std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 1}, {4, 6}}));
  const auto d8 = realize(small_group_entry("D8"));
  EXPECT_EQ(d8.table.order_statistics(), (std::map<std::uint32_t, std::uint32_t>{{1, 1}, {2, 5}, {4, 2}}));
}

TEST(SmallGroups, RegularRepresentation) {
  for (const auto& g : catalogue()) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.group.order());
    EXPECT_EQ(g.group.identity().degree(), n);
    for (const auto& x : g.group.elements()) {
      if (x.is_identity()) continue;
      for (std::uint32_t i = 0; i < n; ++i) EXPECT_NE(x(i), i);
    }
  }
}

TEST(ToddCoxeter, EnumeratesAndRejects) {
  const Presentation s3{2, {"aaa", "bb", "abab"}};
  const auto t = CosetTable::enumerate(s3);
  EXPECT_EQ(t.size(), 6u);
  EXPECT_TRUE(t.relators_hold(s3));
  EXPECT_EQ(CosetTable::enumerate(Presentation{2, {"aaaaa", "bb", "ababab"}}).size(), 60u);
  EXPECT_THROW(CosetTable::enumerate(Presentation{1, {"a1"}}), ParseError);
  EXPECT_THROW(CosetTable::enumerate(Presentation{1, {"ab"}}), ParseError);
  EXPECT_THROW(CosetTable::enumerate(Presentation{2, {"aa"}}, 1000), BoundExceeded);
  EXPECT_THROW(small_group_entry("C17"), PreconditionError);
  EXPECT_THROW(small_groups(17), PreconditionError);
}
