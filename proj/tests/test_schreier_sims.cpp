#include <gtest/gtest.h>

#include <set>

#include "holoscope/schreier_sims.hpp"
#include "support.hpp"

using namespace holoscope;
using namespace holoscope::testing;

namespace {

template <class E>
std::vector<PointPerm> as_point_perms(const std::vector<E>& gens, std::uint32_t points) {
  std::vector<PointPerm> out;
  for (const auto& g : gens) {
    std::vector<std::uint32_t> img(points);
    for (std::uint32_t x = 0; x < points; ++x) img[x] = act_on_point(g, x);
    out.push_back(PointPerm::from(img));
  }
  return out;
}

}  // namespace

TEST(StabilizerChain, OrdersMatchClosure) {
  const auto s4 = sym4();
  EXPECT_EQ(StabilizerChain(4, as_point_perms(s4.generators(), 4)).order(), 24u);
  const auto a5 = alt5();
  EXPECT_EQ(StabilizerChain(5, as_point_perms(a5.generators(), 5)).order(), 60u);
  const auto& g = canonical_group();
  EXPECT_EQ(StabilizerChain(8, as_point_perms(g.generators(), 8)).order(), 168u);
  const auto& big = wreath_r2();
  EXPECT_EQ(StabilizerChain(64, as_point_perms(big.generators, 64)).order(), 56448u);
}

TEST(StabilizerChain, MembershipAgreesWithClosure) {
  const auto& g = canonical_group();
  const StabilizerChain chain(8, as_point_perms(g.generators(), 8));
  std::set<std::vector<PointPerm::Point>> inside;
  for (const auto& x : g.elements()) {
    const auto p = as_point_perms(std::vector<AffineElement>{x}, 8).front();
    EXPECT_TRUE(chain.contains(p));
    inside.insert(p.images());
  }
  EXPECT_EQ(inside.size(), 168u);
  const auto s8 = symmetric_group(8);
  std::size_t outside = 0;
  for (std::size_t i = 0; i < 2000; ++i) {
    const auto& x = pick(s8);
    const auto p = PointPerm::from(x.images());
    EXPECT_EQ(chain.contains(p), inside.count(p.images()) == 1);
    outside += inside.count(p.images()) == 0;
  }
  EXPECT_GT(outside, 0u);
}

TEST(StabilizerChain, BaseAndOrbitSizes) {
  const auto s4 = sym4();
  const StabilizerChain chain(4, as_point_perms(s4.generators(), 4));
  std::uint64_t prod = 1;
  for (auto s : chain.orbit_sizes()) prod *= s;
  EXPECT_EQ(prod, 24u);
  EXPECT_EQ(chain.base().size(), chain.orbit_sizes().size());
}

TEST(StabilizerChain, DerivedSeriesAgreesWithClosure) {
  const auto s4 = sym4();
  EXPECT_EQ(derived_series_orders(as_point_perms(s4.generators(), 4), 4), (std::vector<std::uint64_t>{24, 12, 4, 1}));
  EXPECT_TRUE(is_soluble_chain(as_point_perms(s4.generators(), 4), 4));
  EXPECT_FALSE(is_soluble_chain(as_point_perms(alt5().generators(), 5), 5));
  const auto& big = wreath_r2();
  const auto closure = derived_series_orders(*big.group);
  const auto chain = derived_series_orders(as_point_perms(big.generators, 64), 64);
  ASSERT_EQ(closure.size(), chain.size());
  for (std::size_t i = 0; i < chain.size(); ++i) EXPECT_EQ(closure[i], chain[i]);
  EXPECT_EQ(chain.back(), 168u * 168u);
}

TEST(StabilizerChain, GeneratorOnlyR3) {
  const auto w = build_wreath(find_transitive_soluble(3, "C3"));
  EXPECT_FALSE(w.group.has_value());
  EXPECT_EQ(w.order, 168ull * 168 * 168 * 3);
  EXPECT_EQ(w.orbit_size, 512u);
  EXPECT_EQ(w.stabilizer_order, 21ull * 21 * 21 * 3);
}

TEST(StabilizerChain, DegreeChecks) {
  EXPECT_THROW(StabilizerChain(0), BoundExceeded);
  StabilizerChain c(4);
  EXPECT_THROW(c.add_generator(PointPerm::identity(5)), DimensionError);
  EXPECT_FALSE(c.contains(PointPerm::identity(5)));
  EXPECT_EQ(c.order(), 1u);
}
