#include <gtest/gtest.h>

#include <array>
#include <set>

#include "holoscope/admissibility.hpp"
#include "holoscope/small_groups.hpp"
#include "support.hpp"

using namespace holoscope;
using namespace holoscope::testing;

namespace {

template <class E>
std::vector<FiniteGroup<E>> transitive_subgroups(const HolomorphContext<E>& ctx, std::size_t bound) {
  std::vector<FiniteGroup<E>> out;
  for (auto& h : all_subgroups(ctx.ambient(), bound))
    if (is_transitive(h, ctx)) out.push_back(std::move(h));
  return out;
}

// Pairwise closure and the two action conditions, computed from scratch.
template <class E>
std::array<bool, 3> brute_conditions(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx, const SubgroupOfN& m) {
  std::vector<E> s;
  for (const auto& x : g.elements())
    if (m.contains(act_on_point(x, 0))) s.push_back(x);
  std::set<E> in(s.begin(), s.end());
  bool closed = true, moves = true, th = true;
  for (std::size_t i = 0; i < s.size() && closed; ++i)
    for (std::size_t j = 0; j < s.size() && closed; ++j)
      if (!in.count(s[i] * s[j])) closed = false;
  for (const auto& a : s)
    for (auto y : m.points()) {
      if (!m.contains(act_on_point(a, y))) moves = false;
      const auto t = ctx.base.mul(ctx.base.inv(act_on_point(a, 0)), act_on_point(a, y));
      if (!m.contains(t)) th = false;
    }
  return {closed, moves, th};
}

template <class E>
std::size_t check_pairs(const HolomorphContext<E>& ctx, const std::vector<FiniteGroup<E>>& groups) {
  std::size_t n = 0;
  const auto subs = subgroups_of_n(ctx);
  for (const auto& g : groups)
    for (const auto& m : subs) {
      const auto rep = is_admissible(g, ctx, m);
      EXPECT_TRUE(rep.equivalence_checked);
      const auto b = brute_conditions(g, ctx, m);
      EXPECT_EQ(b[0], rep.admissible);
      EXPECT_EQ(b[1], rep.admissible);
      EXPECT_EQ(b[2], rep.admissible);
      if (rep.invariant) {
        EXPECT_TRUE(rep.admissible);
      }
      if (rep.admissible) {
        EXPECT_EQ(rep.m_star->order() * ctx.point_count(), g.order() * m.order());
      }
      ++n;
    }
  return n;
}

std::size_t invariant_subspace_count(const std::vector<GFMatrix>& mats, std::uint32_t p, std::uint32_t n) {
  std::size_t count = 0;
  for (const auto& s : all_subspaces(p, n)) {
    bool inv = true;
    for (const auto& m : mats)
      for (const auto& b : s.basis())
        if (!s.contains(m * b)) inv = false;
    count += inv;
  }
  return count;
}

}  // namespace

TEST(Subspaces, CountsAreGaussianBinomialSums) {
  EXPECT_EQ(all_subspaces(2, 2).size(), 5u);
  EXPECT_EQ(all_subspaces(2, 3).size(), 16u);
  EXPECT_EQ(all_subspaces(2, 4).size(), 67u);
  EXPECT_EQ(all_subspaces(3, 2).size(), 6u);
  EXPECT_EQ(all_subspaces(2, 6).size(), 2825u);
}

TEST(SubgroupOfN, Validation) {
  const auto ctx = build_affine_holomorph(2, 3);
  EXPECT_THROW(SubgroupOfN(ctx, std::vector<std::uint32_t>{0, 1, 2}), PreconditionError);
  EXPECT_THROW(SubgroupOfN(ctx, std::vector<std::uint32_t>{1}), PreconditionError);
  EXPECT_THROW(SubgroupOfN(ctx, std::vector<std::uint32_t>{0, 9}), PreconditionError);
  EXPECT_THROW(SubgroupOfN(ctx, Subspace::full(2, 4)), PreconditionError);
  EXPECT_EQ(SubgroupOfN(ctx, std::vector<std::uint32_t>{0, 3, 1, 2}).order(), 4u);
  EXPECT_TRUE(SubgroupOfN::trivial(ctx).is_trivial());
  EXPECT_TRUE(SubgroupOfN::whole(ctx).is_whole());
}

TEST(MStar, DegenerateSubgroups) {
  const auto ctx = build_affine_holomorph(2, 3);
  const auto& g = canonical_group();
  const auto whole = is_admissible(g, ctx, SubgroupOfN::whole(ctx));
  EXPECT_TRUE(whole.admissible);
  EXPECT_TRUE(whole.invariant);
  EXPECT_EQ(whole.m_star->order(), 168u);
  const auto triv = is_admissible(g, ctx, SubgroupOfN::trivial(ctx));
  EXPECT_TRUE(triv.admissible);
  EXPECT_TRUE(triv.invariant);
  EXPECT_EQ(triv.m_star->order(), 21u);
  EXPECT_TRUE(*triv.m_star_soluble);
  EXPECT_TRUE(triv.m_star->same_elements(stabilizer(g, ActionTable::of(g, 8), 0).group()));
  const auto gp = FiniteGroup<AffineElement>::close({hat('A'), hat('B')});
  EXPECT_THROW(is_admissible(gp, ctx, SubgroupOfN::whole(ctx)), PreconditionError);
}

TEST(MStar, FirstBlockOfWreathR2) {
  const auto& w = wreath_r2();
  const auto& g = *w.group;
  const SubgroupOfN v1(w.ctx, block_subspace(0, 2));
  std::size_t filtered = 0;
  for (const auto& x : g.elements()) filtered += v1.contains(act_on_point(x, 0));
  const auto ms = m_star(g, w.ctx, v1);
  // A transitive G gives |M| cosets of the point stabiliser: 8 * 882.
  EXPECT_EQ(filtered, 7056u);
  EXPECT_EQ(ms.subset.size(), 7056u);
  EXPECT_FALSE(ms.is_subgroup);
  const auto rep = is_admissible(g, w.ctx, v1);
  EXPECT_FALSE(rep.admissible);
  EXPECT_FALSE(rep.invariant);
  const auto b = brute_conditions(g, w.ctx, v1);
  EXPECT_FALSE(b[0] || b[1] || b[2]);
}

TEST(MStar, ThreeWayEquivalenceOnManyPairs) {
  std::size_t pairs = 0;
  const auto c22 = build_affine_holomorph(2, 2);
  pairs += check_pairs(c22, transitive_subgroups(c22, 48));
  const auto c23 = build_affine_holomorph(2, 3);
  pairs += check_pairs(c23, enumerate_transitive_T_subgroups().groups);
  pairs += check_pairs(c23, enumerate_regular_subgroups(c23));
  const auto c32 = build_affine_holomorph(3, 2);
  pairs += check_pairs(c32, enumerate_regular_subgroups(c32));
  for (const char* name : {"S3", "D8", "Q8", "C4xC2", "A4"}) {
    const auto sg = realize(small_group_entry(name));
    const auto ctx = build_holomorph(sg.group, name);
    pairs += check_pairs(ctx, enumerate_regular_subgroups(ctx));
  }
  const auto s3 = build_holomorph(realize(small_group_entry("S3")).group, "S3");
  pairs += check_pairs(s3, transitive_subgroups(s3, 48));
  EXPECT_GE(pairs, 100u);
}

TEST(MStar, RegularSubgroupRoundTrip) {
  auto run = [](const auto& ctx) {
    for (const auto& g : enumerate_regular_subgroups(ctx)) {
      for (const auto& m : subgroups_of_n(ctx)) {
        const auto rep = is_admissible(g, ctx, m);
        if (!rep.admissible) continue;
        EXPECT_EQ(rep.m_star->order(), m.order());
        std::set<std::uint32_t> img;
        for (const auto& x : rep.m_star->elements()) img.insert(act_on_point(x, 0));
        EXPECT_EQ(std::vector<std::uint32_t>(img.begin(), img.end()), m.points());
      }
      for (const auto& h : all_subgroups(g, 64)) {
        std::vector<std::uint32_t> pts;
        for (const auto& x : h.elements()) pts.push_back(act_on_point(x, 0));
        std::set<std::uint32_t> ps(pts.begin(), pts.end());
        bool closed = true;
        for (auto a : ps)
          for (auto b : ps) closed = closed && ps.count(ctx.base.mul(a, b));
        if (!closed) continue;
        const SubgroupOfN m(ctx, pts);
        const auto rep = is_admissible(g, ctx, m);
        EXPECT_TRUE(rep.admissible);
        EXPECT_TRUE(rep.m_star->same_elements(h));
      }
    }
  };
  run(build_affine_holomorph(2, 3));
  run(build_holomorph(realize(small_group_entry("D8")).group, "D8"));
  run(build_holomorph(realize(small_group_entry("A4")).group, "A4"));
}

TEST(Invariance, Examples) {
  const auto& w = wreath_r2();
  EXPECT_TRUE(is_invariant(*w.group, w.ctx, SubgroupOfN::whole(w.ctx)));
  EXPECT_TRUE(is_invariant(*w.group, w.ctx, SubgroupOfN::trivial(w.ctx)));
  EXPECT_FALSE(is_invariant(*w.group, w.ctx, SubgroupOfN(w.ctx, block_subspace(0, 2))));
  const auto j = j_group(2);
  EXPECT_TRUE(is_invariant(j, w.ctx, SubgroupOfN(w.ctx, block_subspace(0, 2))));

  const auto ctx = build_affine_holomorph(2, 3);
  std::vector<AffineElement> gens{AffineElement::translation(GFVector(2, {1, 0, 0})),
                                  AffineElement::translation(GFVector(2, {0, 1, 0})),
                                  AffineElement(GFMatrix::from_rows(2, {{1, 0, 1}, {0, 1, 0}, {0, 0, 1}}),
                                                GFVector(2, {0, 0, 1}))};
  const auto g = FiniteGroup<AffineElement>::close(gens);
  ASSERT_TRUE(is_transitive(g, ctx));
  const auto u = translations(g);
  EXPECT_EQ(u.dim(), 2u);
  EXPECT_TRUE(is_invariant(g, ctx, SubgroupOfN(ctx, u)));
}

TEST(Quotient, DegenerateCases) {
  const auto ctx = build_affine_holomorph(2, 3);
  const auto& g = canonical_group();
  const auto q0 = quotient_reduction(g, ctx, SubgroupOfN::trivial(ctx));
  EXPECT_EQ(q0.gbar.order(), 168u);
  EXPECT_EQ(q0.k.order(), 1u);
  ASSERT_TRUE(q0.gbar_affine.has_value());
  EXPECT_EQ(q0.gbar_affine->order(), 168u);
  const auto qn = quotient_reduction(g, ctx, SubgroupOfN::whole(ctx));
  EXPECT_EQ(qn.gbar.order(), 1u);
  EXPECT_EQ(qn.k.order(), 168u);
  EXPECT_FALSE(qn.ctxbar.has_value());
}

TEST(Quotient, ReducibleJYieldsIrreducibleQuotient) {
  const auto ctx = build_affine_holomorph(2, 6);
  const auto j = j_group(2);
  EXPECT_FALSE(irreducibility(j, ctx));
  const auto q = quotient_reduction(j, ctx, SubgroupOfN(ctx, block_subspace(0, 2)));
  EXPECT_EQ(q.gbar.order(), 168u);
  EXPECT_EQ(j.order() % q.gbar.order(), 0u);
  EXPECT_EQ(q.k.order(), 168u);
  ASSERT_TRUE(q.ctxbar.has_value());
  EXPECT_TRUE(is_transitive(*q.gbar_affine, *q.ctxbar));
  EXPECT_TRUE(irreducibility(*q.gbar_affine, *q.ctxbar));
}

TEST(Quotient, TransitiveImagesAndDivisibility) {
  const auto ctx = build_affine_holomorph(2, 3);
  for (const auto& g : enumerate_regular_subgroups(ctx))
    for (const auto& m : subgroups_of_n(ctx)) {
      if (!is_invariant(g, ctx, m)) continue;
      const auto q = quotient_reduction(g, ctx, m);
      EXPECT_EQ(g.order() % q.gbar.order(), 0u);
      EXPECT_EQ(q.gbar.order() * q.k.order(), g.order());
      const std::size_t qpoints = ctx.point_count() / m.order();
      EXPECT_EQ(orbit(q.gbar, ActionTable::of(q.gbar, qpoints), 0).size(), qpoints);
    }
}

TEST(Quotient, Rejections) {
  const auto& w = wreath_r2();
  EXPECT_THROW(quotient_reduction(*w.group, w.ctx, SubgroupOfN(w.ctx, block_subspace(0, 2))), PreconditionError);
  const auto sg = realize(small_group_entry("S3"));
  const auto ctx = build_holomorph(sg.group, "S3");
  const auto g = enumerate_regular_subgroups(ctx).front();
  EXPECT_THROW(quotient_reduction(g, ctx, SubgroupOfN::trivial(ctx)), PreconditionError);
}

TEST(Counterexample, NothingUpToOrder8) {
  for (const auto& sg : small_groups(8)) {
    const auto ctx = build_holomorph(sg.group, sg.name);
    for (const auto& g : enumerate_regular_subgroups(ctx)) {
      const auto v = counterexample_status(g, ctx);
      EXPECT_EQ(v.status, CounterexampleStatus::not_counterexample);
      EXPECT_EQ(v.reason, "G is soluble");
    }
  }
  const auto ctx = build_affine_holomorph(2, 3);
  EXPECT_EQ(counterexample_status(canonical_group(), ctx).reason, "G is not regular");
  std::vector<AffineElement> tr;
  for (std::uint32_t i = 0; i < 3; ++i) tr.push_back(AffineElement::translation(GFVector(2, 3).with_entry(i, 1)));
  EXPECT_EQ(counterexample_status(FiniteGroup<AffineElement>::close(tr), ctx).status,
            CounterexampleStatus::not_counterexample);
}

TEST(Irreducibility, KnownExamples) {
  EXPECT_TRUE(irreducibility(canonical_group(), build_affine_holomorph(2, 3)));
  const auto& w = wreath_r2();
  EXPECT_TRUE(irreducibility(*w.group, w.ctx));
  EXPECT_FALSE(irreducibility(j_group(2), w.ctx));
  EXPECT_THROW(irreducibility(*w.group, w.ctx, 10), BoundExceeded);
}

TEST(Irreducibility, AgreesWithSubspaceScan) {
  std::size_t checked = 0, irreducible = 0;
  auto check = [&](const std::vector<GFMatrix>& mats, std::uint32_t p, std::uint32_t n) {
    const bool fast = linear_irreducible(mats, p, n);
    EXPECT_EQ(fast, invariant_subspace_count(mats, p, n) == 2);
    ++checked;
    irreducible += fast;
  };
  const auto gl32 = FiniteGroup<GFMatrix>::close(gl_generators(2, 3));
  for (const auto& h : all_subgroups(gl32, 200)) check(h.generators(), 2, 3);
  const auto gl23 = FiniteGroup<GFMatrix>::close(gl_generators(3, 2));
  for (const auto& h : all_subgroups(gl23, 200)) check(h.generators(), 3, 2);
  const auto gl22 = FiniteGroup<GFMatrix>::close(gl_generators(2, 2));
  for (const auto& h : all_subgroups(gl22, 200)) check(h.generators(), 2, 2);
  const auto gl42 = FiniteGroup<GFMatrix>::close(gl_generators(2, 4));
  for (int i = 0; i < 200; ++i) {
    std::vector<GFMatrix> mats{pick(gl42)};
    if (i % 2) mats.push_back(pick(gl42));
    check(mats, 2, 4);
  }
  EXPECT_GT(irreducible, 0u);
  EXPECT_LT(irreducible, checked);
}
