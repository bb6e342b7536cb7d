#include <gtest/gtest.h>

#include <map>
#include <set>

#include "holoscope/construction.hpp"
#include "support.hpp"

using namespace holoscope;
using namespace holoscope::testing;

namespace {

bool transitive8(const FiniteGroup<AffineElement>& g) { return orbit(g, ActionTable::of(g, 8), 0).size() == 8; }

// All complements to the translations in Aff(F_2^3): one per cocycle, fixed by its values on GL generators.
std::vector<FiniteGroup<AffineElement>> complements_by_cocycles() {
  const auto gens = gl_generators(2, 3);
  std::vector<FiniteGroup<AffineElement>> out;
  std::vector<std::uint32_t> choice(gens.size(), 0);
  while (true) {
    std::vector<AffineElement> lifted;
    for (std::size_t i = 0; i < gens.size(); ++i) lifted.emplace_back(gens[i], f2_vector(choice[i]));
    auto g = FiniteGroup<AffineElement>::close(lifted, 1344);
    if (g.order() == 168) out.push_back(std::move(g));
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == 8) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

std::string shape_key(const std::vector<WreathSpec>& specs) {
  std::map<std::string, int> m;
  for (const auto& s : specs) {
    auto base = s.name.substr(0, s.name.find('#'));
    ++m[base + "/" + std::to_string(s.h.order())];
  }
  std::string out;
  for (const auto& [k, v] : m) out += k + "x" + std::to_string(v) + " ";
  return out;
}

}  // namespace

TEST(Canonical, RelationsAndOrders) {
  const auto& m = canonical_generators();
  EXPECT_EQ(m.a.order(), 7u);
  EXPECT_EQ(m.b.order(), 3u);
  EXPECT_EQ(m.c.order(), 4u);
  EXPECT_EQ(m.d.order(), 2u);
  EXPECT_EQ(m.d * m.c * m.d.inverse(), m.c.pow(3));
  EXPECT_EQ(m.d * m.b, m.b * m.b * m.d);
  const auto rel = canonical_relations(m.a, m.b, m.c, m.d);
  EXPECT_EQ(rel.size(), 11u);
  for (const auto& [name, ok] : rel) {
    EXPECT_TRUE(ok) << name;
    EXPECT_FALSE(relation_ref(name).empty());
  }
  EXPECT_EQ(relation_ref("A^7 = I"), "AB-relation");
  EXPECT_EQ(relation_ref("C^4 = I"), "CD-relation");
  EXPECT_EQ(relation_ref("DB = B^2 D"), "ABCD-relation");
}

TEST(Psi, UniqueSolution) {
  const auto& s = canonical_psi();
  ASSERT_EQ(s.solutions.size(), 1u);
  EXPECT_EQ(s.c, GFVector(2, {0, 1, 1}));
  EXPECT_EQ(s.d, GFVector(2, {1, 0, 0}));
  for (const auto& [name, ok] : s.hatted_relations) EXPECT_TRUE(ok) << name;
  EXPECT_EQ(s.hatted_relations.size(), 11u);

  const auto& m = canonical_generators();
  std::size_t good = 0;
  for (std::uint32_t c = 0; c < 8; ++c)
    for (std::uint32_t d = 0; d < 8; ++d) {
      const AffineElement hc(m.c, f2_vector(c)), hd(m.d, f2_vector(d));
      const auto g = FiniteGroup<AffineElement>::close({hat('A'), hat('B'), hc, hd}, 1344);
      if (g.order() == 168 && transitive8(g)) {
        ++good;
        EXPECT_EQ(f2_vector(c), GFVector(2, {0, 1, 1}));
        EXPECT_EQ(f2_vector(d), GFVector(2, {1, 0, 0}));
      }
    }
  EXPECT_EQ(good, 1u);
}

TEST(Psi, MapProperties) {
  const auto& s = canonical_psi();
  const auto& m = canonical_generators();
  EXPECT_EQ(s.psi.size(), 168u);
  EXPECT_TRUE(s.psi(GFMatrix::identity(2, 3)).is_zero());
  EXPECT_TRUE(s.psi(m.a).is_zero());
  EXPECT_TRUE(s.psi(m.b).is_zero());
  EXPECT_EQ(s.psi(m.c), GFVector(2, {0, 1, 1}));
  EXPECT_TRUE(s.psi.cocycle_holds());
  EXPECT_TRUE(s.psi.surjective());
  EXPECT_THROW(s.psi(GFMatrix(2, 3, 3)), PreconditionError);
  EXPECT_THROW(PsiMap(build_affine_holomorph(2, 3).ambient()), InvariantViolation);
}

TEST(TSubgroups, ExactlyEightConjugate) {
  const auto e = enumerate_transitive_T_subgroups();
  ASSERT_EQ(e.groups.size(), 8u);
  EXPECT_EQ(e.sylow7_count, 8u);
  EXPECT_TRUE(e.each_psi_unique);
  EXPECT_TRUE(e.single_conjugacy_orbit);
  EXPECT_EQ(e.conjugates_of_canonical, 8u);
  EXPECT_TRUE(e.oracle_agrees);
  EXPECT_EQ(e.complements, 16u);
  EXPECT_EQ(e.transitive_complements, 8u);
  const auto t = CayleyTable::of(canonical_group());
  for (const auto& g : e.groups) {
    EXPECT_EQ(g.order(), 168u);
    EXPECT_TRUE(transitive8(g));
    EXPECT_EQ(translations(g).dim(), 0u);
    EXPECT_TRUE(are_isomorphic(CayleyTable::of(g), t));
  }
}

TEST(TSubgroups, CocycleOracle) {
  const auto comps = complements_by_cocycles();
  std::vector<FiniteGroup<AffineElement>> uniq;
  for (const auto& g : comps) detail::push_unique(uniq, g);
  EXPECT_EQ(uniq.size(), 16u);
  std::vector<FiniteGroup<AffineElement>> transitive;
  for (const auto& g : uniq)
    if (transitive8(g)) transitive.push_back(g);
  EXPECT_EQ(transitive.size(), 8u);
  EXPECT_TRUE(same_group_set(transitive, enumerate_transitive_T_subgroups().groups));
}

TEST(Wreath, R1IsCanonical) {
  const auto w = build_wreath(find_transitive_soluble(1, ""));
  ASSERT_TRUE(w.group.has_value());
  EXPECT_TRUE(w.group->same_elements(canonical_group()));
  EXPECT_EQ(w.order, 168u);
  EXPECT_EQ(w.stabilizer_order, 21u);
  EXPECT_FALSE(w.v1.has_value());
  for (const auto& c : w.checks) EXPECT_TRUE(c.pass) << c.name;
}

TEST(Wreath, R2C2) {
  const auto& w = wreath_r2();
  EXPECT_EQ(w.order, 56448u);
  EXPECT_EQ(w.orbit_size, 64u);
  EXPECT_EQ(w.stabilizer_order, 882u);
  EXPECT_TRUE(w.stabilizer_soluble);
  EXPECT_TRUE(w.irreducible);
  EXPECT_TRUE(w.translations_trivial);
  const std::set<std::string> v1_checks = {"Q = V1 admissible", "|Q_*|", "Q_* insoluble", "V1 not G-invariant"};
  for (const auto& c : w.checks)
    if (!v1_checks.count(c.name)) {
      EXPECT_TRUE(c.pass) << c.name;
    }
  ASSERT_TRUE(w.v1.has_value());
  EXPECT_FALSE(w.v1->invariant);
}

TEST(Wreath, R2FirstBlockMeasured) {
  const auto w = build_wreath(find_transitive_soluble(2, "C2"), WreathOptions{2, true});
  ASSERT_TRUE(w.v1.has_value());
  const auto& q = *w.v1;
  EXPECT_EQ(q.m_star_size, 7056u);
  EXPECT_FALSE(q.admissible);
  EXPECT_FALSE(q.m_star_order.has_value());
  EXPECT_EQ(q.setwise_stabilizer_order, 3528u);
  EXPECT_FALSE(q.setwise_stabilizer_soluble);
  EXPECT_EQ(q.subspaces_scanned, 2825u);
  EXPECT_EQ(q.proper_admissible, 0u);
  EXPECT_EQ(q.proper_admissible_insoluble, 0u);
}

TEST(Wreath, GeneratorOnlyR3R4) {
  for (std::uint32_t r : {3u, 4u})
    for (const auto& spec : enumerate_transitive_soluble(r)) {
      SCOPED_TRACE(std::to_string(r) + " " + spec.name);
      const auto w = build_wreath(spec);
      EXPECT_FALSE(w.group.has_value());
      EXPECT_EQ(w.order, ipow(168, r) * spec.h.order());
      EXPECT_EQ(w.orbit_size, ipow(8, r));
      EXPECT_EQ(w.stabilizer_order, ipow(21, r) * spec.h.order());
      EXPECT_TRUE(w.stabilizer_soluble);
      EXPECT_TRUE(w.irreducible);
      EXPECT_TRUE(w.translations_trivial);
      for (const auto& c : w.checks) EXPECT_TRUE(c.pass) << c.name;
    }
}

TEST(Wreath, BlockMatrices) {
  const auto swap = block_permutation(Permutation::from_cycles(2, {{0, 1}}));
  const auto v1 = block_subspace(0, 2), v2 = block_subspace(1, 2);
  for (const auto& b : v1.basis()) EXPECT_TRUE(v2.contains(swap.lin() * b));
  const auto lifted = block_lift(hat('C'), 1, 2);
  EXPECT_TRUE(v1.contains(lifted.trans()) == false);
  EXPECT_TRUE(v2.contains(lifted.trans()));
  for (const auto& b : v1.basis()) EXPECT_EQ(lifted.lin() * b, b);
}

TEST(TransitiveSoluble, CountsAndLatticeOracle) {
  EXPECT_EQ(enumerate_transitive_soluble(1).size(), 1u);
  EXPECT_EQ(enumerate_transitive_soluble(2).size(), 1u);
  EXPECT_EQ(enumerate_transitive_soluble(3).size(), 2u);
  const auto r4 = enumerate_transitive_soluble(4);
  EXPECT_EQ(r4.size(), 9u);
  EXPECT_EQ(shape_key(r4), "A4/12x1 C4/4x3 D4/8x3 S4/24x1 V4/4x1 ");

  // Every subgroup of S_4 is 2-generated.
  const auto s4 = symmetric_group(4);
  std::vector<FiniteGroup<Permutation>> subs;
  for (const auto& x : s4.elements())
    for (const auto& y : s4.elements()) detail::push_unique(subs, FiniteGroup<Permutation>::close({x, y}));
  EXPECT_EQ(subs.size(), 30u);
  std::size_t transitive = 0;
  for (const auto& h : subs)
    if (is_transitive_perm_group(h)) {
      ++transitive;
      bool found = false;
      for (const auto& spec : r4) found = found || spec.h.same_elements(h);
      EXPECT_TRUE(found);
    }
  EXPECT_EQ(transitive, 9u);
  EXPECT_THROW(enumerate_transitive_soluble(5), PreconditionError);
}

TEST(TransitiveSoluble, NamesAndErrors) {
  EXPECT_EQ(find_transitive_soluble(2, "S2").h.order(), 2u);
  EXPECT_EQ(find_transitive_soluble(4, "C2^2").h.order(), 4u);
  EXPECT_EQ(find_transitive_soluble(4, "D8").h.order(), 8u);
  EXPECT_EQ(find_transitive_soluble(4, "C4#3").h.order(), 4u);
  try {
    find_transitive_soluble(1, "S2");
    FAIL() << "no exception";
  } catch (const PreconditionError& e) {
    EXPECT_EQ(std::string(e.what()), "H must be a transitive subgroup of S_1 (soluble); 'S2' is not one");
  }
  EXPECT_THROW(find_transitive_soluble(3, "C2"), PreconditionError);
  const auto intransitive = FiniteGroup<Permutation>::close({Permutation::from_cycles(3, {{0, 1}})});
  EXPECT_THROW(make_wreath_spec(3, "x", intransitive), PreconditionError);
  EXPECT_THROW(make_wreath_spec(2, "x", symmetric_group(3)), PreconditionError);
  EXPECT_THROW(build_wreath(WreathSpec{5, "x", symmetric_group(4)}), PreconditionError);
}

TEST(Normalizer, ROne) {
  const auto n = normalizer_of_J_fixing_zero(1);
  EXPECT_EQ(n.group.order(), 21u);
  EXPECT_TRUE(n.contains_j_prime);
  EXPECT_TRUE(n.equals_j_prime_sr);
  const auto& g = canonical_group();
  const auto gl = FiniteGroup<GFMatrix>::close(gl_generators(2, 3));
  std::size_t filtered = 0;
  for (const auto& x : gl.elements()) {
    const auto ax = AffineElement::linear(x);
    bool norm = true;
    for (const auto& s : g.generators()) norm = norm && g.contains(conjugate(s, ax));
    filtered += norm;
  }
  EXPECT_EQ(filtered, 21u);
}

TEST(Normalizer, RTwo) {
  const auto n = normalizer_of_J_fixing_zero(2);
  EXPECT_EQ(n.group.order(), 882u);
  EXPECT_TRUE(n.contains_j_prime);
  EXPECT_TRUE(n.contains_block_permutations);
  EXPECT_TRUE(n.equals_j_prime_sr);
  EXPECT_TRUE(n.e_matrix_identity);
  EXPECT_TRUE(n.units_span_matrix_ring);
  const auto j = j_group(2);
  for (const auto& x : n.group.elements()) {
    EXPECT_EQ(act_on_point(x, 0), 0u);
    for (const auto& s : j.generators()) EXPECT_TRUE(j.contains(conjugate(s, x)));
  }
  EXPECT_THROW(normalizer_of_J_fixing_zero(3), BoundExceeded);
}

TEST(HopfGalois, Count) {
  EXPECT_EQ(hopf_galois_count(8, 42, 168), 2u);
  const auto& g = canonical_group();
  const auto aut = automorphism_group(g).order();
  EXPECT_EQ(aut, 336u);
  EXPECT_EQ(hopf_galois_count(8, aut / 8, 168), 2u);
  EXPECT_EQ(hopf_galois_count(1, 7, 7), 1u);
  EXPECT_THROW(hopf_galois_count(3, 42, 168), PreconditionError);
  EXPECT_THROW(hopf_galois_count(3, 42, 0), PreconditionError);
}
