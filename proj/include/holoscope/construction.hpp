#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "holoscope/action.hpp"
#include "holoscope/admissibility.hpp"
#include "holoscope/affine.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/gf_linalg.hpp"
#include "holoscope/holomorph.hpp"
#include "holoscope/permutation.hpp"
#include "holoscope/report.hpp"
#include "holoscope/schreier_sims.hpp"

namespace holoscope {

template <GroupElement E>
E power(const E& x, std::uint64_t k) {
  E acc = x.identity(), base = x;
  while (k) {
    if (k & 1) acc = acc * base;
    base = base * base;
    k >>= 1;
  }
  return acc;
}

struct CanonicalMatrices {
  GFMatrix a, b, c, d;
};

// The defining relations among A, B, C, D, evaluated in any group.
template <GroupElement E>
std::vector<std::pair<std::string, bool>> canonical_relations(const E& a, const E& b, const E& c, const E& d) {
  const E id = a.identity();
  return {
      {"A^7 = I", power(a, 7) == id},
      {"B^3 = I", power(b, 3) == id},
      {"BA = A^2 B", b * a == a * a * b},
      {"C^4 = I", power(c, 4) == id},
      {"D^2 = I", power(d, 2) == id},
      {"C^2 != I", !(power(c, 2) == id)},
      {"D C D^-1 = C^3", d * c * d.inverse() == power(c, 3)},
      {"CA = A^3 C^2 D", c * a == power(a, 3) * power(c, 2) * d},
      {"CB = B^2 C^2 D", c * b == power(b, 2) * power(c, 2) * d},
      {"DA = A C^3 D", d * a == a * power(c, 3) * d},
      {"DB = B^2 D", d * b == power(b, 2) * d},
  };
}

inline std::string relation_ref(const std::string& name) {
  if (name.rfind("A^7", 0) == 0 || name.rfind("B^3", 0) == 0 || name.rfind("BA", 0) == 0) return "AB-relation";
  if (name.rfind("CA", 0) == 0 || name.rfind("CB", 0) == 0 || name.rfind("DA", 0) == 0 || name.rfind("DB", 0) == 0)
    return "ABCD-relation";
  return "CD-relation";
}

inline const CanonicalMatrices& canonical_generators() {
  static const CanonicalMatrices m = [] {
    CanonicalMatrices out{GFMatrix::from_rows(2, {{0, 0, 1}, {1, 0, 1}, {0, 1, 0}}),
                          GFMatrix::from_rows(2, {{1, 0, 0}, {0, 0, 1}, {0, 1, 1}}),
                          GFMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}, {0, 0, 1}}),
                          GFMatrix::from_rows(2, {{1, 0, 0}, {0, 1, 1}, {0, 0, 1}})};
    for (const auto& [name, ok] : canonical_relations(out.a, out.b, out.c, out.d))
      ensure(ok, "canonical matrices violate " + name);
    return out;
  }();
  return m;
}

inline GFVector f2_vector(std::uint32_t index, std::uint32_t dim = 3) { return GFVector::from_index(2, dim, index); }

// M -> psi(M) for the 168 matrices of GL_3(2).
class PsiMap {
 public:
  explicit PsiMap(const FiniteGroup<AffineElement>& g) {
    for (const auto& x : g.elements()) {
      if (!table_.emplace(x.lin(), x.trans()).second)
        throw InvariantViolation("two elements share a linear part; translations are not trivial");
    }
  }

  const GFVector& operator()(const GFMatrix& m) const {
    auto it = table_.find(m);
    if (it == table_.end()) throw PreconditionError("matrix outside the domain of psi");
    return it->second;
  }

  std::size_t size() const noexcept { return table_.size(); }
  const std::map<GFMatrix, GFVector>& table() const noexcept { return table_; }

  // psi(MN) = psi(M) + M psi(N) at every pair.
  bool cocycle_holds() const {
    for (const auto& [m, pm] : table_)
      for (const auto& [n, pn] : table_) {
        auto it = table_.find(m * n);
        if (it == table_.end() || !(it->second == pm + m * pn)) return false;
      }
    return true;
  }

  bool surjective() const {
    std::vector<bool> hit(8, false);
    for (const auto& [m, v] : table_) hit[v.index()] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

 private:
  std::map<GFMatrix, GFVector> table_;
};

struct PsiSolution {
  GFVector c{2, 3};
  GFVector d{2, 3};
  std::vector<std::pair<GFVector, GFVector>> solutions;
  std::vector<std::pair<std::string, bool>> hatted_relations;
  FiniteGroup<AffineElement> group;
  PsiMap psi;
};

namespace detail {

inline bool transitive_on_f2(const FiniteGroup<AffineElement>& g, std::uint32_t points) {
  return orbit(g, ActionTable::of(g, points), 0).size() == points;
}

// All (c, d) for which <A^, B^, (C, c), (D, d)> has order 168 and is transitive, given matrices for A..D.
inline std::vector<std::pair<GFVector, GFVector>> psi_assignments(const std::vector<GFMatrix>& stab_gens,
                                                                 const GFMatrix& c, const GFMatrix& d) {
  std::vector<std::pair<GFVector, GFVector>> out;
  for (std::uint32_t ci = 0; ci < 8; ++ci)
    for (std::uint32_t di = 0; di < 8; ++di) {
      std::vector<AffineElement> gens;
      for (const auto& m : stab_gens) gens.push_back(AffineElement::linear(m));
      gens.emplace_back(c, f2_vector(ci));
      gens.emplace_back(d, f2_vector(di));
      try {
        auto g = FiniteGroup<AffineElement>::close(gens, 168);
        if (g.order() == 168 && transitive_on_f2(g, 8)) out.emplace_back(f2_vector(ci), f2_vector(di));
      } catch (const BoundExceeded&) {
      }
    }
  return out;
}

}  // namespace detail

// Exhaustive search over the 64 translation columns of C^ and D^.
inline PsiSolution solve_psi() {
  const auto& m = canonical_generators();
  auto sols = detail::psi_assignments({m.a, m.b}, m.c, m.d);
  if (sols.size() != 1)
    throw InvariantViolation("expected a unique psi assignment, found " + std::to_string(sols.size()));
  const auto [c, d] = sols.front();
  ensure(c == GFVector(2, {0, 1, 1}) && d == GFVector(2, {1, 0, 0}), "psi solution differs from (0,1,1), (1,0,0)");
  const AffineElement ha = AffineElement::linear(m.a), hb = AffineElement::linear(m.b);
  const AffineElement hc(m.c, c), hd(m.d, d);
  auto g = FiniteGroup<AffineElement>::close({ha, hb, hc, hd});
  PsiMap psi(g);
  ensure(psi.size() == 168, "psi is not defined on all of GL_3(2)");
  ensure(psi(m.a).is_zero() && psi(m.b).is_zero(), "psi(A) or psi(B) is nonzero");
  ensure(psi.surjective(), "psi is not surjective");
  return PsiSolution{c, d, sols, canonical_relations(ha, hb, hc, hd), std::move(g), std::move(psi)};
}

inline const PsiSolution& canonical_psi() {
  static const PsiSolution s = solve_psi();
  return s;
}

// The order-168 transitive subgroup of Aff(F_2^3) with stabilizer <A^, B^>.
inline const FiniteGroup<AffineElement>& canonical_group() { return canonical_psi().group; }

inline AffineElement conjugate(const AffineElement& x, const AffineElement& by) { return by * x * by.inverse(); }

inline FiniteGroup<AffineElement> conjugate_group(const FiniteGroup<AffineElement>& g, const AffineElement& by) {
  std::vector<AffineElement> gens;
  for (const auto& s : g.generators()) gens.push_back(conjugate(s, by));
  return FiniteGroup<AffineElement>::close(gens, g.order());
}

struct TSubgroupEnumeration {
  std::vector<FiniteGroup<AffineElement>> groups;
  std::size_t sylow7_count = 0;
  std::vector<std::size_t> normalizer_orders;
  bool each_psi_unique = false;
  bool single_conjugacy_orbit = false;
  std::size_t conjugates_of_canonical = 0;
  std::size_t complements = 0;             // all subgroups of order 168 meeting the translations trivially
  std::size_t transitive_complements = 0;
  bool oracle_agrees = false;
};

inline bool same_group_set(const std::vector<FiniteGroup<AffineElement>>& a,
                           const std::vector<FiniteGroup<AffineElement>>& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (std::none_of(b.begin(), b.end(), [&](const auto& y) { return x.same_elements(y); })) return false;
  return true;
}

// Transitive subgroups of Aff(F_2^3) isomorphic to GL_3(2), one per index-8 subgroup of GL_3(2).
inline TSubgroupEnumeration enumerate_transitive_T_subgroups() {
  const auto& m = canonical_generators();
  const auto& g = canonical_group();
  TSubgroupEnumeration out;
  const auto t = FiniteGroup<GFMatrix>::close({m.a, m.b, m.c, m.d});
  ensure(t.order() == 168, "GL_3(2) closure has the wrong order");

  std::vector<FiniteGroup<GFMatrix>> sylow7;
  for (const auto& x : t.elements())
    if (t.element_order(x) == 7) detail::push_unique(sylow7, FiniteGroup<GFMatrix>::close({x}));
  out.sylow7_count = sylow7.size();

  const auto tprime = FiniteGroup<GFMatrix>::close({m.a, m.b});
  out.each_psi_unique = true;
  for (const auto& p7 : sylow7) {
    std::vector<GFMatrix> norm;
    for (const auto& x : t.elements())
      if (p7.contains(x * p7.generators().front() * x.inverse())) norm.push_back(x);
    const auto np = FiniteGroup<GFMatrix>::from_subset(norm);
    out.normalizer_orders.push_back(np.order());
    // x with x T' x^-1 = N(P); the Sylow-2 generators move along with it.
    std::optional<GFMatrix> conj;
    for (const auto& x : t.elements()) {
      const GFMatrix xi = x.inverse();
      if (np.contains(x * m.a * xi) && np.contains(x * m.b * xi) && np.order() == tprime.order()) {
        conj = x;
        break;
      }
    }
    ensure(conj.has_value(), "index-8 subgroup not conjugate to <A, B>");
    const GFMatrix x = *conj, xi = x.inverse();
    auto sols = detail::psi_assignments({x * m.a * xi, x * m.b * xi}, x * m.c * xi, x * m.d * xi);
    if (sols.size() != 1) {
      out.each_psi_unique = false;
      continue;
    }
    std::vector<AffineElement> gens{AffineElement::linear(x * m.a * xi), AffineElement::linear(x * m.b * xi),
                                    AffineElement(x * m.c * xi, sols.front().first),
                                    AffineElement(x * m.d * xi, sols.front().second)};
    auto h = FiniteGroup<AffineElement>::close(gens);
    ensure(h.order() == 168, "conjugated construction has the wrong order");
    ensure(h.same_elements(conjugate_group(g, AffineElement::linear(x))), "conjugated construction is not a conjugate");
    detail::push_unique(out.groups, std::move(h));
  }
  std::sort(out.groups.begin(), out.groups.end(),
            [](const auto& a, const auto& b) { return a.sorted_elements() < b.sorted_elements(); });

  std::vector<FiniteGroup<AffineElement>> conjugates;
  for (const auto& x : t.elements()) detail::push_unique(conjugates, conjugate_group(g, AffineElement::linear(x)));
  out.conjugates_of_canonical = conjugates.size();
  out.single_conjugacy_orbit = same_group_set(conjugates, out.groups);

  // Oracle: every assignment of translation columns to A, B, C, D.
  std::vector<FiniteGroup<AffineElement>> complements;
  for (std::uint32_t w = 0; w < 8 * 8 * 8 * 8; ++w) {
    std::vector<AffineElement> gens{AffineElement(m.a, f2_vector(w & 7)), AffineElement(m.b, f2_vector((w >> 3) & 7)),
                                    AffineElement(m.c, f2_vector((w >> 6) & 7)),
                                    AffineElement(m.d, f2_vector((w >> 9) & 7))};
    try {
      auto h = FiniteGroup<AffineElement>::close(gens, 168);
      if (h.order() == 168) detail::push_unique(complements, std::move(h));
    } catch (const BoundExceeded&) {
    }
  }
  out.complements = complements.size();
  std::vector<FiniteGroup<AffineElement>> transitive;
  for (auto& h : complements)
    if (detail::transitive_on_f2(h, 8)) transitive.push_back(h);
  out.transitive_complements = transitive.size();
  out.oracle_agrees = same_group_set(transitive, out.groups);
  for (const auto& h : out.groups) {
    ensure(translations(h).dim() == 0, "a transitive GL_3(2) subgroup contains translations");
    ensure(detail::transitive_on_f2(h, 8), "enumerated subgroup is not transitive");
  }
  if (out.groups.size() != 8) throw InvariantViolation("expected 8 transitive GL_3(2) subgroups, found " +
                                                       std::to_string(out.groups.size()));
  return out;
}

// Transitive soluble subgroup H <= S_r with a display name.
struct WreathSpec {
  std::uint32_t r = 1;
  std::string name;
  FiniteGroup<Permutation> h = FiniteGroup<Permutation>::trivial(Permutation::identity(1));
};

inline FiniteGroup<Permutation> symmetric_group(std::uint32_t r) {
  if (r == 1) return FiniteGroup<Permutation>::trivial(Permutation::identity(1));
  std::vector<std::uint32_t> cyc(r);
  for (std::uint32_t i = 0; i < r; ++i) cyc[i] = i;
  return FiniteGroup<Permutation>::close({Permutation::from_cycles(r, {{0, 1}}), Permutation::from_cycles(r, {cyc})});
}

inline bool is_transitive_perm_group(const FiniteGroup<Permutation>& h) {
  const std::size_t r = h.identity().degree();
  return orbit(h, ActionTable::of(h, r), 0).size() == r;
}

namespace detail {

inline std::string shape_name(const FiniteGroup<Permutation>& h) {
  switch (h.order()) {
    case 1: return "1";
    case 2: return "C2";
    case 3: return "C3";
    case 6: return "S3";
    case 8: return "D4";
    case 12: return "A4";
    case 24: return "S4";
    case 4: {
      for (const auto& x : h.elements())
        if (h.element_order(x) == 4) return "C4";
      return "V4";
    }
    default: return "H" + std::to_string(h.order());
  }
}

}  // namespace detail

// Every transitive soluble subgroup of S_r, r <= 4; repeated shapes get suffixes #2, #3.
inline std::vector<WreathSpec> enumerate_transitive_soluble(std::uint32_t r) {
  if (r < 1 || r > 4) throw PreconditionError("r must be between 1 and 4");
  const auto s = symmetric_group(r);
  std::vector<WreathSpec> out;
  std::map<std::string, int> seen;
  for (auto& h : all_subgroups(s, 24)) {
    if (!is_transitive_perm_group(h) || !is_soluble(h)) continue;
    std::string name = detail::shape_name(h);
    const int k = ++seen[name];
    if (k > 1) name += "#" + std::to_string(k);
    out.push_back({r, name, std::move(h)});
  }
  return out;
}

inline WreathSpec find_transitive_soluble(std::uint32_t r, std::string name) {
  static const std::map<std::string, std::string> aliases = {
      {"S2", "C2"}, {"A3", "C3"}, {"C2^2", "V4"}, {"C2xC2", "V4"}, {"D8", "D4"}, {"trivial", "1"}, {"S1", "1"}};
  if (r < 1 || r > 4) throw PreconditionError("r must be between 1 and 4");
  if (name.empty()) name = r == 1 ? "1" : "";
  const std::string given = name;
  if (auto it = aliases.find(name); it != aliases.end()) name = it->second;
  for (auto& spec : enumerate_transitive_soluble(r))
    if (spec.name == name) return spec;
  throw PreconditionError("H must be a transitive subgroup of S_" + std::to_string(r) + " (soluble); '" + given +
                          "' is not one");
}

inline WreathSpec make_wreath_spec(std::uint32_t r, std::string name, FiniteGroup<Permutation> h) {
  if (r < 1) throw PreconditionError("r must be at least 1");
  if (h.identity().degree() != r) throw PreconditionError("H must act on r points");
  if (!is_transitive_perm_group(h)) throw PreconditionError("H must be transitive");
  if (!is_soluble(h)) throw PreconditionError("H must be soluble");
  return {r, std::move(name), std::move(h)};
}

// Block-diagonal element with x in block k and the identity elsewhere.
inline AffineElement block_lift(const AffineElement& x, std::uint32_t block, std::uint32_t r) {
  const std::uint32_t n = 3 * r;
  GFMatrix lin = GFMatrix::identity(2, n);
  GFVector t(2, n);
  for (std::uint32_t i = 0; i < 3; ++i) {
    for (std::uint32_t j = 0; j < 3; ++j) lin = lin.with_entry(3 * block + i, 3 * block + j, x.lin()(i, j));
    t = t.with_entry(3 * block + i, x.trans()[i]);
  }
  return AffineElement(lin, t);
}

// P(pi): identity block at (pi(j), j).
inline AffineElement block_permutation(const Permutation& pi) {
  const std::uint32_t r = static_cast<std::uint32_t>(pi.degree()), n = 3 * r;
  GFMatrix lin(2, n, n);
  for (std::uint32_t j = 0; j < r; ++j)
    for (std::uint32_t i = 0; i < 3; ++i) lin = lin.with_entry(3 * pi(j) + i, 3 * j + i, 1);
  return AffineElement::linear(lin);
}

inline Subspace block_subspace(std::uint32_t block, std::uint32_t r) {
  std::vector<GFVector> b;
  for (std::uint32_t i = 0; i < 3; ++i) b.push_back(GFVector(2, 3 * r).with_entry(3 * block + i, 1));
  return Subspace::span(2, 3 * r, b);
}

struct BlockAdmissibility {
  std::size_t m_star_size = 0;
  bool admissible = false;
  bool invariant = false;
  std::optional<std::size_t> m_star_order;
  std::optional<bool> m_star_soluble;
  std::size_t setwise_stabilizer_order = 0;
  bool setwise_stabilizer_soluble = false;
  std::size_t subspaces_scanned = 0;
  std::size_t stabilizer_invariant_subspaces = 0;  // proper, nontrivial, invariant under the linear parts of G_0
  std::size_t proper_admissible = 0;               // proper, nontrivial, admissible
  std::size_t proper_admissible_insoluble = 0;
};

struct WreathResult {
  std::uint32_t r = 1;
  std::string h_name;
  std::size_t h_order = 1;
  std::vector<AffineElement> generators;
  std::vector<AffineElement> stabilizer_generators;
  HolomorphContext<AffineElement> ctx;
  std::optional<FiniteGroup<AffineElement>> group;
  std::uint64_t order = 0;
  std::size_t orbit_size = 0;
  std::uint64_t stabilizer_order = 0;
  bool stabilizer_soluble = false;
  bool irreducible = false;
  bool translations_trivial = false;
  std::optional<BlockAdmissibility> v1;
  std::vector<Check> checks;
};

struct WreathOptions {
  std::uint32_t materialize_up_to_r = 2;
  bool scan_subspaces = true;
};

inline std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t x = 1;
  while (e--) x *= b;
  return x;
}

namespace detail {

inline PointPerm point_perm(const AffineElement& e, std::uint32_t points) {
  std::vector<std::uint32_t> img(points);
  for (std::uint32_t x = 0; x < points; ++x) img[x] = act_on_point(e, x);
  return PointPerm::from(img);
}

inline BlockAdmissibility analyse_first_block(const FiniteGroup<AffineElement>& g, const HolomorphContext<AffineElement>& ctx,
                                              const std::vector<AffineElement>& stab_gens, std::uint32_t r,
                                              bool scan) {
  BlockAdmissibility out;
  const SubgroupOfN v1(ctx, block_subspace(0, r));
  auto rep = is_admissible(g, ctx, v1);
  out.m_star_size = rep.m_star_size;
  out.admissible = rep.admissible;
  out.invariant = rep.invariant;
  if (rep.m_star) out.m_star_order = rep.m_star->order();
  out.m_star_soluble = rep.m_star_soluble;
  std::vector<AffineElement> setwise;
  for (const auto& x : g.elements()) {
    bool keep = true;
    for (auto y : v1.points())
      if (!v1.contains(act_on_point(x, y))) {
        keep = false;
        break;
      }
    if (keep) setwise.push_back(x);
  }
  const auto sw = FiniteGroup<AffineElement>::from_subset(setwise);
  out.setwise_stabilizer_order = sw.order();
  out.setwise_stabilizer_soluble = is_soluble(sw);
  if (!scan) return out;
  // G_0 lies in every M_*, so an admissible M is invariant under the linear parts of G_0.
  std::vector<GFMatrix> lins;
  for (const auto& s : stab_gens) lins.push_back(s.lin());
  for (const auto& s : all_subspaces(2, 3 * r)) {
    ++out.subspaces_scanned;
    if (s.dim() == 0 || s.dim() == 3 * r) continue;
    bool inv = true;
    for (const auto& a : lins)
      for (const auto& b : s.basis())
        if (inv && !s.contains(a * b)) inv = false;
    if (!inv) continue;
    ++out.stabilizer_invariant_subspaces;
    auto r2 = is_admissible(g, ctx, SubgroupOfN(ctx, s));
    if (r2.admissible) {
      ++out.proper_admissible;
      if (!*r2.m_star_soluble) ++out.proper_admissible_insoluble;
    }
  }
  return out;
}

}  // namespace detail

// G = T^r x| H inside Aff(F_2^{3r}) with every structural property checked.
inline WreathResult build_wreath(const WreathSpec& spec, const WreathOptions& opts = {}) {
  const std::uint32_t r = spec.r;
  if (r < 1 || r > 4) throw PreconditionError("r must be between 1 and 4");
  make_wreath_spec(r, spec.name, spec.h);
  const auto& g1 = canonical_group();
  const auto& m = canonical_generators();
  const auto& sol = canonical_psi();
  WreathResult out;
  out.r = r;
  out.h_name = spec.name;
  out.h_order = spec.h.order();
  out.ctx = build_affine_holomorph(2, 3 * r);
  const AffineElement ha = AffineElement::linear(m.a), hb = AffineElement::linear(m.b);
  const AffineElement hc(m.c, sol.c), hd(m.d, sol.d);
  for (const auto& x : {ha, hb, hc, hd}) out.generators.push_back(block_lift(x, 0, r));
  for (const auto& pi : spec.h.generators())
    if (!pi.is_identity()) out.generators.push_back(block_permutation(pi));
  for (std::uint32_t k = 0; k < r; ++k) {
    out.stabilizer_generators.push_back(block_lift(ha, k, r));
    out.stabilizer_generators.push_back(block_lift(hb, k, r));
  }
  for (const auto& pi : spec.h.generators())
    if (!pi.is_identity()) out.stabilizer_generators.push_back(block_permutation(pi));
  (void)g1;

  const std::uint32_t points = static_cast<std::uint32_t>(ipow(8, r));
  const std::uint64_t want_order = ipow(168, r) * out.h_order;
  const std::uint64_t want_stab = ipow(21, r) * out.h_order;
  const std::string ref = "irred-constr";
  VerificationReport rep;

  if (r <= opts.materialize_up_to_r) {
    auto g = FiniteGroup<AffineElement>::close(out.generators);
    const auto action = ActionTable::of(g, points);
    out.order = g.order();
    out.orbit_size = orbit(g, action, 0).size();
    const auto stab = stabilizer(g, action, 0);
    out.stabilizer_order = stab.order();
    out.stabilizer_soluble = is_soluble(stab.group());
    out.irreducible = irreducibility(g, out.ctx);
    out.translations_trivial = translations(g).dim() == 0;
    const auto stab_from_gens = FiniteGroup<AffineElement>::close(out.stabilizer_generators);
    rep.expect("stabilizer equals J' x| H", ref, true,
               stab_from_gens.order() == stab.order() && stab_from_gens.is_subgroup_of(stab.group()));
    if (r >= 2) out.v1 = detail::analyse_first_block(g, out.ctx, out.stabilizer_generators, r, opts.scan_subspaces);
    out.group = std::move(g);
  } else {
    std::vector<PointPerm> pg, ps;
    for (const auto& x : out.generators) pg.push_back(detail::point_perm(x, points));
    for (const auto& x : out.stabilizer_generators) ps.push_back(detail::point_perm(x, points));
    const StabilizerChain chain(points, pg);
    out.order = chain.order();
    std::vector<std::vector<std::uint32_t>> imgs;
    for (const auto& x : out.generators) {
      std::vector<std::uint32_t> img(points);
      for (std::uint32_t y = 0; y < points; ++y) img[y] = act_on_point(x, y);
      imgs.push_back(std::move(img));
    }
    out.orbit_size = detail::orbit_tree(ActionTable(points, std::move(imgs)), 0).points.size();
    ensure(out.order % out.orbit_size == 0, "orbit size does not divide the group order");
    out.stabilizer_order = out.order / out.orbit_size;
    for (const auto& s : out.stabilizer_generators) ensure(act_on_point(s, 0) == 0, "stabilizer generator moves 0");
    const StabilizerChain stab_chain(points, ps);
    rep.expect("stabilizer equals J' x| H", ref, out.stabilizer_order, stab_chain.order());
    for (const auto& p : ps) ensure(chain.contains(p), "stabilizer generator outside G");
    out.stabilizer_soluble = is_soluble_chain(ps, points);
    std::vector<GFMatrix> lins;
    for (const auto& x : out.generators) lins.push_back(x.lin());
    out.irreducible = linear_irreducible(lins, 2, 3 * r);
    bool any_translation = false;
    for (std::uint32_t x = 1; x < points && !any_translation; ++x)
      if (chain.contains(detail::point_perm(AffineElement::translation(GFVector::from_index(2, 3 * r, x)), points)))
        any_translation = true;
    out.translations_trivial = !any_translation;
  }

  rep.expect("order 168^r |H|", ref, want_order, out.order);
  rep.expect("orbit of 0 has 8^r points", ref, static_cast<std::size_t>(points), out.orbit_size);
  rep.expect("stabilizer order 21^r |H|", ref, want_stab, out.stabilizer_order);
  rep.expect("stabilizer soluble", ref, true, out.stabilizer_soluble);
  rep.expect("module irreducible", ref, true, out.irreducible);
  rep.expect("translations trivial", "trans", true, out.translations_trivial);
  if (out.v1) {
    const auto& q = *out.v1;
    rep.expect("Q = V1 admissible", ref, true, q.admissible);
    rep.expect("|Q_*|", ref, std::string(std::to_string(168 * ipow(21, r - 1) * (out.h_order / r))),
               q.m_star_order ? std::to_string(*q.m_star_order)
                              : "not a subgroup (" + std::to_string(q.m_star_size) + " elements)");
    rep.expect("Q_* insoluble", ref, std::string("true"),
               q.m_star_soluble ? std::string(*q.m_star_soluble ? "false" : "true") : std::string("undefined"));
    rep.expect("V1 not G-invariant", ref, false, q.invariant);
  }
  out.checks = rep.checks();
  return out;
}

struct NormalizerResult {
  FiniteGroup<AffineElement> group;
  std::size_t bounding_order = 0;
  bool contains_j_prime = false;
  bool contains_block_permutations = false;
  bool equals_j_prime_sr = false;
  bool e_matrix_identity = false;
  bool units_span_matrix_ring = false;
};

// {X in Aff(V) : X 0 = 0, X J X^-1 = J}, searched inside the block-monomial stabilizer of 0.
inline NormalizerResult normalizer_of_J_fixing_zero(std::uint32_t r) {
  if (r < 1 || r > 2) throw BoundExceeded("normalizer search is exhaustive only for r <= 2");
  const auto& m = canonical_generators();
  const auto& sol = canonical_psi();
  const AffineElement ha = AffineElement::linear(m.a), hb = AffineElement::linear(m.b);
  const AffineElement hc(m.c, sol.c), hd(m.d, sol.d);
  std::vector<AffineElement> jgens, jprime, bgens, perms;
  for (std::uint32_t k = 0; k < r; ++k) {
    for (const auto& x : {ha, hb, hc, hd}) jgens.push_back(block_lift(x, k, r));
    jprime.push_back(block_lift(ha, k, r));
    jprime.push_back(block_lift(hb, k, r));
    for (const auto& x : gl_generators(2, 3)) bgens.push_back(block_lift(AffineElement::linear(x), k, r));
  }
  const auto sr = symmetric_group(r);
  for (const auto& pi : sr.generators())
    if (!pi.is_identity()) perms.push_back(block_permutation(pi));
  bgens.insert(bgens.end(), perms.begin(), perms.end());
  const auto j = FiniteGroup<AffineElement>::close(jgens);
  const auto bounding = FiniteGroup<AffineElement>::close(bgens);
  std::vector<AffineElement> keep;
  for (const auto& x : bounding.elements()) {
    if (act_on_point(x, 0) != 0) continue;
    const auto xi = x.inverse();
    if (std::all_of(jgens.begin(), jgens.end(), [&](const AffineElement& y) { return j.contains(x * y * xi); }))
      keep.push_back(x);
  }
  NormalizerResult out{FiniteGroup<AffineElement>::from_subset(keep)};
  out.bounding_order = bounding.order();
  out.contains_j_prime = std::all_of(jprime.begin(), jprime.end(), [&](const auto& x) { return out.group.contains(x); });
  out.contains_block_permutations =
      std::all_of(perms.begin(), perms.end(), [&](const auto& x) { return out.group.contains(x); });
  std::vector<AffineElement> jp_sr = jprime;
  jp_sr.insert(jp_sr.end(), perms.begin(), perms.end());
  const auto product = FiniteGroup<AffineElement>::close(jp_sr);
  out.equals_j_prime_sr = product.same_elements(out.group);

  const GFMatrix e1 = GFMatrix::from_rows(2, {{1, 1, 0}, {0, 1, 1}, {1, 0, 0}});
  const GFMatrix e2 = GFMatrix::from_rows(2, {{0, 1, 0}, {0, 0, 1}, {1, 0, 1}});
  const GFMatrix e3 = GFMatrix::identity(2, 3);
  out.e_matrix_identity = (e1 + e2 + e3) == GFMatrix(2, 3, 3) && e1.is_invertible() && e2.is_invertible() &&
                          e3.is_invertible();
  const auto gl = FiniteGroup<GFMatrix>::close(gl_generators(2, 3));
  std::vector<GFVector> flat;
  for (const auto& x : gl.elements()) {
    std::vector<long long> v;
    for (std::uint32_t i = 0; i < 3; ++i)
      for (std::uint32_t k = 0; k < 3; ++k) v.push_back(x(i, k));
    flat.emplace_back(2, v);
  }
  out.units_span_matrix_ring = Subspace::span(2, 9, flat).dim() == 9;
  return out;
}

inline std::uint64_t hopf_galois_count(std::uint64_t n_subgroups, std::uint64_t aut_g_gprime, std::uint64_t aut_v) {
  if (aut_v == 0) throw PreconditionError("|Aut(V)| must be positive");
  if ((n_subgroups * aut_g_gprime) % aut_v != 0)
    throw PreconditionError("Hopf-Galois count is not an integer: " + std::to_string(n_subgroups) + "*" +
                            std::to_string(aut_g_gprime) + "/" + std::to_string(aut_v));
  return n_subgroups * aut_g_gprime / aut_v;
}

}  // namespace holoscope
