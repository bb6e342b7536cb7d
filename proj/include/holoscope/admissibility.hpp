#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "holoscope/action.hpp"
#include "holoscope/affine.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/gf_linalg.hpp"
#include "holoscope/holomorph.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope {

// A subgroup of N given by its point indices; for N = F_p^n it also carries the subspace.
class SubgroupOfN {
 public:
  template <GroupElement E>
  SubgroupOfN(const HolomorphContext<E>& ctx, std::vector<std::uint32_t> points) : points_(std::move(points)) {
    std::sort(points_.begin(), points_.end());
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    member_.assign(ctx.point_count(), false);
    for (auto x : points_) {
      if (x >= ctx.point_count()) throw PreconditionError("point outside N");
      member_[x] = true;
    }
    if (points_.empty() || !member_[0]) throw PreconditionError("a subgroup of N must contain the identity");
    for (auto a : points_)
      for (auto b : points_)
        if (!member_[ctx.base.mul(a, b)]) throw PreconditionError("point set is not a subgroup of N");
  }

  template <GroupElement E>
  SubgroupOfN(const HolomorphContext<E>& ctx, const Subspace& s) : SubgroupOfN(ctx, indices(s)) {
    if (!ctx.base.is_elementary_abelian() || ctx.base.p != s.p() || ctx.base.n != s.ambient_dim())
      throw PreconditionError("subspace does not live in N");
    space_ = s;
  }

  template <GroupElement E>
  static SubgroupOfN trivial(const HolomorphContext<E>& ctx) {
    if (ctx.base.is_elementary_abelian()) return SubgroupOfN(ctx, Subspace::zero(ctx.base.p, ctx.base.n));
    return SubgroupOfN(ctx, std::vector<std::uint32_t>{0});
  }

  template <GroupElement E>
  static SubgroupOfN whole(const HolomorphContext<E>& ctx) {
    std::vector<std::uint32_t> all(ctx.point_count());
    for (std::uint32_t x = 0; x < all.size(); ++x) all[x] = x;
    if (ctx.base.is_elementary_abelian()) return SubgroupOfN(ctx, Subspace::full(ctx.base.p, ctx.base.n));
    return SubgroupOfN(ctx, std::move(all));
  }

  const std::vector<std::uint32_t>& points() const noexcept { return points_; }
  std::size_t order() const noexcept { return points_.size(); }
  bool contains(std::uint32_t x) const { return x < member_.size() && member_[x]; }
  const std::optional<Subspace>& subspace() const noexcept { return space_; }
  bool is_trivial() const noexcept { return points_.size() == 1; }
  bool is_whole() const noexcept { return points_.size() == member_.size(); }

 private:
  static std::vector<std::uint32_t> indices(const Subspace& s) {
    std::vector<std::uint32_t> out;
    for (auto x : s.point_indices()) out.push_back(static_cast<std::uint32_t>(x));
    return out;
  }

  std::vector<std::uint32_t> points_;
  std::vector<bool> member_;
  std::optional<Subspace> space_;
};

// theta_g(x) = alpha_g^{-1} (g . x), the automorphism part of g applied to x.
template <GroupElement E>
  requires PointAction<E>
std::uint32_t theta(const E& g, const HolomorphContext<E>& ctx, std::uint32_t x) {
  return ctx.base.mul(ctx.base.inv(act_on_point(g, 0)), act_on_point(g, x));
}

template <GroupElement E>
struct MStar {
  std::vector<E> subset;
  bool is_subgroup = false;
};

// M_* = {g in G : g . e in M}.
template <GroupElement E>
  requires PointAction<E>
MStar<E> m_star(const FiniteGroup<E>& g, const HolomorphContext<E>&, const SubgroupOfN& m) {
  MStar<E> out;
  for (const auto& x : g.elements())
    if (m.contains(act_on_point(x, 0))) out.subset.push_back(x);
  try {
    (void)FiniteGroup<E>::from_subset(out.subset);
    out.is_subgroup = true;
  } catch (const PreconditionError&) {
    out.is_subgroup = false;
  }
  return out;
}

template <GroupElement E>
struct AdmissibilityReport {
  std::size_t m_star_size = 0;
  std::optional<FiniteGroup<E>> m_star;
  bool admissible = false;
  bool invariant = false;
  bool equivalence_checked = false;
  std::optional<bool> m_star_soluble;
  std::size_t m_order = 0;
};

// True iff every generator's automorphism part maps M into M.
template <GroupElement E>
  requires PointAction<E>
bool is_invariant(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx, const SubgroupOfN& m) {
  for (const auto& s : g.generators())
    for (auto x : m.points())
      if (!m.contains(theta(s, ctx, x))) return false;
  return true;
}

// Evaluates closure of M_*, (g . m in M) and (theta_g(m) in M) over M_* separately and requires agreement.
template <GroupElement E>
  requires PointAction<E>
AdmissibilityReport<E> is_admissible(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx, const SubgroupOfN& m,
                                     bool with_solubility = true) {
  if (!is_transitive(g, ctx)) throw PreconditionError("admissibility is defined here for transitive groups");
  AdmissibilityReport<E> rep;
  rep.m_order = m.order();
  auto ms = m_star(g, ctx, m);
  rep.m_star_size = ms.subset.size();
  const bool closed = ms.is_subgroup;
  bool moves_into = true, theta_into = true;
  for (const auto& x : ms.subset)
    for (auto y : m.points()) {
      if (!m.contains(act_on_point(x, y))) moves_into = false;
      if (!m.contains(theta(x, ctx, y))) theta_into = false;
    }
  if (closed != moves_into || closed != theta_into)
    throw InvariantViolation("the three admissibility conditions disagree");
  rep.equivalence_checked = true;
  rep.admissible = closed;
  rep.invariant = is_invariant(g, ctx, m);
  ensure(!rep.invariant || rep.admissible, "an invariant subgroup failed to be admissible");
  if (closed) {
    rep.m_star = FiniteGroup<E>::from_subset(ms.subset);
    ensure(rep.m_star->order() * ctx.point_count() == g.order() * m.order(), "|M_*| differs from |G||M|/|N|");
    if (with_solubility) rep.m_star_soluble = is_soluble(*rep.m_star);
  }
  return rep;
}

// Every subspace of F_p^n, ordered by dimension then basis.
inline std::vector<Subspace> all_subspaces(std::uint32_t p, std::uint32_t n, std::size_t bound = 100'000) {
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < n; ++i) points *= p;
  std::set<Subspace> seen{Subspace::zero(p, n)};
  std::vector<Subspace> frontier{Subspace::zero(p, n)};
  while (!frontier.empty()) {
    std::vector<Subspace> next;
    for (const auto& s : frontier)
      for (std::uint64_t x = 1; x < points; ++x) {
        const GFVector v = GFVector::from_index(p, n, x);
        if (s.contains(v) || !s.reduce(v).index() || s.reduce(v).index() != x) continue;
        std::vector<GFVector> b = s.basis();
        b.push_back(v);
        Subspace t = Subspace::span(p, n, b);
        if (seen.insert(t).second) {
          if (seen.size() > bound) throw BoundExceeded("subspace enumeration exceeded bound");
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  std::vector<Subspace> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(), [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });
  return out;
}

// Every subgroup of N as a point set, via the translation group.
template <GroupElement E>
  requires PointAction<E>
std::vector<SubgroupOfN> subgroups_of_n(const HolomorphContext<E>& ctx) {
  std::vector<SubgroupOfN> out;
  if (ctx.base.is_elementary_abelian()) {
    for (const auto& s : all_subspaces(ctx.base.p, ctx.base.n)) out.emplace_back(ctx, s);
    return out;
  }
  std::vector<E> tr;
  for (std::uint32_t a = 0; a < ctx.point_count(); ++a) tr.push_back(ctx.translation(a));
  const auto n_group = FiniteGroup<E>::close(tr, ctx.point_count());
  for (const auto& h : all_subgroups(n_group, 256)) {
    std::vector<std::uint32_t> pts;
    for (const auto& x : h.elements()) pts.push_back(act_on_point(x, 0));
    out.emplace_back(ctx, std::move(pts));
  }
  return out;
}

template <GroupElement E>
bool is_normal_in_n(const HolomorphContext<E>& ctx, const SubgroupOfN& m) {
  for (std::uint32_t a = 0; a < ctx.point_count(); ++a)
    for (auto x : m.points())
      if (!m.contains(ctx.base.mul(ctx.base.mul(a, x), ctx.base.inv(a)))) return false;
  return true;
}

template <GroupElement E>
struct QuotientReduction {
  FiniteGroup<Permutation> gbar;                       // action on the cosets of M
  std::optional<FiniteGroup<AffineElement>> gbar_affine;  // the same group inside Aff(N/M)
  std::optional<HolomorphContext<AffineElement>> ctxbar;
  SubgroupHandle<E> k;
  std::vector<std::uint32_t> coset_of;  // point -> coset index
};

// Induced action of G on N/M for a G-invariant subspace M of N = F_p^n; K is the core of M_*.
template <GroupElement E>
  requires PointAction<E>
QuotientReduction<E> quotient_reduction(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx, const SubgroupOfN& m) {
  if (!ctx.base.is_elementary_abelian() || !m.subspace())
    throw PreconditionError("quotient reduction is implemented for elementary abelian N and subspaces M");
  if (!is_normal_in_n(ctx, m)) throw PreconditionError("M is not normal in N");
  if (!is_invariant(g, ctx, m)) throw PreconditionError("M is not G-invariant");
  const std::uint32_t p = ctx.base.p, n = ctx.base.n;
  const Subspace& s = *m.subspace();
  std::vector<std::uint32_t> free;
  {
    std::vector<bool> piv(n, false);
    for (auto c : s.pivots()) piv[c] = true;
    for (std::uint32_t j = 0; j < n; ++j)
      if (!piv[j]) free.push_back(j);
  }
  const std::uint32_t qdim = static_cast<std::uint32_t>(free.size());
  std::uint32_t qpoints = 1;
  for (std::uint32_t i = 0; i < qdim; ++i) qpoints *= p;
  std::vector<std::uint32_t> coset_of(ctx.point_count());
  std::vector<std::uint32_t> lift(qpoints, 0);
  for (std::uint32_t x = 0; x < ctx.point_count(); ++x) {
    const GFVector r = s.reduce(GFVector::from_index(p, n, x));
    std::uint64_t q = 0;
    for (auto j : free) q = q * p + r[j];
    coset_of[x] = static_cast<std::uint32_t>(q);
    if (r.index() == x) lift[q] = x;
  }
  auto induced = [&](const E& x) {
    std::vector<std::uint32_t> img(qpoints);
    for (std::uint32_t c = 0; c < qpoints; ++c) img[c] = coset_of[act_on_point(x, lift[c])];
    return img;
  };
  std::vector<Permutation> pgens;
  for (const auto& x : g.generators()) pgens.emplace_back(induced(x));
  auto gbar = FiniteGroup<Permutation>::close(pgens);

  // K as the core of M_*, intersecting conjugates over a transversal.
  auto ms = m_star(g, ctx, m);
  ensure(ms.is_subgroup, "an invariant subgroup has M_* not closed");
  const auto h = FiniteGroup<E>::from_subset(ms.subset);
  std::vector<E> transversal;
  {
    std::vector<bool> covered(qpoints, false);
    for (const auto& x : g.elements()) {
      const auto c = coset_of[act_on_point(x, 0)];
      if (!covered[c]) {
        covered[c] = true;
        transversal.push_back(x);
      }
    }
  }
  std::vector<E> core;
  for (const auto& x : h.elements()) {
    bool in = true;
    for (const auto& t : transversal)
      if (!h.contains(t.inverse() * x * t)) {
        in = false;
        break;
      }
    if (in) core.push_back(x);
  }
  auto kgroup = FiniteGroup<E>::from_subset(core);
  for (const auto& x : kgroup.elements()) {
    const auto img = induced(x);
    for (std::uint32_t c = 0; c < qpoints; ++c) ensure(img[c] == c, "core element acts nontrivially on N/M");
  }
  ensure(gbar.order() * kgroup.order() == g.order(), "|G/K| differs from the induced group order");
  const bool g_transitive = is_transitive(g, ctx);
  if (g_transitive)
    ensure(orbit(gbar, ActionTable::of(gbar, qpoints), 0).size() == qpoints, "G/K is not transitive on N/M");

  QuotientReduction<E> out{std::move(gbar), std::nullopt, std::nullopt, SubgroupHandle<E>(g, std::move(kgroup)),
                           std::move(coset_of)};
  if (qdim >= 1) {
    std::vector<AffineElement> agens;
    for (const auto& pg : out.gbar.generators()) agens.push_back(affine_from_images(p, qdim, pg.images()));
    out.gbar_affine = FiniteGroup<AffineElement>::close(agens);
    ensure(out.gbar_affine->order() == out.gbar.order(), "affine and permutation quotients differ in order");
    out.ctxbar = build_affine_holomorph(p, qdim);
  }
  return out;
}

enum class CounterexampleStatus { not_counterexample, minimal, weakly_minimal, reducible };

inline std::string to_string(CounterexampleStatus s) {
  switch (s) {
    case CounterexampleStatus::not_counterexample: return "not_counterexample";
    case CounterexampleStatus::minimal: return "minimal";
    case CounterexampleStatus::weakly_minimal: return "weakly_minimal";
    case CounterexampleStatus::reducible: return "reducible";
  }
  return "?";
}

struct CounterexampleVerdict {
  CounterexampleStatus status = CounterexampleStatus::not_counterexample;
  std::string reason;
};

template <GroupElement E>
  requires PointAction<E>
CounterexampleVerdict counterexample_status(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx) {
  if (!is_regular(g, ctx)) return {CounterexampleStatus::not_counterexample, "G is not regular"};
  std::vector<E> tr;
  for (std::uint32_t a = 0; a < ctx.point_count(); ++a) tr.push_back(ctx.translation(a));
  if (!is_soluble(FiniteGroup<E>::close(tr, ctx.point_count())))
    return {CounterexampleStatus::not_counterexample, "N is insoluble"};
  if (is_soluble(g)) return {CounterexampleStatus::not_counterexample, "G is soluble"};
  bool minimal = true, weakly = true;
  for (const auto& m : subgroups_of_n(ctx)) {
    if (m.is_whole()) continue;
    auto rep = is_admissible(g, ctx, m);
    if (!rep.admissible || *rep.m_star_soluble) continue;
    minimal = false;
    if (rep.invariant && is_normal_in_n(ctx, m)) weakly = false;
  }
  if (minimal) return {CounterexampleStatus::minimal, "every proper admissible M has soluble M_*"};
  if (weakly) return {CounterexampleStatus::weakly_minimal, "every proper invariant normal M has soluble M_*"};
  return {CounterexampleStatus::reducible, "some proper invariant normal M has insoluble M_*"};
}

// Submodule spanned by v under the matrices.
inline Subspace spin(const GFVector& v, const std::vector<GFMatrix>& mats) {
  std::vector<GFVector> basis{v};
  Subspace s = Subspace::span(v.p(), v.dim(), basis);
  for (std::size_t pos = 0; pos < basis.size(); ++pos)
    for (const auto& a : mats) {
      GFVector w = a * basis[pos];
      if (!s.contains(w)) {
        basis.push_back(w);
        s = Subspace::span(v.p(), v.dim(), basis);
      }
    }
  return s;
}

// No proper nontrivial subspace is invariant under the linear parts.
inline bool linear_irreducible(const std::vector<GFMatrix>& mats, std::uint32_t p, std::uint32_t n,
                               std::size_t point_bound = kDefaultPointBound) {
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    points *= p;
    if (points > point_bound) throw BoundExceeded("irreducibility: p^n exceeds the point bound");
  }
  for (std::uint64_t x = 1; x < points; ++x)
    if (spin(GFVector::from_index(p, n, x), mats).dim() != n) return false;
  return true;
}

inline bool irreducibility(const FiniteGroup<AffineElement>& g, const HolomorphContext<AffineElement>& ctx,
                           std::size_t point_bound = kDefaultPointBound) {
  if (!ctx.base.is_elementary_abelian()) throw PreconditionError("irreducibility needs elementary abelian N");
  std::vector<GFMatrix> mats;
  for (const auto& s : g.generators()) mats.push_back(s.lin());
  return linear_irreducible(mats, ctx.base.p, ctx.base.n, point_bound);
}

}  // namespace holoscope
