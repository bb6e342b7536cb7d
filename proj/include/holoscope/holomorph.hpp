#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <thread>
#include <unordered_set>
#include <vector>

#include "holoscope/action.hpp"
#include "holoscope/affine.hpp"
#include "holoscope/automorphism.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/gf_linalg.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope {

inline constexpr std::size_t kDefaultPointBound = 4096;
inline constexpr std::size_t kDefaultSearchBound = 10'000;

// The group N as a law on point indices 0..order-1, with 0 the identity.
struct BaseGroup {
  std::string name;
  std::uint32_t order = 1;
  std::function<std::uint32_t(std::uint32_t, std::uint32_t)> mul;
  std::function<std::uint32_t(std::uint32_t)> inv;
  std::uint32_t p = 0;  // nonzero when N is F_p^n with canonical vector indexing
  std::uint32_t n = 0;

  bool is_elementary_abelian() const noexcept { return p != 0; }
};

template <GroupElement E>
struct HolomorphContext {
  BaseGroup base;
  std::vector<E> ambient_generators;
  std::uint64_t ambient_order = 0;
  std::function<E(std::uint32_t)> translation;
  // The element with the given images of all points.
  std::function<E(const std::vector<std::uint32_t>&)> from_images;
  // Aut(N) as maps on point indices, materialized on demand.
  std::function<std::vector<std::vector<std::uint32_t>>(std::size_t bound)> automorphism_images;

  std::size_t point_count() const noexcept { return base.order; }

  ActionTable action(const FiniteGroup<E>& g) const { return ActionTable::of(g, point_count()); }

  FiniteGroup<E> ambient(std::size_t cap = kDefaultClosureCap) const {
    if (ambient_order > cap)
      throw BoundExceeded("ambient holomorph of order " + std::to_string(ambient_order) + " exceeds cap " +
                          std::to_string(cap));
    return FiniteGroup<E>::close(ambient_generators, cap);
  }
};

inline std::uint64_t gl_order(std::uint32_t p, std::uint32_t n) {
  std::uint64_t pn = 1, order = 1;
  for (std::uint32_t i = 0; i < n; ++i) pn *= p;
  std::uint64_t pi = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    order *= pn - pi;
    pi *= p;
  }
  return order;
}

inline std::uint32_t primitive_root(std::uint32_t p) {
  for (std::uint32_t g = 1; g < p; ++g) {
    std::uint32_t x = g, k = 1;
    while (x != 1) {
      x = x * g % p;
      ++k;
    }
    if (k == p - 1) return g;
  }
  return 1;
}

// Generators of GL_n(p): adjacent elementary transvections plus a primitive-root diagonal.
inline std::vector<GFMatrix> gl_generators(std::uint32_t p, std::uint32_t n) {
  std::vector<GFMatrix> gens;
  const GFMatrix id = GFMatrix::identity(p, n);
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    gens.push_back(id.with_entry(i, i + 1, 1));
    gens.push_back(id.with_entry(i + 1, i, 1));
  }
  if (p > 2) gens.push_back(id.with_entry(0, 0, primitive_root(p)));
  if (gens.empty()) gens.push_back(id);
  return gens;
}

inline BaseGroup elementary_abelian_base(std::uint32_t p, std::uint32_t n) {
  BaseGroup b;
  b.name = n == 1 ? "C" + std::to_string(p) : "C" + std::to_string(p) + "^" + std::to_string(n);
  std::uint64_t order = 1;
  for (std::uint32_t i = 0; i < n; ++i) order *= p;
  b.order = static_cast<std::uint32_t>(order);
  b.p = p;
  b.n = n;
  if (p == 2) {
    b.mul = [](std::uint32_t x, std::uint32_t y) { return x ^ y; };
    b.inv = [](std::uint32_t x) { return x; };
  } else {
    b.mul = [p, n](std::uint32_t x, std::uint32_t y) {
      return static_cast<std::uint32_t>((GFVector::from_index(p, n, x) + GFVector::from_index(p, n, y)).index());
    };
    b.inv = [p, n](std::uint32_t x) {
      return static_cast<std::uint32_t>((-GFVector::from_index(p, n, x)).index());
    };
  }
  return b;
}

// Affine element with the given point images; images must come from an affine map.
inline AffineElement affine_from_images(std::uint32_t p, std::uint32_t n, const std::vector<std::uint32_t>& images) {
  const GFVector t = GFVector::from_index(p, n, images[0]);
  std::vector<GFVector> cols;
  for (std::uint32_t j = 0; j < n; ++j) {
    const GFVector ej = GFVector(p, n).with_entry(j, 1);
    cols.push_back(GFVector::from_index(p, n, images[ej.index()]) - t);
  }
  AffineElement e(GFMatrix::from_columns(cols), t);
  for (std::uint32_t x = 0; x < images.size(); ++x)
    if (act_on_point(e, x) != images[x]) throw PreconditionError("point map is not affine");
  return e;
}

inline HolomorphContext<AffineElement> build_affine_holomorph(std::uint32_t p, std::uint32_t n,
                                                              std::size_t point_bound = kDefaultPointBound) {
  detail::check_modulus(p);
  detail::check_dim(n, "vector space dimension");
  std::uint64_t points = 1;
  for (std::uint32_t i = 0; i < n; ++i) {
    points *= p;
    if (points > point_bound)
      throw BoundExceeded("p^n exceeds the point bound of " + std::to_string(point_bound));
  }
  HolomorphContext<AffineElement> ctx;
  ctx.base = elementary_abelian_base(p, n);
  for (std::uint32_t i = 0; i < n; ++i)
    ctx.ambient_generators.push_back(AffineElement::translation(GFVector(p, n).with_entry(i, 1)));
  for (const auto& m : gl_generators(p, n)) ctx.ambient_generators.push_back(AffineElement::linear(m));
  ctx.ambient_order = points * gl_order(p, n);
  ctx.translation = [p, n](std::uint32_t a) { return AffineElement::translation(GFVector::from_index(p, n, a)); };
  ctx.from_images = [p, n](const std::vector<std::uint32_t>& img) { return affine_from_images(p, n, img); };
  ctx.automorphism_images = [p, n](std::size_t bound) {
    if (gl_order(p, n) > bound) throw BoundExceeded("GL_n(p) exceeds the automorphism bound");
    auto gl = FiniteGroup<GFMatrix>::close(gl_generators(p, n), bound);
    std::uint32_t pts = 1;
    for (std::uint32_t i = 0; i < n; ++i) pts *= p;
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& m : gl.sorted_elements()) {
      std::vector<std::uint32_t> img(pts);
      for (std::uint32_t x = 0; x < pts; ++x) img[x] = act_on_point(m, x);
      out.push_back(std::move(img));
    }
    return out;
  };
  return ctx;
}

// Hol(N) for an explicit group N, acting on the element indices of N.
template <GroupElement E>
HolomorphContext<Permutation> build_holomorph(const FiniteGroup<E>& n_group, const std::string& name = "N",
                                              std::size_t bound = 500) {
  auto table = std::make_shared<CayleyTable>(CayleyTable::of(n_group, bound));
  const std::uint32_t n = static_cast<std::uint32_t>(table->size());
  auto auts = std::make_shared<std::vector<std::vector<std::uint32_t>>>(automorphism_maps(*table));
  std::sort(auts->begin(), auts->end());
  HolomorphContext<Permutation> ctx;
  ctx.base.name = name;
  ctx.base.order = n;
  ctx.base.mul = [table](std::uint32_t a, std::uint32_t b) { return (*table)(a, b); };
  ctx.base.inv = [table](std::uint32_t a) { return table->inverse(a); };
  ctx.translation = [table, n](std::uint32_t a) {
    std::vector<std::uint32_t> img(n);
    for (std::uint32_t x = 0; x < n; ++x) img[x] = (*table)(a, x);
    return Permutation(std::move(img));
  };
  ctx.from_images = [](const std::vector<std::uint32_t>& img) { return Permutation(img); };
  ctx.automorphism_images = [auts](std::size_t bound) {
    if (auts->size() > bound) throw BoundExceeded("Aut(N) exceeds the automorphism bound");
    return *auts;
  };
  std::vector<Permutation> aut_perms;
  for (const auto& a : *auts) aut_perms.emplace_back(a);
  const auto aut_group = FiniteGroup<Permutation>::from_subset(aut_perms);
  const auto small = small_generating_set(*table);
  for (std::uint32_t s : small) ctx.ambient_generators.push_back(ctx.translation(s));
  for (const auto& a : aut_group.generators()) ctx.ambient_generators.push_back(a);
  if (ctx.ambient_generators.empty()) ctx.ambient_generators.push_back(Permutation::identity(n));
  ctx.ambient_order = static_cast<std::uint64_t>(n) * auts->size();
  return ctx;
}

template <GroupElement E>
bool is_transitive(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx) {
  return orbit(g, ctx.action(g), 0).size() == ctx.point_count();
}

template <GroupElement E>
bool is_regular(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx) {
  return g.order() == ctx.point_count() && is_transitive(g, ctx);
}

// The translation subspace U = {u : (u, I) in g}; checked to be invariant under g.
inline Subspace translations(const FiniteGroup<AffineElement>& g) {
  const std::uint32_t p = g.identity().p(), n = g.identity().dim();
  std::vector<GFVector> us;
  for (const auto& x : g.elements())
    if (x.lin().is_identity()) us.push_back(x.trans());
  Subspace u = Subspace::span(p, n, us);
  ensure(u.size() == us.size(), "translations of a group do not form a subspace");
  for (const auto& s : g.generators())
    for (const auto& b : u.basis()) ensure(u.contains(s.lin() * b), "translation subspace is not G-invariant");
  return u;
}

// For each point a, the unique element of a regular group sending the identity point to a.
template <GroupElement E>
  requires PointAction<E>
std::vector<E> regular_labels(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx) {
  if (!is_regular(g, ctx)) throw PreconditionError("group is not regular");
  std::vector<std::optional<E>> slot(ctx.point_count());
  for (const auto& x : g.elements()) slot[act_on_point(x, 0)] = x;
  std::vector<E> out;
  for (auto& s : slot) out.push_back(*s);
  return out;
}

struct SkewBrace {
  CayleyTable add;
  CayleyTable circ;
};

// Left-normalized check that a table on 0..n-1 with identity 0 is associative.
inline bool is_associative(const CayleyTable& t) {
  for (std::uint32_t a = 0; a < t.size(); ++a)
    for (std::uint32_t b = 0; b < t.size(); ++b)
      for (std::uint32_t c = 0; c < t.size(); ++c)
        if (t(t(a, b), c) != t(a, t(b, c))) return false;
  return true;
}

// a∘(b+c) = (a∘b) - a + (a∘c) at every triple.
inline bool brace_compatible(const SkewBrace& br) {
  const auto& add = br.add;
  const auto& circ = br.circ;
  for (std::uint32_t a = 0; a < add.size(); ++a)
    for (std::uint32_t b = 0; b < add.size(); ++b)
      for (std::uint32_t c = 0; c < add.size(); ++c)
        if (circ(a, add(b, c)) != add(add(circ(a, b), add.inverse(a)), circ(a, c))) return false;
  return true;
}

template <GroupElement E>
  requires PointAction<E>
SkewBrace skew_brace_from_regular(const FiniteGroup<E>& g, const HolomorphContext<E>& ctx) {
  const auto labels = regular_labels(g, ctx);
  const std::uint32_t n = static_cast<std::uint32_t>(ctx.point_count());
  std::vector<std::uint32_t> add(n * n), circ(n * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) {
      add[a * n + b] = ctx.base.mul(a, b);
      circ[a * n + b] = act_on_point(labels[a], b);
    }
  SkewBrace br{CayleyTable(n, std::move(add)), CayleyTable(n, std::move(circ))};
  ensure(is_associative(br.add), "additive law is not associative");
  ensure(is_associative(br.circ), "circle law is not associative");
  ensure(brace_compatible(br), "skew brace compatibility fails");
  return br;
}

namespace detail {

using SmallPerm = std::vector<std::uint8_t>;

inline SmallPerm compose(const SmallPerm& a, const SmallPerm& b) {
  SmallPerm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

// Semiregular subgroup, with each element stored in the slot of its image of the identity point.
struct SemiregularGroup {
  std::vector<SmallPerm> slot;
  std::vector<SmallPerm> gens;
  std::size_t size = 0;

  bool has(std::size_t x) const { return !slot[x].empty(); }

  std::string key() const {
    std::string k;
    for (const auto& s : slot) {
      if (s.empty()) {
        k.push_back('\xff');
        continue;
      }
      for (std::size_t i = 0; i < s.size(); i += 2)
        k.push_back(static_cast<char>((s[i] & 0x0f) | ((i + 1 < s.size() ? s[i + 1] & 0x0f : 0) << 4)));
      if (s.size() > 16)
        for (std::uint8_t v : s) k.push_back(static_cast<char>(v));
    }
    return k;
  }
};

// True iff every nontrivial power of g is fixed-point free.
inline bool cyclic_semiregular(const SmallPerm& g) {
  const std::size_t n = g.size();
  std::vector<std::int32_t> cycle_len(n, 0);
  std::vector<bool> seen(n, false);
  std::size_t len0 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = g[j]) {
      seen[j] = true;
      ++len;
    }
    if (len0 == 0) len0 = len;
    if (len != len0) return false;
  }
  return true;
}

class RegularSearch {
 public:
  RegularSearch(std::size_t n, std::vector<std::vector<std::uint32_t>> auts, std::function<std::uint32_t(std::uint32_t, std::uint32_t)> mul)
      : n_(n) {
    if (n > 255) throw BoundExceeded("regular-subgroup search supports at most 255 points");
    candidates_.resize(n);
    for (std::uint32_t a = 1; a < n; ++a)
      for (const auto& th : auts) {
        SmallPerm g(n);
        for (std::uint32_t x = 0; x < n; ++x) g[x] = static_cast<std::uint8_t>(mul(a, th[x]));
        if (cyclic_semiregular(g)) candidates_[a].push_back(std::move(g));
      }
  }

  std::vector<SemiregularGroup> run(std::size_t jobs) {
    SemiregularGroup root;
    root.slot.assign(n_, {});
    SmallPerm id(n_);
    for (std::size_t i = 0; i < n_; ++i) id[i] = static_cast<std::uint8_t>(i);
    root.slot[0] = id;
    root.size = 1;
    if (n_ == 1) return {root};
    const auto& top = candidates_[1];
    jobs = std::max<std::size_t>(1, std::min(jobs, top.size()));
    std::vector<std::vector<SemiregularGroup>> found(jobs);
    auto worker = [&](std::size_t w) {
      std::unordered_set<std::string> visited;
      std::unordered_set<std::string> seen_results;
      for (std::size_t k = w; k < top.size(); k += jobs) {
        auto child = extend(root, top[k]);
        if (!child || !visited.insert(child->key()).second) continue;
        dfs(*child, visited, seen_results, found[w]);
      }
    };
    if (jobs == 1) {
      worker(0);
    } else {
      std::vector<std::thread> threads;
      for (std::size_t w = 0; w < jobs; ++w) threads.emplace_back(worker, w);
      for (auto& t : threads) t.join();
    }
    std::vector<std::pair<std::string, SemiregularGroup>> merged;
    std::unordered_set<std::string> keys;
    for (auto& list : found)
      for (auto& g : list) {
        auto k = g.key();
        if (keys.insert(k).second) merged.emplace_back(std::move(k), std::move(g));
      }
    std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<SemiregularGroup> out;
    for (auto& m : merged) out.push_back(std::move(m.second));
    return out;
  }

 private:
  std::optional<SemiregularGroup> extend(const SemiregularGroup& s, const SmallPerm& g) const {
    SemiregularGroup t;
    t.slot.assign(n_, {});
    t.gens = s.gens;
    t.gens.push_back(g);
    std::vector<std::uint8_t> queue{0};
    t.slot[0] = s.slot[0];
    t.size = 1;
    for (std::size_t pos = 0; pos < queue.size(); ++pos) {
      const SmallPerm x = t.slot[queue[pos]];
      for (const auto& gen : t.gens) {
        SmallPerm y = compose(x, gen);
        const std::uint8_t at = y[0];
        if (t.slot[at].empty()) {
          t.slot[at] = std::move(y);
          queue.push_back(at);
          if (++t.size > n_) return std::nullopt;
        } else if (t.slot[at] != y) {
          return std::nullopt;
        }
      }
    }
    if (n_ % t.size != 0) return std::nullopt;
    return t;
  }

  void dfs(const SemiregularGroup& s, std::unordered_set<std::string>& visited,
           std::unordered_set<std::string>& seen_results, std::vector<SemiregularGroup>& out) const {
    if (s.size == n_) {
      if (seen_results.insert(s.key()).second) out.push_back(s);
      return;
    }
    std::size_t a = 1;
    while (s.has(a)) ++a;
    for (const auto& g : candidates_[a]) {
      auto child = extend(s, g);
      if (!child || !visited.insert(child->key()).second) continue;
      dfs(*child, visited, seen_results, out);
    }
  }

  std::size_t n_;
  std::vector<std::vector<SmallPerm>> candidates_;
};

}  // namespace detail

struct RegularSearchOptions {
  std::size_t ambient_bound = kDefaultSearchBound;
  std::size_t jobs = 1;
};

// Every regular subgroup of Hol(N), deduplicated as element sets, in canonical order.
template <GroupElement E>
std::vector<FiniteGroup<E>> enumerate_regular_subgroups(const HolomorphContext<E>& ctx,
                                                        const RegularSearchOptions& opts = {}) {
  if (ctx.ambient_order > opts.ambient_bound)
    throw BoundExceeded("holomorph of order " + std::to_string(ctx.ambient_order) + " exceeds the search bound " +
                        std::to_string(opts.ambient_bound));
  const std::size_t n = ctx.point_count();
  detail::RegularSearch search(n, ctx.automorphism_images(opts.ambient_bound), ctx.base.mul);
  std::vector<FiniteGroup<E>> out;
  for (const auto& s : search.run(opts.jobs)) {
    std::vector<E> gens;
    for (const auto& g : s.gens) gens.push_back(ctx.from_images(std::vector<std::uint32_t>(g.begin(), g.end())));
    if (gens.empty()) gens.push_back(ctx.translation(0));
    auto grp = FiniteGroup<E>::close(gens, n);
    ensure(is_regular(grp, ctx), "regular-subgroup search produced a non-regular group");
    out.push_back(std::move(grp));
  }
  return out;
}

}  // namespace holoscope
