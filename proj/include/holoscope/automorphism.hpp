#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope {

// Multiplication table over element indices; index 0 is the identity.
class CayleyTable {
 public:
  CayleyTable(std::size_t n, std::vector<std::uint32_t> mul) : n_(n), mul_(std::move(mul)) {
    if (n_ == 0 || mul_.size() != n_ * n_) throw PreconditionError("Cayley table has the wrong size");
    for (std::uint32_t a = 0; a < n_; ++a)
      if ((*this)(0, a) != a || (*this)(a, 0) != a) throw PreconditionError("index 0 is not the identity");
    inv_.assign(n_, n_);
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = 0; b < n_; ++b)
        if ((*this)(a, b) == 0) inv_[a] = b;
    for (std::uint32_t a = 0; a < n_; ++a)
      if (inv_[a] == n_) throw PreconditionError("Cayley table element without an inverse");
    order_.assign(n_, 1);
    for (std::uint32_t a = 0; a < n_; ++a) {
      std::uint32_t x = a;
      while (x != 0) {
        x = (*this)(x, a);
        if (++order_[a] > n_) throw PreconditionError("Cayley table is not a group");
      }
    }
    rank_.resize(n_);
    for (std::uint32_t a = 0; a < n_; ++a) rank_[a] = a;
  }

  template <GroupElement E>
  static CayleyTable of(const FiniteGroup<E>& g, std::size_t bound = 4096) {
    if (g.order() > bound)
      throw BoundExceeded("Cayley table of order " + std::to_string(g.order()) + " exceeds bound " +
                          std::to_string(bound));
    const std::size_t n = g.order();
    std::vector<std::uint32_t> mul(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) mul[a * n + b] = g.index(g[a] * g[b]);
    CayleyTable t(n, std::move(mul));
    std::vector<std::uint32_t> by_value(n);
    for (std::uint32_t a = 0; a < n; ++a) by_value[a] = a;
    std::sort(by_value.begin(), by_value.end(), [&](std::uint32_t a, std::uint32_t b) { return g[a] < g[b]; });
    for (std::uint32_t k = 0; k < n; ++k) t.rank_[by_value[k]] = k;
    return t;
  }

  std::size_t size() const noexcept { return n_; }
  std::uint32_t operator()(std::uint32_t a, std::uint32_t b) const { return mul_[a * n_ + b]; }
  std::uint32_t inverse(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t order(std::uint32_t a) const { return order_[a]; }
  // Position of the element in canonical element order.
  std::uint32_t rank(std::uint32_t a) const { return rank_[a]; }

  bool is_abelian() const {
    for (std::uint32_t a = 0; a < n_; ++a)
      for (std::uint32_t b = a + 1; b < n_; ++b)
        if ((*this)(a, b) != (*this)(b, a)) return false;
    return true;
  }

  // Number of elements of each order; an isomorphism invariant.
  std::map<std::uint32_t, std::uint32_t> order_statistics() const {
    std::map<std::uint32_t, std::uint32_t> out;
    for (std::uint32_t a = 0; a < n_; ++a) ++out[order_[a]];
    return out;
  }

  std::vector<bool> closure(const std::vector<std::uint32_t>& gens) const {
    std::vector<bool> in(n_, false);
    std::vector<std::uint32_t> queue{0};
    in[0] = true;
    for (std::size_t pos = 0; pos < queue.size(); ++pos)
      for (std::uint32_t s : gens) {
        std::uint32_t y = (*this)(queue[pos], s);
        if (!in[y]) {
          in[y] = true;
          queue.push_back(y);
        }
      }
    return in;
  }

  std::size_t closure_size(const std::vector<std::uint32_t>& gens) const {
    auto in = closure(gens);
    return static_cast<std::size_t>(std::count(in.begin(), in.end(), true));
  }

 private:
  std::size_t n_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> order_;
  std::vector<std::uint32_t> rank_;
};

// A short generating set: one element if cyclic, else a pair with rare element orders, else greedy.
inline std::vector<std::uint32_t> small_generating_set(const CayleyTable& t) {
  const std::size_t n = t.size();
  if (n == 1) return {};
  for (std::uint32_t a = 1; a < n; ++a)
    if (t.order(a) == n) return {a};
  auto stats = t.order_statistics();
  std::vector<std::uint32_t> elems;
  for (std::uint32_t a = 1; a < n; ++a) elems.push_back(a);
  std::stable_sort(elems.begin(), elems.end(), [&](std::uint32_t a, std::uint32_t b) {
    auto ca = stats[t.order(a)], cb = stats[t.order(b)];
    if (ca != cb) return ca < cb;
    return t.rank(a) < t.rank(b);
  });
  std::size_t best_cost = SIZE_MAX;
  std::vector<std::uint32_t> best;
  for (std::size_t i = 0; i < elems.size(); ++i) {
    const std::size_t ci = stats[t.order(elems[i])];
    if (ci * ci >= best_cost) break;
    for (std::size_t j = i + 1; j < elems.size(); ++j) {
      const std::size_t cost = ci * stats[t.order(elems[j])];
      if (cost >= best_cost) break;
      if (t.closure_size({elems[i], elems[j]}) == n) {
        best_cost = cost;
        best = {elems[i], elems[j]};
        break;
      }
    }
  }
  if (!best.empty()) return best;
  std::vector<std::uint32_t> gens;
  std::vector<bool> in = t.closure(gens);
  for (std::uint32_t a : elems) {
    if (in[a]) continue;
    gens.push_back(a);
    in = t.closure(gens);
  }
  return gens;
}

namespace detail {

// Extends generator images to a map on all of A; nullopt if inconsistent.
inline std::optional<std::vector<std::uint32_t>> extend_map(const CayleyTable& a, const CayleyTable& b,
                                                             const std::vector<std::uint32_t>& gens,
                                                             const std::vector<std::uint32_t>& images,
                                                             std::size_t depth) {
  std::vector<std::uint32_t> phi(a.size(), UINT32_MAX);
  std::vector<std::uint32_t> queue{0};
  phi[0] = 0;
  for (std::size_t pos = 0; pos < queue.size(); ++pos) {
    const std::uint32_t x = queue[pos];
    for (std::size_t k = 0; k < depth; ++k) {
      const std::uint32_t y = a(x, gens[k]);
      const std::uint32_t fy = b(phi[x], images[k]);
      if (phi[y] == UINT32_MAX) {
        phi[y] = fy;
        queue.push_back(y);
      } else if (phi[y] != fy) {
        return std::nullopt;
      }
    }
  }
  return phi;
}

// Homomorphisms A -> B that are injective, via backtracking over generator images.
template <class Visit>
void search_embeddings(const CayleyTable& a, const CayleyTable& b, Visit&& visit) {
  const auto gens = small_generating_set(a);
  std::vector<std::vector<std::uint32_t>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (std::uint32_t y = 0; y < b.size(); ++y)
      if (b.order(y) == a.order(gens[k])) candidates[k].push_back(y);
    std::sort(candidates[k].begin(), candidates[k].end(),
              [&](std::uint32_t u, std::uint32_t v) { return b.rank(u) < b.rank(v); });
  }
  std::vector<std::uint32_t> images(gens.size());
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t depth) -> void {
    if (stop) return;
    if (depth == gens.size()) {
      auto phi = extend_map(a, b, gens, images, depth);
      if (!phi) return;
      std::vector<bool> hit(b.size(), false);
      for (std::uint32_t y : *phi) {
        if (hit[y]) return;
        hit[y] = true;
      }
      if (!visit(*phi)) stop = true;
      return;
    }
    for (std::uint32_t y : candidates[depth]) {
      images[depth] = y;
      if (depth > 0 && depth + 1 < gens.size() && !extend_map(a, b, gens, images, depth + 1)) continue;
      self(self, depth + 1);
      if (stop) return;
    }
  };
  if (gens.empty()) {
    visit(std::vector<std::uint32_t>{0});
    return;
  }
  rec(rec, 0);
}

}  // namespace detail

inline std::optional<std::vector<std::uint32_t>> find_isomorphism(const CayleyTable& a, const CayleyTable& b) {
  if (a.size() != b.size() || a.order_statistics() != b.order_statistics()) return std::nullopt;
  std::optional<std::vector<std::uint32_t>> found;
  detail::search_embeddings(a, b, [&](const std::vector<std::uint32_t>& phi) {
    found = phi;
    return false;
  });
  return found;
}

inline bool are_isomorphic(const CayleyTable& a, const CayleyTable& b) { return find_isomorphism(a, b).has_value(); }

// All automorphisms as maps on element indices, in search order.
inline std::vector<std::vector<std::uint32_t>> automorphism_maps(const CayleyTable& t) {
  std::vector<std::vector<std::uint32_t>> out;
  detail::search_embeddings(t, t, [&](const std::vector<std::uint32_t>& phi) {
    out.push_back(phi);
    return true;
  });
  return out;
}

// Full check that phi is a bijective homomorphism.
inline bool is_automorphism(const CayleyTable& t, const std::vector<std::uint32_t>& phi) {
  if (phi.size() != t.size()) return false;
  std::vector<bool> hit(t.size(), false);
  for (std::uint32_t y : phi) {
    if (y >= t.size() || hit[y]) return false;
    hit[y] = true;
  }
  for (std::uint32_t a = 0; a < t.size(); ++a)
    for (std::uint32_t b = 0; b < t.size(); ++b)
      if (phi[t(a, b)] != t(phi[a], phi[b])) return false;
  return true;
}

template <GroupElement E>
FiniteGroup<Permutation> automorphism_group(const FiniteGroup<E>& g, std::size_t bound = 500) {
  if (g.order() > bound)
    throw BoundExceeded("automorphism_group: order " + std::to_string(g.order()) + " exceeds bound " +
                        std::to_string(bound));
  const CayleyTable t = CayleyTable::of(g, bound);
  std::vector<Permutation> perms;
  for (auto& phi : automorphism_maps(t)) perms.emplace_back(std::move(phi));
  return FiniteGroup<Permutation>::from_subset(perms);
}

// Automorphisms of g mapping h onto itself.
template <GroupElement E>
FiniteGroup<Permutation> relative_automorphism_group(const FiniteGroup<E>& g, const FiniteGroup<E>& h,
                                                     std::size_t bound = 500) {
  if (!h.is_subgroup_of(g)) throw PreconditionError("relative automorphisms need a subgroup");
  const FiniteGroup<Permutation> aut = automorphism_group(g, bound);
  std::vector<std::uint32_t> h_idx;
  std::vector<bool> in_h(g.order(), false);
  for (const auto& x : h.elements()) {
    h_idx.push_back(g.index(x));
    in_h[h_idx.back()] = true;
  }
  std::vector<Permutation> keep;
  for (const auto& phi : aut.elements())
    if (std::all_of(h_idx.begin(), h_idx.end(), [&](std::uint32_t x) { return in_h[phi(x)]; })) keep.push_back(phi);
  return FiniteGroup<Permutation>::from_subset(keep);
}

}  // namespace holoscope
