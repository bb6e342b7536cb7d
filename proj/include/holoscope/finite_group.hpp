#pragma once

#include <algorithm>
#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "holoscope/errors.hpp"

namespace holoscope {

inline constexpr std::size_t kDefaultClosureCap = 2'000'000;
inline constexpr std::size_t kDerivedSeriesCap = 20;

template <class E>
concept GroupElement = std::copyable<E> && std::totally_ordered<E> && requires(const E& a, const E& b) {
  { a * b } -> std::convertible_to<E>;
  { a.inverse() } -> std::convertible_to<E>;
  { a.identity() } -> std::convertible_to<E>;
  { std::hash<E>{}(a) } -> std::convertible_to<std::size_t>;
};

template <GroupElement E>
class FiniteGroup {
 public:
  // Dimino closure. Generators are sorted and deduplicated first, so the element order
  // depends only on the generator set.
  static FiniteGroup close(std::vector<E> generators, std::size_t cap = kDefaultClosureCap) {
    if (generators.empty()) throw PreconditionError("close needs a nonempty generator list");
    std::sort(generators.begin(), generators.end());
    generators.erase(std::unique(generators.begin(), generators.end()), generators.end());
    FiniteGroup g(generators.front().identity());
    for (const auto& s : generators) g.adjoin(s, cap);
    g.generators_ = std::move(generators);
    return g;
  }

  static FiniteGroup trivial(const E& identity) {
    FiniteGroup g(identity);
    g.generators_ = {identity};
    return g;
  }

  // Closure of the group with one more generator.
  FiniteGroup extended(const E& s, std::size_t cap = kDefaultClosureCap) const {
    FiniteGroup g = *this;
    g.adjoin(s, cap);
    if (std::find(g.generators_.begin(), g.generators_.end(), s) == g.generators_.end()) {
      g.generators_.push_back(s);
      std::sort(g.generators_.begin(), g.generators_.end());
    }
    return g;
  }

  // The subgroup whose elements are exactly `subset`; throws if the subset is not closed.
  static FiniteGroup from_subset(const std::vector<E>& subset) {
    if (subset.empty()) throw PreconditionError("a subgroup is never empty");
    std::unordered_set<E> members(subset.begin(), subset.end());
    FiniteGroup g(subset.front().identity());
    if (!members.count(g.elements_.front())) throw PreconditionError("subset does not contain the identity");
    std::vector<E> gens;
    for (const auto& x : subset) {
      if (g.contains(x)) continue;
      const std::size_t before = g.elements_.size();
      try {
        g.adjoin(x, members.size());
      } catch (const BoundExceeded&) {
        throw PreconditionError("subset is not closed under multiplication");
      }
      gens.push_back(x);
      for (std::size_t k = before; k < g.elements_.size(); ++k)
        if (!members.count(g.elements_[k])) throw PreconditionError("subset is not closed under multiplication");
    }
    if (g.elements_.size() != members.size()) throw PreconditionError("subset is not closed under multiplication");
    if (gens.empty()) gens.push_back(g.elements_.front());
    std::sort(gens.begin(), gens.end());
    g.generators_ = std::move(gens);
    return g;
  }

  const std::vector<E>& generators() const noexcept { return generators_; }
  const std::vector<E>& elements() const noexcept { return elements_; }
  std::size_t order() const noexcept { return elements_.size(); }
  const E& identity() const noexcept { return elements_.front(); }
  const E& operator[](std::size_t i) const { return elements_[i]; }

  bool contains(const E& x) const { return index_.count(x) != 0; }

  std::optional<std::uint32_t> index_of(const E& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::uint32_t index(const E& x) const {
    auto it = index_.find(x);
    if (it == index_.end()) throw PreconditionError("element is not in the group");
    return it->second;
  }

  bool is_subgroup_of(const FiniteGroup& parent) const {
    return std::all_of(generators_.begin(), generators_.end(), [&](const E& x) { return parent.contains(x); });
  }

  bool same_elements(const FiniteGroup& o) const { return order() == o.order() && is_subgroup_of(o); }

  // Elements sorted; a canonical key for deduplicating subgroups.
  std::vector<E> sorted_elements() const {
    std::vector<E> out = elements_;
    std::sort(out.begin(), out.end());
    return out;
  }

  std::uint64_t element_order(const E& x) const {
    E y = x;
    std::uint64_t k = 1;
    while (!(y == identity())) {
      y = y * x;
      if (++k > order()) throw InvariantViolation("element order exceeds group order");
    }
    return k;
  }

 private:
  explicit FiniteGroup(const E& identity) {
    elements_.push_back(identity);
    index_.emplace(identity, 0);
  }

  void push(const E& x) {
    index_.emplace(x, static_cast<std::uint32_t>(elements_.size()));
    elements_.push_back(x);
  }

  void adjoin(const E& s, std::size_t cap) {
    if (contains(s)) return;
    active_.push_back(s);
    const std::size_t h = elements_.size();
    auto add_coset = [&](const E& rep) {
      if (elements_.size() + h > cap)
        throw BoundExceeded("group closure exceeded cap of " + std::to_string(cap) + " elements");
      for (std::size_t i = 0; i < h; ++i) push(elements_[i] * rep);
    };
    add_coset(s);
    for (std::size_t pos = h; pos < elements_.size(); pos += h) {
      const E rep = elements_[pos];
      for (const auto& t : active_) {
        E x = rep * t;
        if (!contains(x)) add_coset(x);
      }
    }
  }

  std::vector<E> generators_;
  std::vector<E> active_;
  std::vector<E> elements_;
  std::unordered_map<E, std::uint32_t> index_;
};

template <GroupElement E>
class SubgroupHandle {
 public:
  SubgroupHandle(const FiniteGroup<E>& parent, FiniteGroup<E> sub) : group_(std::move(sub)), parent_order_(parent.order()) {
    if (!group_.is_subgroup_of(parent)) throw PreconditionError("subgroup elements lie outside the parent");
    ensure(parent_order_ % group_.order() == 0, "Lagrange violated: subgroup order does not divide parent order");
  }

  const FiniteGroup<E>& group() const noexcept { return group_; }
  std::size_t order() const noexcept { return group_.order(); }
  std::size_t parent_order() const noexcept { return parent_order_; }
  std::size_t index() const noexcept { return parent_order_ / group_.order(); }
  const std::vector<E>& generators() const noexcept { return group_.generators(); }
  const std::vector<E>& elements() const noexcept { return group_.elements(); }
  bool contains(const E& x) const { return group_.contains(x); }

 private:
  FiniteGroup<E> group_;
  std::size_t parent_order_;
};

template <GroupElement E>
E commutator(const E& x, const E& y) {
  return x.inverse() * y.inverse() * x * y;
}

// Smallest subgroup of g containing seeds and normalized by g.
template <GroupElement E>
FiniteGroup<E> normal_closure(const FiniteGroup<E>& g, const std::vector<E>& seeds) {
  FiniteGroup<E> h = FiniteGroup<E>::trivial(g.identity());
  for (const auto& s : seeds)
    if (!h.contains(s)) h = h.extended(s, g.order());
  std::vector<E> gens_inv;
  for (const auto& x : g.generators()) gens_inv.push_back(x.inverse());
  bool grown = true;
  while (grown) {
    grown = false;
    for (std::size_t k = 0; k < g.generators().size() && !grown; ++k) {
      for (const auto& y : h.generators()) {
        E c = g.generators()[k] * y * gens_inv[k];
        if (!h.contains(c)) {
          h = h.extended(c, g.order());
          grown = true;
          break;
        }
      }
    }
  }
  return h;
}

template <GroupElement E>
bool is_normal(const FiniteGroup<E>& h, const FiniteGroup<E>& g) {
  if (!h.is_subgroup_of(g)) throw PreconditionError("is_normal: h is not a subgroup of g");
  for (const auto& x : g.generators()) {
    E xi = x.inverse();
    for (const auto& y : h.generators())
      if (!h.contains(x * y * xi)) return false;
  }
  return true;
}

template <GroupElement E>
bool is_normal(const SubgroupHandle<E>& h, const FiniteGroup<E>& g) {
  return is_normal(h.group(), g);
}

template <GroupElement E>
FiniteGroup<E> derived_subgroup(const FiniteGroup<E>& g) {
  std::vector<E> seeds;
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) seeds.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, seeds);
}

template <GroupElement E>
std::vector<std::size_t> derived_series_orders(const FiniteGroup<E>& g) {
  std::vector<std::size_t> orders{g.order()};
  FiniteGroup<E> cur = g;
  for (std::size_t step = 0; step < kDerivedSeriesCap; ++step) {
    if (cur.order() == 1) return orders;
    FiniteGroup<E> next = derived_subgroup(cur);
    if (next.order() == cur.order()) return orders;
    orders.push_back(next.order());
    cur = std::move(next);
  }
  throw BoundExceeded("derived series longer than the cap of 20");
}

template <GroupElement E>
bool is_soluble(const FiniteGroup<E>& g) {
  return derived_series_orders(g).back() == 1;
}

template <GroupElement E>
bool is_abelian(const FiniteGroup<E>& g) {
  const auto& gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i] * gens[j] == gens[j] * gens[i])) return false;
  return true;
}

// Conjugacy classes as lists of element indices, ordered by their smallest index.
template <GroupElement E>
std::vector<std::vector<std::uint32_t>> conjugacy_classes(const FiniteGroup<E>& g) {
  std::vector<bool> seen(g.order(), false);
  std::vector<E> inv;
  for (const auto& x : g.generators()) inv.push_back(x.inverse());
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t i = 0; i < g.order(); ++i) {
    if (seen[i]) continue;
    std::vector<std::uint32_t> cls{i};
    seen[i] = true;
    for (std::size_t pos = 0; pos < cls.size(); ++pos) {
      const E& y = g[cls[pos]];
      for (std::size_t k = 0; k < inv.size(); ++k) {
        std::uint32_t z = g.index(g.generators()[k] * y * inv[k]);
        if (!seen[z]) {
          seen[z] = true;
          cls.push_back(z);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

template <GroupElement E>
FiniteGroup<E> join(const FiniteGroup<E>& a, const FiniteGroup<E>& b, std::size_t cap = kDefaultClosureCap) {
  FiniteGroup<E> out = a;
  for (const auto& x : b.generators())
    if (!out.contains(x)) out = out.extended(x, cap);
  return out;
}

namespace detail {

template <GroupElement E>
void check_bound(const FiniteGroup<E>& g, std::size_t bound, const char* what) {
  if (g.order() > bound)
    throw BoundExceeded(std::string(what) + ": group order " + std::to_string(g.order()) + " exceeds bound " +
                        std::to_string(bound));
}

template <GroupElement E>
void push_unique(std::vector<FiniteGroup<E>>& list, FiniteGroup<E> h) {
  for (const auto& k : list)
    if (k.same_elements(h)) return;
  list.push_back(std::move(h));
}

}  // namespace detail

// Normal closures of one representative per nontrivial class, kept if inclusion-minimal.
template <GroupElement E>
std::vector<FiniteGroup<E>> minimal_normal_subgroups(const FiniteGroup<E>& g, std::size_t bound = 100'000) {
  detail::check_bound(g, bound, "minimal_normal_subgroups");
  std::vector<FiniteGroup<E>> closures;
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls.front() == 0) continue;
    detail::push_unique(closures, normal_closure(g, std::vector<E>{g[cls.front()]}));
  }
  std::vector<FiniteGroup<E>> minimal;
  for (std::size_t i = 0; i < closures.size(); ++i) {
    bool is_min = true;
    for (std::size_t j = 0; j < closures.size() && is_min; ++j)
      if (j != i && closures[j].order() < closures[i].order() && closures[j].is_subgroup_of(closures[i]))
        is_min = false;
    if (is_min) minimal.push_back(closures[i]);
  }
  std::sort(minimal.begin(), minimal.end(), [](const auto& a, const auto& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.sorted_elements() < b.sorted_elements();
  });
  return minimal;
}

template <GroupElement E>
FiniteGroup<E> socle(const FiniteGroup<E>& g, std::size_t bound = 100'000) {
  FiniteGroup<E> s = FiniteGroup<E>::trivial(g.identity());
  for (const auto& m : minimal_normal_subgroups(g, bound)) s = join(s, m, g.order());
  return s;
}

// Every normal subgroup: joins of normal closures of classes, until stable.
template <GroupElement E>
std::vector<FiniteGroup<E>> normal_subgroups(const FiniteGroup<E>& g, std::size_t bound = 100'000) {
  detail::check_bound(g, bound, "normal_subgroups");
  std::vector<FiniteGroup<E>> atoms;
  for (const auto& cls : conjugacy_classes(g)) {
    if (cls.front() == 0) continue;
    detail::push_unique(atoms, normal_closure(g, std::vector<E>{g[cls.front()]}));
  }
  std::vector<FiniteGroup<E>> all{FiniteGroup<E>::trivial(g.identity())};
  for (std::size_t pos = 0; pos < all.size(); ++pos)
    for (const auto& a : atoms) {
      if (a.is_subgroup_of(all[pos])) continue;
      FiniteGroup<E> j = join(all[pos], a, g.order());
      detail::push_unique(all, std::move(j));
    }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.sorted_elements() < b.sorted_elements();
  });
  return all;
}

// Every subgroup, by joining cyclic subgroups until stable. Small groups only.
template <GroupElement E>
std::vector<FiniteGroup<E>> all_subgroups(const FiniteGroup<E>& g, std::size_t bound = 200) {
  detail::check_bound(g, bound, "all_subgroups");
  std::vector<FiniteGroup<E>> cyclic;
  for (const auto& x : g.elements()) detail::push_unique(cyclic, FiniteGroup<E>::close({x}, g.order()));
  std::vector<FiniteGroup<E>> all{FiniteGroup<E>::trivial(g.identity())};
  for (std::size_t pos = 0; pos < all.size(); ++pos)
    for (const auto& c : cyclic) {
      if (c.is_subgroup_of(all[pos])) continue;
      detail::push_unique(all, join(all[pos], c, g.order()));
    }
  std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.sorted_elements() < b.sorted_elements();
  });
  return all;
}

}  // namespace holoscope
