#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/gf_linalg.hpp"

namespace holoscope {

// Linear action of a square matrix on the canonical indices of F_p^n.
inline std::uint32_t act_on_point(const GFMatrix& m, std::uint32_t x) {
  return static_cast<std::uint32_t>((m * GFVector::from_index(m.p(), m.cols(), x)).index());
}

template <class E>
concept PointAction = requires(const E& e, std::uint32_t x) {
  { act_on_point(e, x) } -> std::convertible_to<std::uint32_t>;
};

// Images of each group generator on a finite point set.
class ActionTable {
 public:
  ActionTable(std::size_t points, std::vector<std::vector<std::uint32_t>> images)
      : points_(points), images_(std::move(images)) {
    for (const auto& img : images_) {
      if (img.size() != points_) throw PreconditionError("action image array has the wrong length");
      std::vector<bool> seen(points_, false);
      for (std::uint32_t y : img) {
        if (y >= points_ || seen[y]) throw PreconditionError("generator does not permute the points");
        seen[y] = true;
      }
    }
  }

  template <GroupElement E>
    requires PointAction<E>
  static ActionTable of(const FiniteGroup<E>& g, std::size_t points) {
    return of_generators(g.generators(), points);
  }

  template <GroupElement E>
    requires PointAction<E>
  static ActionTable of_generators(const std::vector<E>& gens, std::size_t points) {
    std::vector<std::vector<std::uint32_t>> images;
    for (const auto& s : gens) {
      std::vector<std::uint32_t> img(points);
      for (std::uint32_t x = 0; x < points; ++x) img[x] = act_on_point(s, x);
      images.push_back(std::move(img));
    }
    return ActionTable(points, std::move(images));
  }

  std::size_t point_count() const noexcept { return points_; }
  std::size_t generator_count() const noexcept { return images_.size(); }
  std::uint32_t image(std::size_t gen, std::uint32_t x) const { return images_[gen][x]; }
  const std::vector<std::uint32_t>& images(std::size_t gen) const { return images_[gen]; }

 private:
  std::size_t points_;
  std::vector<std::vector<std::uint32_t>> images_;
};

namespace detail {

template <GroupElement E>
void check_action(const FiniteGroup<E>& g, const ActionTable& action, std::uint32_t point) {
  if (action.generator_count() != g.generators().size())
    throw PreconditionError("action table does not match the group's generators");
  if (point >= action.point_count()) throw PreconditionError("point " + std::to_string(point) + " out of range");
}

// Orbit points in BFS order with, for each, the tree parent and generator used.
struct OrbitTree {
  std::vector<std::uint32_t> points;
  std::vector<std::int64_t> slot;
  std::vector<std::uint32_t> parent;
  std::vector<std::uint32_t> via;
};

inline OrbitTree orbit_tree(const ActionTable& action, std::uint32_t point) {
  OrbitTree t;
  t.slot.assign(action.point_count(), -1);
  t.points.push_back(point);
  t.parent.push_back(0);
  t.via.push_back(0);
  t.slot[point] = 0;
  for (std::size_t pos = 0; pos < t.points.size(); ++pos)
    for (std::size_t k = 0; k < action.generator_count(); ++k) {
      std::uint32_t y = action.image(k, t.points[pos]);
      if (t.slot[y] >= 0) continue;
      t.slot[y] = static_cast<std::int64_t>(t.points.size());
      t.points.push_back(y);
      t.parent.push_back(static_cast<std::uint32_t>(pos));
      t.via.push_back(static_cast<std::uint32_t>(k));
    }
  return t;
}

}  // namespace detail

template <GroupElement E>
std::vector<std::uint32_t> orbit(const FiniteGroup<E>& g, const ActionTable& action, std::uint32_t point) {
  detail::check_action(g, action, point);
  std::vector<std::uint32_t> pts = detail::orbit_tree(action, point).points;
  std::sort(pts.begin(), pts.end());
  return pts;
}

// All orbits, each sorted, listed by smallest point.
inline std::vector<std::vector<std::uint32_t>> orbits(const ActionTable& action) {
  std::vector<bool> seen(action.point_count(), false);
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t x = 0; x < action.point_count(); ++x) {
    if (seen[x]) continue;
    auto pts = detail::orbit_tree(action, x).points;
    for (auto y : pts) seen[y] = true;
    std::sort(pts.begin(), pts.end());
    out.push_back(std::move(pts));
  }
  return out;
}

// Point stabilizer via Schreier generators; checked against orbit-stabilizer.
template <GroupElement E>
SubgroupHandle<E> stabilizer(const FiniteGroup<E>& g, const ActionTable& action, std::uint32_t point) {
  detail::check_action(g, action, point);
  const auto tree = detail::orbit_tree(action, point);
  const auto& gens = g.generators();
  std::vector<E> u{g.identity()};
  for (std::size_t k = 1; k < tree.points.size(); ++k) u.push_back(gens[tree.via[k]] * u[tree.parent[k]]);
  std::vector<E> u_inv;
  for (const auto& x : u) u_inv.push_back(x.inverse());
  FiniteGroup<E> stab = FiniteGroup<E>::trivial(g.identity());
  for (std::size_t k = 0; k < tree.points.size(); ++k)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      std::uint32_t y = action.image(s, tree.points[k]);
      E sg = u_inv[tree.slot[y]] * gens[s] * u[k];
      if (!stab.contains(sg)) stab = stab.extended(sg, g.order());
    }
  ensure(stab.order() * tree.points.size() == g.order(), "orbit-stabilizer count failed");
  return SubgroupHandle<E>(g, std::move(stab));
}

struct OrbitProfile {
  std::uint32_t s = 0;
  std::uint32_t t = 0;
};

namespace detail {

// (prime, exponent) if n is a prime power, n >= 2.
inline std::pair<std::uint64_t, std::uint32_t> prime_power(std::uint64_t n) {
  if (n < 2) throw PreconditionError("not a prime power: " + std::to_string(n));
  std::uint64_t p = 2;
  while (n % p) ++p;
  std::uint32_t e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  if (n != 1) throw PreconditionError("not a prime power");
  return {p, e};
}

}  // namespace detail

// j normal in a group transitive on p^r points: j-orbits all have size p^t, there are p^s of them.
template <GroupElement E>
  requires PointAction<E>
OrbitProfile orbit_cardinality_profile(const FiniteGroup<E>& g, const FiniteGroup<E>& j, std::size_t points) {
  if (!is_normal(j, g)) throw PreconditionError("orbit profile needs a normal subgroup");
  const auto [p, r] = detail::prime_power(points);
  const ActionTable ga = ActionTable::of(g, points);
  if (orbit(g, ga, 0).size() != points) throw PreconditionError("orbit profile needs a transitive group");
  const auto orbs = orbits(ActionTable::of(j, points));
  const std::size_t size = orbs.front().size();
  for (const auto& o : orbs)
    ensure(o.size() == size, "normal subgroup of a transitive group has orbits of unequal size");
  const auto t = size == 1 ? std::pair<std::uint64_t, std::uint32_t>{p, 0} : detail::prime_power(size);
  ensure(t.first == p, "orbit size is not a power of the characteristic");
  OrbitProfile out{r - t.second, t.second};
  std::uint64_t count = 1;
  for (std::uint32_t k = 0; k < out.s; ++k) count *= p;
  ensure(count == orbs.size(), "orbit count is not p^s");
  return out;
}

}  // namespace holoscope
