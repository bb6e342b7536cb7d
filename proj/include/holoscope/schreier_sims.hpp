#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"

namespace holoscope {

// Compact permutation for stabilizer chains on up to 65535 points.
class PointPerm {
 public:
  using Point = std::uint16_t;

  explicit PointPerm(std::vector<Point> images) : img_(std::move(images)) {}

  static PointPerm identity(std::size_t n) {
    std::vector<Point> img(n);
    for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(i);
    return PointPerm(std::move(img));
  }

  template <class Images>
  static PointPerm from(const Images& images) {
    if (images.size() > 65535) throw BoundExceeded("stabilizer chains support at most 65535 points");
    std::vector<Point> img(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) img[i] = static_cast<Point>(images[i]);
    return PointPerm(std::move(img));
  }

  std::size_t degree() const noexcept { return img_.size(); }
  Point operator()(std::size_t i) const { return img_[i]; }
  const std::vector<Point>& images() const noexcept { return img_; }

  // (a*b)(x) = a(b(x)).
  PointPerm operator*(const PointPerm& o) const {
    std::vector<Point> img(img_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = img_[o.img_[i]];
    return PointPerm(std::move(img));
  }

  PointPerm inverse() const {
    std::vector<Point> img(img_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[img_[i]] = static_cast<Point>(i);
    return PointPerm(std::move(img));
  }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < img_.size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool operator==(const PointPerm&) const = default;

 private:
  std::vector<Point> img_;
};

// Deterministic Schreier-Sims: base and strong generators built incrementally by sifting.
class StabilizerChain {
 public:
  explicit StabilizerChain(std::size_t degree) : degree_(degree) {
    if (degree == 0 || degree > 65535) throw BoundExceeded("stabilizer chain degree out of range");
  }

  StabilizerChain(std::size_t degree, const std::vector<PointPerm>& gens) : StabilizerChain(degree) {
    for (const auto& g : gens) add_generator(g);
  }

  void add_generator(const PointPerm& g) {
    if (g.degree() != degree_) throw DimensionError("generator degree differs from chain degree");
    generators_.push_back(g);
    insert(0, g);
  }

  const std::vector<PointPerm>& generators() const noexcept { return generators_; }

  bool contains(const PointPerm& g) const {
    if (g.degree() != degree_) return false;
    return sift(g, 0).first.is_identity();
  }

  std::uint64_t order() const {
    std::uint64_t o = 1;
    for (const auto& l : levels_) o *= l.orbit.size();
    return o;
  }

  std::vector<std::size_t> base() const {
    std::vector<std::size_t> b;
    for (const auto& l : levels_) b.push_back(l.base);
    return b;
  }

  std::vector<std::size_t> orbit_sizes() const {
    std::vector<std::size_t> s;
    for (const auto& l : levels_) s.push_back(l.orbit.size());
    return s;
  }

  std::size_t degree() const noexcept { return degree_; }

 private:
  struct Level {
    std::size_t base = 0;
    std::vector<PointPerm> gens;
    std::vector<std::uint16_t> orbit;
    std::vector<std::int32_t> pos;
    std::vector<PointPerm> u;
    std::vector<PointPerm> u_inv;
    std::vector<std::size_t> done;
  };

  std::pair<PointPerm, std::size_t> sift(PointPerm g, std::size_t from) const {
    for (std::size_t l = from; l < levels_.size(); ++l) {
      const auto& lv = levels_[l];
      const auto b = g(lv.base);
      if (lv.pos[b] < 0) return {std::move(g), l};
      g = lv.u_inv[lv.pos[b]] * g;
    }
    return {std::move(g), levels_.size()};
  }

  void insert(std::size_t i, const PointPerm& g) {
    auto [h, j] = sift(g, i);
    if (h.is_identity()) return;
    if (j == levels_.size()) {
      std::size_t moved = 0;
      while (h(moved) == moved) ++moved;
      Level lv;
      lv.base = moved;
      lv.pos.assign(degree_, -1);
      lv.orbit.push_back(static_cast<std::uint16_t>(moved));
      lv.pos[moved] = 0;
      lv.u.push_back(PointPerm::identity(degree_));
      lv.u_inv.push_back(PointPerm::identity(degree_));
      lv.done.push_back(0);
      levels_.push_back(std::move(lv));
    }
    for (std::size_t l = i; l <= j; ++l) levels_[l].gens.push_back(h);
    for (std::size_t l = j + 1; l-- > i;) complete(l);
  }

  // Processes every (orbit point, generator) pair not yet seen at level l.
  void complete(std::size_t l) {
    for (std::size_t k = 0; k < levels_[l].orbit.size(); ++k) {
      while (levels_[l].done[k] < levels_[l].gens.size()) {
        Level& lv = levels_[l];
        const PointPerm s = lv.gens[lv.done[k]++];
        const auto b = lv.orbit[k];
        const auto c = s(b);
        if (lv.pos[c] < 0) {
          lv.pos[c] = static_cast<std::int32_t>(lv.orbit.size());
          lv.orbit.push_back(c);
          lv.u.push_back(s * lv.u[k]);
          lv.u_inv.push_back(lv.u.back().inverse());
          lv.done.push_back(0);
          continue;
        }
        PointPerm sch = lv.u_inv[lv.pos[c]] * (s * lv.u[k]);
        if (!sch.is_identity()) insert(l + 1, sch);
      }
    }
  }

  std::size_t degree_;
  std::vector<PointPerm> generators_;
  std::deque<Level> levels_;
};

// Normal closure of seeds under conjugation by the generators of `ambient`.
inline StabilizerChain normal_closure_chain(const std::vector<PointPerm>& ambient, const std::vector<PointPerm>& seeds,
                                            std::size_t degree) {
  StabilizerChain h(degree);
  for (const auto& s : seeds)
    if (!h.contains(s)) h.add_generator(s);
  std::vector<PointPerm> inv;
  for (const auto& x : ambient) inv.push_back(x.inverse());
  for (std::size_t pos = 0; pos < h.generators().size(); ++pos)
    for (std::size_t k = 0; k < ambient.size(); ++k) {
      PointPerm c = ambient[k] * h.generators()[pos] * inv[k];
      if (!h.contains(c)) h.add_generator(c);
    }
  return h;
}

inline std::vector<std::uint64_t> derived_series_orders(const std::vector<PointPerm>& gens, std::size_t degree) {
  std::vector<PointPerm> cur = gens;
  std::vector<std::uint64_t> orders{StabilizerChain(degree, gens).order()};
  for (std::size_t step = 0; step < kDerivedSeriesCap; ++step) {
    if (orders.back() == 1) return orders;
    std::vector<PointPerm> seeds;
    for (std::size_t i = 0; i < cur.size(); ++i)
      for (std::size_t j = i + 1; j < cur.size(); ++j) {
        PointPerm c = cur[i].inverse() * cur[j].inverse() * cur[i] * cur[j];
        if (!c.is_identity()) seeds.push_back(std::move(c));
      }
    StabilizerChain next = normal_closure_chain(cur, seeds, degree);
    if (next.order() == orders.back()) return orders;
    orders.push_back(next.order());
    cur = next.generators();
    if (cur.empty()) cur.push_back(PointPerm::identity(degree));
  }
  throw BoundExceeded("derived series longer than the cap of 20");
}

inline bool is_soluble_chain(const std::vector<PointPerm>& gens, std::size_t degree) {
  return derived_series_orders(gens, degree).back() == 1;
}

}  // namespace holoscope
