#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/gf_linalg.hpp"

namespace holoscope {

// Permutation of {0..degree-1}; product (a*b)(i) = a(b(i)).
class Permutation {
 public:
  explicit Permutation(std::vector<std::uint32_t> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size(), false);
    for (std::uint32_t x : images_) {
      if (x >= images_.size() || seen[x]) throw PreconditionError("images do not form a bijection");
      seen[x] = true;
    }
  }

  static Permutation identity(std::size_t degree) {
    std::vector<std::uint32_t> id(degree);
    std::iota(id.begin(), id.end(), 0u);
    return Permutation(std::move(id), Unchecked{});
  }

  // Cycle notation over 0-based points, e.g. {{0,1,2},{3,4}}.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<std::uint32_t>>& cycles) {
    std::vector<std::uint32_t> img(degree);
    std::iota(img.begin(), img.end(), 0u);
    for (const auto& c : cycles)
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] >= degree) throw PreconditionError("cycle point out of range");
        img[c[k]] = c[(k + 1) % c.size()];
      }
    return Permutation(std::move(img));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  const std::vector<std::uint32_t>& images() const noexcept { return images_; }

  std::uint32_t operator()(std::uint32_t i) const { return images_[i]; }

  std::uint32_t at(std::uint32_t i) const {
    if (i >= images_.size()) throw PreconditionError("point out of range");
    return images_[i];
  }

  Permutation operator*(const Permutation& o) const {
    if (degree() != o.degree()) throw DimensionError("permutation degrees differ");
    std::vector<std::uint32_t> img(images_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[i] = images_[o.images_[i]];
    return Permutation(std::move(img), Unchecked{});
  }

  Permutation inverse() const {
    std::vector<std::uint32_t> img(images_.size());
    for (std::size_t i = 0; i < img.size(); ++i) img[images_[i]] = static_cast<std::uint32_t>(i);
    return Permutation(std::move(img), Unchecked{});
  }

  Permutation identity() const { return identity(degree()); }

  bool is_identity() const noexcept {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  std::uint64_t order() const {
    std::vector<bool> seen(images_.size(), false);
    std::uint64_t ord = 1;
    for (std::size_t i = 0; i < images_.size(); ++i) {
      if (seen[i]) continue;
      std::uint64_t len = 0;
      for (std::size_t j = i; !seen[j]; j = images_[j]) {
        seen[j] = true;
        ++len;
      }
      ord = std::lcm(ord, len);
    }
    return ord;
  }

  bool operator==(const Permutation&) const = default;
  std::strong_ordering operator<=>(const Permutation& o) const noexcept {
    if (auto c = images_.size() <=> o.images_.size(); c != 0) return c;
    return images_ <=> o.images_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = images_.size();
    for (std::uint32_t x : images_) detail::hash_mix(h, x);
    return h;
  }

  std::string str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < images_.size(); ++i) os << (i ? " " : "") << images_[i];
    return os.str();
  }

 private:
  struct Unchecked {};
  Permutation(std::vector<std::uint32_t> images, Unchecked) : images_(std::move(images)) {}

  std::vector<std::uint32_t> images_;
};

inline std::uint32_t act_on_point(const Permutation& g, std::uint32_t x) { return g(x); }

}  // namespace holoscope

template <>
struct std::hash<holoscope::Permutation> {
  std::size_t operator()(const holoscope::Permutation& p) const noexcept { return p.hash(); }
};
