#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/gf_linalg.hpp"

namespace holoscope {

// (v, A) acting by x -> v + A x, written as the block matrix [[A, v], [0, 1]].
class AffineElement {
 public:
  AffineElement(GFMatrix lin, GFVector trans) : lin_(std::move(lin)), trans_(std::move(trans)) {
    if (!lin_.is_square()) throw DimensionError("linear part must be square");
    if (lin_.p() != trans_.p()) throw ModulusError("linear and translation moduli differ");
    if (lin_.rows() != trans_.dim()) throw DimensionError("translation dimension differs from linear part");
    if (!lin_.is_invertible()) throw SingularMatrixError("linear part of an affine element must be invertible");
  }

  static AffineElement translation(const GFVector& v) {
    return AffineElement(GFMatrix::identity(v.p(), v.dim()), v, Unchecked{});
  }

  static AffineElement linear(const GFMatrix& m) { return AffineElement(m, GFVector(m.p(), m.rows())); }

  // Parse the (n+1)x(n+1) block matrix form.
  static AffineElement from_block(const RawMatrix& raw) {
    if (raw.rows != raw.cols || raw.rows < 2) throw ParseError("affine block matrix must be square of size >= 2");
    const std::uint32_t n = raw.rows - 1;
    for (std::uint32_t j = 0; j < n; ++j)
      if (raw.entries[n][j] != 0) throw ParseError("affine block matrix must have zero bottom-left row");
    if (raw.entries[n][n] != 1) throw ParseError("affine block matrix must have 1 in the corner");
    std::vector<std::vector<long long>> rows(n, std::vector<long long>(n));
    std::vector<long long> v(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) rows[i][j] = raw.entries[i][j];
      v[i] = raw.entries[i][n];
    }
    return AffineElement(GFMatrix::from_rows(raw.p, rows), GFVector(raw.p, v));
  }

  RawMatrix to_block() const {
    const std::uint32_t n = dim();
    RawMatrix raw{p(), n + 1, n + 1, std::vector<std::vector<std::uint32_t>>(n + 1, std::vector<std::uint32_t>(n + 1, 0))};
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) raw.entries[i][j] = lin_(i, j);
      raw.entries[i][n] = trans_[i];
    }
    raw.entries[n][n] = 1;
    return raw;
  }

  const GFMatrix& lin() const noexcept { return lin_; }
  const GFVector& trans() const noexcept { return trans_; }
  std::uint32_t p() const noexcept { return lin_.p(); }
  std::uint32_t dim() const noexcept { return lin_.rows(); }

  AffineElement operator*(const AffineElement& o) const {
    return AffineElement(lin_ * o.lin_, trans_ + lin_ * o.trans_, Unchecked{});
  }

  AffineElement inverse() const {
    GFMatrix inv = lin_.inverse();
    return AffineElement(inv, -(inv * trans_), Unchecked{});
  }

  AffineElement identity() const { return translation(GFVector(p(), dim())); }

  bool is_identity() const { return lin_.is_identity() && trans_.is_zero(); }

  GFVector operator()(const GFVector& x) const {
    if (x.p() != p()) throw ModulusError("point modulus differs from element modulus");
    if (x.dim() != dim()) throw DimensionError("point dimension differs from element dimension");
    return trans_ + lin_ * x;
  }

  bool operator==(const AffineElement& o) const noexcept { return lin_ == o.lin_ && trans_ == o.trans_; }

  // Row-major order on the block matrix.
  std::strong_ordering operator<=>(const AffineElement& o) const noexcept {
    if (auto c = p() <=> o.p(); c != 0) return c;
    if (auto c = dim() <=> o.dim(); c != 0) return c;
    for (std::uint32_t i = 0; i < dim(); ++i) {
      for (std::uint32_t j = 0; j < dim(); ++j)
        if (auto c = lin_(i, j) <=> o.lin_(i, j); c != 0) return c;
      if (auto c = trans_[i] <=> o.trans_[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  std::size_t hash() const noexcept {
    std::size_t h = lin_.hash();
    detail::hash_mix(h, trans_.hash());
    return h;
  }

 private:
  struct Unchecked {};
  AffineElement(GFMatrix lin, GFVector trans, Unchecked) : lin_(std::move(lin)), trans_(std::move(trans)) {}

  GFMatrix lin_;
  GFVector trans_;
};

inline GFVector act(const AffineElement& e, const GFVector& v) { return e(v); }

// Points of V are indexed by canonical vector order; index 0 is the zero vector.
inline std::uint32_t act_on_point(const AffineElement& e, std::uint32_t x) {
  return static_cast<std::uint32_t>(e(GFVector::from_index(e.p(), e.dim(), x)).index());
}

}  // namespace holoscope

template <>
struct std::hash<holoscope::AffineElement> {
  std::size_t operator()(const holoscope::AffineElement& e) const noexcept { return e.hash(); }
};
