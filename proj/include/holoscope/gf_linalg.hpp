#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "holoscope/errors.hpp"

namespace holoscope {

inline constexpr std::uint32_t kMaxDim = 24;
inline constexpr std::uint32_t kMaxPrime = 251;

namespace detail {

constexpr bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline void check_modulus(std::uint32_t p) {
  if (p > kMaxPrime || !is_prime(p))
    throw ModulusError("modulus must be a prime <= 251, got " + std::to_string(p));
}

inline void check_dim(std::uint32_t n, const char* what) {
  if (n < 1 || n > kMaxDim)
    throw DimensionError(std::string(what) + " must lie in 1.." + std::to_string(kMaxDim) +
                         ", got " + std::to_string(n));
}

inline std::uint32_t reduce(long long x, std::uint32_t p) {
  long long r = x % static_cast<long long>(p);
  return static_cast<std::uint32_t>(r < 0 ? r + p : r);
}

inline std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw SingularMatrixError("zero has no inverse mod p");
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(result);
}

inline void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace detail

class GFMatrix;

// Vector over GF(p). For p = 2 the entries live in one word, entry i at bit (dim-1-i),
// so numeric order of the word is lexicographic order of the entries.
class GFVector {
 public:
  GFVector(std::uint32_t p, std::uint32_t dim) : p_(p), dim_(dim) {
    detail::check_modulus(p);
    detail::check_dim(dim, "vector dimension");
    if (p != 2) bytes_.assign(dim, 0);
  }

  GFVector(std::uint32_t p, const std::vector<long long>& entries)
      : GFVector(p, static_cast<std::uint32_t>(entries.size())) {
    for (std::uint32_t i = 0; i < dim_; ++i) set(i, detail::reduce(entries[i], p));
  }

  GFVector(std::uint32_t p, std::initializer_list<long long> entries)
      : GFVector(p, std::vector<long long>(entries)) {}

  // Inverse of index(): entry 0 is the most significant base-p digit.
  static GFVector from_index(std::uint32_t p, std::uint32_t dim, std::uint64_t index) {
    GFVector v(p, dim);
    if (p == 2) {
      if (dim < 64 && index >> dim) throw DimensionError("vector index out of range");
      v.word_ = static_cast<std::uint32_t>(index);
      return v;
    }
    for (std::uint32_t i = dim; i-- > 0;) {
      v.bytes_[i] = static_cast<std::uint8_t>(index % p);
      index /= p;
    }
    if (index != 0) throw DimensionError("vector index out of range");
    return v;
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t dim() const noexcept { return dim_; }

  std::uint32_t operator[](std::uint32_t i) const {
    if (p_ == 2) return (word_ >> (dim_ - 1 - i)) & 1u;
    return bytes_[i];
  }

  std::uint32_t at(std::uint32_t i) const {
    if (i >= dim_) throw DimensionError("vector index out of range");
    return (*this)[i];
  }

  std::vector<std::uint32_t> entries() const {
    std::vector<std::uint32_t> out(dim_);
    for (std::uint32_t i = 0; i < dim_; ++i) out[i] = (*this)[i];
    return out;
  }

  GFVector with_entry(std::uint32_t i, long long value) const {
    if (i >= dim_) throw DimensionError("vector index out of range");
    GFVector out = *this;
    out.set(i, detail::reduce(value, p_));
    return out;
  }

  std::uint64_t index() const noexcept {
    if (p_ == 2) return word_;
    std::uint64_t idx = 0;
    for (std::uint8_t e : bytes_) idx = idx * p_ + e;
    return idx;
  }

  bool is_zero() const noexcept {
    if (p_ == 2) return word_ == 0;
    return std::all_of(bytes_.begin(), bytes_.end(), [](std::uint8_t e) { return e == 0; });
  }

  GFVector operator+(const GFVector& o) const {
    check_compatible(o);
    GFVector out = *this;
    if (p_ == 2) {
      out.word_ ^= o.word_;
    } else {
      for (std::uint32_t i = 0; i < dim_; ++i)
        out.bytes_[i] = static_cast<std::uint8_t>((bytes_[i] + o.bytes_[i]) % p_);
    }
    return out;
  }

  GFVector operator-() const {
    if (p_ == 2) return *this;
    GFVector out = *this;
    for (auto& e : out.bytes_) e = static_cast<std::uint8_t>((p_ - e) % p_);
    return out;
  }

  GFVector operator-(const GFVector& o) const { return *this + (-o); }

  GFVector scaled(long long c) const {
    std::uint32_t s = detail::reduce(c, p_);
    GFVector out(p_, dim_);
    if (p_ == 2) {
      out.word_ = s ? word_ : 0;
    } else {
      for (std::uint32_t i = 0; i < dim_; ++i)
        out.bytes_[i] = static_cast<std::uint8_t>(bytes_[i] * s % p_);
    }
    return out;
  }

  std::uint32_t dot(const GFVector& o) const {
    check_compatible(o);
    if (p_ == 2) return static_cast<std::uint32_t>(std::popcount(word_ & o.word_) & 1);
    std::uint64_t acc = 0;
    for (std::uint32_t i = 0; i < dim_; ++i) acc += static_cast<std::uint64_t>(bytes_[i]) * o.bytes_[i];
    return static_cast<std::uint32_t>(acc % p_);
  }

  bool operator==(const GFVector& o) const noexcept {
    return p_ == o.p_ && dim_ == o.dim_ && word_ == o.word_ && bytes_ == o.bytes_;
  }

  std::strong_ordering operator<=>(const GFVector& o) const noexcept {
    if (auto c = p_ <=> o.p_; c != 0) return c;
    if (auto c = dim_ <=> o.dim_; c != 0) return c;
    if (p_ == 2) return word_ <=> o.word_;
    return bytes_ <=> o.bytes_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = (static_cast<std::size_t>(p_) << 8) ^ dim_;
    if (p_ == 2) {
      detail::hash_mix(h, word_);
    } else {
      for (std::uint8_t e : bytes_) detail::hash_mix(h, e);
    }
    return h;
  }

  std::string str() const {
    std::string s = "(";
    for (std::uint32_t i = 0; i < dim_; ++i) {
      if (i) s += ",";
      s += std::to_string((*this)[i]);
    }
    return s + ")";
  }

  // Raw bit word, p = 2 only.
  std::uint32_t word() const noexcept { return word_; }

  static GFVector from_word(std::uint32_t dim, std::uint32_t word) {
    GFVector v(2, dim);
    v.word_ = word & (dim == 32 ? ~0u : ((1u << dim) - 1));
    return v;
  }

 private:
  friend class GFMatrix;

  void set(std::uint32_t i, std::uint32_t value) {
    if (p_ == 2) {
      std::uint32_t bit = 1u << (dim_ - 1 - i);
      word_ = value ? (word_ | bit) : (word_ & ~bit);
    } else {
      bytes_[i] = static_cast<std::uint8_t>(value);
    }
  }

  void check_compatible(const GFVector& o) const {
    if (p_ != o.p_) throw ModulusError("vector moduli differ");
    if (dim_ != o.dim_) throw DimensionError("vector dimensions differ");
  }

  std::uint32_t p_;
  std::uint32_t dim_;
  std::uint32_t word_ = 0;
  std::vector<std::uint8_t> bytes_;
};

// Dense matrix over GF(p). For p = 2 each row is a word with column j at bit (cols-1-j).
class GFMatrix {
 public:
  GFMatrix(std::uint32_t p, std::uint32_t rows, std::uint32_t cols) : p_(p), rows_(rows), cols_(cols) {
    detail::check_modulus(p);
    detail::check_dim(rows, "matrix row count");
    detail::check_dim(cols, "matrix column count");
    if (p != 2) bytes_.assign(static_cast<std::size_t>(rows) * cols, 0);
  }

  static GFMatrix identity(std::uint32_t p, std::uint32_t n) {
    GFMatrix m(p, n, n);
    for (std::uint32_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static GFMatrix from_rows(std::uint32_t p, const std::vector<std::vector<long long>>& rows) {
    if (rows.empty()) throw DimensionError("matrix needs at least one row");
    GFMatrix m(p, static_cast<std::uint32_t>(rows.size()), static_cast<std::uint32_t>(rows[0].size()));
    for (std::uint32_t i = 0; i < m.rows_; ++i) {
      if (rows[i].size() != m.cols_) throw DimensionError("ragged matrix rows");
      for (std::uint32_t j = 0; j < m.cols_; ++j) m.set(i, j, detail::reduce(rows[i][j], p));
    }
    return m;
  }

  static GFMatrix from_columns(const std::vector<GFVector>& cols) {
    if (cols.empty()) throw DimensionError("matrix needs at least one column");
    GFMatrix m(cols[0].p(), cols[0].dim(), static_cast<std::uint32_t>(cols.size()));
    for (std::uint32_t j = 0; j < m.cols_; ++j) {
      if (cols[j].p() != m.p_) throw ModulusError("column moduli differ");
      if (cols[j].dim() != m.rows_) throw DimensionError("column dimensions differ");
      for (std::uint32_t i = 0; i < m.rows_; ++i) m.set(i, j, cols[j][i]);
    }
    return m;
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t rows() const noexcept { return rows_; }
  std::uint32_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  std::uint32_t operator()(std::uint32_t i, std::uint32_t j) const {
    if (p_ == 2) return (bits_[i] >> (cols_ - 1 - j)) & 1u;
    return bytes_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::uint32_t at(std::uint32_t i, std::uint32_t j) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    return (*this)(i, j);
  }

  GFMatrix with_entry(std::uint32_t i, std::uint32_t j, long long value) const {
    if (i >= rows_ || j >= cols_) throw DimensionError("matrix index out of range");
    GFMatrix out = *this;
    out.set(i, j, detail::reduce(value, p_));
    return out;
  }

  GFVector row(std::uint32_t i) const {
    if (i >= rows_) throw DimensionError("row index out of range");
    if (p_ == 2) return GFVector::from_word(cols_, bits_[i]);
    GFVector v(p_, cols_);
    for (std::uint32_t j = 0; j < cols_; ++j) v.bytes_[j] = bytes_[static_cast<std::size_t>(i) * cols_ + j];
    return v;
  }

  GFVector column(std::uint32_t j) const {
    if (j >= cols_) throw DimensionError("column index out of range");
    GFVector v(p_, rows_);
    for (std::uint32_t i = 0; i < rows_; ++i) v.set(i, (*this)(i, j));
    return v;
  }

  std::uint32_t row_word(std::uint32_t i) const noexcept { return bits_[i]; }

  GFMatrix operator*(const GFMatrix& b) const {
    if (p_ != b.p_) throw ModulusError("matrix moduli differ");
    if (cols_ != b.rows_) throw DimensionError("inner dimensions differ in matrix product");
    GFMatrix c(p_, rows_, b.cols_);
    if (p_ == 2) {
      for (std::uint32_t i = 0; i < rows_; ++i) {
        std::uint32_t row = bits_[i], acc = 0;
        while (row) {
          int k = std::countr_zero(row);
          acc ^= b.bits_[cols_ - 1 - k];
          row &= row - 1;
        }
        c.bits_[i] = acc;
      }
      return c;
    }
    for (std::uint32_t i = 0; i < rows_; ++i)
      for (std::uint32_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::uint32_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>((*this)(i, k)) * b(k, j);
        c.bytes_[static_cast<std::size_t>(i) * c.cols_ + j] = static_cast<std::uint8_t>(acc % p_);
      }
    return c;
  }

  GFVector operator*(const GFVector& v) const {
    if (p_ != v.p()) throw ModulusError("matrix and vector moduli differ");
    if (cols_ != v.dim()) throw DimensionError("matrix columns differ from vector dimension");
    GFVector out(p_, rows_);
    if (p_ == 2) {
      std::uint32_t w = 0;
      for (std::uint32_t i = 0; i < rows_; ++i) w = (w << 1) | (std::popcount(bits_[i] & v.word_) & 1u);
      out.word_ = w;
      return out;
    }
    for (std::uint32_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::uint32_t k = 0; k < cols_; ++k) acc += static_cast<std::uint64_t>((*this)(i, k)) * v[k];
      out.bytes_[i] = static_cast<std::uint8_t>(acc % p_);
    }
    return out;
  }

  GFMatrix operator+(const GFMatrix& b) const {
    check_same_shape(b);
    GFMatrix c = *this;
    if (p_ == 2) {
      for (std::uint32_t i = 0; i < rows_; ++i) c.bits_[i] ^= b.bits_[i];
    } else {
      for (std::size_t k = 0; k < bytes_.size(); ++k)
        c.bytes_[k] = static_cast<std::uint8_t>((bytes_[k] + b.bytes_[k]) % p_);
    }
    return c;
  }

  GFMatrix operator-(const GFMatrix& b) const {
    check_same_shape(b);
    GFMatrix c = *this;
    if (p_ == 2) {
      for (std::uint32_t i = 0; i < rows_; ++i) c.bits_[i] ^= b.bits_[i];
    } else {
      for (std::size_t k = 0; k < bytes_.size(); ++k)
        c.bytes_[k] = static_cast<std::uint8_t>((bytes_[k] + p_ - b.bytes_[k]) % p_);
    }
    return c;
  }

  GFMatrix transpose() const {
    GFMatrix t(p_, cols_, rows_);
    for (std::uint32_t i = 0; i < rows_; ++i)
      for (std::uint32_t j = 0; j < cols_; ++j) t.set(j, i, (*this)(i, j));
    return t;
  }

  std::uint32_t rank() const {
    std::vector<std::vector<std::uint32_t>> work(rows_, std::vector<std::uint32_t>(cols_));
    for (std::uint32_t i = 0; i < rows_; ++i)
      for (std::uint32_t j = 0; j < cols_; ++j) work[i][j] = (*this)(i, j);
    std::uint32_t r = 0;
    for (std::uint32_t c = 0; c < cols_ && r < rows_; ++c) {
      std::uint32_t piv = r;
      while (piv < rows_ && work[piv][c] == 0) ++piv;
      if (piv == rows_) continue;
      std::swap(work[piv], work[r]);
      std::uint32_t inv = detail::inv_mod(work[r][c], p_);
      for (auto& e : work[r]) e = e * inv % p_;
      for (std::uint32_t i = r + 1; i < rows_; ++i) {
        std::uint32_t f = work[i][c];
        if (!f) continue;
        for (std::uint32_t j = c; j < cols_; ++j) work[i][j] = (work[i][j] + (p_ - f) * work[r][j]) % p_;
      }
      ++r;
    }
    return r;
  }

  bool is_invertible() const { return is_square() && rank() == rows_; }

  GFMatrix inverse() const {
    if (!is_square()) throw DimensionError("only square matrices have inverses");
    const std::uint32_t n = rows_;
    if (p_ == 2) {
      std::array<std::uint32_t, kMaxDim> left = bits_, right{};
      for (std::uint32_t i = 0; i < n; ++i) right[i] = 1u << (n - 1 - i);
      for (std::uint32_t c = 0; c < n; ++c) {
        std::uint32_t bit = 1u << (n - 1 - c), piv = c;
        while (piv < n && !(left[piv] & bit)) ++piv;
        if (piv == n) throw SingularMatrixError("matrix is singular");
        std::swap(left[piv], left[c]);
        std::swap(right[piv], right[c]);
        for (std::uint32_t i = 0; i < n; ++i)
          if (i != c && (left[i] & bit)) {
            left[i] ^= left[c];
            right[i] ^= right[c];
          }
      }
      GFMatrix out(2, n, n);
      out.bits_ = right;
      return out;
    }
    std::vector<std::vector<std::uint32_t>> a(n, std::vector<std::uint32_t>(2 * n, 0));
    for (std::uint32_t i = 0; i < n; ++i) {
      for (std::uint32_t j = 0; j < n; ++j) a[i][j] = (*this)(i, j);
      a[i][n + i] = 1;
    }
    for (std::uint32_t c = 0; c < n; ++c) {
      std::uint32_t piv = c;
      while (piv < n && a[piv][c] == 0) ++piv;
      if (piv == n) throw SingularMatrixError("matrix is singular");
      std::swap(a[piv], a[c]);
      std::uint32_t inv = detail::inv_mod(a[c][c], p_);
      for (auto& e : a[c]) e = e * inv % p_;
      for (std::uint32_t i = 0; i < n; ++i) {
        std::uint32_t f = a[i][c];
        if (i == c || !f) continue;
        for (std::uint32_t j = 0; j < 2 * n; ++j) a[i][j] = (a[i][j] + (p_ - f) * a[c][j]) % p_;
      }
    }
    GFMatrix out(p_, n, n);
    for (std::uint32_t i = 0; i < n; ++i)
      for (std::uint32_t j = 0; j < n; ++j) out.set(i, j, a[i][n + j]);
    return out;
  }

  GFMatrix pow(long long k) const {
    if (!is_square()) throw DimensionError("only square matrices have powers");
    GFMatrix base = k < 0 ? inverse() : *this;
    unsigned long long e = k < 0 ? static_cast<unsigned long long>(-k) : static_cast<unsigned long long>(k);
    GFMatrix result = identity(p_, rows_);
    while (e) {
      if (e & 1) result = result * base;
      base = base * base;
      e >>= 1;
    }
    return result;
  }

  bool is_identity() const noexcept {
    if (!is_square()) return false;
    for (std::uint32_t i = 0; i < rows_; ++i)
      for (std::uint32_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
    return true;
  }

  // Multiplicative order; the matrix must be invertible.
  std::uint64_t order() const {
    if (!is_invertible()) throw SingularMatrixError("order of a singular matrix");
    GFMatrix x = *this;
    std::uint64_t k = 1;
    while (!x.is_identity()) {
      x = x * *this;
      ++k;
    }
    return k;
  }

  // Group element interface.
  GFMatrix identity() const { return identity(p_, rows_); }

  bool operator==(const GFMatrix& o) const noexcept {
    return p_ == o.p_ && rows_ == o.rows_ && cols_ == o.cols_ && bits_ == o.bits_ && bytes_ == o.bytes_;
  }

  std::strong_ordering operator<=>(const GFMatrix& o) const noexcept {
    if (auto c = p_ <=> o.p_; c != 0) return c;
    if (auto c = rows_ <=> o.rows_; c != 0) return c;
    if (auto c = cols_ <=> o.cols_; c != 0) return c;
    if (p_ == 2) {
      for (std::uint32_t i = 0; i < rows_; ++i)
        if (auto c = bits_[i] <=> o.bits_[i]; c != 0) return c;
      return std::strong_ordering::equal;
    }
    return bytes_ <=> o.bytes_;
  }

  std::size_t hash() const noexcept {
    std::size_t h = (static_cast<std::size_t>(p_) << 16) ^ (rows_ << 8) ^ cols_;
    if (p_ == 2) {
      for (std::uint32_t i = 0; i < rows_; ++i) detail::hash_mix(h, bits_[i]);
    } else {
      for (std::uint8_t e : bytes_) detail::hash_mix(h, e);
    }
    return h;
  }

  std::vector<std::vector<std::uint32_t>> to_rows() const {
    std::vector<std::vector<std::uint32_t>> out(rows_, std::vector<std::uint32_t>(cols_));
    for (std::uint32_t i = 0; i < rows_; ++i)
      for (std::uint32_t j = 0; j < cols_; ++j) out[i][j] = (*this)(i, j);
    return out;
  }

 private:
  void set(std::uint32_t i, std::uint32_t j, std::uint32_t value) {
    if (p_ == 2) {
      std::uint32_t bit = 1u << (cols_ - 1 - j);
      bits_[i] = value ? (bits_[i] | bit) : (bits_[i] & ~bit);
    } else {
      bytes_[static_cast<std::size_t>(i) * cols_ + j] = static_cast<std::uint8_t>(value);
    }
  }

  void check_same_shape(const GFMatrix& b) const {
    if (p_ != b.p_) throw ModulusError("matrix moduli differ");
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix shapes differ");
  }

  std::uint32_t p_;
  std::uint32_t rows_;
  std::uint32_t cols_;
  std::array<std::uint32_t, kMaxDim> bits_{};
  std::vector<std::uint8_t> bytes_;
};

inline GFMatrix mat_mul(const GFMatrix& a, const GFMatrix& b) { return a * b; }
inline GFMatrix mat_inverse(const GFMatrix& a) { return a.inverse(); }

// Kronecker product; (a ⊗ b)(u ⊗ w) = au ⊗ bw with u ⊗ w indexed as (i, k) -> i*dim(w)+k.
inline GFMatrix kronecker(const GFMatrix& a, const GFMatrix& b) {
  if (a.p() != b.p()) throw ModulusError("matrix moduli differ");
  std::vector<std::vector<long long>> rows(a.rows() * b.rows(), std::vector<long long>(a.cols() * b.cols()));
  for (std::uint32_t i = 0; i < a.rows(); ++i)
    for (std::uint32_t j = 0; j < a.cols(); ++j)
      for (std::uint32_t k = 0; k < b.rows(); ++k)
        for (std::uint32_t l = 0; l < b.cols(); ++l)
          rows[i * b.rows() + k][j * b.cols() + l] = static_cast<long long>(a(i, j)) * b(k, l);
  return GFMatrix::from_rows(a.p(), rows);
}

// Block-diagonal matrix from square blocks.
inline GFMatrix block_diagonal(const std::vector<GFMatrix>& blocks) {
  if (blocks.empty()) throw DimensionError("block_diagonal needs at least one block");
  std::uint32_t n = 0;
  for (const auto& b : blocks) n += b.rows();
  std::vector<std::vector<long long>> rows(n, std::vector<long long>(n, 0));
  std::uint32_t off = 0;
  for (const auto& b : blocks) {
    if (!b.is_square()) throw DimensionError("blocks must be square");
    if (b.p() != blocks[0].p()) throw ModulusError("block moduli differ");
    for (std::uint32_t i = 0; i < b.rows(); ++i)
      for (std::uint32_t j = 0; j < b.cols(); ++j) rows[off + i][off + j] = b(i, j);
    off += b.rows();
  }
  return GFMatrix::from_rows(blocks[0].p(), rows);
}

class Subspace {
 public:
  static Subspace zero(std::uint32_t p, std::uint32_t n) {
    detail::check_modulus(p);
    detail::check_dim(n, "ambient dimension");
    return Subspace(p, n);
  }

  static Subspace full(std::uint32_t p, std::uint32_t n) {
    std::vector<GFVector> basis;
    for (std::uint32_t i = 0; i < n; ++i) basis.push_back(GFVector(p, n).with_entry(i, 1));
    return span(p, n, basis);
  }

  static Subspace span(std::uint32_t p, std::uint32_t n, std::span<const GFVector> vectors) {
    Subspace s = zero(p, n);
    for (const auto& v : vectors) {
      if (v.p() != p) throw ModulusError("vector modulus differs from ambient modulus");
      if (v.dim() != n) throw DimensionError("vector dimension differs from ambient dimension");
      s.insert(v);
    }
    s.normalize();
    return s;
  }

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t ambient_dim() const noexcept { return n_; }
  std::uint32_t dim() const noexcept { return static_cast<std::uint32_t>(basis_.size()); }
  const std::vector<GFVector>& basis() const noexcept { return basis_; }
  const std::vector<std::uint32_t>& pivots() const noexcept { return pivots_; }

  std::uint64_t size() const {
    std::uint64_t s = 1;
    for (std::uint32_t i = 0; i < dim(); ++i) s *= p_;
    return s;
  }

  // Coset representative of v modulo this subspace: zero at every pivot column.
  GFVector reduce(const GFVector& v) const {
    if (v.p() != p_ || v.dim() != n_) throw DimensionError("vector does not live in the ambient space");
    GFVector out = v;
    for (std::size_t k = 0; k < basis_.size(); ++k) {
      std::uint32_t c = out[pivots_[k]];
      if (c) out = out - basis_[k].scaled(c);
    }
    return out;
  }

  bool contains(const GFVector& v) const { return reduce(v).is_zero(); }

  bool is_subspace_of(const Subspace& o) const {
    return std::all_of(basis_.begin(), basis_.end(), [&](const GFVector& b) { return o.contains(b); });
  }

  // All p^dim elements, in the order of their coefficient tuples.
  std::vector<GFVector> elements() const {
    std::vector<GFVector> out{GFVector(p_, n_)};
    for (auto it = basis_.rbegin(); it != basis_.rend(); ++it) {
      std::size_t sz = out.size();
      for (std::uint32_t c = 1; c < p_; ++c)
        for (std::size_t k = 0; k < sz; ++k) out.push_back(out[k] + it->scaled(c));
    }
    return out;
  }

  std::vector<std::uint64_t> point_indices() const {
    std::vector<std::uint64_t> idx;
    for (const auto& v : elements()) idx.push_back(v.index());
    std::sort(idx.begin(), idx.end());
    return idx;
  }

  Subspace operator+(const Subspace& o) const {
    std::vector<GFVector> all = basis_;
    all.insert(all.end(), o.basis_.begin(), o.basis_.end());
    return span(p_, n_, all);
  }

  bool operator==(const Subspace& o) const noexcept {
    return p_ == o.p_ && n_ == o.n_ && basis_ == o.basis_;
  }

  std::strong_ordering operator<=>(const Subspace& o) const noexcept {
    if (auto c = p_ <=> o.p_; c != 0) return c;
    if (auto c = n_ <=> o.n_; c != 0) return c;
    if (auto c = basis_.size() <=> o.basis_.size(); c != 0) return c;
    return basis_ <=> o.basis_;
  }

 private:
  Subspace(std::uint32_t p, std::uint32_t n) : p_(p), n_(n) {}

  void insert(const GFVector& v) {
    GFVector r = reduce(v);
    if (r.is_zero()) return;
    std::uint32_t piv = 0;
    while (r[piv] == 0) ++piv;
    r = r.scaled(detail::inv_mod(r[piv], p_));
    for (auto& b : basis_) {
      std::uint32_t c = b[piv];
      if (c) b = b - r.scaled(c);
    }
    basis_.push_back(r);
    pivots_.push_back(piv);
  }

  // Sort rows by pivot so the basis is in reduced row-echelon form.
  void normalize() {
    std::vector<std::size_t> order(basis_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivots_[a] < pivots_[b]; });
    std::vector<GFVector> b;
    std::vector<std::uint32_t> pv;
    for (std::size_t k : order) {
      b.push_back(basis_[k]);
      pv.push_back(pivots_[k]);
    }
    basis_ = std::move(b);
    pivots_ = std::move(pv);
  }

  std::uint32_t p_;
  std::uint32_t n_;
  std::vector<GFVector> basis_;
  std::vector<std::uint32_t> pivots_;
};

inline Subspace echelonize(std::uint32_t p, std::uint32_t n, std::span<const GFVector> vectors) {
  return Subspace::span(p, n, vectors);
}

// Ambient space taken from the vectors themselves.
inline Subspace echelonize(std::span<const GFVector> vectors) {
  if (vectors.empty()) throw DimensionError("cannot infer the ambient dimension of an empty vector list");
  return Subspace::span(vectors[0].p(), vectors[0].dim(), vectors);
}

// Solutions x of r·x = 0 for every listed row.
inline Subspace null_space(std::uint32_t p, std::uint32_t n, std::span<const GFVector> rows) {
  Subspace rowspace = Subspace::span(p, n, rows);
  const auto& pivots = rowspace.pivots();
  std::vector<bool> is_pivot(n, false);
  for (std::uint32_t c : pivots) is_pivot[c] = true;
  std::vector<GFVector> basis;
  for (std::uint32_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    GFVector x = GFVector(p, n).with_entry(f, 1);
    for (std::size_t k = 0; k < pivots.size(); ++k) {
      std::uint32_t c = rowspace.basis()[k][f];
      if (c) x = x.with_entry(pivots[k], static_cast<long long>(p - c));
    }
    basis.push_back(x);
  }
  return Subspace::span(p, n, basis);
}

inline Subspace fixed_space(std::span<const GFMatrix> mats) {
  if (mats.empty()) throw DimensionError("fixed_space needs at least one matrix");
  const std::uint32_t p = mats[0].p(), n = mats[0].rows();
  std::vector<GFVector> rows;
  for (const auto& m : mats) {
    if (!m.is_square()) throw DimensionError("fixed_space needs square matrices");
    if (m.p() != p) throw ModulusError("matrix moduli differ");
    if (m.rows() != n) throw DimensionError("matrix dimensions differ");
    GFMatrix d = m - GFMatrix::identity(p, n);
    for (std::uint32_t i = 0; i < n; ++i) rows.push_back(d.row(i));
  }
  return null_space(p, n, rows);
}

inline Subspace fixed_space(std::initializer_list<GFMatrix> mats) {
  return fixed_space(std::span<const GFMatrix>(mats.begin(), mats.size()));
}

// Rows and dimensions as read from text, before any range checks on the shape.
struct RawMatrix {
  std::uint32_t p = 2;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<std::vector<std::uint32_t>> entries;
};

inline void write_raw_matrix(std::ostream& os, const RawMatrix& m) {
  os << m.p << ' ' << m.rows << ' ' << m.cols << '\n';
  for (const auto& row : m.entries) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? " " : "") << row[j];
    os << '\n';
  }
}

inline RawMatrix read_raw_matrix(std::istream& is) {
  RawMatrix m;
  std::string line;
  while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream header(line);
  long long p = 0, r = -1, c = -1;
  if (!(header >> p >> r >> c) || r < 0 || c < 0) throw ParseError("bad matrix header: '" + line + "'");
  detail::check_modulus(static_cast<std::uint32_t>(p));
  m.p = static_cast<std::uint32_t>(p);
  m.rows = static_cast<std::uint32_t>(r);
  m.cols = static_cast<std::uint32_t>(c);
  for (std::uint32_t i = 0; i < m.rows; ++i) {
    if (!std::getline(is, line)) throw ParseError("matrix text ended after " + std::to_string(i) + " rows");
    std::istringstream row(line);
    std::vector<std::uint32_t> entries;
    long long e;
    while (row >> e) {
      if (e < 0 || e >= p) throw ParseError("matrix entry out of range: " + std::to_string(e));
      entries.push_back(static_cast<std::uint32_t>(e));
    }
    if (!row.eof()) throw ParseError("non-numeric matrix entry in '" + line + "'");
    if (entries.size() != m.cols) throw ParseError("row " + std::to_string(i) + " has wrong length");
    m.entries.push_back(std::move(entries));
  }
  return m;
}

inline RawMatrix to_raw(const GFMatrix& m) { return {m.p(), m.rows(), m.cols(), m.to_rows()}; }

inline GFMatrix from_raw(const RawMatrix& raw) {
  std::vector<std::vector<long long>> rows;
  for (const auto& r : raw.entries) rows.emplace_back(r.begin(), r.end());
  if (rows.empty()) throw DimensionError("matrix needs at least one row");
  return GFMatrix::from_rows(raw.p, rows);
}

inline void write_matrix(std::ostream& os, const GFMatrix& m) { write_raw_matrix(os, to_raw(m)); }

inline GFMatrix read_matrix(std::istream& is) { return from_raw(read_raw_matrix(is)); }

inline std::string to_text(const GFMatrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

inline GFMatrix matrix_from_text(const std::string& s) {
  std::istringstream is(s);
  return read_matrix(is);
}

}  // namespace holoscope

template <>
struct std::hash<holoscope::GFVector> {
  std::size_t operator()(const holoscope::GFVector& v) const noexcept { return v.hash(); }
};

template <>
struct std::hash<holoscope::GFMatrix> {
  std::size_t operator()(const holoscope::GFMatrix& m) const noexcept { return m.hash(); }
};
