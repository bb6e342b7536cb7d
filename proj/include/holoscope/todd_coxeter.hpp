#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <vector>

#include "holoscope/errors.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope {

// Finitely presented group. Generators are letters a, b, c, ...; an upper-case letter is the inverse.
struct Presentation {
  std::size_t generator_count = 0;
  std::vector<std::string> relators;
};

// Coset table of the trivial subgroup, i.e. the right regular action on group elements.
class CosetTable {
 public:
  // HLT enumeration with coincidence processing.
  static CosetTable enumerate(const Presentation& pres, std::size_t max_cosets = 200'000) {
    CosetTable t(pres, max_cosets);
    t.run();
    t.compact();
    return t;
  }

  std::size_t size() const noexcept { return table_.size(); }
  std::size_t generator_count() const noexcept { return gens_; }

  // Coset reached from c by the letter with the given column (2i for gen i, 2i+1 for its inverse).
  std::uint32_t next(std::uint32_t c, std::size_t column) const { return static_cast<std::uint32_t>(table_[c][column]); }

  std::uint32_t trace(std::uint32_t c, const std::string& word) const {
    for (char ch : word) c = next(c, column_of(ch, gens_));
    return c;
  }

  // Every relator traced from every coset returns to its start.
  bool relators_hold(const Presentation& pres) const {
    for (const auto& w : pres.relators)
      for (std::uint32_t c = 0; c < size(); ++c)
        if (trace(c, w) != c) return false;
    return true;
  }

  // Faithful permutation images g -> (c -> c g^{-1}), which compose as a homomorphism.
  std::vector<Permutation> regular_generators() const {
    std::vector<Permutation> out;
    for (std::size_t i = 0; i < gens_; ++i) {
      std::vector<std::uint32_t> img(size());
      for (std::uint32_t c = 0; c < size(); ++c) img[c] = next(c, 2 * i + 1);
      out.emplace_back(std::move(img));
    }
    return out;
  }

  static std::size_t column_of(char ch, std::size_t gens) {
    if (!std::isalpha(static_cast<unsigned char>(ch))) throw ParseError(std::string("bad letter in relator: ") + ch);
    const bool inverse = std::isupper(static_cast<unsigned char>(ch));
    const std::size_t g = static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(ch)) - 'a');
    if (g >= gens) throw ParseError(std::string("relator letter beyond generator count: ") + ch);
    return 2 * g + (inverse ? 1 : 0);
  }

 private:
  CosetTable(const Presentation& pres, std::size_t max_cosets) : gens_(pres.generator_count), max_(max_cosets) {
    for (const auto& w : pres.relators) {
      std::vector<std::size_t> cols;
      for (char ch : w) cols.push_back(column_of(ch, gens_));
      rels_.push_back(std::move(cols));
    }
    new_coset();
  }

  static std::size_t inv_col(std::size_t x) { return x ^ 1u; }

  std::int64_t new_coset() {
    if (live_ >= max_) throw BoundExceeded("coset enumeration exceeded " + std::to_string(max_) + " cosets");
    table_.emplace_back(2 * gens_, -1);
    parent_.push_back(static_cast<std::int64_t>(parent_.size()));
    ++live_;
    return static_cast<std::int64_t>(table_.size() - 1);
  }

  void define(std::int64_t c, std::size_t x) {
    std::int64_t d = new_coset();
    table_[c][x] = d;
    table_[d][inv_col(x)] = c;
  }

  bool is_live(std::int64_t c) const { return parent_[c] == c; }

  std::int64_t rep(std::int64_t c) {
    std::int64_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::int64_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::int64_t k, std::int64_t l, std::vector<std::int64_t>& queue) {
    std::int64_t a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    --live_;
    queue.push_back(b);
  }

  void coincidence(std::int64_t a, std::int64_t b) {
    std::vector<std::int64_t> queue;
    merge(a, b, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      const std::int64_t g = queue[i];
      for (std::size_t x = 0; x < 2 * gens_; ++x) {
        const std::int64_t d = table_[g][x];
        if (d < 0) continue;
        table_[d][inv_col(x)] = -1;
        const std::int64_t mu = rep(g), nu = rep(d);
        if (table_[mu][x] >= 0) {
          merge(nu, table_[mu][x], queue);
        } else if (table_[nu][inv_col(x)] >= 0) {
          merge(mu, table_[nu][inv_col(x)], queue);
        } else {
          table_[mu][x] = nu;
          table_[nu][inv_col(x)] = mu;
        }
      }
    }
  }

  void scan_and_fill(std::int64_t alpha, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::int64_t f = alpha, b = alpha;
    std::size_t i = 0, j = w.size();  // j is one past the last unscanned letter
    while (true) {
      while (i < j && table_[f][w[i]] >= 0) f = table_[f][w[i++]];
      if (i == j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j > i && table_[b][inv_col(w[j - 1])] >= 0) b = table_[b][inv_col(w[--j])];
      if (j == i) {
        coincidence(f, b);
        return;
      }
      if (j == i + 1) {
        table_[f][w[i]] = b;
        table_[b][inv_col(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void run() {
    for (std::int64_t alpha = 0; alpha < static_cast<std::int64_t>(table_.size()); ++alpha) {
      for (const auto& w : rels_) {
        if (!is_live(alpha)) break;
        scan_and_fill(alpha, w);
      }
      if (!is_live(alpha)) continue;
      for (std::size_t x = 0; x < 2 * gens_; ++x)
        if (table_[alpha][x] < 0) define(alpha, x);
    }
  }

  void compact() {
    std::vector<std::int64_t> renum(table_.size(), -1);
    std::int64_t next = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (is_live(static_cast<std::int64_t>(c))) renum[c] = next++;
    std::vector<std::vector<std::int64_t>> out;
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (renum[c] < 0) continue;
      std::vector<std::int64_t> row(2 * gens_);
      for (std::size_t x = 0; x < 2 * gens_; ++x) {
        ensure(table_[c][x] >= 0, "coset table incomplete after enumeration");
        row[x] = renum[rep(table_[c][x])];
      }
      out.push_back(std::move(row));
    }
    table_ = std::move(out);
  }

  std::size_t gens_;
  std::size_t max_;
  std::size_t live_ = 0;
  std::vector<std::vector<std::size_t>> rels_;
  std::vector<std::vector<std::int64_t>> table_;
  std::vector<std::int64_t> parent_;
};

}  // namespace holoscope
