#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "holoscope/construction.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope::testing {

using Cycles = std::vector<std::vector<std::uint32_t>>;

inline FiniteGroup<Permutation> perm_group(std::size_t degree, const std::vector<Cycles>& gens) {
  std::vector<Permutation> ps;
  for (const auto& c : gens) ps.push_back(Permutation::from_cycles(degree, c));
  return FiniteGroup<Permutation>::close(ps);
}

inline FiniteGroup<Permutation> sym4() { return perm_group(4, {{{0, 1}}, {{0, 1, 2, 3}}}); }
inline FiniteGroup<Permutation> alt5() { return perm_group(5, {{{0, 1, 2}}, {{0, 1, 2, 3, 4}}}); }

inline AffineElement hat(char which) {
  const auto& m = canonical_generators();
  const auto& s = canonical_psi();
  switch (which) {
    case 'A': return AffineElement::linear(m.a);
    case 'B': return AffineElement::linear(m.b);
    case 'C': return AffineElement(m.c, s.c);
    default: return AffineElement(m.d, s.d);
  }
}

// J = T^r inside Aff(F_2^{3r}).
inline FiniteGroup<AffineElement> j_group(std::uint32_t r) {
  std::vector<AffineElement> gens;
  for (std::uint32_t k = 0; k < r; ++k)
    for (char c : {'A', 'B', 'C', 'D'}) gens.push_back(block_lift(hat(c), k, r));
  return FiniteGroup<AffineElement>::close(gens);
}

inline const WreathResult& wreath_r2() {
  static const WreathResult w = build_wreath(find_transitive_soluble(2, "C2"), WreathOptions{2, false});
  return w;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240917);
  return g;
}

template <class E>
const E& pick(const FiniteGroup<E>& g) {
  std::uniform_int_distribution<std::size_t> d(0, g.order() - 1);
  return g[d(rng())];
}

}  // namespace holoscope::testing
