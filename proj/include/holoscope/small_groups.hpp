#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "holoscope/automorphism.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/permutation.hpp"
#include "holoscope/todd_coxeter.hpp"

namespace holoscope {

struct SmallGroupEntry {
  std::string name;
  std::size_t order;
  Presentation presentation;
};

// Every group of order at most 16, one presentation per isomorphism type.
inline const std::vector<SmallGroupEntry>& small_group_presentations() {
  static const std::vector<SmallGroupEntry> entries = {
      {"1", 1, {0, {}}},
      {"C2", 2, {1, {"aa"}}},
      {"C3", 3, {1, {"aaa"}}},
      {"C4", 4, {1, {"aaaa"}}},
      {"C2^2", 4, {2, {"aa", "bb", "abAB"}}},
      {"C5", 5, {1, {"aaaaa"}}},
      {"C6", 6, {1, {"aaaaaa"}}},
      {"S3", 6, {2, {"aaa", "bb", "abab"}}},
      {"C7", 7, {1, {"aaaaaaa"}}},
      {"C8", 8, {1, {"aaaaaaaa"}}},
      {"C4xC2", 8, {2, {"aaaa", "bb", "abAB"}}},
      {"D8", 8, {2, {"aaaa", "bb", "abab"}}},
      {"Q8", 8, {2, {"aaaa", "bbAA", "baBa"}}},
      {"C2^3", 8, {3, {"aa", "bb", "cc", "abAB", "acAC", "bcBC"}}},
      {"C9", 9, {1, {"aaaaaaaaa"}}},
      {"C3^2", 9, {2, {"aaa", "bbb", "abAB"}}},
      {"C10", 10, {1, {"aaaaaaaaaa"}}},
      {"D10", 10, {2, {"aaaaa", "bb", "abab"}}},
      {"C11", 11, {1, {"aaaaaaaaaaa"}}},
      {"C12", 12, {1, {"aaaaaaaaaaaa"}}},
      {"C6xC2", 12, {2, {"aaaaaa", "bb", "abAB"}}},
      {"D12", 12, {2, {"aaaaaa", "bb", "abab"}}},
      {"A4", 12, {2, {"aa", "bbb", "ababab"}}},
      {"Dic3", 12, {2, {"aaaaaa", "bbAAA", "baBa"}}},
      {"C13", 13, {1, {"aaaaaaaaaaaaa"}}},
      {"C14", 14, {1, {"aaaaaaaaaaaaaa"}}},
      {"D14", 14, {2, {"aaaaaaa", "bb", "abab"}}},
      {"C15", 15, {1, {"aaaaaaaaaaaaaaa"}}},
      {"C16", 16, {1, {"aaaaaaaaaaaaaaaa"}}},
      {"C4^2", 16, {2, {"aaaa", "bbbb", "abAB"}}},
      {"C2^2:C4", 16, {3, {"aaaa", "bb", "cc", "abAB", "bcBC", "caCBA"}}},
      {"C4:C4", 16, {2, {"aaaa", "bbbb", "baBa"}}},
      {"C8xC2", 16, {2, {"aaaaaaaa", "bb", "abAB"}}},
      {"M16", 16, {2, {"aaaaaaaa", "bb", "baBAAAAA"}}},
      {"D16", 16, {2, {"aaaaaaaa", "bb", "abab"}}},
      {"QD16", 16, {2, {"aaaaaaaa", "bb", "baBAAA"}}},
      {"Q16", 16, {2, {"aaaaaaaa", "bbAAAA", "baBa"}}},
      {"C4xC2^2", 16, {3, {"aaaa", "bb", "cc", "abAB", "acAC", "bcBC"}}},
      {"D8xC2", 16, {3, {"aaaa", "bb", "abab", "cc", "acAC", "bcBC"}}},
      {"Q8xC2", 16, {3, {"aaaa", "bbAA", "baBa", "cc", "acAC", "bcBC"}}},
      {"C4oD8", 16, {3, {"aaaa", "bb", "abab", "ccAA", "acAC", "bcBC"}}},
      {"C2^4", 16, {4, {"aa", "bb", "cc", "dd", "abAB", "acAC", "adAD", "bcBC", "bdBD", "cdCD"}}},
  };
  return entries;
}

struct SmallGroup {
  std::string name;
  FiniteGroup<Permutation> group;  // regular permutation representation
  CayleyTable table;
};

// Builds one catalogue entry; asserts the order and that every relator holds in the coset table.
inline SmallGroup realize(const SmallGroupEntry& entry) {
  const CosetTable ct = CosetTable::enumerate(entry.presentation);
  ensure(ct.size() == entry.order, "presentation of " + entry.name + " has order " + std::to_string(ct.size()) +
                                       ", expected " + std::to_string(entry.order));
  ensure(ct.relators_hold(entry.presentation), "relators of " + entry.name + " fail in the coset table");
  std::vector<Permutation> gens = ct.regular_generators();
  if (gens.empty()) gens.push_back(Permutation::identity(1));
  auto g = FiniteGroup<Permutation>::close(gens, entry.order);
  ensure(g.order() == entry.order, "regular representation of " + entry.name + " has the wrong order");
  CayleyTable t = CayleyTable::of(g);
  return {entry.name, std::move(g), std::move(t)};
}

inline std::vector<SmallGroup> small_groups(std::size_t max_order) {
  if (max_order > 16) throw PreconditionError("the small-groups catalogue stops at order 16");
  std::vector<SmallGroup> out;
  for (const auto& e : small_group_presentations())
    if (e.order <= max_order) out.push_back(realize(e));
  return out;
}

inline const SmallGroupEntry& small_group_entry(const std::string& name) {
  for (const auto& e : small_group_presentations())
    if (e.name == name) return e;
  throw PreconditionError("unknown small group: " + name);
}

// Catalogue name of the isomorphism type of t, if its order is at most 16.
inline std::optional<std::string> identify_small_group(const CayleyTable& t) {
  if (t.size() > 16) return std::nullopt;
  for (const auto& e : small_group_presentations()) {
    if (e.order != t.size()) continue;
    const SmallGroup g = realize(e);
    if (are_isomorphic(t, g.table)) return e.name;
  }
  return std::nullopt;
}

}  // namespace holoscope
