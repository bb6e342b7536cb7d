#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "holoscope/construction.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/finite_group.hpp"
#include "holoscope/gf_linalg.hpp"

namespace holoscope {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline std::string to_string(const Rational& q) { return q.str(); }

// ---------- integer helpers ----------

__extension__ typedef unsigned __int128 uint128;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<uint128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

// Deterministic Miller-Rabin for 64-bit inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s && composite; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) composite = false;
    }
    if (composite) return false;
  }
  return true;
}

// (ell, f) with n = ell^f, or nullopt.
inline std::optional<std::pair<std::uint64_t, std::uint32_t>> as_prime_power(std::uint64_t n) {
  if (n < 2) return std::nullopt;
  for (std::uint64_t ell = 2; ell * ell <= n; ++ell) {
    if (n % ell) continue;
    std::uint32_t f = 0;
    while (n % ell == 0) {
      n /= ell;
      ++f;
    }
    if (n != 1) return std::nullopt;
    return std::make_pair(ell, f);
  }
  return std::make_pair(n, 1u);
}

inline std::uint32_t valuation(BigInt x, std::uint64_t p) {
  if (x == 0) throw PreconditionError("valuation of zero");
  std::uint32_t v = 0;
  while (x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline std::uint32_t valuation(std::uint64_t x, std::uint64_t p) { return valuation(BigInt(x), p); }

// ---------- simple groups ----------

enum class Family { alternating, psl, psu, sporadic };

struct SimpleGroup {
  Family family = Family::psl;
  std::uint32_t n = 2;  // degree for A_n and PSL_n / PSU_n
  std::uint64_t q = 0;  // field size for PSL / PSU
  std::string sporadic;

  std::string name() const {
    switch (family) {
      case Family::alternating: return "A" + std::to_string(n);
      case Family::psl: return "PSL" + std::to_string(n) + "(" + std::to_string(q) + ")";
      case Family::psu: return "PSU" + std::to_string(n) + "(" + std::to_string(q) + ")";
      case Family::sporadic: return sporadic;
    }
    return "?";
  }

  static SimpleGroup psl(std::uint32_t n, std::uint64_t q) { return {Family::psl, n, q, {}}; }
  static SimpleGroup alt(std::uint32_t n) { return {Family::alternating, n, 0, {}}; }

  auto operator<=>(const SimpleGroup&) const = default;
};

// |PSL_n(q)| for n in {2, 3}.
inline BigInt group_order(const SimpleGroup& t) {
  if (t.family == Family::psl) {
    const BigInt q = t.q;
    if (t.n == 2) return q * (q * q - 1) / std::gcd<std::uint64_t>(2, t.q - 1);
    if (t.n == 3) return q * q * q * (q * q * q - 1) * (q * q - 1) / std::gcd<std::uint64_t>(3, t.q - 1);
  }
  if (t.family == Family::alternating && t.n >= 5) {
    BigInt f = 1;
    for (std::uint32_t k = 3; k <= t.n; ++k) f *= k;
    return f;
  }
  throw PreconditionError("group order not tabulated for " + t.name());
}

inline std::uint64_t outer_order(const SimpleGroup& t) {
  if (t.family == Family::psl) {
    const auto pp = as_prime_power(t.q);
    if (!pp) throw PreconditionError("q must be a prime power");
    const std::uint64_t f = pp->second;
    if (t.n == 2) return std::gcd<std::uint64_t>(2, t.q - 1) * f;
    if (t.n == 3) return 2 * std::gcd<std::uint64_t>(3, t.q - 1) * f;
  }
  if (t.family == Family::alternating && t.n >= 5) return t.n == 6 ? 4 : 2;
  throw PreconditionError("outer automorphism group not tabulated for " + t.name());
}

inline std::uint32_t vp_aut(const SimpleGroup& t, std::uint64_t p) {
  return valuation(group_order(t), p) + valuation(outer_order(t), p);
}

// ---------- degree table ----------

struct DegreeData {
  std::vector<std::uint32_t> degrees;  // full list when complete, otherwise just the minimal nontrivial degree
  bool complete = false;
  bool minimum_exact = false;          // false: degrees.front() is only a lower bound
  std::string source;

  std::uint32_t minimal_nontrivial() const {
    for (auto d : degrees)
      if (d > 1) return d;
    throw InvariantViolation("degree table entry without a nontrivial degree");
  }
};

inline bool is_mersenne_psl2(const SimpleGroup& t) {
  return t.family == Family::psl && t.n == 2 && t.q >= 7 && is_prime(t.q) && ((t.q + 1) & t.q) == 0;
}

// Absolutely irreducible degrees in characteristic p; stored data, not computed.
inline DegreeData degree_table(const SimpleGroup& t, std::uint64_t p) {
  if (t == SimpleGroup::psl(3, 2) || t == SimpleGroup::psl(2, 7)) {
    if (p == 2) return {{1, 3, 3, 8}, true, true, "2-modular Brauer table of L3(2)"};
    if (p == 7) return {{1, 3, 5, 7}, true, true, "7-modular Brauer table of L2(7)"};
  }
  if (t == SimpleGroup::psl(2, 8) && p == 3) return {{7}, false, true, "3-modular Brauer table of L2(8)"};
  if (t == SimpleGroup::psl(2, 4) && p == 5) return {{1, 3, 5}, true, true, "5-modular Brauer table of A5"};
  if (is_mersenne_psl2(t) && p == 2) {
    const auto d = static_cast<std::uint32_t>((t.q - 1) / 2);
    return {{d}, false, true, "minimal degree (q-1)/2 of L2(q) in characteristic 2"};
  }
  if (t.family == Family::psl && (t.n == 2 || t.n == 3))
    return {{2}, false, false, "lower bound: a nontrivial representation of a nonabelian simple group has degree >= 2"};
  throw PreconditionError("no degree data for " + t.name() + " in characteristic " + std::to_string(p));
}

inline DegreeData degree_table(const std::string& tag, std::uint64_t p) {
  if (tag == "GL3(2)" || tag == "GL_3(2)" || tag == "PSL3(2)" || tag == "PSL2(7)") return degree_table(SimpleGroup::psl(3, 2), p);
  auto parse = [&](const std::string& prefix, std::uint32_t n) -> std::optional<SimpleGroup> {
    if (tag.rfind(prefix, 0) != 0 || tag.back() != ')') return std::nullopt;
    try {
      return SimpleGroup::psl(n, std::stoull(tag.substr(prefix.size(), tag.size() - prefix.size() - 1)));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (auto t = parse("PSL2(", 2)) return degree_table(*t, p);
  if (auto t = parse("PSL3(", 3)) return degree_table(*t, p);
  throw PreconditionError("unknown group tag '" + tag + "'");
}

// ---------- Guralnick data ----------

struct GuralnickCase {
  std::string id;
  std::string t;
  std::string r;
  std::string index;
  bool r_soluble_possible = false;
  std::string note;
};

inline std::vector<GuralnickCase> guralnick_table() {
  return {
      {"i", "A_n", "A_{n-1}", "n = p^a", true, "R soluble only for n = 5; A5 = PSL2(4)"},
      {"ii", "PSL_n(q)", "stabiliser of a point or hyperplane", "(q^n - 1)/(q - 1) = p^a", true,
       "R soluble only for n = 2, or n = 3 with q in {2, 3}"},
      {"iii", "PSL2(11)", "A5", "11", false, "R is insoluble"},
      {"iv", "M23", "M22", "23", false, "R is insoluble"},
      {"iv", "M11", "M10", "11", false, "R is insoluble"},
      {"v", "PSU4(2) = PSp4(3)", "index-27 subgroup", "27", false, "R has a quotient isomorphic to A5"},
  };
}

struct SimpleCandidate {
  SimpleGroup t;
  std::string shape;  // corollary item
  std::uint64_t p = 0;
  std::uint32_t a = 0;
  bool soluble_index_subgroup = true;
  std::optional<std::uint32_t> d_t;
  std::uint32_t vp_aut = 0;

  std::string label() const { return "(" + t.name() + "," + std::to_string(p) + "," + std::to_string(a) + ")"; }
  auto key() const { return std::make_tuple(t, p, a); }
};

inline SimpleCandidate make_candidate(SimpleGroup t, std::string shape, std::uint64_t p, std::uint32_t a) {
  SimpleCandidate c{t, std::move(shape), p, a, true, std::nullopt, vp_aut(t, p)};
  try {
    c.d_t = degree_table(t, p).minimal_nontrivial();
  } catch (const PreconditionError&) {
  }
  return c;
}

inline void sort_candidates(std::vector<SimpleCandidate>& v) {
  std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) {
    return std::make_tuple(x.shape, x.p, x.a, x.t) < std::make_tuple(y.shape, y.p, y.a, y.t);
  });
}

// Fixed entries and Fermat family up to p^a <= bound; Mersenne family for 3 <= a <= mersenne_cap.
inline std::vector<SimpleCandidate> soluble_index_candidates(std::uint64_t bound, std::uint32_t mersenne_cap = 13) {
  if (bound < 8) throw PreconditionError("bound must be at least 8");
  if (mersenne_cap > 62) throw PreconditionError("Mersenne exponent cap must be at most 62");
  std::vector<SimpleCandidate> out;
  if (7 <= bound) out.push_back(make_candidate(SimpleGroup::psl(3, 2), "i", 7, 1));
  if (13 <= bound) out.push_back(make_candidate(SimpleGroup::psl(3, 3), "ii", 13, 1));
  for (std::uint32_t a = 1; a < 63 && (1ull << a) + 1 <= bound; ++a) {
    const std::uint64_t p = (1ull << a) + 1;
    if (p >= 5 && is_prime(p)) out.push_back(make_candidate(SimpleGroup::psl(2, 1ull << a), "iii", p, 1));
  }
  if (9 <= bound) out.push_back(make_candidate(SimpleGroup::psl(2, 8), "iv", 3, 2));
  for (std::uint32_t a = 2; a <= mersenne_cap; ++a) {
    const std::uint64_t q = (1ull << a) - 1;
    if (q >= 7 && is_prime(q)) out.push_back(make_candidate(SimpleGroup::psl(2, q), "v", 2, a));
  }
  sort_candidates(out);
  return out;
}

// Independent route: walk the Guralnick cases with p^a <= bound and keep soluble R.
inline std::vector<SimpleCandidate> candidates_from_guralnick(std::uint64_t bound) {
  std::vector<SimpleCandidate> out;
  auto add = [&](SimpleGroup t, std::uint64_t index) {
    const auto pp = as_prime_power(index);
    if (!pp) return;
    std::string shape;
    if (t == SimpleGroup::psl(3, 2)) shape = "i";
    else if (t == SimpleGroup::psl(3, 3)) shape = "ii";
    else if (t.n == 2 && pp->first == 2) shape = "v";
    else if (t.n == 2 && pp->second == 1) shape = "iii";
    else if (t.n == 2) shape = "iv";
    else throw InvariantViolation("soluble Guralnick entry outside the corollary shapes: " + t.name());
    auto c = make_candidate(t, shape, pp->first, pp->second);
    if (std::none_of(out.begin(), out.end(), [&](const auto& x) { return x.key() == c.key(); })) out.push_back(c);
  };
  // (i): A_n with A_{n-1} soluble means n = 5; A5 = PSL2(4).
  for (std::uint64_t n = 5; n <= bound; ++n) {
    if (!as_prime_power(n)) continue;
    if (n - 1 <= 4) add(SimpleGroup::psl(2, 4), n);
  }
  // (ii): PSL_n(q), index (q^n - 1)/(q - 1).
  for (std::uint32_t n = 2; n < 64; ++n) {
    bool any = false;
    for (std::uint64_t q = 2; q <= bound; ++q) {
      if (!as_prime_power(q)) continue;
      BigInt idx = 0, pw = 1;
      for (std::uint32_t k = 0; k < n; ++k) {
        idx += pw;
        pw *= q;
      }
      if (idx > bound) break;
      any = true;
      if (n == 2 && q < 4) continue;  // PSL2(2), PSL2(3) not simple
      const bool soluble = n == 2 || (n == 3 && q <= 3);
      if (soluble) add(SimpleGroup::psl(n, q), static_cast<std::uint64_t>(idx));
    }
    if (!any) break;
  }
  // (iii)-(v) have insoluble R.
  sort_candidates(out);
  return out;
}

// ---------- inequalities ----------

struct CliffordParams {
  struct Minimal {
    std::uint32_t r = 1, y = 1, z = 1;
    std::uint32_t d = 2;
    std::uint32_t vp_aut = 0;
  };
  std::uint32_t m = 1;
  std::uint64_t p = 2;
  std::vector<Minimal> js;

  void validate() const {
    if (m < 1 || js.empty() || p < 2) throw PreconditionError("Clifford parameters need m >= 1, p >= 2 and some J");
    for (const auto& j : js)
      if (j.y < 1 || j.y > j.r || j.z < 1 || j.z > m)
        throw PreconditionError("need 1 <= y(J) <= r(J) and 1 <= z(J) <= m");
  }
};

inline bool check_mk_ry(const CliffordParams& c) {
  c.validate();
  return std::all_of(c.js.begin(), c.js.end(), [&](const auto& j) { return c.m * j.y == j.r * j.z; });
}

struct InequalityValue {
  Rational lhs, rhs;
  bool holds = false;
};

inline InequalityValue check_key_inequality(const CliffordParams& c) {
  c.validate();
  Rational prod = 1, sum = 0;
  for (const auto& j : c.js) {
    prod *= boost::multiprecision::pow(BigInt(j.d), j.y);
    sum += Rational(j.r) * (Rational(j.vp_aut) + Rational(1, c.p - 1));
  }
  Rational lhs = Rational(c.m) * prod;
  return {lhs, sum, lhs < sum};
}

inline InequalityValue tj_inequality(std::uint32_t d, std::uint32_t y, std::uint32_t vp, std::uint64_t p) {
  if (y < 1) throw PreconditionError("y must be positive");
  Rational lhs = Rational(boost::multiprecision::pow(BigInt(d), y), y);
  Rational rhs = Rational(vp) + Rational(1, p - 1);
  return {lhs, rhs, lhs < rhs};
}

inline Rational b_table(std::uint32_t a, std::uint32_t y) {
  if (a < 3 || y < 1) throw PreconditionError("b(a, y) needs a >= 3 and y >= 1");
  return Rational(boost::multiprecision::pow((BigInt(1) << (a - 1)) - 1, y), BigInt(y) * (a + 2));
}

inline bool dimension_bound_check(std::uint64_t g_order, std::uint32_t v_dim, std::uint64_t p) {
  if (g_order == 0) throw PreconditionError("group order must be positive");
  return v_dim <= valuation(g_order, p);
}

inline bool dimension_bound_check(const BigInt& g_order, std::uint32_t v_dim, std::uint64_t p) {
  return v_dim <= valuation(g_order, p);
}

// ---------- elimination replay ----------

struct TJRow {
  std::string candidate;
  std::uint64_t p = 0;
  std::uint32_t a = 0;
  std::uint32_t d = 0;
  bool d_exact = false;
  std::uint32_t vp_aut = 0;
  std::vector<std::tuple<std::uint32_t, Rational, Rational, bool>> evaluations;  // y, lhs, rhs, holds
  std::vector<std::uint32_t> surviving_y;
};

struct ProductRow {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> factors;  // (a_f, y_f)
  Rational product;
  bool holds = false;
};

struct ZRow {
  std::string config;
  std::vector<std::uint32_t> y;
  std::vector<std::uint32_t> z;
  Rational lhs, rhs;
  bool holds = false;
};

struct CaseOutcome {
  std::string id;
  std::uint32_t minimal_normals = 0;
  std::vector<std::uint32_t> y;
  std::vector<std::uint32_t> z;
  std::string r_in_terms_of_m;
};

struct EliminationReport {
  std::uint64_t bound = 0;
  std::uint32_t mersenne_cap = 0;
  std::vector<SimpleCandidate> candidates;
  std::vector<TJRow> tj;
  std::set<std::pair<std::uint32_t, std::uint32_t>> tj_survivors;  // (a, y) with p = 2
  std::vector<std::string> tj_survivor_groups;
  std::vector<ProductRow> product_rows;
  std::vector<ProductRow> product_survivors;
  bool b_monotone = false;
  std::vector<ZRow> z_rows;
  std::vector<CaseOutcome> cases;
};

namespace detail {

inline std::string case_r(std::uint32_t y, std::uint32_t z) {
  if (y % z) throw InvariantViolation("r(J) not integral");
  const std::uint32_t k = y / z;
  return k == 1 ? "r = m" : "r = " + std::to_string(k) + "m";
}

}  // namespace detail

inline EliminationReport just168_elimination(std::uint64_t bound = 2000, std::uint32_t mersenne_cap = 13,
                                             std::uint32_t y_max = 8) {
  EliminationReport rep;
  rep.bound = bound;
  rep.mersenne_cap = mersenne_cap;
  rep.candidates = soluble_index_candidates(bound, mersenne_cap);

  // (TJ-ineq) per candidate; the left side is nondecreasing in y once d >= 2.
  for (const auto& c : rep.candidates) {
    TJRow row{c.label(), c.p, c.a, 0, false, c.vp_aut, {}, {}};
    const auto dd = degree_table(c.t, c.p);
    row.d = dd.minimal_nontrivial();
    row.d_exact = dd.minimum_exact;
    if (row.d < 2) throw InvariantViolation("degree below 2 for " + c.label());
    for (std::uint32_t y = 1;; ++y) {
      auto v = tj_inequality(row.d, y, row.vp_aut, row.p);
      row.evaluations.emplace_back(y, v.lhs, v.rhs, v.holds);
      if (v.holds) row.surviving_y.push_back(y);
      else if (y >= 2) break;
      if (y > 64) throw InvariantViolation("y scan did not terminate");
    }
    for (auto y : row.surviving_y) {
      if (c.p != 2 || !is_mersenne_psl2(c.t))
        throw InvariantViolation("unexpected survivor " + c.label() + " y=" + std::to_string(y));
      rep.tj_survivors.emplace(c.a, y);
    }
    if (!row.surviving_y.empty()) rep.tj_survivor_groups.push_back(c.t.name());
    rep.tj.push_back(std::move(row));
  }
  const std::set<std::pair<std::uint32_t, std::uint32_t>> want{{3, 1}, {3, 2}};
  if (rep.tj_survivors != want) throw InvariantViolation("TJ-inequality survivors differ from {(3,1),(3,2)}");

  // (p-is-2-ineq): distinct Mersenne exponents a_1 = 3 < a_2 < ..., y_f in [1, y_max].
  std::vector<std::uint32_t> exps;
  for (const auto& c : rep.candidates)
    if (c.p == 2) exps.push_back(c.a);
  std::sort(exps.begin(), exps.end());
  rep.b_monotone = true;
  for (std::size_t i = 0; i + 1 < exps.size(); ++i)
    for (std::uint32_t y = 1; y <= y_max; ++y)
      if (!(b_table(exps[i], y) < b_table(exps[i + 1], y))) rep.b_monotone = false;
  for (auto a : exps)
    for (std::uint32_t y = 1; y < y_max; ++y)
      if (a >= 5 && b_table(a, y) < Rational(15, 7)) rep.b_monotone = false;
  std::vector<std::uint32_t> rest(exps.begin(), exps.end());
  rest.erase(std::remove(rest.begin(), rest.end(), 3u), rest.end());
  // Subsets of the larger exponents with at most two members, times every y assignment.
  std::vector<std::vector<std::uint32_t>> subsets{{}};
  for (auto a : rest) subsets.push_back({a});
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j) subsets.push_back({rest[i], rest[j]});
  for (const auto& extra : subsets) {
    std::vector<std::uint32_t> as{3};
    as.insert(as.end(), extra.begin(), extra.end());
    std::vector<std::uint32_t> ys(as.size(), 1);
    while (true) {
      ProductRow row;
      row.product = 1;
      for (std::size_t f = 0; f < as.size(); ++f) {
        row.factors.emplace_back(as[f], ys[f]);
        row.product *= b_table(as[f], ys[f]);
      }
      row.holds = row.product < 1;
      if (row.holds) rep.product_survivors.push_back(row);
      rep.product_rows.push_back(std::move(row));
      std::size_t k = 0;
      while (k < ys.size() && ys[k] == y_max) ys[k++] = 1;
      if (k == ys.size()) break;
      ++ys[k];
    }
  }
  for (const auto& s : rep.product_survivors)
    if (s.factors.size() != 1 || s.factors[0].first != 3 || s.factors[0].second > 2)
      throw InvariantViolation("unexpected product survivor");
  if (rep.product_survivors.size() != 2) throw InvariantViolation("expected two product survivors");

  // prod 3^y(J) < sum 5 y(J)/z(J) with z(J) <= z_max.
  const std::uint32_t z_max = 4;
  const std::vector<std::pair<std::string, std::vector<std::uint32_t>>> configs{
      {"two minimal normal subgroups", {1, 1}}, {"unique minimal normal, y=2", {2}}, {"unique minimal normal, y=1", {1}}};
  const char* ids[] = {"i", "ii", "iii"};
  for (std::size_t ci = 0; ci < configs.size(); ++ci) {
    const auto& [name, ys] = configs[ci];
    std::vector<std::uint32_t> zs(ys.size(), 1);
    std::vector<std::vector<std::uint32_t>> good;
    while (true) {
      Rational lhs = 1, rhs = 0;
      for (std::size_t k = 0; k < ys.size(); ++k) {
        lhs *= boost::multiprecision::pow(BigInt(3), ys[k]);
        rhs += Rational(5 * ys[k], zs[k]);
      }
      rep.z_rows.push_back({name, ys, zs, lhs, rhs, lhs < rhs});
      if (lhs < rhs) good.push_back(zs);
      std::size_t k = 0;
      while (k < zs.size() && zs[k] == z_max) zs[k++] = 1;
      if (k == zs.size()) break;
      ++zs[k];
    }
    if (good.size() != 1 || std::any_of(good[0].begin(), good[0].end(), [](auto z) { return z != 1; }))
      throw InvariantViolation("z = 1 not forced for " + name);
    rep.cases.push_back({ids[ci], static_cast<std::uint32_t>(ys.size()), ys, good[0], detail::case_r(ys[0], 1)});
  }
  return rep;
}

// ---------- tensor argument ----------

struct TensorVerdict {
  bool applicable = false;
  std::optional<GFMatrix> alpha;
  std::uint32_t kernel_dim = 0;
  bool b_part_fixes_zero = false;
  bool tensor_fixed_point_free = false;
};

// With alpha = (0, M (x) I) and M - I invertible, any lift (y, I (x) N) commuting with alpha has y = 0.
inline TensorVerdict tensor_fixed_point_argument(const std::vector<GFMatrix>& gens_a, const std::vector<GFMatrix>& gens_b,
                                                 std::size_t bound = 100'000) {
  if (gens_a.empty() || gens_b.empty()) throw PreconditionError("both sides need generators");
  const std::uint32_t p = gens_a.front().p(), da = gens_a.front().rows(), db = gens_b.front().rows();
  TensorVerdict out;
  const auto ga = FiniteGroup<GFMatrix>::close(gens_a, bound);
  for (const auto& m : ga.sorted_elements())
    if ((m - m.identity()).is_invertible()) {
      out.alpha = m;
      break;
    }
  std::vector<GFMatrix> kron;
  for (const auto& a : gens_a) kron.push_back(kronecker(a, GFMatrix::identity(p, db)));
  for (const auto& b : gens_b) kron.push_back(kronecker(GFMatrix::identity(p, da), b));
  out.tensor_fixed_point_free = fixed_space(std::span<const GFMatrix>(kron)).dim() == 0;
  if (!out.alpha) return out;
  out.applicable = true;
  const GFMatrix k = kronecker(*out.alpha - out.alpha->identity(), GFMatrix::identity(p, db));
  out.kernel_dim = da * db - static_cast<std::uint32_t>(k.rank());
  out.b_part_fixes_zero = out.kernel_dim == 0;
  return out;
}

inline TensorVerdict require_tensor_argument(const std::vector<GFMatrix>& gens_a, const std::vector<GFMatrix>& gens_b) {
  auto v = tensor_fixed_point_argument(gens_a, gens_b);
  if (!v.applicable) throw PreconditionError("no element alpha with M - I invertible; argument inapplicable");
  return v;
}

// ---------- measured parameters ----------

struct MeasuredParams {
  std::size_t minimal_normal_count = 0;
  std::uint64_t socle_order = 0;
  CliffordParams params;
  bool mk_ry = false;
  InequalityValue key;
  std::string matched_case;
  bool dimension_bound = false;
};

// m, r(J), y(J), z(J) read off the block structure of a constructed group with r <= 2.
inline MeasuredParams measure_parameters(const WreathResult& w) {
  if (!w.group) throw PreconditionError("measurement needs a materialised group (r <= 2)");
  const auto& g = *w.group;
  const std::uint32_t r = w.r, n = 3 * r;
  MeasuredParams out;
  const auto mins = minimal_normal_subgroups(g);
  out.minimal_normal_count = mins.size();
  if (mins.size() != 1) throw InvariantViolation("expected a unique minimal normal subgroup");
  const auto& j = mins.front();
  out.socle_order = j.order();
  std::uint64_t want = 1;
  for (std::uint32_t k = 0; k < r; ++k) want *= 168;
  if (j.order() != want) throw InvariantViolation("socle order is not 168^r");

  // Simple factors T_k: the part of J supported on block k.
  std::vector<FiniteGroup<AffineElement>> factors;
  std::vector<Subspace> blocks;
  for (std::uint32_t k = 0; k < r; ++k) blocks.push_back(block_subspace(k, r));
  for (std::uint32_t k = 0; k < r; ++k) {
    std::vector<AffineElement> sub;
    for (const auto& x : j.elements()) {
      bool ok = true;
      for (std::uint32_t l = 0; l < r && ok; ++l)
        if (l != k)
          for (const auto& b : blocks[l].basis())
            if (!(x.lin() * b == b)) ok = false;
      if (ok) sub.push_back(x);
    }
    factors.push_back(FiniteGroup<AffineElement>::from_subset(sub));
    if (factors.back().order() != 168) throw InvariantViolation("block factor does not have order 168");
  }
  // V = sum of the blocks; each is an irreducible module for J.
  for (std::uint32_t k = 0; k < r; ++k) {
    std::vector<GFMatrix> lins;
    for (const auto& x : j.generators()) {
      GFMatrix sub(2, 3, 3);
      for (std::uint32_t i = 0; i < 3; ++i)
        for (std::uint32_t c = 0; c < 3; ++c) sub = sub.with_entry(i, c, x.lin()(3 * k + i, 3 * k + c));
      lins.push_back(sub);
      for (const auto& b : blocks[k].basis())
        if (!blocks[k].contains(x.lin() * b)) throw InvariantViolation("block is not J-stable");
    }
    if (!linear_irreducible(lins, 2, 3)) throw InvariantViolation("block is not an irreducible J-module");
  }
  auto acts_on = [&](const FiniteGroup<AffineElement>& t, std::uint32_t k) {
    for (const auto& x : t.generators())
      for (const auto& b : blocks[k].basis())
        if (!(x.lin() * b == b)) return true;
    return false;
  };
  std::uint32_t y = 0, z = 0;
  for (std::uint32_t f = 0; f < r; ++f) y += acts_on(factors[f], 0);
  for (std::uint32_t k = 0; k < r; ++k) z += acts_on(factors[0], k);
  CliffordParams::Minimal jm;
  jm.r = r;
  jm.y = y;
  jm.z = z;
  jm.d = degree_table(SimpleGroup::psl(3, 2), 2).minimal_nontrivial();
  jm.vp_aut = vp_aut(SimpleGroup::psl(3, 2), 2);
  out.params = CliffordParams{r, 2, {jm}};
  out.mk_ry = check_mk_ry(out.params);
  out.key = check_key_inequality(out.params);
  if (out.minimal_normal_count == 1 && y == 1 && z == 1 && r == out.params.m) out.matched_case = "iii";
  else if (out.minimal_normal_count == 1 && y == 2 && z == 1 && r == 2 * out.params.m) out.matched_case = "ii";
  else out.matched_case = "none";
  out.dimension_bound = dimension_bound_check(g.order(), n, 2);
  return out;
}

}  // namespace holoscope
