#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "holoscope/admissibility.hpp"
#include "holoscope/automorphism.hpp"
#include "holoscope/classification.hpp"
#include "holoscope/construction.hpp"
#include "holoscope/holomorph.hpp"
#include "holoscope/io.hpp"
#include "holoscope/report.hpp"
#include "holoscope/small_groups.hpp"

namespace holoscope {

using Json = nlohmann::ordered_json;

struct CommandResult {
  explicit CommandResult(std::string command = {}) : report(std::move(command)) {}

  VerificationReport report;
  Json data = Json::object();
  std::optional<std::string> group_spec;

  Json to_json() const {
    Json j = report.to_json();
    j["data"] = data;
    return j;
  }
};

// ---------- construct ----------

struct ConstructOptions {
  std::uint32_t r = 1;
  std::string h;
  bool scan_subspaces = true;
};

inline CommandResult cmd_construct(const ConstructOptions& o) {
  CommandResult out("construct");
  const auto spec = find_transitive_soluble(o.r, o.h.empty() && o.r == 1 ? "1" : o.h);
  auto w = build_wreath(spec, {2, o.scan_subspaces});
  out.report.append(w.checks);
  out.data["r"] = w.r;
  out.data["h"] = w.h_name;
  out.data["h_order"] = w.h_order;
  out.data["order"] = w.order;
  out.data["orbit_size"] = w.orbit_size;
  out.data["stabilizer_order"] = w.stabilizer_order;
  out.data["stabilizer_soluble"] = w.stabilizer_soluble;
  out.data["irreducible"] = w.irreducible;
  out.data["translations_trivial"] = w.translations_trivial;
  out.data["materialized"] = w.group.has_value();
  if (w.v1) {
    const auto& q = *w.v1;
    Json v;
    v["m_star_size"] = q.m_star_size;
    v["admissible"] = q.admissible;
    v["invariant"] = q.invariant;
    v["m_star_order"] = q.m_star_order ? Json(*q.m_star_order) : Json(nullptr);
    v["m_star_soluble"] = q.m_star_soluble ? Json(*q.m_star_soluble) : Json(nullptr);
    v["setwise_stabilizer_order"] = q.setwise_stabilizer_order;
    v["setwise_stabilizer_soluble"] = q.setwise_stabilizer_soluble;
    v["subspaces_scanned"] = q.subspaces_scanned;
    v["stabilizer_invariant_subspaces"] = q.stabilizer_invariant_subspaces;
    v["proper_admissible_subspaces"] = q.proper_admissible;
    out.data["v1"] = v;
    const std::uint64_t sw = 168 * ipow(21, w.r - 1) * (w.h_order / w.r);
    out.report.expect("setwise stabilizer of V1 order", "irred-constr", sw,
                      static_cast<std::uint64_t>(q.setwise_stabilizer_order));
    out.report.expect("setwise stabilizer of V1 soluble", "irred-constr", false, q.setwise_stabilizer_soluble);
  }
  GroupSpec gs{GroupKind::affine, 2, 3 * w.r, w.generators, {}, {}};
  out.group_spec = group_spec_text(gs);
  return out;
}

// ---------- enumerate-168 ----------

inline CommandResult cmd_enumerate_168() {
  CommandResult out("enumerate-168");
  auto& rep = out.report;
  const auto& sol = canonical_psi();
  rep.expect("psi assignments", "def-psi", std::size_t{1}, sol.solutions.size());
  rep.expect("c column", "def-psi", std::string("(0,1,1)"), sol.c.str());
  rep.expect("d column", "def-psi", std::string("(1,0,0)"), sol.d.str());
  for (const auto& [name, ok] : sol.hatted_relations) rep.expect("hatted " + name, relation_ref(name), true, ok);
  rep.expect("psi cocycle", "def-psi", true, sol.psi.cocycle_holds());

  const auto e = enumerate_transitive_T_subgroups();
  rep.expect("transitive GL3(2) subgroups", "unique-168", std::size_t{8}, e.groups.size());
  rep.expect("Sylow 7-subgroups of GL3(2)", "unique-168", std::size_t{8}, e.sylow7_count);
  rep.expect("psi unique for every index-8 subgroup", "unique-168", true, e.each_psi_unique);
  rep.expect("single Aut(V)-conjugacy orbit", "unique-168", true, e.single_conjugacy_orbit);
  rep.expect("complement oracle agrees", "unique-168", true, e.oracle_agrees);

  const auto& g = canonical_group();
  const auto aut = automorphism_group(g, 500);
  const auto act = ActionTable::of(g, 8);
  const auto gprime = stabilizer(g, act, 0).group();
  const auto rel = relative_automorphism_group(g, gprime, 500);
  const std::uint64_t aut_v = gl_order(2, 3);
  rep.expect("|Aut(G)|", "HGS168", std::size_t{336}, aut.order());
  rep.expect("|Aut(G,G')|", "HGS168", std::size_t{42}, rel.order());
  rep.expect("|Aut(V)|", "HGS168", std::uint64_t{168}, aut_v);
  const std::uint64_t hgs = hopf_galois_count(e.groups.size(), rel.order(), aut_v);
  rep.expect("Hopf-Galois structures", "HGS168", std::uint64_t{2}, hgs);

  out.data["c"] = sol.c.str();
  out.data["d"] = sol.d.str();
  out.data["count"] = e.groups.size();
  out.data["normalizer_orders"] = e.normalizer_orders;
  out.data["complements"] = e.complements;
  out.data["transitive_complements"] = e.transitive_complements;
  out.data["aut_g"] = aut.order();
  out.data["aut_g_gprime"] = rel.order();
  out.data["aut_v"] = aut_v;
  out.data["hopf_galois"] = hgs;
  return out;
}

// ---------- conjecture-scan ----------

struct ScanOptions {
  std::size_t max_order = 8;
  bool extended = false;  // also C2^4
  std::size_t jobs = 1;
  std::size_t oracle_bound = 48;
};

struct ScanRow {
  std::string name;
  std::size_t order = 0;
  std::uint64_t holomorph_order = 0;
  std::size_t regular = 0;
  std::size_t insoluble = 0;
  bool braces_ok = true;
  std::optional<std::size_t> oracle;
  std::vector<std::string> brace_types;
};

inline std::optional<std::pair<std::uint32_t, std::uint32_t>> elementary_abelian_shape(const std::string& name) {
  static const std::vector<std::pair<std::string, std::pair<std::uint32_t, std::uint32_t>>> table = {
      {"C2", {2, 1}},   {"C3", {3, 1}},   {"C5", {5, 1}},   {"C7", {7, 1}},     {"C11", {11, 1}}, {"C13", {13, 1}},
      {"C2^2", {2, 2}}, {"C2^3", {2, 3}}, {"C3^2", {3, 2}}, {"C2^4", {2, 4}}};
  for (const auto& [n, s] : table)
    if (n == name) return s;
  return std::nullopt;
}

template <GroupElement E>
  requires PointAction<E>
ScanRow scan_one(const std::string& name, const HolomorphContext<E>& ctx, const ScanOptions& o) {
  ScanRow row;
  row.name = name;
  row.order = ctx.point_count();
  row.holomorph_order = ctx.ambient_order;
  RegularSearchOptions ro;
  ro.ambient_bound = std::max<std::size_t>(kDefaultSearchBound, ctx.ambient_order);
  ro.jobs = o.jobs;
  const auto regs = enumerate_regular_subgroups(ctx, ro);
  row.regular = regs.size();
  for (const auto& g : regs) {
    if (!is_soluble(g)) ++row.insoluble;
    try {
      const auto br = skew_brace_from_regular(g, ctx);
      auto t = identify_small_group(br.circ);
      row.brace_types.push_back(t ? *t : "?");
    } catch (const InvariantViolation&) {
      row.braces_ok = false;
    }
  }
  if (ctx.ambient_order <= o.oracle_bound) {
    const auto hol = ctx.ambient();
    std::size_t n = 0;
    for (const auto& h : all_subgroups(hol, o.oracle_bound))
      if (is_regular(h, ctx)) ++n;
    row.oracle = n;
  }
  return row;
}

inline CommandResult cmd_conjecture_scan(const ScanOptions& o) {
  if (o.max_order > 16) throw PreconditionError("max-order must be at most 16");
  CommandResult out("conjecture-scan");
  auto& rep = out.report;
  Json rows = Json::array();
  std::size_t total_insoluble = 0;
  for (const auto& entry : small_group_presentations()) {
    const bool extra = o.extended && entry.name == "C2^4";
    if (entry.order > o.max_order && !extra) continue;
    const auto shape = elementary_abelian_shape(entry.name);
    ScanRow row;
    if (shape && (shape->first != 2 || shape->second <= 4)) {
      if (entry.name == "C2^4" && !o.extended) continue;
      row = scan_one(entry.name, build_affine_holomorph(shape->first, shape->second), o);
    } else {
      const auto sg = realize(entry);
      const auto ctx = build_holomorph(sg.group, entry.name, 64);
      row = scan_one(entry.name, ctx, o);
    }
    total_insoluble += row.insoluble;
    rep.expect("regular subgroups of Hol(" + row.name + ") all soluble", "main-conj", std::size_t{0}, row.insoluble);
    rep.expect("skew braces of Hol(" + row.name + ") compatible", "main-conj", true, row.braces_ok);
    if (row.oracle) rep.expect("lattice oracle for Hol(" + row.name + ")", "main-conj", *row.oracle, row.regular);
    if (row.name == "C2^2") rep.expect("regular subgroups of Hol(C2^2)", "main-conj", std::size_t{4}, row.regular);
    if (row.name == "C2") rep.expect("regular subgroups of Hol(C2)", "main-conj", std::size_t{1}, row.regular);
    Json jr;
    jr["n"] = row.name;
    jr["order"] = row.order;
    jr["holomorph_order"] = row.holomorph_order;
    jr["regular_subgroups"] = row.regular;
    jr["insoluble"] = row.insoluble;
    jr["oracle"] = row.oracle ? Json(*row.oracle) : Json(nullptr);
    jr["brace_types"] = row.brace_types;
    rows.push_back(jr);
  }
  out.data["max_order"] = o.max_order;
  out.data["extended"] = o.extended;
  out.data["groups"] = rows;
  out.data["insoluble_total"] = total_insoluble;
  return out;
}

// ---------- classify ----------

inline Json elimination_json(const EliminationReport& e) {
  Json j;
  j["bound"] = e.bound;
  j["mersenne_cap"] = e.mersenne_cap;
  Json cands = Json::array();
  for (const auto& c : e.candidates)
    cands.push_back({{"candidate", c.label()}, {"shape", c.shape}, {"vp_aut", c.vp_aut},
                     {"d", c.d_t ? Json(*c.d_t) : Json(nullptr)}});
  j["candidates"] = cands;
  Json tj = Json::array();
  for (const auto& r : e.tj) {
    Json ev = Json::array();
    for (const auto& [y, lhs, rhs, holds] : r.evaluations)
      ev.push_back({{"y", y}, {"lhs", lhs.str()}, {"rhs", rhs.str()}, {"holds", holds}});
    tj.push_back({{"candidate", r.candidate}, {"d", r.d}, {"d_exact", r.d_exact}, {"vp_aut", r.vp_aut},
                  {"evaluations", ev}, {"surviving_y", r.surviving_y}});
  }
  j["tj_inequality"] = tj;
  Json surv = Json::array();
  for (const auto& [a, y] : e.tj_survivors) surv.push_back({{"a", a}, {"y", y}});
  j["tj_survivors"] = surv;
  j["b_values"] = {{"b(3,1)", b_table(3, 1).str()},
                   {"b(3,2)", b_table(3, 2).str()},
                   {"b(3,3)", b_table(3, 3).str()},
                   {"b(5,1)", b_table(5, 1).str()}};
  j["product_rows"] = e.product_rows.size();
  Json ps = Json::array();
  for (const auto& r : e.product_survivors) {
    Json f = Json::array();
    for (const auto& [a, y] : r.factors) f.push_back({{"a", a}, {"y", y}});
    ps.push_back({{"factors", f}, {"product", r.product.str()}});
  }
  j["product_survivors"] = ps;
  Json zs = Json::array();
  for (const auto& z : e.z_rows)
    zs.push_back({{"config", z.config}, {"y", z.y}, {"z", z.z}, {"lhs", z.lhs.str()}, {"rhs", z.rhs.str()},
                  {"holds", z.holds}});
  j["z_rows"] = zs;
  Json cs = Json::array();
  for (const auto& c : e.cases)
    cs.push_back({{"case", c.id}, {"minimal_normals", c.minimal_normals}, {"y", c.y}, {"z", c.z},
                  {"r", c.r_in_terms_of_m}});
  j["cases"] = cs;
  return j;
}

inline CommandResult cmd_classify(std::uint64_t bound = 2000, std::uint32_t mersenne_cap = 13) {
  CommandResult out("classify");
  auto& rep = out.report;
  const auto e = just168_elimination(bound, mersenne_cap);
  std::string surv;
  for (const auto& [a, y] : e.tj_survivors) surv += "(" + std::to_string(a) + "," + std::to_string(y) + ")";
  rep.expect("TJ-inequality survivors", "TJ-ineq", std::string("(3,1)(3,2)"), surv);
  rep.expect("b(3,1)", "p-is-2-ineq", std::string("3/5"), b_table(3, 1).str());
  rep.expect("b(3,2)", "p-is-2-ineq", std::string("9/10"), b_table(3, 2).str());
  rep.expect("b(3,3) >= 9/5", "p-is-2-ineq", true, b_table(3, 3) >= Rational(9, 5));
  rep.expect("b(a,y) >= 15/7 for a >= 5", "p-is-2-ineq", true, e.b_monotone);
  rep.expect("product survivors", "p-is-2-ineq", std::size_t{2}, e.product_survivors.size());
  std::string cases;
  for (const auto& c : e.cases) cases += c.id + ":" + c.r_in_terms_of_m + ";";
  rep.expect("cases", "just-168", std::string("i:r = m;ii:r = 2m;iii:r = m;"), cases);
  out.data = elimination_json(e);
  return out;
}

// ---------- admissibility ----------

inline CommandResult cmd_admissibility(const GroupSpec& spec, const Subspace& m) {
  if (spec.kind == GroupKind::perm) throw PreconditionError("admissibility needs an affine or linear group");
  CommandResult out("admissibility");
  const auto ctx = build_affine_holomorph(spec.p, spec.n);
  const auto g = FiniteGroup<AffineElement>::close(spec.as_affine());
  const SubgroupOfN sub(ctx, m);
  const auto rep = is_admissible(g, ctx, sub);
  out.report.expect("M-star conditions agree", "M-star", true, rep.equivalence_checked);
  out.data["m_basis"] = basis_text(m, spec.p, spec.n);
  out.data["g_order"] = g.order();
  out.data["m_order"] = rep.m_order;
  out.data["admissible"] = rep.admissible;
  out.data["invariant"] = rep.invariant;
  out.data["m_star_size"] = rep.m_star_size;
  out.data["m_star_order"] = rep.m_star ? Json(rep.m_star->order()) : Json(nullptr);
  out.data["m_star_soluble"] = rep.m_star_soluble ? Json(*rep.m_star_soluble) : Json(nullptr);
  return out;
}

// ---------- normalizer ----------

inline CommandResult cmd_normalizer(std::uint32_t r) {
  CommandResult out("normalizer");
  auto& rep = out.report;
  const auto n = normalizer_of_J_fixing_zero(r);
  std::uint64_t fact = 1;
  for (std::uint32_t k = 2; k <= r; ++k) fact *= k;
  rep.expect("order 21^r r!", "J-norm", ipow(21, r) * fact, static_cast<std::uint64_t>(n.group.order()));
  rep.expect("contains J'", "J-norm", true, n.contains_j_prime);
  rep.expect("contains P(S_r)", "J-norm", true, n.contains_block_permutations);
  rep.expect("equals J' x| S_r", "J-norm", true, n.equals_j_prime_sr);
  rep.expect("E1 + E2 + E3 = 0, all invertible", "J-norm", true, n.e_matrix_identity);
  rep.expect("GL3(2) spans M3(F2)", "J-norm", true, n.units_span_matrix_ring);
  out.data["r"] = r;
  out.data["order"] = n.group.order();
  out.data["bounding_order"] = n.bounding_order;
  return out;
}

// ---------- brace ----------

inline std::string generator_text(const AffineElement& x) {
  std::ostringstream os;
  write_raw_matrix(os, x.to_block());
  return os.str();
}

inline std::string generator_text(const Permutation& x) {
  std::string s;
  for (std::uint32_t i = 0; i < x.degree(); ++i) s += (i ? " " : "") + std::to_string(x(i));
  return s + "\n";
}

template <GroupElement E>
  requires PointAction<E>
Json brace_rows(const HolomorphContext<E>& ctx, std::size_t jobs, VerificationReport& rep) {
  RegularSearchOptions ro;
  ro.ambient_bound = std::max<std::size_t>(kDefaultSearchBound, ctx.ambient_order);
  ro.jobs = jobs;
  Json rows = Json::array();
  bool all_ok = true;
  for (const auto& g : enumerate_regular_subgroups(ctx, ro)) {
    Json r;
    r["order"] = g.order();
    r["soluble"] = is_soluble(g);
    Json gens = Json::array();
    for (const auto& s : g.generators()) gens.push_back(generator_text(s));
    r["generators"] = gens;
    try {
      const auto br = skew_brace_from_regular(g, ctx);
      auto t = identify_small_group(br.circ);
      r["brace_mult_type"] = t ? *t : "?";
      r["compatible"] = true;
    } catch (const InvariantViolation&) {
      r["brace_mult_type"] = nullptr;
      r["compatible"] = false;
      all_ok = false;
    }
    rows.push_back(r);
  }
  rep.expect("brace compatibility", "main-conj", true, all_ok);
  return rows;
}

inline CommandResult cmd_brace(const std::string& name, std::size_t jobs = 1) {
  CommandResult out("brace");
  const auto& entry = small_group_entry(name);
  out.data["n"] = name;
  if (auto shape = elementary_abelian_shape(name)) {
    out.data["braces"] = brace_rows(build_affine_holomorph(shape->first, shape->second), jobs, out.report);
  } else {
    const auto sg = realize(entry);
    out.data["braces"] = brace_rows(build_holomorph(sg.group, name, 64), jobs, out.report);
  }
  return out;
}

}  // namespace holoscope
