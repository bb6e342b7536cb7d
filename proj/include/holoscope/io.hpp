#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "holoscope/affine.hpp"
#include "holoscope/errors.hpp"
#include "holoscope/gf_linalg.hpp"
#include "holoscope/permutation.hpp"

namespace holoscope {

// Group spec file.
//   header "kind p n", kind in {affine, linear, perm}
//   affine: each generator is an (n+1)x(n+1) block matrix in matrix text format
//   linear: each generator is an n x n matrix in matrix text format
//   perm:   each generator is one line of n images (p is ignored, write 0)
enum class GroupKind { affine, linear, perm };

struct GroupSpec {
  GroupKind kind = GroupKind::affine;
  std::uint32_t p = 2;
  std::uint32_t n = 1;
  std::vector<AffineElement> affine;
  std::vector<GFMatrix> linear;
  std::vector<Permutation> perm;

  std::size_t generator_count() const {
    switch (kind) {
      case GroupKind::affine: return affine.size();
      case GroupKind::linear: return linear.size();
      case GroupKind::perm: return perm.size();
    }
    return 0;
  }

  // Linear generators read as affine maps fixing 0.
  std::vector<AffineElement> as_affine() const {
    if (kind == GroupKind::affine) return affine;
    if (kind == GroupKind::linear) {
      std::vector<AffineElement> out;
      for (const auto& m : linear) out.push_back(AffineElement::linear(m));
      return out;
    }
    throw PreconditionError("a permutation group has no affine form");
  }
};

inline std::string to_string(GroupKind k) {
  switch (k) {
    case GroupKind::affine: return "affine";
    case GroupKind::linear: return "linear";
    case GroupKind::perm: return "perm";
  }
  return "?";
}

inline GroupKind group_kind_from(const std::string& s) {
  if (s == "affine") return GroupKind::affine;
  if (s == "linear") return GroupKind::linear;
  if (s == "perm") return GroupKind::perm;
  throw ParseError("unknown group kind '" + s + "'");
}

inline void write_group_spec(std::ostream& os, const GroupSpec& g) {
  os << to_string(g.kind) << ' ' << (g.kind == GroupKind::perm ? 0 : g.p) << ' ' << g.n << '\n';
  switch (g.kind) {
    case GroupKind::affine:
      for (const auto& x : g.affine) write_raw_matrix(os, x.to_block());
      break;
    case GroupKind::linear:
      for (const auto& x : g.linear) write_matrix(os, x);
      break;
    case GroupKind::perm:
      for (const auto& x : g.perm) {
        for (std::uint32_t i = 0; i < x.degree(); ++i) os << (i ? " " : "") << x(i);
        os << '\n';
      }
      break;
  }
}

inline std::string group_spec_text(const GroupSpec& g) {
  std::ostringstream os;
  write_group_spec(os, g);
  return os.str();
}

namespace detail {

inline bool only_blank_left(std::istream& is) {
  std::string rest;
  while (std::getline(is, rest))
    if (rest.find_first_not_of(" \t\r") != std::string::npos) {
      is.clear();
      return false;
    }
  return true;
}

}  // namespace detail

inline GroupSpec read_group_spec(std::istream& is) {
  std::string line;
  while (std::getline(is, line) && line.find_first_not_of(" \t\r") == std::string::npos) {
  }
  std::istringstream header(line);
  std::string kind;
  long long p = -1, n = -1;
  if (!(header >> kind >> p >> n) || n < 1) throw ParseError("bad group spec header: '" + line + "'");
  GroupSpec g;
  g.kind = group_kind_from(kind);
  g.n = static_cast<std::uint32_t>(n);
  if (g.kind != GroupKind::perm) {
    detail::check_modulus(static_cast<std::uint32_t>(p));
    g.p = static_cast<std::uint32_t>(p);
  } else {
    g.p = 0;
  }
  // Collect the remaining lines, then parse one generator at a time.
  std::string body, l;
  while (std::getline(is, l)) body += l + '\n';
  std::istringstream rest(body);
  while (true) {
    const auto pos = rest.tellg();
    std::string probe;
    bool any = false;
    while (std::getline(rest, probe))
      if (probe.find_first_not_of(" \t\r") != std::string::npos) {
        any = true;
        break;
      }
    if (!any) break;
    if (g.kind == GroupKind::perm) {
      std::istringstream ls(probe);
      std::vector<std::uint32_t> img;
      long long x;
      while (ls >> x) {
        if (x < 0 || x >= n) throw ParseError("permutation image out of range: " + std::to_string(x));
        img.push_back(static_cast<std::uint32_t>(x));
      }
      if (!ls.eof()) throw ParseError("non-numeric permutation entry in '" + probe + "'");
      if (img.size() != g.n) throw ParseError("permutation line has the wrong length");
      try {
        g.perm.emplace_back(img);
      } catch (const PreconditionError& e) {
        throw ParseError(std::string("invalid permutation: ") + e.what());
      }
      continue;
    }
    rest.clear();
    rest.seekg(pos);
    const RawMatrix raw = read_raw_matrix(rest);
    if (raw.p != g.p) throw ParseError("generator modulus differs from the header");
    if (g.kind == GroupKind::affine) {
      if (raw.rows != g.n + 1) throw ParseError("affine generator must be (n+1)x(n+1)");
      g.affine.push_back(AffineElement::from_block(raw));
    } else {
      if (raw.rows != g.n || raw.cols != g.n) throw ParseError("linear generator must be n x n");
      const GFMatrix m = from_raw(raw);
      if (!m.is_invertible()) throw ParseError("linear generator is singular");
      g.linear.push_back(m);
    }
  }
  if (g.generator_count() == 0) throw ParseError("group spec has no generators");
  return g;
}

inline GroupSpec group_spec_from_text(const std::string& s) {
  std::istringstream is(s);
  return read_group_spec(is);
}

inline GroupSpec read_group_spec_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open group file '" + path + "'");
  return read_group_spec(f);
}

// Basis file: a k x n matrix in matrix text format whose rows span the subspace; k = 0 is the zero subspace.
inline Subspace read_basis(std::istream& is, std::uint32_t expected_p, std::uint32_t expected_n) {
  const RawMatrix raw = read_raw_matrix(is);
  if (raw.p != expected_p) throw ParseError("basis modulus differs from the group");
  if (raw.cols != expected_n) throw ParseError("basis vectors have the wrong length");
  std::vector<GFVector> vs;
  for (const auto& row : raw.entries) vs.emplace_back(raw.p, std::vector<long long>(row.begin(), row.end()));
  if (!detail::only_blank_left(is)) throw ParseError("trailing content after the basis matrix");
  return Subspace::span(raw.p, raw.cols, vs);
}

inline Subspace read_basis_file(const std::string& path, std::uint32_t p, std::uint32_t n) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot open basis file '" + path + "'");
  return read_basis(f, p, n);
}

inline void write_basis(std::ostream& os, const Subspace& s, std::uint32_t p, std::uint32_t n) {
  RawMatrix raw{p, static_cast<std::uint32_t>(s.dim()), n, {}};
  for (const auto& b : s.basis()) {
    std::vector<std::uint32_t> row(n);
    for (std::uint32_t i = 0; i < n; ++i) row[i] = b[i];
    raw.entries.push_back(row);
  }
  write_raw_matrix(os, raw);
}

inline std::string basis_text(const Subspace& s, std::uint32_t p, std::uint32_t n) {
  std::ostringstream os;
  write_basis(os, s, p, n);
  return os.str();
}

}  // namespace holoscope
