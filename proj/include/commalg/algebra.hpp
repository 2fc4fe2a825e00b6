#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commalg/subspace.hpp"

namespace commalg {

/// Exponent vector of a monomial in the action's generators.
using Monomial = std::vector<int>;

inline int monomialDegree(const Monomial& m) {
  int d = 0;
  for (int e : m) d += e;
  return d;
}

/// Prints a monomial over the given generator names, e.g. "a^2bc" or "1".
/// Multi-character names are joined with '*'.
inline std::string monomialToString(const Monomial& m, const std::vector<std::string>& names) {
  bool multi = false;
  for (const auto& n : names)
    if (n.size() > 1) multi = true;
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty() && multi) out += "*";
    out += names[i];
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out.empty() ? "1" : out;
}

/// A finite-dimensional space together with named, pairwise-commuting
/// endomorphism generators.
struct CommutingAction {
  FieldSpec field;
  int dimM{0};
  std::vector<std::string> names;
  std::vector<Matrix> generators;
};

/// Validates shapes and exact pairwise commutation.
inline CommutingAction buildAction(FieldSpec field, std::vector<std::string> names,
                                   std::vector<Matrix> generators) {
  if (names.size() != generators.size())
    throw Error("buildAction: name/matrix count mismatch");
  if (generators.empty()) throw Error("buildAction: no generators");
  int n = generators.front().rows();
  for (std::size_t i = 0; i < generators.size(); ++i) {
    const Matrix& g = generators[i];
    if (g.rows() != g.cols() || g.rows() != n || g.field() != field)
      throw DimensionMismatchError("buildAction: generator '" + names[i] +
                                   "' has wrong shape or field");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == names[i]) throw Error("buildAction: duplicate name '" + names[i] + "'");
  }
  for (std::size_t i = 0; i < generators.size(); ++i)
    for (std::size_t j = i + 1; j < generators.size(); ++j) {
      int col = commutatorWitnessColumn(generators[i], generators[j]);
      if (col >= 0) throw NonCommutingError(names[i], names[j], col);
    }
  return CommutingAction{field, n, std::move(names), std::move(generators)};
}

struct AlgebraRelation {
  Monomial word;                // the rejected monomial
  std::vector<Scalar> coords;   // its expansion over the accepted basis
};

/// The unital algebra generated by a commuting action: a basis of monomial
/// matrices (basis[0] = identity), one witnessing word per basis element,
/// and the expansion of every rejected monomial.
struct GeneratedAlgebra {
  CommutingAction action;
  std::vector<Matrix> basis;
  std::vector<Monomial> labels;
  std::vector<AlgebraRelation> relations;
  EchelonSolver span;  // echelon over the flattened basis matrices

  int dim() const { return static_cast<int>(basis.size()); }

  std::vector<std::string> labelStrings() const {
    std::vector<std::string> out;
    out.reserve(labels.size());
    for (const auto& w : labels) out.push_back(monomialToString(w, action.names));
    return out;
  }

  /// Evaluates a monomial word as a product of the action's generators.
  Matrix evaluate(const Monomial& word) const {
    Matrix m = Matrix::identity(action.field, action.dimM);
    for (std::size_t g = 0; g < word.size(); ++g)
      for (int e = 0; e < word[g]; ++e) m = m * action.generators[g];
    return m;
  }

  /// Coordinates of an endomorphism over the basis, if it lies in the algebra.
  std::optional<std::vector<Scalar>> coordinatesOf(const Matrix& m) const {
    return span.coordinates(m.flatten());
  }

  /// Formats a relation, putting a pure generator power first when one side
  /// is a single basis monomial ("a^2 = bc" rather than "bc = a^2").
  std::string relationToString(const AlgebraRelation& rel) const {
    const auto& names = action.names;
    std::string lhs = monomialToString(rel.word, names);
    int support = 0;
    std::size_t only = 0;
    for (std::size_t i = 0; i < rel.coords.size(); ++i)
      if (!rel.coords[i].isZero()) {
        ++support;
        only = i;
      }
    if (support == 0) return lhs + " = 0";
    if (support == 1 && rel.coords[only].isOne()) {
      std::string rhs = monomialToString(labels[only], names);
      auto isPurePower = [](const Monomial& w) {
        int nz = 0;
        for (int e : w)
          if (e > 0) ++nz;
        return nz == 1;
      };
      bool lhsPower = isPurePower(rel.word);
      bool rhsPower = isPurePower(labels[only]);
      if (rhsPower && !lhsPower) return rhs + " = " + lhs;
      return lhs + " = " + rhs;
    }
    std::string rhs;
    for (std::size_t i = 0; i < rel.coords.size(); ++i) {
      if (rel.coords[i].isZero()) continue;
      if (!rhs.empty()) rhs += " + ";
      if (!rel.coords[i].isOne()) rhs += rel.coords[i].str() + "*";
      rhs += monomialToString(labels[i], names);
    }
    return lhs + " = " + rhs;
  }

  std::vector<std::string> relationStrings() const {
    std::vector<std::string> out;
    out.reserve(relations.size());
    for (const auto& r : relations) out.push_back(relationToString(r));
    return out;
  }
};

/// Breadth-first monomial closure. Monomials are visited in degree-then-lex
/// order; each sorted monomial is produced once by extending its parent with
/// a generator of index >= the largest index already present, which is
/// complete because the parent of any independent monomial is independent
/// under a multiplicative monomial order.
inline GeneratedAlgebra generateAlgebra(const CommutingAction& action) {
  const int n = action.dimM;
  const int G = static_cast<int>(action.generators.size());
  GeneratedAlgebra out{action, {}, {}, {}, EchelonSolver(action.field, n * n)};

  struct Node {
    int basisIndex;
    int maxGen;
  };

  Matrix id = Matrix::identity(action.field, n);
  out.span.insert(id.flatten());
  out.basis.push_back(id);
  out.labels.push_back(Monomial(G, 0));

  std::vector<Node> level{{0, 0}};
  while (!level.empty()) {
    std::vector<Node> next;
    for (const Node& node : level) {
      for (int g = node.maxGen; g < G; ++g) {
        Matrix cand = action.generators[g] * out.basis[node.basisIndex];
        Monomial word = out.labels[node.basisIndex];
        word[g] += 1;
        auto res = out.span.insert(cand.flatten());
        if (res.independent) {
          out.basis.push_back(std::move(cand));
          out.labels.push_back(word);
          next.push_back({static_cast<int>(out.basis.size()) - 1, g});
        } else {
          out.relations.push_back({std::move(word), std::move(res.coords)});
        }
      }
    }
    level = std::move(next);
  }
  return out;
}

/// True iff f^nGens lies in the span of {1, f, ..., f^{nGens-1}}.
inline bool cayleyHamiltonCheck(const Matrix& f, int nGens) {
  if (nGens < 1) throw Error("cayleyHamiltonCheck: nGens must be >= 1");
  EchelonSolver span(f.field(), f.rows() * f.cols());
  Matrix pow = Matrix::identity(f.field(), f.rows());
  for (int i = 0; i < nGens; ++i) {
    span.insert(pow.flatten());
    pow = pow * f;
  }
  return span.contains(pow.flatten());
}

struct AnnihilatorReport {
  int annihilatorDim{0};
  bool faithful{true};
  std::optional<std::vector<Scalar>> witness;  // nonzero element of A killing M
  Subspace annihilator;                        // of the queried subspace, in basis coords
};

/// Computes { x in A : x * (subspace) = 0 } in basis coordinates, plus
/// faithfulness of the full module.
inline AnnihilatorReport annihilator(const GeneratedAlgebra& alg, const Subspace& sub) {
  const int dimA = alg.dim();
  const int n = alg.action.dimM;
  if (sub.ambientDim() != n)
    throw DimensionMismatchError("annihilator: subspace has wrong ambient dimension");

  auto annOf = [&](const Subspace& s) {
    Matrix constraints(alg.action.field, s.dim() * n, dimA);
    for (int j = 0; j < s.dim(); ++j) {
      auto v = s.basisVector(j);
      for (int i = 0; i < dimA; ++i) {
        auto img = alg.basis[i].apply(v);
        for (int r = 0; r < n; ++r) constraints.at(j * n + r, i) = img[r];
      }
    }
    return kernelOf(constraints);
  };

  AnnihilatorReport rep;
  rep.annihilator = annOf(sub);
  rep.annihilatorDim = rep.annihilator.dim();
  Subspace annFull = annOf(Subspace::full(alg.action.field, n));
  rep.faithful = annFull.isZero();
  if (!rep.faithful) rep.witness = annFull.basisVector(0);
  return rep;
}

// ---------------------------------------------------------------------------
// Fast closure dimension for diagram actions over F_2.
//
// Diagram generators are partial maps on the basis, every monomial in them is
// again a partial map, and for dimensions <= 8 a flattened endomorphism fits
// one 64-bit word, so the whole closure runs on XOR echelon rows.
// ---------------------------------------------------------------------------

namespace gf2 {

constexpr int kMaxDim = 8;

/// target[v] in [-1, m)
using PartialMap = std::array<std::int8_t, kMaxDim>;

inline PartialMap composeMaps(const PartialMap& outer, const PartialMap& inner, int m) {
  PartialMap r{};
  for (int v = 0; v < m; ++v) {
    std::int8_t t = inner[v];
    r[v] = t < 0 ? std::int8_t(-1) : outer[t];
  }
  for (int v = m; v < kMaxDim; ++v) r[v] = -1;
  return r;
}

inline std::uint64_t flattenMap(const PartialMap& f, int m) {
  std::uint64_t bits = 0;
  for (int v = 0; v < m; ++v)
    if (f[v] >= 0) bits |= std::uint64_t{1} << (f[v] * m + v);
  return bits;
}

/// XOR echelon accumulator; returns true when the vector was independent.
struct BitEchelon {
  std::array<std::uint64_t, 64> byPivot{};
  int dim{0};

  bool insert(std::uint64_t v) {
    while (v) {
      int b = 63 - __builtin_clzll(v);
      if (byPivot[b])
        v ^= byPivot[b];
      else {
        byPivot[b] = v;
        ++dim;
        return true;
      }
    }
    return false;
  }
};

/// Dimension of the unital algebra generated by the partial maps, over F_2.
inline int diagramAlgebraDimension(int m, const std::vector<PartialMap>& gens) {
  const int G = static_cast<int>(gens.size());
  BitEchelon ech;
  PartialMap id{};
  for (int v = 0; v < kMaxDim; ++v) id[v] = v < m ? std::int8_t(v) : std::int8_t(-1);
  ech.insert(flattenMap(id, m));

  struct Node {
    PartialMap map;
    int maxGen;
  };
  std::vector<Node> level{{id, 0}};
  while (!level.empty()) {
    std::vector<Node> next;
    for (const Node& node : level) {
      for (int g = node.maxGen; g < G; ++g) {
        PartialMap cand = composeMaps(gens[g], node.map, m);
        if (ech.insert(flattenMap(cand, m))) next.push_back({cand, g});
      }
    }
    level = std::move(next);
  }
  return ech.dim;
}

}  // namespace gf2

}  // namespace commalg
