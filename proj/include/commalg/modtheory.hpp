#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "commalg/local_algebra.hpp"

namespace commalg {

/// A finite-dimensional module over a LocalAlgebra, given by one action
/// matrix per algebra basis element (action[0] = identity).
struct ModuleOverLocal {
  std::shared_ptr<const LocalAlgebra> algebra;
  int dimM{0};
  std::vector<Matrix> action;

  const FieldSpec& field() const { return algebra->field; }
};

inline void validateModule(const ModuleOverLocal& m, bool checkMultiplicative = true) {
  const auto& a = *m.algebra;
  if (static_cast<int>(m.action.size()) != a.dim)
    throw Error("module: one action matrix per algebra basis element required");
  if (m.action[0] != Matrix::identity(a.field, m.dimM))
    throw Error("module: 1 must act as the identity");
  for (const auto& mat : m.action)
    if (mat.rows() != m.dimM || mat.cols() != m.dimM || mat.field() != a.field)
      throw DimensionMismatchError("module: action matrix shape mismatch");
  if (checkMultiplicative) {
    for (int i = 1; i < a.dim; ++i)
      for (int j = i; j < a.dim; ++j) {
        Matrix lhs = m.action[i] * m.action[j];
        Matrix rhs(a.field, m.dimM, m.dimM);
        for (int k = 0; k < a.dim; ++k) {
          Scalar c = a.structureConstant(i, j, k);
          if (!c.isZero()) rhs = rhs + m.action[k].scaled(c);
        }
        if (lhs != rhs) throw Error("module: action does not respect the product");
      }
  }
}

inline ModuleOverLocal regularModule(std::shared_ptr<const LocalAlgebra> a) {
  return ModuleOverLocal{a, a->dim, a->mult};
}

/// The action of an algebra element (by coordinates) as a single matrix.
inline Matrix actionOfElement(const ModuleOverLocal& m, const std::vector<Scalar>& alpha) {
  Matrix out(m.field(), m.dimM, m.dimM);
  for (int i = 0; i < m.algebra->dim; ++i)
    if (!alpha[i].isZero()) out = out + m.action[i].scaled(alpha[i]);
  return out;
}

/// m * S: the subspace spanned by images of S under the maximal ideal.
inline Subspace radicalTimes(const ModuleOverLocal& m, const Subspace& s) {
  std::vector<std::vector<Scalar>> vecs;
  for (int i = 1; i < m.algebra->dim; ++i)
    for (int r = 0; r < s.dim(); ++r) vecs.push_back(m.action[i].apply(s.basisVector(r)));
  return Subspace::spanOfVectors(m.field(), vecs, m.dimM);
}

inline Subspace fullSpace(const ModuleOverLocal& m) {
  return Subspace::full(m.field(), m.dimM);
}

/// socle(M) = { v : m v = 0 }, the intersection of the kernels of the
/// radical basis actions.
inline Subspace socle(const ModuleOverLocal& m) {
  int rows = (m.algebra->dim - 1) * m.dimM;
  if (rows == 0) return fullSpace(m);  // algebra = k
  Matrix stacked(m.field(), rows, m.dimM);
  for (int i = 1; i < m.algebra->dim; ++i)
    for (int r = 0; r < m.dimM; ++r)
      for (int c = 0; c < m.dimM; ++c)
        stacked.at((i - 1) * m.dimM + r, c) = m.action[i].at(r, c);
  return kernelOf(stacked);
}

inline int socleLength(const ModuleOverLocal& m) { return socle(m).dim(); }

/// Nakayama generator count: dim M/mM.
inline int minGenerators(const ModuleOverLocal& m) {
  return m.dimM - radicalTimes(m, fullSpace(m)).dim();
}

inline bool isCyclic(const ModuleOverLocal& m) { return minGenerators(m) == 1; }
inline bool isCocyclic(const ModuleOverLocal& m) { return socleLength(m) == 1; }

inline ModuleOverLocal dualModule(const ModuleOverLocal& m) {
  ModuleOverLocal d{m.algebra, m.dimM, {}};
  d.action.reserve(m.action.size());
  for (const auto& a : m.action) d.action.push_back(a.transpose());
  return d;
}

/// Dimensions of M, mM, m^2 M, ... down to zero.
inline std::vector<int> radicalPowerDims(const ModuleOverLocal& m) {
  std::vector<int> dims;
  Subspace s = fullSpace(m);
  dims.push_back(s.dim());
  while (s.dim() > 0) {
    s = radicalTimes(m, s);
    dims.push_back(s.dim());
  }
  return dims;
}

/// Smallest submodule containing the given vectors.
inline Subspace submoduleClosure(const ModuleOverLocal& m,
                                 const std::vector<std::vector<Scalar>>& seeds) {
  EchelonSolver ech(m.field(), m.dimM);
  std::vector<std::vector<Scalar>> work;
  for (const auto& v : seeds)
    if (ech.insert(v).independent) work.push_back(v);
  while (!work.empty()) {
    std::vector<std::vector<Scalar>> next;
    for (const auto& v : work)
      for (int i = 1; i < m.algebra->dim; ++i) {
        auto img = m.action[i].apply(v);
        if (ech.insert(img).independent) next.push_back(std::move(img));
      }
    work = std::move(next);
  }
  return ech.toSubspace();
}

inline bool isSubmodule(const ModuleOverLocal& m, const Subspace& s) {
  for (int i = 1; i < m.algebra->dim; ++i)
    for (int r = 0; r < s.dim(); ++r)
      if (!s.contains(m.action[i].apply(s.basisVector(r)))) return false;
  return true;
}

/// Coordinates of v over the rows of s (requires v in the span).
inline std::vector<Scalar> coordinatesOver(const Subspace& s, const std::vector<Scalar>& v) {
  auto sol = solveLinear(s.basis().transpose(), v);
  if (!sol) throw Error("vector is not in the given span");
  return *sol;
}

/// The action restricted to an invariant subspace, in the subspace's
/// echelon coordinates.
inline ModuleOverLocal submoduleRestriction(const ModuleOverLocal& m, const Subspace& s) {
  ModuleOverLocal out{m.algebra, s.dim(), {}};
  for (int i = 0; i < m.algebra->dim; ++i) {
    Matrix r(m.field(), s.dim(), s.dim());
    for (int j = 0; j < s.dim(); ++j) {
      auto img = m.action[i].apply(s.basisVector(j));
      if (!s.contains(img)) throw Error("submoduleRestriction: subspace is not invariant");
      auto coords = coordinatesOver(s, img);
      for (int k = 0; k < s.dim(); ++k) r.at(k, j) = coords[k];
    }
    out.action.push_back(std::move(r));
  }
  return out;
}

/// M/W with canonical coset coordinates.
inline std::pair<ModuleOverLocal, QuotientSpace> quotientModuleOf(const ModuleOverLocal& m,
                                                                  const Subspace& w) {
  if (!isSubmodule(m, w)) throw Error("quotientModuleOf: not a submodule");
  QuotientSpace q(w);
  ModuleOverLocal out{m.algebra, q.dim(), {}};
  for (const auto& a : m.action) out.action.push_back(q.induced(a));
  return {std::move(out), std::move(q)};
}

/// { alpha in A : alpha * S = 0 } in algebra coordinates.
inline Subspace annihilatorInAlgebra(const ModuleOverLocal& m, const Subspace& s) {
  const int dimA = m.algebra->dim;
  Matrix constraints(m.field(), s.dim() * m.dimM, dimA);
  for (int j = 0; j < s.dim(); ++j) {
    auto v = s.basisVector(j);
    for (int i = 0; i < dimA; ++i) {
      auto img = m.action[i].apply(v);
      for (int r = 0; r < m.dimM; ++r) constraints.at(j * m.dimM + r, i) = img[r];
    }
  }
  return kernelOf(constraints);
}

inline bool isFaithful(const ModuleOverLocal& m) {
  return annihilatorInAlgebra(m, fullSpace(m)).isZero();
}

// ---------------------------------------------------------------------------
// Gluing A/I1 and A/I2 along isomorphic submodules J1/I1 = J2/I2.
// ---------------------------------------------------------------------------

struct GlueSpec {
  Subspace i1, i2;  // ideals with zero intersection, in algebra coordinates
  Subspace j1, j2;  // ideals with I_t contained in J_t
  Matrix iso;       // J1/I1 -> J2/I2 in the canonical echelon coset bases
};

struct GlueLengths {
  int ltA{0};
  int ltAmodI1{0};
  int ltAmodI2{0};
  int ltJ1modI1{0};
  int ltM{0};
};

struct GlueResult {
  ModuleOverLocal module;  // the glued module over A
  GlueLengths lengths;
  bool faithful{false};
  bool inequalityHolds{false};  // ltM < ltA, i.e. M witnesses failure of the bound
};

inline bool isIdeal(const LocalAlgebra& a, const Subspace& s) {
  for (int i = 1; i < a.dim; ++i)
    for (int r = 0; r < s.dim(); ++r)
      if (!s.contains(a.mult[i].apply(s.basisVector(r)))) return false;
  return true;
}

/// Canonical echelon basis of the image of J in A/I (rows in quotient coords).
inline Subspace cosetImage(const QuotientSpace& q, const Subspace& j) {
  std::vector<std::vector<Scalar>> vecs;
  for (int r = 0; r < j.dim(); ++r) vecs.push_back(q.project(j.basisVector(r)));
  return Subspace::spanOfVectors(q.modulo().field(), vecs, q.dim());
}

inline GlueResult glue(std::shared_ptr<const LocalAlgebra> a, const GlueSpec& spec) {
  const auto& A = *a;
  auto checkIdeal = [&](const Subspace& s, const char* name) {
    if (s.ambientDim() != A.dim)
      throw GlueError(GlueError::Kind::BadSpec, std::string(name) + ": wrong ambient");
    if (!isIdeal(A, s))
      throw GlueError(GlueError::Kind::BadSpec, std::string(name) + ": not an ideal");
  };
  checkIdeal(spec.i1, "I1");
  checkIdeal(spec.i2, "I2");
  checkIdeal(spec.j1, "J1");
  checkIdeal(spec.j2, "J2");
  if (!spec.j1.containsSubspace(spec.i1) || !spec.j2.containsSubspace(spec.i2))
    throw GlueError(GlueError::Kind::BadSpec, "I_t must be contained in J_t");
  if (!subspaceIntersection(spec.i1, spec.i2).isZero())
    throw GlueError(GlueError::Kind::IdealsIntersect, "I1 and I2 intersect nontrivially");

  QuotientSpace q1(spec.i1), q2(spec.i2);
  const int n1 = q1.dim(), n2 = q2.dim();
  std::vector<Matrix> act1, act2;
  for (const auto& l : A.mult) {
    act1.push_back(q1.induced(l));
    act2.push_back(q2.induced(l));
  }

  Subspace u1 = cosetImage(q1, spec.j1);
  Subspace u2 = cosetImage(q2, spec.j2);
  const int r = u1.dim();
  if (u2.dim() != r || spec.iso.rows() != r || spec.iso.cols() != r)
    throw GlueError(GlueError::Kind::NotIsomorphic, "coset dimensions disagree with iso");
  if (r > 0 && rankOf(spec.iso) != r)
    throw GlueError(GlueError::Kind::NotIsomorphic, "iso is singular");

  // phi maps u1-coordinates c to the vector u2^T (iso c) in A/I2.
  auto phi = [&](const std::vector<Scalar>& c) {
    std::vector<Scalar> img(n2, Scalar::zero(A.field));
    for (int t = 0; t < r; ++t) {
      Scalar f(Scalar::zero(A.field));
      for (int s = 0; s < r; ++s) f += spec.iso.at(t, s) * c[s];
      if (f.isZero()) continue;
      for (int cix = 0; cix < n2; ++cix) img[cix] += f * u2.basis().at(t, cix);
    }
    return img;
  };

  // Equivariance of iso on the coset bases.
  for (int i = 0; i < A.dim; ++i)
    for (int t = 0; t < r; ++t) {
      auto x = u1.basisVector(t);
      auto gx = act1[i].apply(x);
      if (!u1.contains(gx))
        throw GlueError(GlueError::Kind::NotIsomorphic, "J1/I1 is not invariant");
      auto cgx = coordinatesOver(u1, gx);
      auto lhs = phi(cgx);
      std::vector<Scalar> et(r, Scalar::zero(A.field));
      et[t] = Scalar::one(A.field);
      auto rhs = act2[i].apply(phi(et));
      if (lhs != rhs)
        throw GlueError(GlueError::Kind::NotIsomorphic, "iso is not equivariant");
    }

  // D = A/I1 (+) A/I2 with block-diagonal action; W = graph of -iso.
  std::vector<Matrix> actD;
  for (int i = 0; i < A.dim; ++i) {
    Matrix d(A.field, n1 + n2, n1 + n2);
    for (int rr = 0; rr < n1; ++rr)
      for (int cc = 0; cc < n1; ++cc) d.at(rr, cc) = act1[i].at(rr, cc);
    for (int rr = 0; rr < n2; ++rr)
      for (int cc = 0; cc < n2; ++cc) d.at(n1 + rr, n1 + cc) = act2[i].at(rr, cc);
    actD.push_back(std::move(d));
  }
  Matrix wRows(A.field, r, n1 + n2);
  for (int t = 0; t < r; ++t) {
    std::vector<Scalar> et(r, Scalar::zero(A.field));
    et[t] = Scalar::one(A.field);
    auto im = phi(et);
    for (int c = 0; c < n1; ++c) wRows.at(t, c) = u1.basis().at(t, c);
    for (int c = 0; c < n2; ++c) wRows.at(t, n1 + c) = -im[c];
  }
  Subspace w = Subspace::spanOfRows(wRows);
  if (w.dim() != r) throw GlueError(GlueError::Kind::NotIsomorphic, "degenerate glue graph");

  ModuleOverLocal big{a, n1 + n2, actD};
  auto [glued, q] = quotientModuleOf(big, w);

  GlueResult out{std::move(glued), {}, false, false};
  out.lengths.ltA = A.dim;
  out.lengths.ltAmodI1 = n1;
  out.lengths.ltAmodI2 = n2;
  out.lengths.ltJ1modI1 = r;
  out.lengths.ltM = out.module.dimM;
  out.faithful = isFaithful(out.module);
  out.inequalityHolds = out.lengths.ltM < out.lengths.ltA;
  return out;
}

/// Builds the GlueSpec that identifies the cyclic submodules generated by
/// v1 mod I1 and v2 mod I2, mapping b v1 to b v2. Returns nullopt when the
/// two cyclic modules are not isomorphic (distinct annihilators).
inline std::optional<GlueSpec> cyclicIdentificationSpec(
    std::shared_ptr<const LocalAlgebra> a, const Subspace& i1, const Subspace& i2,
    const std::vector<Scalar>& v1, const std::vector<Scalar>& v2) {
  const auto& A = *a;
  QuotientSpace q1(i1), q2(i2);

  auto orbitMatrix = [&](const QuotientSpace& q, const std::vector<Scalar>& v) {
    // Columns: images of the algebra basis acting on v-bar.
    Matrix m(A.field, q.dim(), A.dim);
    for (int i = 0; i < A.dim; ++i) {
      auto img = q.project(A.mult[i].apply(v));
      for (int rr = 0; rr < q.dim(); ++rr) m.at(rr, i) = img[rr];
    }
    return m;
  };
  Matrix m1 = orbitMatrix(q1, v1), m2 = orbitMatrix(q2, v2);
  if (kernelOf(m1) != kernelOf(m2)) return std::nullopt;  // annihilators differ

  auto orbitSpan = [&](const Matrix& m) { return Subspace::spanOfRows(m.transpose()); };
  Subspace u1 = orbitSpan(m1), u2 = orbitSpan(m2);
  if (u1.dim() != u2.dim()) return std::nullopt;

  int r = u1.dim();
  Matrix iso(A.field, r, r);
  for (int t = 0; t < r; ++t) {
    // Express u1 row t as alpha * v1-bar, then map to alpha * v2-bar.
    auto alpha = solveLinear(m1, u1.basisVector(t));
    if (!alpha) return std::nullopt;
    auto img = m2.apply(*alpha);
    auto coords = solveLinear(u2.basis().transpose(), img);
    if (!coords) return std::nullopt;
    for (int s = 0; s < r; ++s) iso.at(s, t) = (*coords)[s];
  }

  GlueSpec spec;
  spec.i1 = i1;
  spec.i2 = i2;
  auto lift = [&](const Subspace& u, const QuotientSpace& q, const Subspace& i) {
    std::vector<std::vector<Scalar>> rows;
    for (int rr = 0; rr < i.dim(); ++rr) rows.push_back(i.basisVector(rr));
    for (int rr = 0; rr < u.dim(); ++rr) rows.push_back(q.lift(u.basisVector(rr)));
    return Subspace::spanOfVectors(A.field, rows, A.dim);
  };
  spec.j1 = lift(u1, q1, i1);
  spec.j2 = lift(u2, q2, i2);
  spec.iso = iso;
  return spec;
}

// ---------------------------------------------------------------------------
// Decompositions
// ---------------------------------------------------------------------------

struct DecompositionReport {
  enum class Kind {
    SumOfCyclics,
    SumOfCocyclics,
    SumOfLocalTops,
    SubdirectSimpleSocles,
    FaithfulSubfactor
  };
  Kind kind{};
  // SumOf*: direct summands / summing submodules (subspaces of M).
  // SubdirectSimpleSocles: the kernels N_j.
  std::vector<Subspace> pieces;
  // Generator vectors (SumOfLocalTops) or socle witnesses (Subdirect...).
  std::vector<std::vector<Scalar>> certificates;
  // Subdirect factors M/N_j.
  std::vector<ModuleOverLocal> factors;
  bool injective{false};

  // FaithfulSubfactor data.
  Subspace mPrime;             // faithful submodule
  int mPrimeGenerators{0};     // pieces used to build it (>= minGenerators)
  Subspace mSecondKernel;      // K with M'' = M/K faithful
  int mSecondSocleLength{0};
  Subspace subfactorKernel;    // K' inside M' for part (iii)
  int subfactorMinGenerators{0};
  int subfactorSocleLength{0};
  int socleOfAlgebraLength{0};
};

/// Length <= 3 modules split into cyclic pieces or into cocyclic pieces,
/// by repeatedly splitting off a simple submodule that avoids mM.
inline DecompositionReport lt3Decompose(const ModuleOverLocal& m) {
  if (m.dimM > 3)
    throw LengthTooLargeError("lt3Decompose requires length <= 3, got " +
                              std::to_string(m.dimM));

  std::vector<Subspace> pieces;
  std::function<void(const Subspace&)> split = [&](const Subspace& s) {
    if (s.dim() == 0) return;
    ModuleOverLocal sub = submoduleRestriction(m, s);
    if (s.dim() <= 1 || isCyclic(sub) || isCocyclic(sub)) {
      pieces.push_back(s);
      return;
    }
    // Not cyclic, not cocyclic: pick a simple line in socle outside mM.
    Subspace soc = socle(sub);
    Subspace rad = radicalTimes(sub, Subspace::full(sub.field(), sub.dimM));
    std::optional<std::vector<Scalar>> pick;
    for (int rix = 0; rix < soc.dim(); ++rix) {
      auto cand = soc.basisVector(rix);
      if (!rad.contains(cand)) {
        pick = cand;
        break;
      }
      // A basis row may sit inside mM while some combination escapes.
      for (int o = 0; o < rix; ++o) {
        std::vector<Scalar> comb = cand;
        auto other = soc.basisVector(o);
        for (int c = 0; c < sub.dimM; ++c) comb[c] += other[c];
        if (!rad.contains(comb)) {
          pick = comb;
          break;
        }
      }
      if (pick) break;
    }
    if (!pick) throw Error("lt3Decompose: socle unexpectedly inside mM");

    // N = k*pick; L = preimage of a complement of the image of N in M/mM.
    QuotientSpace top(rad);
    auto vbar = top.project(*pick);
    EchelonSolver ech(sub.field(), top.dim());
    ech.insert(vbar);
    std::vector<std::vector<Scalar>> lrows;
    for (int rr = 0; rr < rad.dim(); ++rr) lrows.push_back(rad.basisVector(rr));
    for (int j = 0; j < top.dim(); ++j) {
      std::vector<Scalar> e(top.dim(), Scalar::zero(sub.field()));
      e[j] = Scalar::one(sub.field());
      if (ech.insert(e).independent) lrows.push_back(top.lift(e));
    }
    Subspace lSub = Subspace::spanOfVectors(sub.field(), lrows, sub.dimM);
    Subspace nSub = Subspace::spanOfVectors(sub.field(), {*pick}, sub.dimM);
    if (lSub.dim() + 1 != s.dim() || !subspaceIntersection(lSub, nSub).isZero())
      throw Error("lt3Decompose: split failed");

    // Map both back to coordinates of the original M.
    auto back = [&](const Subspace& inSub) {
      std::vector<std::vector<Scalar>> rows;
      for (int rr = 0; rr < inSub.dim(); ++rr) {
        auto c = inSub.basisVector(rr);
        std::vector<Scalar> v(m.dimM, Scalar::zero(m.field()));
        for (int t = 0; t < s.dim(); ++t)
          for (int cc = 0; cc < m.dimM; ++cc) v[cc] += c[t] * s.basis().at(t, cc);
        rows.push_back(std::move(v));
      }
      return Subspace::spanOfVectors(m.field(), rows, m.dimM);
    };
    pieces.push_back(back(nSub));
    split(back(lSub));
  };
  split(fullSpace(m));

  bool allCyclic = true, allCocyclic = true;
  for (const auto& p : pieces) {
    ModuleOverLocal sub = submoduleRestriction(m, p);
    if (!isCyclic(sub)) allCyclic = false;
    if (!isCocyclic(sub)) allCocyclic = false;
  }
  DecompositionReport rep;
  if (allCyclic)
    rep.kind = DecompositionReport::Kind::SumOfCyclics;
  else if (allCocyclic)
    rep.kind = DecompositionReport::Kind::SumOfCocyclics;
  else
    throw Error("lt3Decompose: produced mixed pieces");
  rep.pieces = std::move(pieces);
  return rep;
}

/// M as a sum of cyclic submodules N_i = A x_i with simple tops, one per
/// basis vector of M/mM. Over residue field k the cyclic module over a
/// lifted basis vector already has a simple top, so no minimality search
/// is needed; this is asserted.
inline DecompositionReport sumOfLocalTops(const ModuleOverLocal& m) {
  Subspace rad = radicalTimes(m, fullSpace(m));
  EchelonSolver ech(m.field(), m.dimM);
  for (int r = 0; r < rad.dim(); ++r) ech.insert(rad.basisVector(r));
  DecompositionReport rep;
  rep.kind = DecompositionReport::Kind::SumOfLocalTops;
  EchelonSolver total(m.field(), m.dimM);
  for (int j = 0; j < m.dimM && ech.dim() < m.dimM; ++j) {
    std::vector<Scalar> e(m.dimM, Scalar::zero(m.field()));
    e[j] = Scalar::one(m.field());
    if (!ech.insert(e).independent) continue;
    Subspace n = submoduleClosure(m, {e});
    int top = n.dim() - radicalTimes(m, n).dim();
    if (top != 1) throw Error("sumOfLocalTops: piece does not have a simple top");
    for (int r = 0; r < n.dim(); ++r) total.insert(n.basisVector(r));
    rep.pieces.push_back(std::move(n));
    rep.certificates.push_back(std::move(e));
  }
  if (total.dim() != m.dimM) throw Error("sumOfLocalTops: pieces do not span M");
  return rep;
}

/// Writes M as a verified subdirect product of quotients with simple socle,
/// one per socle basis line.
inline DecompositionReport subdirectSimpleSocles(const ModuleOverLocal& m) {
  DecompositionReport rep;
  rep.kind = DecompositionReport::Kind::SubdirectSimpleSocles;
  Subspace soc = socle(m);
  const int s = soc.dim();
  for (int j = 0; j < s; ++j) {
    // Seed N_j with the other socle lines, then grow while the quotient
    // socle stays bigger than the embedded image of S_j.
    std::vector<std::vector<Scalar>> seed;
    for (int t = 0; t < s; ++t)
      if (t != j) seed.push_back(soc.basisVector(t));
    Subspace n = Subspace::spanOfVectors(m.field(), seed, m.dimM);
    for (;;) {
      auto [q, qs] = quotientModuleOf(m, n);
      Subspace qSoc = socle(q);
      auto sBar = qs.project(soc.basisVector(j));
      bool zero = true;
      for (const auto& x : sBar)
        if (!x.isZero()) zero = false;
      if (zero) throw Error("subdirectSimpleSocles: lost the socle line");
      if (qSoc.dim() <= 1) break;
      EchelonSolver ech(m.field(), q.dimM);
      ech.insert(sBar);
      std::optional<std::vector<Scalar>> extra;
      for (int t = 0; t < qSoc.dim(); ++t) {
        auto cand = qSoc.basisVector(t);
        if (ech.insert(cand).independent) {
          extra = cand;
          break;
        }
      }
      if (!extra) throw Error("subdirectSimpleSocles: no independent socle line");
      std::vector<std::vector<Scalar>> rows;
      for (int t = 0; t < n.dim(); ++t) rows.push_back(n.basisVector(t));
      rows.push_back(qs.lift(*extra));
      n = Subspace::spanOfVectors(m.field(), rows, m.dimM);
    }
    auto [factor, qs] = quotientModuleOf(m, n);
    rep.pieces.push_back(std::move(n));
    rep.certificates.push_back(soc.basisVector(j));
    rep.factors.push_back(std::move(factor));
  }
  // Injectivity of M -> prod M_j.
  Subspace ker = fullSpace(m);
  for (const auto& n : rep.pieces) ker = subspaceIntersection(ker, n);
  rep.injective = ker.isZero() || s == 0;
  return rep;
}

/// Annihilator of S inside a given subspace of the algebra (in the ideal's
/// own coordinates over its basis rows).
inline Subspace annihilatorWithin(const ModuleOverLocal& m, const Subspace& ideal,
                                  const Subspace& s) {
  Matrix constraints(m.field(), s.dim() * m.dimM, ideal.dim());
  for (int t = 0; t < ideal.dim(); ++t) {
    Matrix op = actionOfElement(m, ideal.basisVector(t));
    for (int j = 0; j < s.dim(); ++j) {
      auto img = op.apply(s.basisVector(j));
      for (int r = 0; r < m.dimM; ++r) constraints.at(j * m.dimM + r, t) = img[r];
    }
  }
  return kernelOf(constraints);
}

/// The appendix subfactor construction: a faithful submodule M' generated by
/// at most lt(socle(A)) local-top pieces, a faithful quotient M'' with socle
/// of length at most lt(socle(A)), and the combined subfactor.
inline DecompositionReport faithfulSmallSubfactor(const ModuleOverLocal& m) {
  if (!isFaithful(m)) throw NotFaithfulError("faithfulSmallSubfactor requires faithful input");
  DecompositionReport rep;
  rep.kind = DecompositionReport::Kind::FaithfulSubfactor;

  Subspace socA = socle(regularModule(m.algebra));
  const int n = socA.dim();
  rep.socleOfAlgebraLength = n;

  // (i) submodule: greedily add local-top pieces while something in
  // socle(A) still kills the partial sum.
  DecompositionReport tops = sumOfLocalTops(m);
  Subspace cur(m.field(), m.dimM);
  int used = 0;
  std::vector<bool> taken(tops.pieces.size(), false);
  for (;;) {
    int annDim = annihilatorWithin(m, socA, cur).dim();
    if (annDim == 0) break;
    bool progressed = false;
    for (std::size_t i = 0; i < tops.pieces.size() && !progressed; ++i) {
      if (taken[i]) continue;
      Subspace cand = subspaceSum(cur, tops.pieces[i]);
      if (annihilatorWithin(m, socA, cand).dim() < annDim) {
        cur = cand;
        taken[i] = true;
        ++used;
        progressed = true;
      }
    }
    if (!progressed) throw Error("faithfulSmallSubfactor: greedy stalled on a faithful module");
  }
  rep.mPrime = cur;
  rep.mPrimeGenerators = used;
  ModuleOverLocal mPrime = submoduleRestriction(m, cur);
  if (!annihilatorInAlgebra(m, cur).isZero())
    throw Error("faithfulSmallSubfactor: M' is not faithful");

  // (ii) quotient: greedily intersect subdirect kernels until nothing in
  // socle(A) annihilates M/K.
  DecompositionReport sd = subdirectSimpleSocles(m);
  auto annSocOfQuotient = [&](const Subspace& k) {
    // { alpha in socle(A) : alpha M <= K }
    QuotientSpace q(k);
    Matrix constraints(m.field(), m.dimM * q.dim(), socA.dim());
    for (int t = 0; t < socA.dim(); ++t) {
      Matrix op = actionOfElement(m, socA.basisVector(t));
      for (int j = 0; j < m.dimM; ++j) {
        std::vector<Scalar> e(m.dimM, Scalar::zero(m.field()));
        e[j] = Scalar::one(m.field());
        auto img = q.project(op.apply(e));
        for (int r = 0; r < q.dim(); ++r) constraints.at(j * q.dim() + r, t) = img[r];
      }
    }
    return kernelOf(constraints);
  };
  Subspace kerK = fullSpace(m);
  int usedFactors = 0;
  std::vector<bool> takenF(sd.pieces.size(), false);
  for (;;) {
    int annDim = annSocOfQuotient(kerK).dim();
    if (annDim == 0) break;
    bool progressed = false;
    for (std::size_t i = 0; i < sd.pieces.size() && !progressed; ++i) {
      if (takenF[i]) continue;
      Subspace cand = subspaceIntersection(kerK, sd.pieces[i]);
      if (annSocOfQuotient(cand).dim() < annDim) {
        kerK = cand;
        takenF[i] = true;
        ++usedFactors;
        progressed = true;
      }
    }
    if (!progressed) throw Error("faithfulSmallSubfactor: quotient greedy stalled");
  }
  rep.mSecondKernel = kerK;
  auto [mSecond, qK] = quotientModuleOf(m, kerK);
  if (!isFaithful(mSecond)) throw Error("faithfulSmallSubfactor: M'' is not faithful");
  rep.mSecondSocleLength = socleLength(mSecond);

  // (iii) subfactor: run the quotient construction inside M'.
  DecompositionReport sdP = subdirectSimpleSocles(mPrime);
  auto annSocOfQuotientP = [&](const Subspace& k) {
    QuotientSpace q(k);
    Matrix constraints(m.field(), mPrime.dimM * q.dim(), socA.dim());
    for (int t = 0; t < socA.dim(); ++t) {
      Matrix op = actionOfElement(mPrime, socA.basisVector(t));
      for (int j = 0; j < mPrime.dimM; ++j) {
        std::vector<Scalar> e(mPrime.dimM, Scalar::zero(m.field()));
        e[j] = Scalar::one(m.field());
        auto img = q.project(op.apply(e));
        for (int r = 0; r < q.dim(); ++r) constraints.at(j * q.dim() + r, t) = img[r];
      }
    }
    return kernelOf(constraints);
  };
  Subspace kerP = Subspace::full(m.field(), mPrime.dimM);
  std::vector<bool> takenP(sdP.pieces.size(), false);
  for (;;) {
    int annDim = annSocOfQuotientP(kerP).dim();
    if (annDim == 0) break;
    bool progressed = false;
    for (std::size_t i = 0; i < sdP.pieces.size() && !progressed; ++i) {
      if (takenP[i]) continue;
      Subspace cand = subspaceIntersection(kerP, sdP.pieces[i]);
      if (annSocOfQuotientP(cand).dim() < annDim) {
        kerP = cand;
        takenP[i] = true;
        progressed = true;
      }
    }
    if (!progressed) throw Error("faithfulSmallSubfactor: subfactor greedy stalled");
  }
  rep.subfactorKernel = kerP;
  auto [subfactor, qP] = quotientModuleOf(mPrime, kerP);
  if (!isFaithful(subfactor)) throw Error("faithfulSmallSubfactor: subfactor is not faithful");
  rep.subfactorMinGenerators = minGenerators(subfactor);
  rep.subfactorSocleLength = socleLength(subfactor);
  return rep;
}

// ---------------------------------------------------------------------------
// Brute-force enumeration of d-dimensional modules over a prime field.
// ---------------------------------------------------------------------------

struct RepEnumResult {
  std::uint64_t nodesVisited{0};
  std::uint64_t yielded{0};
  bool stoppedByVisitor{false};
};

/// Enumerates every unital algebra homomorphism A -> End(k^d) by assigning
/// images to a minimal generating set of the maximal ideal, depth first with
/// pruning: each partial image must satisfy the generator's univariate
/// relation and commute with the images chosen so far; complete tuples are
/// checked against all structure constants. Deterministic order. Throws
/// BudgetExceeded when more than `budget` candidate matrices are examined.
inline RepEnumResult enumerateReps(std::shared_ptr<const LocalAlgebra> a, int d,
                                   std::uint64_t budget,
                                   const std::function<bool(const ModuleOverLocal&)>& visit) {
  const auto& A = *a;
  if (A.field.kind != FieldSpec::Kind::PrimeField)
    throw Error("enumerateReps requires a prime field");
  if (!A.hasPresentation())
    throw Error("enumerateReps requires an algebra with a generator presentation");
  const std::int64_t p = A.field.characteristic;
  const int G = static_cast<int>(A.generators.size());

  // Univariate relation of each generator: x^e = sum_{j<e} gamma_j x^j in A.
  struct UniRel {
    int e;
    std::vector<Scalar> gamma;
  };
  std::vector<UniRel> rels;
  for (int t = 0; t < G; ++t) {
    EchelonSolver ech(A.field, A.dim);
    std::vector<Scalar> v(A.dim, Scalar::zero(A.field));
    v[0] = Scalar::one(A.field);
    int e = 0;
    for (;;) {
      auto res = ech.insert(v);
      if (!res.independent) {
        rels.push_back({e, res.coords});
        break;
      }
      v = A.mult[A.generators[t]].apply(v);
      ++e;
    }
  }

  std::uint64_t total = 1;
  for (int i = 0; i < d * d; ++i) {
    if (total > (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p))
      throw BudgetExceededError("enumerateReps: p^(d^2) overflows the enumeration index");
    total *= static_cast<std::uint64_t>(p);
  }

  RepEnumResult result;
  std::vector<Matrix> images(G, Matrix(A.field, d, d));
  Matrix idd = Matrix::identity(A.field, d);

  auto satisfiesUniRel = [&](const Matrix& x, const UniRel& rel) {
    Matrix pow = idd;
    Matrix rhs(A.field, d, d);
    for (int j = 0; j < rel.e; ++j) {
      if (!rel.gamma[j].isZero()) rhs = rhs + pow.scaled(rel.gamma[j]);
      pow = pow * x;
    }
    return pow == rhs;
  };

  std::function<bool(int)> dfs = [&](int t) -> bool {
    if (t == G) {
      // Evaluate every basis element through the parent chain and check all
      // structure constants.
      std::vector<Matrix> ev;
      ev.reserve(A.dim);
      ev.push_back(idd);
      for (int i = 1; i < A.dim; ++i)
        ev.push_back(ev[A.parent[i].first] * images[A.parent[i].second]);
      for (int i = 1; i < A.dim; ++i)
        for (int j = i; j < A.dim; ++j) {
          Matrix lhs = ev[i] * ev[j];
          Matrix rhs(A.field, d, d);
          for (int k = 0; k < A.dim; ++k) {
            Scalar c = A.structureConstant(i, j, k);
            if (!c.isZero()) rhs = rhs + ev[k].scaled(c);
          }
          if (lhs != rhs) return true;
        }
      ++result.yielded;
      ModuleOverLocal mod{a, d, std::move(ev)};
      if (!visit(mod)) {
        result.stoppedByVisitor = true;
        return false;
      }
      return true;
    }
    for (std::uint64_t enc = 0; enc < total; ++enc) {
      if (++result.nodesVisited > budget)
        throw BudgetExceededError("enumerateReps: node budget exhausted");
      std::uint64_t x = enc;
      Matrix cand(A.field, d, d);
      for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
          cand.at(r, c) = Scalar::fromInt(A.field, static_cast<std::int64_t>(x % p));
          x /= p;
        }
      if (!satisfiesUniRel(cand, rels[t])) continue;
      bool ok = true;
      for (int s = 0; s < t && ok; ++s) ok = commutes(cand, images[s]);
      if (!ok) continue;
      images[t] = std::move(cand);
      if (!dfs(t + 1)) return false;
    }
    return true;
  };
  dfs(0);
  return result;
}

}  // namespace commalg
