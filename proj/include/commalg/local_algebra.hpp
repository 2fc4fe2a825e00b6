#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "commalg/algebra.hpp"

namespace commalg {

/// A commutative local Artinian k-algebra with residue field k, presented by
/// a basis with basis[0] = 1 and every other basis element nilpotent. The
/// maximal ideal is span(basis[1..]). Multiplication is stored as the regular
/// representation: mult[i] is left multiplication by basis[i], so the
/// structure constants are c_{ijk} = mult[i].at(k, j).
struct LocalAlgebra {
  FieldSpec field;
  int dim{0};
  std::vector<std::string> labels;  // labels[0] == "1"
  std::vector<Matrix> mult;         // mult[0] == identity

  // Optional presentation data (present for monomial quotients and diagram
  // algebras): a minimal generating set of the maximal ideal, given as basis
  // indices, plus for each basis element an exponent word over it. Required
  // by representation enumeration.
  std::vector<int> generators;
  std::vector<Monomial> basisWords;
  // basis[i] == basis[parent[i].first] * basis[generators[parent[i].second]];
  // parent[0] = {-1,-1}. Derived from basisWords.
  std::vector<std::pair<int, int>> parent;

  const Scalar structureConstant(int i, int j, int k) const { return mult[i].at(k, j); }

  std::vector<Scalar> multiply(const std::vector<Scalar>& x,
                               const std::vector<Scalar>& y) const {
    std::vector<Scalar> out(dim, Scalar::zero(field));
    for (int i = 0; i < dim; ++i) {
      if (x[i].isZero()) continue;
      auto img = mult[i].apply(y);
      for (int k = 0; k < dim; ++k) out[k] += x[i] * img[k];
    }
    return out;
  }

  /// Maximal ideal as a subspace of the coordinate space.
  Subspace radical() const {
    Matrix rows(field, dim - 1, dim);
    for (int i = 1; i < dim; ++i) rows.at(i - 1, i) = Scalar::one(field);
    return Subspace::spanOfRows(rows);
  }

  bool hasPresentation() const { return !generators.empty() || dim == 1; }
};

/// Checks the LocalAlgebra invariants. Associativity is O(dim^5) and may be
/// skipped when the constructor inherited it (matrix realizations).
inline void verifyLocalAlgebra(const LocalAlgebra& a, bool checkAssociativity = true) {
  if (a.dim < 1 || static_cast<int>(a.mult.size()) != a.dim)
    throw Error("local algebra: bad dimension");
  if (a.mult[0] != Matrix::identity(a.field, a.dim))
    throw Error("local algebra: basis[0] is not the identity");
  for (int i = 0; i < a.dim; ++i)
    for (int j = i + 1; j < a.dim; ++j)
      for (int k = 0; k < a.dim; ++k)
        if (a.structureConstant(i, j, k) != a.structureConstant(j, i, k))
          throw Error("local algebra: product is not commutative");
  if (checkAssociativity) {
    for (int i = 1; i < a.dim; ++i)
      for (int j = 1; j < a.dim; ++j) {
        Matrix lhs = a.mult[i] * a.mult[j];
        Matrix rhs(a.field, a.dim, a.dim);
        for (int k = 0; k < a.dim; ++k) {
          Scalar c = a.structureConstant(i, j, k);
          if (!c.isZero()) rhs = rhs + a.mult[k].scaled(c);
        }
        if (lhs != rhs) throw Error("local algebra: product is not associative");
      }
  }
  // Nilpotency of every non-unit basis element; with commutativity this
  // makes span(basis[1..]) the nilpotent maximal ideal.
  for (int i = 1; i < a.dim; ++i) {
    std::vector<Scalar> v(a.dim, Scalar::zero(a.field));
    v[i] = Scalar::one(a.field);
    bool nil = false;
    for (int step = 0; step < a.dim; ++step) {
      v = a.mult[i].apply(v);
      bool zero = true;
      for (const auto& s : v)
        if (!s.isZero()) {
          zero = false;
          break;
        }
      if (zero) {
        nil = true;
        break;
      }
    }
    if (!nil)
      throw Error("local algebra: basis element '" + a.labels[i] + "' is not nilpotent");
  }
}

inline void derivePresentationParents(LocalAlgebra& a) {
  a.parent.assign(a.dim, {-1, -1});
  std::map<Monomial, int> byWord;
  for (int i = 0; i < a.dim; ++i) byWord[a.basisWords[i]] = i;
  for (int i = 1; i < a.dim; ++i) {
    Monomial w = a.basisWords[i];
    int g = -1;
    for (int t = static_cast<int>(w.size()) - 1; t >= 0; --t)
      if (w[t] > 0) {
        g = t;
        break;
      }
    if (g < 0) throw Error("local algebra: non-unit basis element with empty word");
    w[g] -= 1;
    auto it = byWord.find(w);
    if (it == byWord.end())
      throw Error("local algebra: basis words are not closed under truncation");
    a.parent[i] = {it->second, g};
  }
}

/// Builds the monomial quotient algebra k[x_1..x_v]/(monomials with
/// !keep(exponents)), where keep must be downward closed, keep(0) true, and
/// keep bounded (finitely many kept exponents). Basis is sorted by degree
/// then lexicographic exponents.
inline std::shared_ptr<LocalAlgebra> monomialQuotientAlgebra(
    FieldSpec field, const std::vector<std::string>& varNames,
    const std::function<bool(const std::vector<int>&)>& keep, int degreeCap) {
  const int v = static_cast<int>(varNames.size());
  std::vector<std::vector<int>> exps;
  std::vector<int> cur(v, 0);
  // Enumerate kept exponent tuples up to the cap, in degree-lex order.
  for (int deg = 0; deg <= degreeCap; ++deg) {
    std::function<void(int, int)> rec = [&](int pos, int remaining) {
      if (pos == v) {
        if (remaining == 0 && keep(cur)) exps.push_back(cur);
        return;
      }
      for (int e = remaining; e >= 0; --e) {  // lex: larger early exponents first
        cur[pos] = e;
        rec(pos + 1, remaining - e);
      }
      cur[pos] = 0;
    };
    rec(0, deg);
  }
  const int dim = static_cast<int>(exps.size());
  std::map<std::vector<int>, int> index;
  for (int i = 0; i < dim; ++i) index[exps[i]] = i;

  auto a = std::make_shared<LocalAlgebra>();
  a->field = field;
  a->dim = dim;
  for (const auto& e : exps) {
    Monomial w(e.begin(), e.end());
    a->basisWords.push_back(w);
    a->labels.push_back(monomialToString(w, varNames));
  }
  a->mult.reserve(dim);
  for (int i = 0; i < dim; ++i) {
    Matrix L(field, dim, dim);
    for (int j = 0; j < dim; ++j) {
      std::vector<int> sum(v);
      bool over = false;
      for (int t = 0; t < v; ++t) {
        sum[t] = exps[i][t] + exps[j][t];
        if (sum[t] > degreeCap) over = true;
      }
      if (over || !keep(sum)) continue;
      auto it = index.find(sum);
      if (it != index.end()) L.at(it->second, j) = Scalar::one(field);
    }
    a->mult.push_back(std::move(L));
  }
  for (int t = 0; t < v; ++t) {
    std::vector<int> e(v, 0);
    e[t] = 1;
    auto it = index.find(e);
    if (it == index.end()) throw Error("monomial quotient: generator killed by relations");
    a->generators.push_back(it->second);
  }
  derivePresentationParents(*a);
  verifyLocalAlgebra(*a);
  return a;
}

// --- named presets ---------------------------------------------------------

/// k[t_1..t_4]/(t_i^{n_i+1}): socle is spanned by t_1^{n_1}..t_4^{n_4}.
inline std::shared_ptr<LocalAlgebra> frobeniusAlgebra(FieldSpec f, int n1, int n2, int n3,
                                                      int n4) {
  if (n1 < 1 || n2 < 1 || n3 < 1 || n4 < 1)
    throw Error("frobenius family: exponents must be >= 1");
  std::vector<int> caps{n1, n2, n3, n4};
  return monomialQuotientAlgebra(
      f, {"t1", "t2", "t3", "t4"},
      [caps](const std::vector<int>& e) {
        for (std::size_t i = 0; i < e.size(); ++i)
          if (e[i] > caps[i]) return false;
        return true;
      },
      n1 + n2 + n3 + n4);
}

/// k[s,t]/(s^n, s^{n-1}t, ..., t^n): all monomials of total degree < n.
inline std::shared_ptr<LocalAlgebra> stPowerAlgebra(FieldSpec f, int n) {
  if (n < 1) throw Error("st power family: n must be >= 1");
  return monomialQuotientAlgebra(
      f, {"s", "t"},
      [n](const std::vector<int>& e) { return e[0] + e[1] < n; }, n);
}

/// k[s]/(s^n).
inline std::shared_ptr<LocalAlgebra> truncatedPolynomialAlgebra(FieldSpec f, int n) {
  return monomialQuotientAlgebra(
      f, {"s"}, [n](const std::vector<int>& e) { return e[0] < n; }, n);
}

/// k[x_1..x_g]/(x_i x_j): square-zero maximal ideal of length g.
inline std::shared_ptr<LocalAlgebra> squareZeroAlgebra(FieldSpec f, int g) {
  std::vector<std::string> names;
  for (int i = 1; i <= g; ++i) names.push_back("u" + std::to_string(i));
  return monomialQuotientAlgebra(
      f, names,
      [](const std::vector<int>& e) {
        int d = 0;
        for (int x : e) d += x;
        return d < 2;
      },
      2);
}

/// k[s,t]/(s^2, t^2): length 4, Frobenius with socle st.
inline std::shared_ptr<LocalAlgebra> sSquareTSquareAlgebra(FieldSpec f) {
  return monomialQuotientAlgebra(
      f, {"s", "t"}, [](const std::vector<int>& e) { return e[0] < 2 && e[1] < 2; }, 2);
}

/// Turns a generated matrix algebra with nilpotent non-unit basis into a
/// LocalAlgebra. Associativity is inherited from matrix multiplication.
/// The presentation (generators + words) is attached when every action
/// generator survived as a basis element.
inline std::shared_ptr<LocalAlgebra> localAlgebraFromGenerated(const GeneratedAlgebra& g) {
  auto a = std::make_shared<LocalAlgebra>();
  a->field = g.action.field;
  a->dim = g.dim();
  a->labels = g.labelStrings();
  a->basisWords = g.labels;
  for (int i = 0; i < a->dim; ++i) {
    Matrix L(a->field, a->dim, a->dim);
    for (int j = 0; j < a->dim; ++j) {
      auto coords = g.coordinatesOf(g.basis[i] * g.basis[j]);
      if (!coords)
        throw Error("generated algebra is not closed under multiplication");
      for (int k = 0; k < a->dim; ++k) L.at(k, j) = (*coords)[k];
    }
    a->mult.push_back(std::move(L));
  }
  const int G = static_cast<int>(g.action.generators.size());
  bool clean = true;
  std::vector<int> genIndex;
  for (int t = 0; t < G && clean; ++t) {
    Monomial want(G, 0);
    want[t] = 1;
    int found = -1;
    for (int i = 0; i < a->dim; ++i)
      if (g.labels[i] == want) {
        found = i;
        break;
      }
    if (found < 0)
      clean = false;
    else
      genIndex.push_back(found);
  }
  if (clean) {
    a->generators = genIndex;
    derivePresentationParents(*a);
  } else {
    a->basisWords.clear();
  }
  verifyLocalAlgebra(*a, /*checkAssociativity=*/false);
  return a;
}

}  // namespace commalg
