#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "commalg/matrix.hpp"

namespace commalg {

/// A subspace of k^n held as a reduced-row-echelon basis. Two subspaces are
/// equal iff their canonical bases are equal.
class Subspace {
 public:
  Subspace() = default;
  Subspace(FieldSpec f, int ambientDim)
      : field_(f), ambient_(ambientDim), basis_(f, 0, ambientDim) {}

  /// Span of the rows of `rows` (need not be independent).
  static Subspace spanOfRows(const Matrix& rows) {
    Subspace s(rows.field(), rows.cols());
    auto [r, rank] = rref(rows);
    Matrix b(rows.field(), rank, rows.cols());
    for (int i = 0; i < rank; ++i)
      for (int j = 0; j < rows.cols(); ++j) b.at(i, j) = r.at(i, j);
    s.basis_ = std::move(b);
    return s;
  }

  static Subspace spanOfVectors(FieldSpec f, const std::vector<std::vector<Scalar>>& vecs,
                                int ambientDim) {
    Matrix m(f, static_cast<int>(vecs.size()), ambientDim);
    for (int i = 0; i < static_cast<int>(vecs.size()); ++i)
      for (int j = 0; j < ambientDim; ++j) m.at(i, j) = vecs[i][j];
    return spanOfRows(m);
  }

  static Subspace full(FieldSpec f, int n) { return spanOfRows(Matrix::identity(f, n)); }

  const FieldSpec& field() const { return field_; }
  int ambientDim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  std::vector<Scalar> basisVector(int i) const { return basis_.row(i); }

  bool operator==(const Subspace& o) const {
    return field_ == o.field_ && ambient_ == o.ambient_ && basis_ == o.basis_;
  }

  /// Reduces v against the echelon basis; the remainder is zero iff v lies
  /// in the subspace.
  std::vector<Scalar> reduce(std::vector<Scalar> v) const {
    for (int r = 0; r < basis_.rows(); ++r) {
      int p = pivotColumn(r);
      if (p < 0 || v[p].isZero()) continue;
      Scalar f = v[p];
      for (int c = p; c < ambient_; ++c) v[c] -= f * basis_.at(r, c);
    }
    return v;
  }

  bool contains(const std::vector<Scalar>& v) const {
    auto rem = reduce(v);
    for (const auto& s : rem)
      if (!s.isZero()) return false;
    return true;
  }

  bool containsSubspace(const Subspace& o) const {
    for (int r = 0; r < o.dim(); ++r)
      if (!contains(o.basisVector(r))) return false;
    return true;
  }

  bool isZero() const { return dim() == 0; }

 private:
  int pivotColumn(int row) const {
    for (int c = 0; c < ambient_; ++c)
      if (!basis_.at(row, c).isZero()) return c;
    return -1;
  }

  FieldSpec field_{};
  int ambient_{0};
  Matrix basis_;
};

inline Subspace subspaceSum(const Subspace& a, const Subspace& b) {
  if (a.ambientDim() != b.ambientDim() || a.field() != b.field())
    throw DimensionMismatchError("subspace sum: ambient mismatch");
  Matrix stacked(a.field(), a.dim() + b.dim(), a.ambientDim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.ambientDim(); ++j) stacked.at(i, j) = a.basis().at(i, j);
  for (int i = 0; i < b.dim(); ++i)
    for (int j = 0; j < a.ambientDim(); ++j) stacked.at(a.dim() + i, j) = b.basis().at(i, j);
  return Subspace::spanOfRows(stacked);
}

/// Null space of m as a subspace of k^cols.
inline Subspace kernelOf(const Matrix& m) {
  auto [r, rank] = rref(m);
  int n = m.cols();
  // Locate pivot columns.
  std::vector<int> pivotOfCol(n, -1);
  for (int i = 0; i < rank; ++i)
    for (int c = 0; c < n; ++c)
      if (!r.at(i, c).isZero()) {
        pivotOfCol[c] = i;
        break;
      }
  std::vector<std::vector<Scalar>> basis;
  for (int c = 0; c < n; ++c) {
    if (pivotOfCol[c] >= 0) continue;
    std::vector<Scalar> v(n, Scalar::zero(m.field()));
    v[c] = Scalar::one(m.field());
    for (int d = 0; d < n; ++d)
      if (pivotOfCol[d] >= 0) v[d] = -r.at(pivotOfCol[d], c);
    basis.push_back(std::move(v));
  }
  return Subspace::spanOfVectors(m.field(), basis, n);
}

inline Subspace subspaceIntersection(const Subspace& a, const Subspace& b) {
  if (a.ambientDim() != b.ambientDim() || a.field() != b.field())
    throw DimensionMismatchError("subspace intersection: ambient mismatch");
  // x in A cap B  <=>  x = u^T A = v^T B; solve [A^T | -B^T] (u;v) = 0.
  int n = a.ambientDim();
  Matrix k(a.field(), n, a.dim() + b.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < a.dim(); ++j) k.at(i, j) = a.basis().at(j, i);
    for (int j = 0; j < b.dim(); ++j) k.at(i, a.dim() + j) = -b.basis().at(j, i);
  }
  Subspace ker = kernelOf(k);
  std::vector<std::vector<Scalar>> vecs;
  for (int r = 0; r < ker.dim(); ++r) {
    auto uv = ker.basisVector(r);
    std::vector<Scalar> x(n, Scalar::zero(a.field()));
    for (int j = 0; j < a.dim(); ++j)
      for (int c = 0; c < n; ++c) x[c] += uv[j] * a.basis().at(j, c);
    vecs.push_back(std::move(x));
  }
  return Subspace::spanOfVectors(a.field(), vecs, n);
}

/// Solves A x = b; returns nullopt when inconsistent.
inline std::optional<std::vector<Scalar>> solveLinear(const Matrix& a,
                                                      const std::vector<Scalar>& b) {
  Matrix aug(a.field(), a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols()) = b[i];
  }
  rrefInPlace(aug);
  std::vector<Scalar> x(a.cols(), Scalar::zero(a.field()));
  for (int i = 0; i < a.rows(); ++i) {
    int p = -1;
    for (int j = 0; j <= a.cols(); ++j)
      if (!aug.at(i, j).isZero()) {
        p = j;
        break;
      }
    if (p < 0) continue;
    if (p == a.cols()) return std::nullopt;  // 0 = 1 row
    x[p] = aug.at(i, a.cols());
  }
  return x;
}

/// Incremental echelon structure that remembers how each reduced row was
/// produced from the inserted vectors, so rejected vectors come back with
/// their expansion in terms of the previously accepted ones.
class EchelonSolver {
 public:
  EchelonSolver(FieldSpec f, int ambientDim) : field_(f), ambient_(ambientDim) {}

  int dim() const { return static_cast<int>(rows_.size()); }
  int ambientDim() const { return ambient_; }

  struct InsertResult {
    bool independent;
    // For a dependent vector: coordinates over the accepted vectors, in
    // acceptance order. Empty for independent inserts.
    std::vector<Scalar> coords;
  };

  InsertResult insert(std::vector<Scalar> v) {
    // After reduceTracked: v_in = v + sum coeff[c] * accepted[c].
    std::vector<Scalar> coeff(acceptedCount_, Scalar::zero(field_));
    reduceTracked(v, coeff);
    int p = firstNonzero(v);
    if (p < 0) return {false, std::move(coeff)};
    Scalar inv = v[p].inverse();
    for (auto& s : v) s *= inv;
    for (auto& c : coeff) c = -(c * inv);
    coeff.push_back(inv);  // the new vector itself
    // Back-eliminate the new pivot from existing rows.
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Scalar f = rows_[r][p];
      if (f.isZero()) continue;
      for (int c = 0; c < ambient_; ++c) rows_[r][c] -= f * v[c];
      combos_[r].resize(acceptedCount_ + 1, Scalar::zero(field_));
      for (std::size_t c = 0; c < coeff.size(); ++c) combos_[r][c] -= f * coeff[c];
    }
    pivots_.push_back(p);
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(coeff));
    ++acceptedCount_;
    return {true, {}};
  }

  bool contains(std::vector<Scalar> v) const {
    std::vector<Scalar> ignored;
    reduceTracked(v, ignored);
    return firstNonzero(v) < 0;
  }

  /// Coordinates of v over the accepted vectors, if v lies in the span.
  std::optional<std::vector<Scalar>> coordinates(std::vector<Scalar> v) const {
    std::vector<Scalar> coeff(acceptedCount_, Scalar::zero(field_));
    reduceTracked(v, coeff);
    if (firstNonzero(v) >= 0) return std::nullopt;
    return coeff;
  }

  Subspace toSubspace() const {
    return Subspace::spanOfVectors(field_, rows_, ambient_);
  }

 private:
  // v -= sum of multiples of echelon rows; coeff accumulates those multiples
  // expressed over accepted vectors.
  void reduceTracked(std::vector<Scalar>& v, std::vector<Scalar>& coeff) const {
    bool track = !coeff.empty() || acceptedCount_ == 0;
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      Scalar f = v[pivots_[r]];
      if (f.isZero()) continue;
      for (int c = 0; c < ambient_; ++c) v[c] -= f * rows_[r][c];
      if (track)
        for (std::size_t c = 0; c < combos_[r].size(); ++c) coeff[c] += f * combos_[r][c];
    }
  }

  static int firstNonzero(const std::vector<Scalar>& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].isZero()) return static_cast<int>(i);
    return -1;
  }

  FieldSpec field_;
  int ambient_;
  int acceptedCount_{0};
  std::vector<int> pivots_;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<std::vector<Scalar>> combos_;  // row i over accepted vectors
};

/// Coordinates on a quotient k^n / W with canonical echelon representatives:
/// quotient coordinates are the non-pivot columns of W's basis.
class QuotientSpace {
 public:
  QuotientSpace(Subspace w) : w_(std::move(w)) {
    int n = w_.ambientDim();
    std::vector<bool> isPivot(n, false);
    for (int r = 0; r < w_.dim(); ++r)
      for (int c = 0; c < n; ++c)
        if (!w_.basis().at(r, c).isZero()) {
          isPivot[c] = true;
          break;
        }
    for (int c = 0; c < n; ++c)
      if (!isPivot[c]) free_.push_back(c);
  }

  int dim() const { return static_cast<int>(free_.size()); }
  int ambientDim() const { return w_.ambientDim(); }
  const Subspace& modulo() const { return w_; }

  std::vector<Scalar> project(const std::vector<Scalar>& v) const {
    auto rem = w_.reduce(v);
    std::vector<Scalar> out;
    out.reserve(free_.size());
    for (int c : free_) out.push_back(rem[c]);
    return out;
  }

  std::vector<Scalar> lift(const std::vector<Scalar>& coords) const {
    std::vector<Scalar> v(w_.ambientDim(), Scalar::zero(w_.field()));
    for (std::size_t i = 0; i < free_.size(); ++i) v[free_[i]] = coords[i];
    return v;
  }

  /// Pushes a W-invariant endomorphism of k^n down to the quotient.
  Matrix induced(const Matrix& m) const {
    Matrix out(w_.field(), dim(), dim());
    for (int j = 0; j < dim(); ++j) {
      std::vector<Scalar> e(dim(), Scalar::zero(w_.field()));
      e[j] = Scalar::one(w_.field());
      auto img = project(m.apply(lift(e)));
      for (int i = 0; i < dim(); ++i) out.at(i, j) = img[i];
    }
    return out;
  }

 private:
  Subspace w_;
  std::vector<int> free_;
};

}  // namespace commalg
