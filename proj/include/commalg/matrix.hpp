#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "commalg/field.hpp"

namespace commalg {

/// Dense row-major matrix over an exact field.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec f, int rows, int cols)
      : field_(f), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, Scalar::zero(f)) {}

  static Matrix identity(FieldSpec f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Scalar::one(f);
    return m;
  }

  static Matrix zero(FieldSpec f, int rows, int cols) { return Matrix(f, rows, cols); }

  /// Matrix from row-major integer literals, reduced into the field.
  static Matrix fromInts(FieldSpec f, int rows, int cols,
                         std::initializer_list<std::int64_t> vals) {
    Matrix m(f, rows, cols);
    auto it = vals.begin();
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) m.at(r, c) = Scalar::fromInt(f, *it++);
    return m;
  }

  /// Matrix unit e_{r,c} of size n (maps basis vector c to basis vector r).
  static Matrix unit(FieldSpec f, int n, int r, int c) {
    Matrix m(f, n, n);
    m.at(r, c) = Scalar::one(f);
    return m;
  }

  const FieldSpec& field() const { return field_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Scalar& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const Scalar& at(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }

  bool isZero() const {
    for (const auto& s : data_)
      if (!s.isZero()) return false;
    return true;
  }

  bool operator==(const Matrix& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const Matrix& o) const { return !(*this == o); }

  Matrix operator+(const Matrix& o) const {
    requireShape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }

  Matrix operator-(const Matrix& o) const {
    requireShape(o);
    Matrix r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw DimensionMismatchError("matrix product shape mismatch");
    Matrix r(field_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Scalar& a = at(i, k);
        if (a.isZero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Scalar& b = o.at(k, j);
          if (!b.isZero()) r.at(i, j) += a * b;
        }
      }
    return r;
  }

  Matrix scaled(const Scalar& s) const {
    Matrix r = *this;
    for (auto& v : r.data_) v *= s;
    return r;
  }

  Matrix transpose() const {
    Matrix r(field_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
  }

  std::vector<Scalar> row(int r) const {
    return {data_.begin() + static_cast<std::size_t>(r) * cols_,
            data_.begin() + static_cast<std::size_t>(r + 1) * cols_};
  }

  std::vector<Scalar> column(int c) const {
    std::vector<Scalar> v;
    v.reserve(rows_);
    for (int r = 0; r < rows_; ++r) v.push_back(at(r, c));
    return v;
  }

  /// Row-major flattening, used to treat endomorphisms as vectors.
  std::vector<Scalar> flatten() const { return data_; }

  std::vector<Scalar> apply(const std::vector<Scalar>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw DimensionMismatchError("matrix apply shape mismatch");
    std::vector<Scalar> out(rows_, Scalar::zero(field_));
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!at(i, j).isZero() && !v[j].isZero()) out[i] += at(i, j) * v[j];
    return out;
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : " ";
      for (int j = 0; j < cols_; ++j) s += (j ? " " : "[") + at(i, j).str();
      s += "]";
      s += i + 1 == rows_ ? "]" : "\n";
    }
    return s;
  }

 private:
  void requireShape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || field_ != o.field_)
      throw DimensionMismatchError("matrix shape/field mismatch");
  }

  FieldSpec field_{};
  int rows_{0};
  int cols_{0};
  std::vector<Scalar> data_;
};

inline bool commutes(const Matrix& a, const Matrix& b) { return a * b == b * a; }

/// First column where a*b and b*a differ, or -1 when they commute.
inline int commutatorWitnessColumn(const Matrix& a, const Matrix& b) {
  Matrix ab = a * b, ba = b * a;
  for (int c = 0; c < ab.cols(); ++c)
    for (int r = 0; r < ab.rows(); ++r)
      if (ab.at(r, c) != ba.at(r, c)) return c;
  return -1;
}

/// In-place reduced row echelon form; returns the rank.
inline int rrefInPlace(Matrix& m) {
  int rank = 0;
  for (int col = 0; col < m.cols() && rank < m.rows(); ++col) {
    int pivot = -1;
    for (int r = rank; r < m.rows(); ++r)
      if (!m.at(r, col).isZero()) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pivot, c), m.at(rank, c));
    Scalar inv = m.at(rank, col).inverse();
    for (int c = col; c < m.cols(); ++c) m.at(rank, c) *= inv;
    for (int r = 0; r < m.rows(); ++r) {
      if (r == rank || m.at(r, col).isZero()) continue;
      Scalar f = m.at(r, col);
      for (int c = col; c < m.cols(); ++c) m.at(r, c) -= f * m.at(rank, c);
    }
    ++rank;
  }
  return rank;
}

inline std::pair<Matrix, int> rref(const Matrix& m) {
  Matrix r = m;
  int rank = rrefInPlace(r);
  return {std::move(r), rank};
}

inline int rankOf(const Matrix& m) {
  Matrix r = m;
  return rrefInPlace(r);
}

}  // namespace commalg
