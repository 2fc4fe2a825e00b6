#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

#include "commalg/errors.hpp"

namespace commalg {

/// Exact base field: the rationals, or a prime field F_p with p < 2^31.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };

  Kind kind{Kind::Rationals};
  std::int64_t characteristic{0};  // 0 for Q, the prime p for F_p

  static FieldSpec rationals() { return FieldSpec{Kind::Rationals, 0}; }
  static FieldSpec prime(std::int64_t p) {
    if (p < 2 || p >= (std::int64_t{1} << 31) || !isPrime(p))
      throw Error("characteristic must be a prime < 2^31, got " + std::to_string(p));
    return FieldSpec{Kind::PrimeField, p};
  }

  bool operator==(const FieldSpec&) const = default;

  std::string name() const {
    return kind == Kind::Rationals ? "Q" : "F" + std::to_string(characteristic);
  }

  static bool isPrime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }
};

/// An element of a FieldSpec field. Rationals are arbitrary-precision and
/// kept reduced by GMP; prime-field values are residues in [0, p).
class Scalar {
 public:
  Scalar() = default;
  explicit Scalar(FieldSpec f) : field_(f) {}

  static Scalar zero(FieldSpec f) { return Scalar(f); }
  static Scalar one(FieldSpec f) { return fromInt(f, 1); }

  static Scalar fromInt(FieldSpec f, std::int64_t v) {
    Scalar s(f);
    if (f.kind == FieldSpec::Kind::Rationals) {
      s.rat_ = v;
    } else {
      std::int64_t r = v % f.characteristic;
      if (r < 0) r += f.characteristic;
      s.res_ = r;
    }
    return s;
  }

  static Scalar fromRational(FieldSpec f, const mpq_class& q) {
    if (f.kind != FieldSpec::Kind::Rationals)
      throw FieldMismatchError("rational literal used with a prime field");
    Scalar s(f);
    s.rat_ = q;
    s.rat_.canonicalize();
    return s;
  }

  const FieldSpec& field() const { return field_; }

  bool isZero() const {
    return field_.kind == FieldSpec::Kind::Rationals ? rat_ == 0 : res_ == 0;
  }
  bool isOne() const {
    return field_.kind == FieldSpec::Kind::Rationals ? rat_ == 1 : res_ == 1;
  }

  Scalar operator+(const Scalar& o) const {
    checkField(o);
    Scalar r(field_);
    if (rationals())
      r.rat_ = rat_ + o.rat_;
    else
      r.res_ = (res_ + o.res_) % field_.characteristic;
    return r;
  }

  Scalar operator-(const Scalar& o) const {
    checkField(o);
    Scalar r(field_);
    if (rationals())
      r.rat_ = rat_ - o.rat_;
    else
      r.res_ = (res_ - o.res_ + field_.characteristic) % field_.characteristic;
    return r;
  }

  Scalar operator*(const Scalar& o) const {
    checkField(o);
    Scalar r(field_);
    if (rationals())
      r.rat_ = rat_ * o.rat_;
    else
      r.res_ = mulmod(res_, o.res_, field_.characteristic);
    return r;
  }

  Scalar operator-() const {
    Scalar r(field_);
    if (rationals())
      r.rat_ = -rat_;
    else
      r.res_ = res_ == 0 ? 0 : field_.characteristic - res_;
    return r;
  }

  Scalar inverse() const {
    if (isZero()) throw Error("division by zero");
    Scalar r(field_);
    if (rationals()) {
      r.rat_ = 1 / rat_;
    } else {
      r.res_ = invmod(res_, field_.characteristic);
    }
    return r;
  }

  Scalar operator/(const Scalar& o) const { return *this * o.inverse(); }

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  bool operator==(const Scalar& o) const {
    if (field_ != o.field_) return false;
    return rationals() ? rat_ == o.rat_ : res_ == o.res_;
  }
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  const mpq_class& rational() const { return rat_; }
  std::int64_t residue() const { return res_; }

  std::string str() const {
    if (rationals()) return rat_.get_str();
    return std::to_string(res_);
  }

 private:
  bool rationals() const { return field_.kind == FieldSpec::Kind::Rationals; }

  void checkField(const Scalar& o) const {
    if (field_ != o.field_)
      throw FieldMismatchError("scalar field mismatch: " + field_.name() + " vs " +
                               o.field_.name());
  }

  static std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t p) {
    // p < 2^31 so the product fits in 64 bits.
    return (a * b) % p;
  }

  static std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t t = 0, newt = 1, r = p, newr = a;
    while (newr != 0) {
      std::int64_t q = r / newr;
      std::int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (t < 0) t += p;
    return t;
  }

  FieldSpec field_{};
  mpq_class rat_{0};
  std::int64_t res_{0};
};

}  // namespace commalg
