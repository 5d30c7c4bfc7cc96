#pragma once

// Exact coefficient arithmetic: QQ (arbitrary-precision rationals) and F_p.
// Both fields share one value type (mpq_class); F_p values are kept
// normalized with numerator in [0,p) and denominator 1, so equality of
// scalars is plain mpq equality.

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace mbgg {

using Scalar = mpq_class;

class AlgebraError : public std::runtime_error {
 public:
  enum class Code {
    BadInput,
    NotPositivelyGraded,
    Inhomogeneous,
    RingMismatch,
    NotSquareZero,
    RelationsNotPreserved,
    NotSingleDegree,
    UnsupportedGrading,
    NonzeroDegreeDifferential,
    DivisionByZero,
  };

  AlgebraError(Code code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(0); }

  static FieldSpec prime(long p) {
    if (p < 2)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "field characteristic must be a prime >= 2");
    mpz_class pz(p);
    if (mpz_probab_prime_p(pz.get_mpz_t(), 40) == 0)
      throw AlgebraError(AlgebraError::Code::BadInput,
                         "field characteristic " + std::to_string(p) +
                             " is not prime");
    return FieldSpec(p);
  }

  long characteristic() const { return p_; }
  bool isRational() const { return p_ == 0; }

  bool operator==(const FieldSpec& o) const { return p_ == o.p_; }
  bool operator!=(const FieldSpec& o) const { return p_ != o.p_; }

  Scalar zero() const { return Scalar(0); }
  Scalar one() const { return Scalar(1); }

  // Canonical representative: mpq_class keeps rationals reduced with a
  // positive denominator; mod p we additionally fold into [0,p).
  Scalar normalize(const Scalar& a) const {
    if (p_ == 0) return a;
    mpz_class den = a.get_den();
    mpz_class num = a.get_num() % p_;
    if (num < 0) num += p_;
    if (den != 1) {
      mpz_class deninv = invertMod(den % p_);
      num = (num * deninv) % p_;
    }
    return Scalar(num);
  }

  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }

  Scalar inv(const Scalar& a) const {
    if (a == 0)
      throw AlgebraError(AlgebraError::Code::DivisionByZero,
                         "inverse of zero field element");
    if (p_ == 0) return Scalar(1) / a;
    Scalar n = normalize(a);
    return Scalar(invertMod(n.get_num()));
  }

  Scalar div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

  Scalar fromLong(long v) const { return normalize(Scalar(v)); }

  bool isZero(const Scalar& a) const {
    return p_ == 0 ? a == 0 : normalize(a) == 0;
  }

  // Display form; mod p uses balanced representatives so e.g. -1 prints as
  // -1 rather than p-1.
  std::string show(const Scalar& a) const {
    if (p_ == 0) return a.get_str();
    Scalar n = normalize(a);
    mpz_class num = n.get_num();
    if (2 * num > p_) num -= p_;
    return num.get_str();
  }

 private:
  explicit FieldSpec(long p) : p_(p) {}

  mpz_class invertMod(const mpz_class& v) const {
    mpz_class r, pz(p_);
    if (mpz_invert(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t()) == 0)
      throw AlgebraError(AlgebraError::Code::DivisionByZero,
                         "element not invertible mod p");
    return r;
  }

  long p_;  // 0 = rationals
};

}  // namespace mbgg
