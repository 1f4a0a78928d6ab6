#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace opk::linalg {

/// Exact scalar. Integers and residues are stored with denominator 1.
using Scalar = mpq_class;
using Integer = mpz_class;

enum class RingKind { Integers, Rationals, PrimeField };

/** The ground ring: Z, Q or F_p. Scalars are kept normalized for the ring. */
class CoefficientRing {
 public:
  CoefficientRing() = default;

  static CoefficientRing integers();
  static CoefficientRing rationals();
  /// Throws std::invalid_argument if p is not prime.
  static CoefficientRing prime_field(std::int64_t p);
  /// Accepts "Z", "Q", "Fp" style names ("F2", "F3", ...).
  static CoefficientRing parse(const std::string& name);

  RingKind kind() const { return kind_; }
  std::int64_t prime() const { return prime_; }
  bool is_field() const { return kind_ != RingKind::Integers; }
  std::string name() const;

  /// Brings a value into canonical form; throws if it is not a ring element.
  Scalar normalize(const Scalar& x) const;
  Scalar from_int(long v) const { return normalize(Scalar(v)); }

  Scalar add(const Scalar& a, const Scalar& b) const { return normalize(a + b); }
  Scalar sub(const Scalar& a, const Scalar& b) const { return normalize(a - b); }
  Scalar mul(const Scalar& a, const Scalar& b) const { return normalize(a * b); }
  Scalar neg(const Scalar& a) const { return normalize(-a); }

  bool is_unit(const Scalar& a) const;
  /// Multiplicative inverse of a unit; throws otherwise.
  Scalar inverse(const Scalar& a) const;

  bool operator==(const CoefficientRing& o) const { return kind_ == o.kind_ && prime_ == o.prime_; }
  bool operator!=(const CoefficientRing& o) const { return !(*this == o); }

 private:
  RingKind kind_ = RingKind::Rationals;
  std::int64_t prime_ = 0;
};

bool is_prime(std::int64_t p);

/// Rendering used in serialized output: "3", "-1/2".
std::string to_string(const Scalar& x);
std::string to_string(const Integer& x);

}  // namespace opk::linalg
