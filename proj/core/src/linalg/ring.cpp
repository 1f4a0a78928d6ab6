#include "opk/linalg/ring.hpp"

#include <cctype>

namespace opk::linalg {

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

CoefficientRing CoefficientRing::integers() {
  CoefficientRing r;
  r.kind_ = RingKind::Integers;
  return r;
}

CoefficientRing CoefficientRing::rationals() {
  CoefficientRing r;
  r.kind_ = RingKind::Rationals;
  return r;
}

CoefficientRing CoefficientRing::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("not a prime: " + std::to_string(p));
  // Products of two residues must fit the fast elimination path.
  if (p >= (std::int64_t(1) << 31)) throw std::invalid_argument("prime too large: " + std::to_string(p));
  CoefficientRing r;
  r.kind_ = RingKind::PrimeField;
  r.prime_ = p;
  return r;
}

CoefficientRing CoefficientRing::parse(const std::string& name) {
  if (name == "Z" || name == "ZZ") return integers();
  if (name == "Q" || name == "QQ") return rationals();
  if (name.size() >= 2 && (name[0] == 'F' || name[0] == 'f')) {
    const std::string digits = name.substr(1);
    for (char c : digits)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("unknown ring: " + name);
    return prime_field(std::stoll(digits));
  }
  throw std::invalid_argument("unknown ring: " + name);
}

std::string CoefficientRing::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(prime_);
  }
  return "?";
}

Scalar CoefficientRing::normalize(const Scalar& x) const {
  switch (kind_) {
    case RingKind::Rationals: return x;
    case RingKind::Integers:
      if (x.get_den() != 1) throw std::domain_error("non-integral value " + to_string(x) + " over Z");
      return x;
    case RingKind::PrimeField: {
      const Integer p(static_cast<long>(prime_));
      Integer num = x.get_num() % p;
      if (num < 0) num += p;
      if (x.get_den() == 1) return Scalar(num);
      Integer den = x.get_den() % p;
      if (den < 0) den += p;
      if (den == 0) throw std::domain_error("denominator divisible by " + std::to_string(prime_));
      Integer inv;
      mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
      Integer v = (num * inv) % p;
      return Scalar(v);
    }
  }
  return x;
}

bool CoefficientRing::is_unit(const Scalar& a) const {
  if (a == 0) return false;
  if (kind_ == RingKind::Integers) return a == 1 || a == -1;
  return true;
}

Scalar CoefficientRing::inverse(const Scalar& a) const {
  if (!is_unit(a)) throw std::domain_error("not a unit: " + to_string(a));
  if (kind_ == RingKind::PrimeField) {
    const Integer p(static_cast<long>(prime_));
    Integer inv;
    Integer num = a.get_num();
    mpz_invert(inv.get_mpz_t(), num.get_mpz_t(), p.get_mpz_t());
    return Scalar(inv);
  }
  Scalar r = 1 / a;
  r.canonicalize();
  return r;
}

std::string to_string(const Scalar& x) { return x.get_str(); }
std::string to_string(const Integer& x) { return x.get_str(); }

}  // namespace opk::linalg
