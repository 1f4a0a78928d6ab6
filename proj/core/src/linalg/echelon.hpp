#pragma once

// Internal sparse row-echelon engine shared by the elimination routines.

#include <cstdint>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "opk/linalg/ring.hpp"

namespace opk::linalg::detail {

struct Overflow {};

/// F_p with residues in int64.
struct FpDomain {
  using T = std::int64_t;
  static constexpr bool euclidean = false;
  std::int64_t p;
  T from(const Scalar& x) const { return static_cast<T>(x.get_num().get_si()); }
  Scalar to(T x) const { return Scalar(static_cast<long>(x)); }
  bool zero(T a) const { return a == 0; }
  T mul(T a, T b) const { return (a * b) % p; }
  T addmul(T a, T c, T b) const { return (a + c * b) % p; }
  T neg(T a) const { return a == 0 ? 0 : p - a; }
  T inv(T a) const {
    std::int64_t t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      const std::int64_t q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return t < 0 ? t + p : t;
  }
};

/// Q with GMP rationals.
struct QDomain {
  using T = mpq_class;
  static constexpr bool euclidean = false;
  T from(const Scalar& x) const { return x; }
  Scalar to(const T& x) const { return x; }
  bool zero(const T& a) const { return a == 0; }
  T mul(const T& a, const T& b) const { return a * b; }
  T addmul(const T& a, const T& c, const T& b) const { return a + c * b; }
  T neg(const T& a) const { return -a; }
  T inv(const T& a) const { return 1 / a; }
};

/// Z with GMP integers.
struct ZDomain {
  using T = mpz_class;
  static constexpr bool euclidean = true;
  T from(const Scalar& x) const { return x.get_num(); }
  Scalar to(const T& x) const { return Scalar(x); }
  bool zero(const T& a) const { return a == 0; }
  T mul(const T& a, const T& b) const { return a * b; }
  T addmul(const T& a, const T& c, const T& b) const { return a + c * b; }
  T neg(const T& a) const { return -a; }
  bool divides(const T& a, const T& b) const { return mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t()) != 0; }
  T quot(const T& b, const T& a) const {
    T q;
    mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
    return q;
  }
  void gcdext(const T& a, const T& b, T& g, T& s, T& t) const {
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  }
  bool is_unit(const T& a) const { return a == 1 || a == -1; }
  bool negative(const T& a) const { return a < 0; }
};

/// Z in int64 with overflow detection; callers retry with ZDomain on Overflow.
struct Z64Domain {
  using T = std::int64_t;
  static constexpr bool euclidean = true;
  T from(const Scalar& x) const {
    if (!x.get_num().fits_slong_p()) throw Overflow{};
    return x.get_num().get_si();
  }
  Scalar to(T x) const { return Scalar(static_cast<long>(x)); }
  bool zero(T a) const { return a == 0; }
  T mul(T a, T b) const {
    T r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  T addmul(T a, T c, T b) const {
    T r = mul(c, b);
    if (__builtin_add_overflow(a, r, &r)) throw Overflow{};
    return r;
  }
  T neg(T a) const {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
  }
  bool divides(T a, T b) const { return b % a == 0; }
  T quot(T b, T a) const {
    if (a == -1 && b == INT64_MIN) throw Overflow{};
    return b / a;
  }
  void gcdext(T a, T b, T& g, T& s, T& t) const {
    T r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const T q = r0 / r1;
      T tmp = r0 - mul(q, r1);
      r0 = r1;
      r1 = tmp;
      tmp = s0 - mul(q, s1);
      s0 = s1;
      s1 = tmp;
      tmp = t0 - mul(q, t1);
      t0 = t1;
      t1 = tmp;
    }
    if (r0 < 0) {
      r0 = neg(r0);
      s0 = neg(s0);
      t0 = neg(t0);
    }
    g = r0;
    s = s0;
    t = t0;
  }
  bool is_unit(T a) const { return a == 1 || a == -1; }
  bool negative(T a) const { return a < 0; }
};

template <class D>
using Row = std::vector<std::pair<int, typename D::T>>;

/// r + c * p, merged by column.
template <class D>
Row<D> axpy(const D& dom, const Row<D>& r, const typename D::T& c, const Row<D>& p) {
  Row<D> out;
  out.reserve(r.size() + p.size());
  std::size_t i = 0, j = 0;
  while (i < r.size() || j < p.size()) {
    if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
      out.push_back(r[i++]);
    } else if (i == r.size() || p[j].first < r[i].first) {
      auto y = dom.mul(c, p[j].second);
      if (!dom.zero(y)) out.emplace_back(p[j].first, std::move(y));
      ++j;
    } else {
      auto y = dom.addmul(r[i].second, c, p[j].second);
      if (!dom.zero(y)) out.emplace_back(r[i].first, std::move(y));
      ++i;
      ++j;
    }
  }
  return out;
}

/// a * x + b * y for the Euclidean 2x2 step.
template <class D>
Row<D> combine(const D& dom, const typename D::T& a, const Row<D>& x, const typename D::T& b, const Row<D>& y) {
  Row<D> ax;
  ax.reserve(x.size());
  for (const auto& [i, v] : x) {
    auto w = dom.mul(a, v);
    if (!dom.zero(w)) ax.emplace_back(i, std::move(w));
  }
  return axpy(dom, ax, b, y);
}

template <class D>
Row<D> scale_row(const D& dom, const typename D::T& c, const Row<D>& x) {
  Row<D> out;
  out.reserve(x.size());
  for (const auto& [i, v] : x) {
    auto w = dom.mul(c, v);
    if (!dom.zero(w)) out.emplace_back(i, std::move(w));
  }
  return out;
}

/**
 * Incremental echelon form keyed by leading column. Over fields the pivot
 * rows are monic; over Z the pivot rows are updated by unimodular gcd steps,
 * so the row lattice is preserved.
 */
template <class D>
class Echelon {
 public:
  using T = typename D::T;
  using R = Row<D>;

  Echelon(D dom, bool track) : dom_(std::move(dom)), track_(track) {}

  const D& dom() const { return dom_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<R>& rows() const { return rows_; }
  const std::vector<R>& tracks() const { return tracks_; }
  const std::unordered_map<int, int>& pivots() const { return pivot_of_col_; }

  /// Inserts r (with tracking t). Returns false if r reduced to zero; then *null receives the tracking.
  bool insert(R r, R t, R* null) {
    while (!r.empty()) {
      const int c = r.front().first;
      auto it = pivot_of_col_.find(c);
      if (it == pivot_of_col_.end()) {
        normalize(r, t);
        pivot_of_col_.emplace(c, static_cast<int>(rows_.size()));
        rows_.push_back(std::move(r));
        if (track_) tracks_.push_back(std::move(t));
        return true;
      }
      const int k = it->second;
      if constexpr (!D::euclidean) {
        const T coef = dom_.neg(r.front().second);
        r = axpy(dom_, r, coef, rows_[k]);
        if (track_) t = axpy(dom_, t, coef, tracks_[k]);
      } else {
        const T& a = rows_[k].front().second;
        const T& b = r.front().second;
        if (dom_.divides(a, b)) {
          const T q = dom_.neg(dom_.quot(b, a));
          r = axpy(dom_, r, q, rows_[k]);
          if (track_) t = axpy(dom_, t, q, tracks_[k]);
        } else {
          T g, s, u;
          dom_.gcdext(a, b, g, s, u);
          const T bg = dom_.quot(b, g);
          const T ag = dom_.neg(dom_.quot(a, g));
          R np = combine(dom_, s, rows_[k], u, r);
          R nr = combine(dom_, bg, rows_[k], ag, r);
          if (track_) {
            R nt_p = combine(dom_, s, tracks_[k], u, t);
            R nt_r = combine(dom_, bg, tracks_[k], ag, t);
            tracks_[k] = std::move(nt_p);
            t = std::move(nt_r);
          }
          rows_[k] = std::move(np);
          r = std::move(nr);
        }
      }
    }
    if (null) *null = std::move(t);
    return false;
  }

  /**
   * Reduces v against the pivots; returns true if v lies in the row span
   * (row lattice over Z) and accumulates the coefficients on the tracking vectors.
   */
  bool express(R v, R* coeffs) const {
    R acc;
    while (!v.empty()) {
      const int c = v.front().first;
      auto it = pivot_of_col_.find(c);
      if (it == pivot_of_col_.end()) return false;
      const int k = it->second;
      T q;
      if constexpr (D::euclidean) {
        if (!dom_.divides(rows_[k].front().second, v.front().second)) return false;
        q = dom_.quot(v.front().second, rows_[k].front().second);
      } else {
        q = v.front().second;
      }
      v = axpy(dom_, v, dom_.neg(q), rows_[k]);
      if (track_) acc = axpy(dom_, acc, q, tracks_[k]);
    }
    if (coeffs) *coeffs = std::move(acc);
    return true;
  }

 private:
  void normalize(R& r, R& t) {
    if constexpr (!D::euclidean) {
      const T inv = dom_.inv(r.front().second);
      r = scale_row(dom_, inv, r);
      if (track_) t = scale_row(dom_, inv, t);
    } else {
      if (dom_.negative(r.front().second)) {
        const T m1 = dom_.neg(T(1));
        r = scale_row(dom_, m1, r);
        if (track_) t = scale_row(dom_, m1, t);
      }
    }
  }

  D dom_;
  bool track_;
  std::vector<R> rows_;
  std::vector<R> tracks_;
  std::unordered_map<int, int> pivot_of_col_;
};

}  // namespace opk::linalg::detail
