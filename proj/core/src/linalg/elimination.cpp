#include "opk/linalg/elimination.hpp"

#include <algorithm>
#include <mutex>
#include <unordered_map>
#include <variant>

#include "echelon.hpp"

namespace opk::linalg {

using namespace detail;

namespace {

template <class D>
Row<D> to_row(const D& dom, const SparseVec& v) {
  Row<D> r;
  r.reserve(v.size());
  for (const auto& [i, x] : v) r.emplace_back(i, dom.from(x));
  return r;
}

template <class D>
SparseVec from_row(const D& dom, const Row<D>& r, const CoefficientRing& ring) {
  SparseVec v;
  v.reserve(r.size());
  for (const auto& [i, x] : r) {
    Scalar y = ring.normalize(dom.to(x));
    if (y != 0) v.emplace_back(i, std::move(y));
  }
  return v;
}

bool integral(const ExactMatrix& a) {
  for (int c = 0; c < a.cols(); ++c)
    for (const auto& [r, x] : a.column(c))
      if (x.get_den() != 1) return false;
  return true;
}

/// Runs f with the cheapest exact domain for the ring of a.
template <class F>
auto dispatch(const ExactMatrix& a, F&& f) {
  const CoefficientRing& ring = a.ring();
  if (ring.kind() == RingKind::PrimeField) return f(FpDomain{ring.prime()});
  if (ring.kind() == RingKind::Integers || integral(a)) {
    try {
      return f(Z64Domain{});
    } catch (const Overflow&) {
      return f(ZDomain{});
    }
  }
  return f(QDomain{});
}

template <class D>
Row<D> unit_row(const D& dom, int j) {
  Row<D> t;
  t.emplace_back(j, dom.from(Scalar(1)));
  return t;
}

template <class D>
std::vector<Integer> invariant_factors_impl(const D& dom, const ExactMatrix& a) {
  std::vector<Row<D>> rows;
  rows.reserve(a.cols());
  for (int c = 0; c < a.cols(); ++c) rows.push_back(to_row(dom, a.column(c)));
  for (;;) {
    Echelon<D> e(dom, false);
    for (auto& r : rows) e.insert(std::move(r), {}, nullptr);
    bool units = true;
    bool diagonal = true;
    for (const auto& r : e.rows()) {
      if (!dom.is_unit(r.front().second)) units = false;
      if (r.size() != 1) diagonal = false;
    }
    if (units) return std::vector<Integer>(e.rows().size(), Integer(1));
    if (diagonal) {
      std::vector<Integer> d;
      for (const auto& r : e.rows()) d.push_back(abs(Integer(dom.to(r.front().second).get_num())));
      // Enforce the divisibility chain on the non-unit entries.
      std::vector<Integer> big;
      std::size_t ones = 0;
      for (auto& x : d) {
        if (x == 1) ++ones;
        else big.push_back(x);
      }
      for (std::size_t i = 0; i < big.size(); ++i)
        for (std::size_t j = i + 1; j < big.size(); ++j) {
          Integer g = gcd(big[i], big[j]);
          Integer l = big[i] / g * big[j];
          big[i] = g;
          big[j] = l;
        }
      std::vector<Integer> out(ones, Integer(1));
      for (auto& x : big) out.push_back(x);
      std::sort(out.begin(), out.end());
      return out;
    }
    // Transpose the pivot rows and run the next echelon pass on the columns.
    int width = 0;
    for (const auto& r : e.rows()) width = std::max(width, r.back().first + 1);
    std::vector<Row<D>> cols(static_cast<std::size_t>(width));
    for (std::size_t i = 0; i < e.rows().size(); ++i)
      for (const auto& [c, x] : e.rows()[i]) cols[c].emplace_back(static_cast<int>(i), x);
    rows.clear();
    for (auto& c : cols)
      if (!c.empty()) rows.push_back(std::move(c));
  }
}

}  // namespace

int rank(const ExactMatrix& a) {
  return dispatch(a, [&](auto dom) {
    using D = decltype(dom);
    Echelon<D> e(dom, false);
    for (int c = 0; c < a.cols(); ++c) e.insert(to_row(dom, a.column(c)), {}, nullptr);
    return e.rank();
  });
}

ExactMatrix kernel_basis(const ExactMatrix& a) {
  std::vector<SparseVec> vecs = dispatch(a, [&](auto dom) {
    using D = decltype(dom);
    Echelon<D> e(dom, true);
    std::vector<SparseVec> out;
    for (int c = 0; c < a.cols(); ++c) {
      Row<D> null;
      if (!e.insert(to_row(dom, a.column(c)), unit_row(dom, c), &null)) out.push_back(from_row(dom, null, a.ring()));
    }
    return out;
  });
  ExactMatrix k(a.ring(), a.cols(), static_cast<int>(vecs.size()));
  for (std::size_t j = 0; j < vecs.size(); ++j) k.set_column(static_cast<int>(j), std::move(vecs[j]));
  return k;
}

std::vector<Integer> invariant_factors(const ExactMatrix& a) {
  if (a.ring().kind() != RingKind::Integers) throw std::invalid_argument("invariant factors need an integer matrix");
  try {
    return invariant_factors_impl(Z64Domain{}, a);
  } catch (const Overflow&) {
    return invariant_factors_impl(ZDomain{}, a);
  }
}

bool is_saturated(const ExactMatrix& columns) {
  const ExactMatrix m = columns.ring().kind() == RingKind::Integers ? columns : columns.change_ring(CoefficientRing::integers());
  for (const auto& f : invariant_factors(m))
    if (f != 1) return false;
  return true;
}

namespace {

template <class D>
RowEchelon row_echelon_impl(const D& dom, const CoefficientRing& ring, const std::vector<SparseVec>& vectors, bool reduce) {
  Echelon<D> e(dom, false);
  for (const auto& v : vectors) e.insert(to_row(dom, v), {}, nullptr);
  std::vector<Row<D>> rows = e.rows();
  std::sort(rows.begin(), rows.end(), [](const Row<D>& a, const Row<D>& b) { return a.front().first < b.front().first; });
  RowEchelon out;
  if constexpr (D::euclidean) {
    for (const auto& r : rows)
      if (!dom.is_unit(r.front().second)) out.unit_pivots = false;
  }
  if (reduce && out.unit_pivots) {
    std::unordered_map<int, std::size_t> at;
    for (std::size_t k = 0; k < rows.size(); ++k) at.emplace(rows[k].front().first, k);
    // Later rows only meet larger pivots, so clearing from the bottom up terminates with reduced rows.
    for (std::size_t k = rows.size(); k-- > 0;) {
      Row<D> r = std::move(rows[k]);
      Row<D> done;
      done.push_back(r.front());
      r.erase(r.begin());
      while (!r.empty()) {
        auto it = at.find(r.front().first);
        if (it == at.end() || it->second == k) {
          done.push_back(r.front());
          r.erase(r.begin());
          continue;
        }
        const auto& p = rows[it->second];
        // Pivot is 1 (monic or unit normalized to +1).
        r = axpy(dom, r, dom.neg(r.front().second), p);
      }
      rows[k] = std::move(done);
    }
  }
  for (const auto& r : rows) out.rows.push_back(from_row(dom, r, ring));
  return out;
}

}  // namespace

RowEchelon row_echelon(const CoefficientRing& ring, const std::vector<SparseVec>& vectors, bool reduce) {
  switch (ring.kind()) {
    case RingKind::PrimeField:
      return row_echelon_impl(FpDomain{ring.prime()}, ring, vectors, reduce);
    case RingKind::Rationals:
      return row_echelon_impl(QDomain{}, ring, vectors, reduce);
    case RingKind::Integers:
      try {
        return row_echelon_impl(Z64Domain{}, ring, vectors, reduce);
      } catch (const Overflow&) {
        return row_echelon_impl(ZDomain{}, ring, vectors, reduce);
      }
  }
  throw std::logic_error("unknown ring");
}

struct SpanSolver::Impl {
  ExactMatrix gens;
  std::variant<Echelon<FpDomain>, Echelon<Z64Domain>, Echelon<ZDomain>, Echelon<QDomain>> ech{std::in_place_index<0>, FpDomain{2}, false};
  mutable std::mutex mu;

  template <class D>
  void build(const D& dom) {
    Echelon<D> e(dom, true);
    for (int c = 0; c < gens.cols(); ++c) e.insert(to_row(dom, gens.column(c)), unit_row(dom, c), nullptr);
    ech = std::move(e);
  }

  explicit Impl(const ExactMatrix& g) : gens(g) {
    // Over Q the span is a vector space, so the integer shortcut is not valid here.
    if (gens.ring().kind() == RingKind::Rationals) {
      build(QDomain{});
      return;
    }
    dispatch(gens, [&](auto dom) {
      build(dom);
      return 0;
    });
  }

  std::optional<SparseVec> solve(const SparseVec& v) {
    for (;;) {
      try {
        return std::visit(
            [&](auto& e) -> std::optional<SparseVec> {
              Row<std::decay_t<decltype(e.dom())>> coeffs;
              if (!e.express(to_row(e.dom(), v), &coeffs)) return std::nullopt;
              return from_row(e.dom(), coeffs, gens.ring());
            },
            ech);
      } catch (const Overflow&) {
        build(ZDomain{});
      }
    }
  }
};

SpanSolver::SpanSolver(const ExactMatrix& generators) {
  // A Z64 overflow during construction is retried inside dispatch; one during solving rebuilds with GMP.
  try {
    impl_ = std::make_unique<Impl>(generators);
  } catch (const Overflow&) {
    impl_ = std::make_unique<Impl>(generators);
  }
}

SpanSolver::~SpanSolver() = default;
SpanSolver::SpanSolver(SpanSolver&&) noexcept = default;
SpanSolver& SpanSolver::operator=(SpanSolver&&) noexcept = default;

int SpanSolver::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, impl_->ech);
}

std::optional<SparseVec> SpanSolver::solve(const SparseVec& v) const {
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->solve(v);
}

ExactMatrix SpanSolver::solve_columns(const ExactMatrix& m) const {
  ExactMatrix out(m.ring(), impl_->gens.cols(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    auto s = solve(m.column(c));
    if (!s) throw std::domain_error("vector outside the span of the generators");
    out.set_column(c, std::move(*s));
  }
  return out;
}

}  // namespace opk::linalg
