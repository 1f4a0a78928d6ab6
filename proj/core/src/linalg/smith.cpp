#include "opk/linalg/smith.hpp"

#include <stdexcept>
#include <utility>

namespace opk::linalg {

namespace {

using Dense = std::vector<std::vector<Integer>>;

Dense identity(int n) {
  Dense m(static_cast<std::size_t>(n), std::vector<Integer>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

bool a_not_divisible(const Integer& x, const Integer& pivot) {
  return x != 0 && mpz_divisible_p(x.get_mpz_t(), pivot.get_mpz_t()) == 0;
}

ExactMatrix to_matrix(const Dense& d, int rows, int cols) {
  ExactMatrix m(CoefficientRing::integers(), rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (d[i][j] != 0) m.set(i, j, Scalar(d[i][j]));
  return m;
}

/** Dense elimination state: a = u * input * v. */
struct State {
  int m, n;
  Dense a, u, v;

  void swap_rows(int i, int j) {
    std::swap(a[i], a[j]);
    std::swap(u[i], u[j]);
  }
  void swap_cols(int i, int j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row_i += q * row_j
  void add_row(int i, int j, const Integer& q) {
    for (int c = 0; c < n; ++c) a[i][c] += q * a[j][c];
    for (int c = 0; c < m; ++c) u[i][c] += q * u[j][c];
  }
  // col_i += q * col_j
  void add_col(int i, int j, const Integer& q) {
    for (int r = 0; r < m; ++r) a[r][i] += q * a[r][j];
    for (int r = 0; r < n; ++r) v[r][i] += q * v[r][j];
  }
  void negate_row(int i) {
    for (auto& x : a[i]) x = -x;
    for (auto& x : u[i]) x = -x;
  }

  /// Moves the nonzero entry of least absolute value in the block [t.., t..] to (t, t).
  bool place_min(int t) {
    int bi = -1, bj = -1;
    for (int i = t; i < m; ++i)
      for (int j = t; j < n; ++j)
        if (a[i][j] != 0 && (bi < 0 || abs(a[i][j]) < abs(a[bi][bj]))) {
          bi = i;
          bj = j;
        }
    if (bi < 0) return false;
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
    return true;
  }

  /// Reduces row and column t; returns true once both are clear.
  bool clear_cross(int t) {
    bool clean = true;
    for (int i = t + 1; i < m; ++i) {
      if (a[i][t] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
      add_row(i, t, -q);
      if (a[i][t] != 0) clean = false;
    }
    for (int j = t + 1; j < n; ++j) {
      if (a[t][j] == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
      add_col(j, t, -q);
      if (a[t][j] != 0) clean = false;
    }
    return clean;
  }

  /// Pivot position of least absolute value among row t and column t.
  void place_min_cross(int t) {
    int bi = t, bj = t;
    for (int i = t + 1; i < m; ++i)
      if (a[i][t] != 0 && abs(a[i][t]) < abs(a[bi][bj])) {
        bi = i;
        bj = t;
      }
    for (int j = t + 1; j < n; ++j)
      if (a[t][j] != 0 && abs(a[t][j]) < abs(a[bi][bj])) {
        bi = t;
        bj = j;
      }
    if (bi != t) swap_rows(t, bi);
    if (bj != t) swap_cols(t, bj);
  }
};

}  // namespace

std::vector<Integer> SmithForm::diagonal() const {
  std::vector<Integer> d;
  const int k = std::min(D.rows(), D.cols());
  for (int i = 0; i < k; ++i) {
    const Scalar x = D.at(i, i);
    if (x != 0) d.push_back(x.get_num());
  }
  return d;
}

SmithForm smith_normal_form(const ExactMatrix& input) {
  if (input.ring().kind() != RingKind::Integers) throw std::invalid_argument("Smith normal form requires an integer matrix");
  State s;
  s.m = input.rows();
  s.n = input.cols();
  s.a.assign(static_cast<std::size_t>(s.m), std::vector<Integer>(static_cast<std::size_t>(s.n), 0));
  for (int j = 0; j < s.n; ++j)
    for (const auto& [i, x] : input.column(j)) s.a[i][j] = x.get_num();
  s.u = identity(s.m);
  s.v = identity(s.n);

  const int k = std::min(s.m, s.n);
  for (int t = 0; t < k; ++t) {
    if (!s.place_min(t)) break;
    for (;;) {
      while (!s.clear_cross(t)) s.place_min_cross(t);
      // Divisibility: fold any row whose entries are not multiples of the pivot into row t.
      int bad = -1;
      for (int i = t + 1; i < s.m && bad < 0; ++i)
        for (int j = t + 1; j < s.n; ++j)
          if (a_not_divisible(s.a[i][j], s.a[t][t])) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      s.add_row(t, bad, Integer(1));
    }
    if (s.a[t][t] < 0) s.negate_row(t);
  }
  return SmithForm{to_matrix(s.u, s.m, s.m), to_matrix(s.a, s.m, s.n), to_matrix(s.v, s.n, s.n)};
}

}  // namespace opk::linalg
