#include "opk/linalg/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace opk::linalg {

void VecBuilder::add(int index, const Scalar& value) {
  if (value == 0) return;
  auto [it, inserted] = terms_.emplace(index, value);
  if (!inserted) {
    it->second = ring_->add(it->second, value);
    if (it->second == 0) terms_.erase(it);
  } else {
    it->second = ring_->normalize(value);
    if (it->second == 0) terms_.erase(it);
  }
}

void VecBuilder::add(const SparseVec& v, const Scalar& coeff) {
  if (coeff == 0) return;
  for (const auto& [i, x] : v) add(i, x * coeff);
}

SparseVec VecBuilder::take() {
  SparseVec out(terms_.begin(), terms_.end());
  terms_.clear();
  return out;
}

SparseVec scale(const SparseVec& v, const Scalar& c, const CoefficientRing& ring) {
  SparseVec out;
  if (c == 0) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    Scalar y = ring.mul(x, c);
    if (y != 0) out.emplace_back(i, std::move(y));
  }
  return out;
}

SparseVec add_scaled(const SparseVec& a, const SparseVec& b, const Scalar& c, const CoefficientRing& ring) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      Scalar y = ring.mul(b[j].second, c);
      if (y != 0) out.emplace_back(b[j].first, std::move(y));
      ++j;
    } else {
      Scalar y = ring.add(a[i].second, ring.mul(b[j].second, c));
      if (y != 0) out.emplace_back(a[i].first, std::move(y));
      ++i;
      ++j;
    }
  }
  return out;
}

Scalar entry(const SparseVec& v, int index) {
  auto it = std::lower_bound(v.begin(), v.end(), index, [](const auto& p, int k) { return p.first < k; });
  if (it != v.end() && it->first == index) return it->second;
  return Scalar(0);
}

ExactMatrix::ExactMatrix(const CoefficientRing& ring, int rows, int cols)
    : ring_(ring), rows_(rows), cols_(cols), cols_data_(static_cast<std::size_t>(cols)) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix size");
}

ExactMatrix ExactMatrix::identity(const CoefficientRing& ring, int n) {
  ExactMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.cols_data_[i].emplace_back(i, Scalar(1));
  return m;
}

ExactMatrix ExactMatrix::from_rows(const CoefficientRing& ring, const std::vector<std::vector<long>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  ExactMatrix m(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.set(i, j, Scalar(rows[i][j]));
  }
  return m;
}

ExactMatrix ExactMatrix::from_dense(const CoefficientRing& ring, const std::vector<std::vector<Scalar>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  ExactMatrix m(ring, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

Scalar ExactMatrix::at(int r, int c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  return entry(cols_data_[c], r);
}

void ExactMatrix::set(int r, int c, const Scalar& v) {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
  auto& col = cols_data_[c];
  Scalar x = ring_.normalize(v);
  auto it = std::lower_bound(col.begin(), col.end(), r, [](const auto& p, int k) { return p.first < k; });
  if (it != col.end() && it->first == r) {
    if (x == 0) col.erase(it);
    else it->second = std::move(x);
  } else if (x != 0) {
    col.insert(it, {r, std::move(x)});
  }
}

void ExactMatrix::add_to(int r, int c, const Scalar& v) { set(r, c, at(r, c) + v); }

void ExactMatrix::set_column(int c, SparseVec v) {
  if (c < 0 || c >= cols_) throw std::out_of_range("matrix column");
  for (const auto& [r, x] : v)
    if (r < 0 || r >= rows_) throw std::out_of_range("matrix row in column");
  cols_data_[c] = std::move(v);
}

std::size_t ExactMatrix::nonzeros() const {
  std::size_t n = 0;
  for (const auto& c : cols_data_) n += c.size();
  return n;
}

bool ExactMatrix::is_zero() const { return nonzeros() == 0; }

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, x] : cols_data_[c]) t.cols_data_[r].emplace_back(c, x);
  return t;
}

SparseVec ExactMatrix::apply(const SparseVec& v) const {
  VecBuilder b(ring_);
  for (const auto& [j, x] : v) {
    if (j < 0 || j >= cols_) throw std::out_of_range("vector index beyond matrix columns");
    b.add(cols_data_[j], x);
  }
  return b.take();
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix product size mismatch");
  if (ring_ != o.ring_) throw std::invalid_argument("matrix product ring mismatch");
  ExactMatrix p(ring_, rows_, o.cols_);
  for (int c = 0; c < o.cols_; ++c) p.cols_data_[c] = apply(o.cols_data_[c]);
  return p;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix sum size mismatch");
  ExactMatrix s(ring_, rows_, cols_);
  for (int c = 0; c < cols_; ++c) s.cols_data_[c] = add_scaled(cols_data_[c], o.cols_data_[c], Scalar(1), ring_);
  return s;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix difference size mismatch");
  ExactMatrix s(ring_, rows_, cols_);
  for (int c = 0; c < cols_; ++c) s.cols_data_[c] = add_scaled(cols_data_[c], o.cols_data_[c], Scalar(-1), ring_);
  return s;
}

ExactMatrix ExactMatrix::submatrix(const std::vector<int>& rows, const std::vector<int>& cols) const {
  std::vector<int> row_pos(static_cast<std::size_t>(rows_), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos.at(rows[i]) = static_cast<int>(i);
  ExactMatrix s(ring_, static_cast<int>(rows.size()), static_cast<int>(cols.size()));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    SparseVec v;
    for (const auto& [r, x] : cols_data_.at(cols[j]))
      if (row_pos[r] >= 0) v.emplace_back(row_pos[r], x);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    s.cols_data_[j] = std::move(v);
  }
  return s;
}

Scalar ExactMatrix::trace() const {
  if (rows_ != cols_) throw std::invalid_argument("trace of non-square matrix");
  Scalar t = 0;
  for (int i = 0; i < cols_; ++i) t += entry(cols_data_[i], i);
  return ring_.normalize(t);
}

std::vector<std::vector<Scalar>> ExactMatrix::to_dense() const {
  std::vector<std::vector<Scalar>> d(static_cast<std::size_t>(rows_), std::vector<Scalar>(static_cast<std::size_t>(cols_)));
  for (int c = 0; c < cols_; ++c)
    for (const auto& [r, x] : cols_data_[c]) d[r][c] = x;
  return d;
}

ExactMatrix ExactMatrix::change_ring(const CoefficientRing& ring) const {
  ExactMatrix m(ring, rows_, cols_);
  for (int c = 0; c < cols_; ++c) {
    SparseVec v;
    for (const auto& [r, x] : cols_data_[c]) {
      Scalar y = ring.normalize(x);
      if (y != 0) v.emplace_back(r, std::move(y));
    }
    m.cols_data_[c] = std::move(v);
  }
  return m;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return rows_ == o.rows_ && cols_ == o.cols_ && cols_data_ == o.cols_data_;
}

}  // namespace opk::linalg
