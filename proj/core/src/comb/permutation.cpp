#include "opk/comb/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace opk::comb {

Permutation::Permutation(std::vector<int> images0) : img_(std::move(images0)) {
  std::vector<bool> seen(img_.size(), false);
  for (int x : img_) {
    if (x < 0 || x >= static_cast<int>(img_.size()) || seen[static_cast<std::size_t>(x)])
      throw std::invalid_argument("not a permutation");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  return Permutation(std::move(v));
}

Permutation Permutation::from_one_line(const std::vector<int>& images1) {
  std::vector<int> v;
  v.reserve(images1.size());
  for (int x : images1) v.push_back(x - 1);
  return Permutation(std::move(v));
}

Permutation Permutation::from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i) {
      const int a = c[i] - 1, b = c[(i + 1) % c.size()] - 1;
      if (a < 0 || a >= n || b < 0 || b >= n) throw std::invalid_argument("cycle entry out of range");
      v[static_cast<std::size_t>(a)] = b;
    }
  return Permutation(std::move(v));
}

Permutation Permutation::adjacent(int n, int k) {
  if (k < 0 || k + 1 >= n) throw std::invalid_argument("adjacent transposition out of range");
  Permutation p = identity(n);
  std::swap(p.img_[static_cast<std::size_t>(k)], p.img_[static_cast<std::size_t>(k + 1)]);
  return p;
}

Permutation Permutation::operator*(const Permutation& w) const {
  if (size() != w.size()) throw std::invalid_argument("permutation size mismatch");
  std::vector<int> v(img_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = img_[static_cast<std::size_t>(w.img_[i])];
  return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
  std::vector<int> v(img_.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[static_cast<std::size_t>(img_[i])] = static_cast<int>(i);
  return Permutation(std::move(v));
}

int Permutation::sign() const {
  std::vector<bool> seen(img_.size(), false);
  int s = 1;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img_[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) s = -s;
  }
  return s;
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < img_.size(); ++i)
    if (img_[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<int> Permutation::cycle_type() const {
  std::vector<bool> seen(img_.size(), false);
  std::vector<int> t;
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(img_[j])) {
      seen[j] = true;
      ++len;
    }
    t.push_back(len);
  }
  std::sort(t.rbegin(), t.rend());
  return t;
}

std::vector<int> Permutation::adjacent_word() const {
  // Right-multiplying by s_k at a descent removes one inversion; collect the steps.
  std::vector<int> w = img_;
  std::vector<int> steps;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
      if (w[k] > w[k + 1]) {
        std::swap(w[k], w[k + 1]);
        steps.push_back(static_cast<int>(k));
        changed = true;
      }
  }
  std::reverse(steps.begin(), steps.end());
  return steps;
}

long Permutation::lex_rank() const {
  const int n = size();
  long r = 0;
  for (int i = 0; i < n; ++i) {
    int smaller = 0;
    for (int j = i + 1; j < n; ++j)
      if (img_[static_cast<std::size_t>(j)] < img_[static_cast<std::size_t>(i)]) ++smaller;
    r += smaller * factorial(n - 1 - i);
  }
  return r;
}

std::string Permutation::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < img_.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(img_[i] + 1);
  }
  return s + "]";
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> v(static_cast<std::size_t>(n));
  std::iota(v.begin(), v.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(v);
  } while (std::next_permutation(v.begin(), v.end()));
  return out;
}

namespace {

void integer_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    integer_partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<Permutation> conjugacy_class_representatives(int n) {
  std::vector<std::vector<int>> types;
  std::vector<int> cur;
  integer_partitions(n, n, cur, types);
  std::vector<Permutation> reps;
  for (const auto& t : types) {
    std::vector<std::vector<int>> cycles;
    int next = 1;
    for (int len : t) {
      std::vector<int> c;
      for (int j = 0; j < len; ++j) c.push_back(next++);
      cycles.push_back(std::move(c));
    }
    reps.push_back(Permutation::from_cycles(n, cycles));
  }
  return reps;
}

int sorting_sign(const std::vector<int>& seq) {
  int s = 1;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) s = -s;
  return s;
}

Permutation rank_permutation(const std::vector<long>& keys) {
  std::vector<int> order(keys.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[static_cast<std::size_t>(a)] < keys[static_cast<std::size_t>(b)]; });
  std::vector<int> img(keys.size());
  for (std::size_t r = 0; r < order.size(); ++r) img[static_cast<std::size_t>(order[r])] = static_cast<int>(r);
  return Permutation(std::move(img));
}

long factorial(int n) {
  long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace opk::comb
