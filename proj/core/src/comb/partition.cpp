#include "opk/comb/partition.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace opk::comb {

std::vector<int> elements(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(lowest(m));
    m &= m - 1;
  }
  return out;
}

bool lex_less(Mask a, Mask b) {
  while (a && b) {
    const int x = lowest(a), y = lowest(b);
    if (x != y) return x < y;
    a &= a - 1;
    b &= b - 1;
  }
  return !a && b;
}

Mask permute_mask(const Permutation& w, Mask m) {
  Mask out = 0;
  for (int i : elements(m)) out |= Mask(1) << w(i);
  return out;
}

SetPartition::SetPartition(int ground, std::vector<Mask> blocks) : ground_(ground), blocks_(std::move(blocks)) {
  if (ground < 0 || ground > 31) throw std::invalid_argument("ground set size out of range");
  Mask seen = 0;
  for (Mask b : blocks_) {
    if (b == 0) throw std::invalid_argument("empty block");
    if (b & seen) throw std::invalid_argument("overlapping blocks");
    seen |= b;
  }
  if (seen != full_mask(ground)) throw std::invalid_argument("blocks do not cover the ground set");
  std::sort(blocks_.begin(), blocks_.end(), [](Mask a, Mask b) { return lowest(a) < lowest(b); });
}

SetPartition SetPartition::one_block(int r) { return SetPartition(r, {full_mask(r)}); }

SetPartition SetPartition::singletons(int r) {
  std::vector<Mask> b;
  for (int i = 0; i < r; ++i) b.push_back(Mask(1) << i);
  return SetPartition(r, b);
}

SetPartition SetPartition::from_lists(int ground, const std::vector<std::vector<int>>& blocks) {
  std::vector<Mask> b;
  for (const auto& l : blocks) {
    Mask m = 0;
    for (int x : l) {
      if (x < 1 || x > ground) throw std::invalid_argument("element out of range");
      m |= Mask(1) << (x - 1);
    }
    b.push_back(m);
  }
  return SetPartition(ground, b);
}

int SetPartition::block_of(int i) const {
  for (std::size_t k = 0; k < blocks_.size(); ++k)
    if (blocks_[k] & (Mask(1) << i)) return static_cast<int>(k);
  throw std::out_of_range("element not in ground set");
}

std::string SetPartition::to_string() const {
  std::string s;
  for (Mask b : blocks_) {
    s += "{";
    bool first = true;
    for (int x : elements(b)) {
      if (!first) s += ",";
      s += std::to_string(x + 1);
      first = false;
    }
    s += "}";
  }
  return s;
}

bool refines(const SetPartition& a, const SetPartition& b) {
  if (a.ground() != b.ground()) throw std::invalid_argument("partitions of different ground sets");
  for (Mask bb : b.blocks()) {
    bool inside = false;
    for (Mask ab : a.blocks())
      if ((bb & ab) == bb) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

std::vector<SetPartition> enumerate_partitions(int r) {
  if (r < 1) throw std::invalid_argument("partitions need r >= 1");
  std::vector<SetPartition> out;
  std::vector<int> growth(static_cast<std::size_t>(r), 0);
  // Restricted growth strings: growth[i] <= 1 + max(growth[0..i-1]).
  auto emit = [&]() {
    int nb = 0;
    for (int g : growth) nb = std::max(nb, g + 1);
    std::vector<Mask> blocks(static_cast<std::size_t>(nb), 0);
    for (int i = 0; i < r; ++i) blocks[static_cast<std::size_t>(growth[i])] |= Mask(1) << i;
    out.emplace_back(r, blocks);
  };
  auto rec = [&](auto&& self, int i, int mx) -> void {
    if (i == r) {
      emit();
      return;
    }
    for (int g = 0; g <= mx + 1; ++g) {
      growth[static_cast<std::size_t>(i)] = g;
      self(self, i + 1, std::max(mx, g));
    }
  };
  growth[0] = 0;
  rec(rec, 1, 0);
  return out;
}

SetPartition permute_partition(const Permutation& w, const SetPartition& p) {
  if (w.size() != p.ground()) throw std::invalid_argument("permutation and partition sizes differ");
  std::vector<Mask> b;
  for (Mask m : p.blocks()) b.push_back(permute_mask(w, m));
  return SetPartition(p.ground(), b);
}

std::vector<PartitionChain> enumerate_strict_chains(int r, int length) {
  if (r < 2) throw std::invalid_argument("strict chains need r >= 2");
  std::vector<PartitionChain> out;
  if (length < 1) return out;
  const auto parts = enumerate_partitions(r);
  const SetPartition top = SetPartition::singletons(r);
  PartitionChain cur{SetPartition::one_block(r)};
  auto rec = [&](auto&& self) -> void {
    const SetPartition last = cur.back();
    const int steps = static_cast<int>(cur.size()) - 1;
    if (steps == length - 1) {
      if (last != top && refines(last, top)) {
        cur.push_back(top);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    for (const auto& p : parts) {
      if (p == last || p == top || !refines(last, p)) continue;
      cur.push_back(p);
      self(self);
      cur.pop_back();
    }
  };
  rec(rec);
  return out;
}

long mobius_bottom_top(int r) {
  if (r < 2) throw std::invalid_argument("Möbius function needs r >= 2");
  const auto parts = enumerate_partitions(r);
  // Coarser partitions have fewer blocks; process by increasing block count.
  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return parts[a].size() < parts[b].size(); });
  std::map<std::size_t, long> mu;
  for (std::size_t idx : order) {
    if (parts[idx].size() == 1) {
      mu[idx] = 1;
      continue;
    }
    long s = 0;
    for (const auto& [z, m] : mu)
      if (refines(parts[z], parts[idx]) && parts[z] != parts[idx]) s += m;
    mu[idx] = -s;
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].size() == r) return mu[i];
  return 0;
}

long bell_number(int r) {
  if (r < 0) throw std::invalid_argument("negative Bell index");
  std::vector<long> row{1};
  for (int i = 0; i < r; ++i) {
    std::vector<long> next{row.back()};
    for (long x : row) next.push_back(next.back() + x);
    row = std::move(next);
  }
  return row.front();
}

}  // namespace opk::comb
