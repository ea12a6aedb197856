#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepscope {

// Sequence of disjoint nonempty blocks covering {1..n}. Blocks keep their
// elements sorted ascending; permutations are the all-singleton case.
class OrderedPartition {
 public:
  OrderedPartition(int n, std::vector<std::vector<int>> blocks)
      : n_(n), blocks_(std::move(blocks)) {
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    size_t count = 0;
    for (auto& b : blocks_) {
      if (b.empty()) throw std::invalid_argument("ordered partition has an empty block");
      std::sort(b.begin(), b.end());
      for (int v : b) {
        if (v < 1 || v > n) throw std::invalid_argument("partition element out of range");
        if (seen[v]) throw std::invalid_argument("partition element repeated");
        seen[v] = true;
        ++count;
      }
    }
    if (count != static_cast<size_t>(n))
      throw std::invalid_argument("partition does not cover {1..n}");
    blockOf_.assign(static_cast<size_t>(n) + 1, -1);
    for (size_t k = 0; k < blocks_.size(); ++k)
      for (int v : blocks_[k]) blockOf_[v] = static_cast<int>(k);
  }

  static OrderedPartition trivial(int n) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    return OrderedPartition(n, {all});
  }
  /// From a permutation word [s(1),...,s(n)]: the all-singleton partition.
  static OrderedPartition fromPermutation(const std::vector<int>& word) {
    std::vector<std::vector<int>> bs;
    bs.reserve(word.size());
    for (int v : word) bs.push_back({v});
    return OrderedPartition(static_cast<int>(word.size()), std::move(bs));
  }

  int n() const { return n_; }
  size_t blockCount() const { return blocks_.size(); }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  /// The surjection p: element -> 1-based block index.
  int blockIndexOf(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("element out of range");
    return blockOf_[v] + 1;
  }
  bool isPermutation() const { return blocks_.size() == static_cast<size_t>(n_); }
  std::vector<int> asPermutationWord() const {
    if (!isPermutation()) throw std::logic_error("partition has non-singleton blocks");
    std::vector<int> w;
    w.reserve(blocks_.size());
    for (const auto& b : blocks_) w.push_back(b[0]);
    return w;
  }

  /// "13|2" golden format; comma-separated elements once labels go multi-digit.
  std::string str() const {
    std::string s;
    for (size_t k = 0; k < blocks_.size(); ++k) {
      if (k) s.push_back('|');
      for (size_t t = 0; t < blocks_[k].size(); ++t) {
        if (t && n_ > 9) s.push_back(',');
        s += std::to_string(blocks_[k][t]);
      }
    }
    return s;
  }

  static OrderedPartition parse(int n, const std::string& s) {
    std::vector<std::vector<int>> bs;
    std::vector<int> cur;
    auto flushElem = [&](std::string& tok) {
      if (!tok.empty()) {
        cur.push_back(std::stoi(tok));
        tok.clear();
      }
    };
    std::string tok;
    for (char c : s) {
      if (c == '|') {
        flushElem(tok);
        bs.push_back(cur);
        cur.clear();
      } else if (c == ',') {
        flushElem(tok);
      } else if (isdigit(static_cast<unsigned char>(c))) {
        if (n <= 9) {
          cur.push_back(c - '0');
        } else {
          tok.push_back(c);
        }
      } else {
        throw std::invalid_argument("bad partition string: " + s);
      }
    }
    flushElem(tok);
    bs.push_back(cur);
    return OrderedPartition(n, std::move(bs));
  }

  bool operator==(const OrderedPartition& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }
  bool operator!=(const OrderedPartition& o) const { return !(*this == o); }
  bool operator<(const OrderedPartition& o) const {  // canonical: by serialization
    return str() < o.str();
  }

  /// Reverse the block order (the partition of the opposite sweep direction).
  OrderedPartition reversed() const {
    std::vector<std::vector<int>> bs(blocks_.rbegin(), blocks_.rend());
    return OrderedPartition(n_, std::move(bs));
  }

 private:
  int n_;
  std::vector<std::vector<int>> blocks_;
  std::vector<int> blockOf_;
};

/// J refines I: each block of I is a union of consecutive blocks of J.
inline bool refines(const OrderedPartition& j, const OrderedPartition& i) {
  if (j.n() != i.n()) throw std::invalid_argument("refines: mismatched n");
  size_t jt = 0;
  for (const auto& blockI : i.blocks()) {
    size_t need = blockI.size();
    std::vector<bool> inI(static_cast<size_t>(i.n()) + 1, false);
    for (int v : blockI) inI[v] = true;
    size_t got = 0;
    while (got < need) {
      if (jt >= j.blockCount()) return false;
      for (int v : j.blocks()[jt]) {
        if (!inI[v]) return false;
        ++got;
      }
      ++jt;
    }
    if (got != need) return false;
  }
  return jt == j.blockCount();
}

/// Split every block of I by J's order, dropping empty intersections.
inline OrderedPartition composePartitions(const OrderedPartition& i, const OrderedPartition& j) {
  if (i.n() != j.n()) throw std::invalid_argument("composePartitions: mismatched n");
  std::vector<std::vector<int>> out;
  for (const auto& blockI : i.blocks()) {
    std::vector<bool> inBlock(static_cast<size_t>(i.n()) + 1, false);
    for (int v : blockI) inBlock[v] = true;
    for (const auto& blockJ : j.blocks()) {
      std::vector<int> part;
      for (int v : blockJ)
        if (inBlock[v]) part.push_back(v);
      if (!part.empty()) out.push_back(std::move(part));
    }
  }
  return OrderedPartition(i.n(), std::move(out));
}

/// All coarsenings of I obtained by merging consecutive blocks.
inline std::vector<OrderedPartition> consecutiveCoarsenings(const OrderedPartition& i) {
  const size_t l = i.blockCount();
  std::vector<OrderedPartition> out;
  // Compositions of l: choose cut points among the l-1 gaps.
  for (uint64_t cuts = 0; cuts < (uint64_t(1) << (l - 1)); ++cuts) {
    std::vector<std::vector<int>> bs;
    std::vector<int> cur;
    for (size_t k = 0; k < l; ++k) {
      cur.insert(cur.end(), i.blocks()[k].begin(), i.blocks()[k].end());
      const bool cutHere = k + 1 == l || (cuts & (uint64_t(1) << k));
      if (cutHere) {
        bs.push_back(cur);
        cur.clear();
      }
    }
    out.emplace_back(i.n(), std::move(bs));
  }
  return out;
}

}  // namespace sweepscope
