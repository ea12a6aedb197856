#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sweepscope/big_om.hpp"
#include "sweepscope/covectors.hpp"
#include "sweepscope/ordered_partition.hpp"
#include "sweepscope/point_config.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

inline constexpr size_t kDefaultEnumerationCap = 1000000;

namespace detail {
inline void requirePseudoSweepable(const OrientedMatroid& m) {
  if (!m.isAcyclic())
    throw std::invalid_argument("pseudo-sweeps need an acyclic oriented matroid");
  if (!m.loops().empty())
    throw std::invalid_argument("pseudo-sweeps need a loopless oriented matroid");
}

/// The string covector of the i-th block: - on earlier blocks, 0 on the block,
/// + on the rest. Masks are over Points(1..n) in ground order.
inline SignVector stringCovector(const GroundPtr& ground, uint64_t consumed, uint64_t block,
                                 uint64_t all) {
  return SignVector(ground, all & ~(consumed | block), consumed);
}
}  // namespace detail

// Sequence of non-tope covectors joining the all-plus tope to its opposite.
struct CellularString {
  std::vector<SignVector> covectors;
};

/// The unique candidate string of a partition: block I_i yields the covector
/// that is 0 on I_i, - before and + after.
inline CellularString stringOfPartition(const GroundPtr& ground, const OrderedPartition& part) {
  CellularString s;
  if (part.n() != static_cast<int>(ground->size()))
    throw std::invalid_argument("partition size does not match ground size");
  const uint64_t all = SignVector::maskForSize(ground->size());
  uint64_t consumed = 0;
  for (const auto& block : part.blocks()) {
    uint64_t bm = 0;
    for (int v : block) bm |= uint64_t(1) << (v - 1);  // element i <-> ground position i-1
    s.covectors.push_back(detail::stringCovector(ground, consumed, bm, all));
    consumed |= bm;
  }
  return s;
}

/// Checks the cellular-string conditions against M (membership, non-tope,
/// endpoint and gluing equations).
inline bool isValidCellularString(const OrientedMatroid& m, const CellularString& s) {
  detail::requirePseudoSweepable(m);
  if (s.covectors.empty()) return false;
  const SignVector plus = SignVector::allPlus(m.ground());
  const SignVector minus = plus.opposite();
  for (const auto& x : s.covectors) {
    if (!m.contains(x)) return false;
    if (x.zeroMask() == 0) return false;  // topes are excluded (no loops here)
  }
  if (s.covectors.front().compose(plus) != plus) return false;
  if (s.covectors.back().compose(minus) != minus) return false;
  for (size_t i = 0; i + 1 < s.covectors.size(); ++i)
    if (s.covectors[i].compose(minus) != s.covectors[i + 1].compose(plus)) return false;
  return true;
}

/// I is a pseudo-sweep iff every induced string covector belongs to M.
inline bool isPseudoSweep(const OrientedMatroid& m, const OrderedPartition& part) {
  detail::requirePseudoSweepable(m);
  if (part.n() != static_cast<int>(m.ground()->size()))
    throw std::invalid_argument("partition size does not match ground size");
  for (const auto& x : stringOfPartition(m.ground(), part).covectors)
    if (!m.contains(x)) return false;
  return true;
}

/// All pseudo-sweeps, grown block by block with prefix pruning. Throws when
/// the count cap is exceeded (exactness over truncation).
inline std::vector<OrderedPartition> enumeratePseudoSweeps(
    const OrientedMatroid& m, size_t cap = kDefaultEnumerationCap) {
  detail::requirePseudoSweepable(m);
  const size_t n = m.ground()->size();
  const uint64_t all = SignVector::maskForSize(n);
  std::vector<OrderedPartition> out;
  std::vector<std::vector<int>> blocks;
  std::function<void(uint64_t)> rec = [&](uint64_t consumed) {
    const uint64_t remaining = all & ~consumed;
    if (!remaining) {
      if (out.size() >= cap)
        throw std::runtime_error("pseudo-sweep enumeration exceeded the configured cap");
      out.emplace_back(static_cast<int>(n), blocks);
      return;
    }
    // Nonempty submasks of the remaining elements as the next block.
    uint64_t sub = remaining;
    while (true) {
      if (m.contains(detail::stringCovector(m.ground(), consumed, sub, all))) {
        std::vector<int> block;
        for (size_t k = 0; k < n; ++k)
          if (sub & (uint64_t(1) << k)) block.push_back(static_cast<int>(k) + 1);
        blocks.push_back(std::move(block));
        rec(consumed | sub);
        blocks.pop_back();
      }
      sub = (sub - 1) & remaining;
      if (!sub) break;
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Maximal elements of the refinement order (the pseudo-sweep permutations
/// when there are no parallel points).
inline std::vector<OrderedPartition> enumerateMaximal(const OrientedMatroid& m,
                                                      size_t cap = kDefaultEnumerationCap) {
  std::vector<OrderedPartition> all = enumeratePseudoSweeps(m, cap);
  std::vector<OrderedPartition> out;
  for (const auto& cand : all) {
    bool maximal = true;
    for (const auto& other : all) {
      if (other.blockCount() <= cand.blockCount()) continue;
      if (other != cand && refines(other, cand)) {
        maximal = false;
        break;
      }
    }
    if (maximal) out.push_back(cand);
  }
  return out;
}

/// Permutations all of whose prefixes are k-sets; must match
/// enumerateMaximal(littleOM(A)) for configurations of distinct points.
inline std::vector<OrderedPartition> pseudoSweepPermutationsByKSets(const PointConfiguration& a) {
  if (a.hasRepeatedPoints())
    throw std::invalid_argument("pseudoSweepPermutationsByKSets: repeated points");
  const OrientedMatroid lom = littleOM(a);
  const int n = a.n();
  const uint64_t allMask = SignVector::maskForSize(n);
  std::vector<OrderedPartition> out;
  std::vector<int> word;
  std::function<void(uint64_t)> rec = [&](uint64_t prefixMask) {
    if (static_cast<int>(word.size()) == n) {
      out.push_back(OrderedPartition::fromPermutation(word));
      return;
    }
    for (int v = 1; v <= n; ++v) {
      const uint64_t bv = uint64_t(1) << (v - 1);
      if (prefixMask & bv) continue;
      const uint64_t s = prefixMask | bv;
      // prefix is a k-set iff the tope that is - exactly on it exists
      if (!lom.contains(SignVector(lom.ground(), allMask & ~s, s))) continue;
      word.push_back(v);
      rec(s);
      word.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

/// Refinement-ordered poset of all pseudo-sweeps.
inline SweepPoset posetOfPseudoSweeps(const OrientedMatroid& m,
                                      size_t cap = kDefaultEnumerationCap) {
  SweepPoset p;
  p.n = static_cast<int>(m.ground()->size());
  p.elements = enumeratePseudoSweeps(m, cap);
  return p;
}

/// Every sweep of S must be a pseudo-sweep of M (with the refinement orders
/// agreeing, which is automatic since both posets order the same partitions).
inline bool containsSweepPoset(const OrientedMatroid& m, const SweepOrientedMatroid& s) {
  if (!(littleOM(s).base() == m.base()))
    throw std::invalid_argument("containsSweepPoset: M is not the little OM of S");
  for (const auto& x : s.om().covectors())
    if (!isPseudoSweep(m, signVectorToPartition(x))) return false;
  return true;
}

}  // namespace sweepscope
