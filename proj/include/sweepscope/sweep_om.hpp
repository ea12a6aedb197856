#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sweepscope/covectors.hpp"
#include "sweepscope/ordered_partition.hpp"
#include "sweepscope/sign_vector.hpp"

namespace sweepscope {

/// Partition dictionary: X_(i,j) = + if p(i) < p(j), - if p(i) > p(j), 0 if equal.
inline SignVector partitionToSignVector(const OrderedPartition& part, const GroundPtr& pairs) {
  const int n = part.n();
  if (!pairs->isPairsOf(n))
    throw std::invalid_argument("ground set is not Pairs(n) for this partition");
  uint64_t p = 0, m = 0;
  size_t idx = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++idx) {
      const int pi = part.blockIndexOf(i), pj = part.blockIndexOf(j);
      if (pi < pj) p |= uint64_t(1) << idx;
      else if (pi > pj) m |= uint64_t(1) << idx;
    }
  return SignVector(pairs, p, m);
}
inline SignVector partitionToSignVector(const OrderedPartition& part) {
  return partitionToSignVector(part, GroundSet::pairs(part.n()));
}

struct TransitivityViolation {
  int i, j, k;
  std::string pattern;  // the triple (X_(i,j), X_(j,k), X_(i,k))
};
struct TransitivityReport {
  bool ok = true;
  std::vector<TransitivityViolation> violations;
};

namespace detail {
/// Forbidden iff the triple is NOT orthogonal to (+,+,-): it is nonzero and
/// agrees with (+,+,-) or with (-,-,+) on its whole support.
inline bool forbiddenTriple(Sign a, Sign b, Sign c) {
  const Sign w[3] = {Sign::Plus, Sign::Plus, Sign::Minus};
  const Sign t[3] = {a, b, c};
  bool any = false, eq = true, opp = true;
  for (int s = 0; s < 3; ++s) {
    if (t[s] == Sign::Zero) continue;
    any = true;
    if (t[s] != w[s]) eq = false;
    if (t[s] != negated(w[s])) opp = false;
  }
  return any && (eq || opp);
}
}  // namespace detail

/// Checks the triple condition on every 1 <= i < j < k <= n.
inline TransitivityReport checkTransitivity(const SignVector& x) {
  const auto n = x.ground()->pairsN();
  if (!n) throw std::invalid_argument("transitivity check needs a Pairs(n) ground set");
  TransitivityReport rep;
  for (int i = 1; i <= *n; ++i)
    for (int j = i + 1; j <= *n; ++j)
      for (int k = j + 1; k <= *n; ++k) {
        const Sign a = x.at(x.ground()->pairIndex(i, j));
        const Sign b = x.at(x.ground()->pairIndex(j, k));
        const Sign c = x.at(x.ground()->pairIndex(i, k));
        if (detail::forbiddenTriple(a, b, c)) {
          rep.ok = false;
          rep.violations.push_back(
              {i, j, k, std::string{signChar(a), signChar(b), signChar(c)}});
        }
      }
  return rep;
}

/// Inverse of partitionToSignVector; requires a transitive sign vector.
inline OrderedPartition signVectorToPartition(const SignVector& x) {
  const auto nOpt = x.ground()->pairsN();
  if (!nOpt) throw std::invalid_argument("sign vector is not on a Pairs(n) ground set");
  const int n = *nOpt;
  TransitivityReport rep = checkTransitivity(x);
  if (!rep.ok)
    throw std::invalid_argument("sign vector fails transitivity; no ordered partition exists");
  // Union elements joined by zero pairs, then order blocks by any + relation.
  std::vector<int> parent(n + 1);
  for (int i = 0; i <= n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (x.at(x.ground()->pairIndex(i, j)) == Sign::Zero) parent[find(i)] = find(j);
  std::vector<std::vector<int>> byRoot(n + 1);
  for (int i = 1; i <= n; ++i) byRoot[find(i)].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (int r = 1; r <= n; ++r)
    if (!byRoot[r].empty()) blocks.push_back(byRoot[r]);
  std::sort(blocks.begin(), blocks.end(), [&](const auto& a, const auto& b) {
    const int i = a[0], j = b[0];
    if (i < j) return x.at(x.ground()->pairIndex(i, j)) == Sign::Plus;
    return x.at(x.ground()->pairIndex(j, i)) == Sign::Minus;
  });
  OrderedPartition part(n, std::move(blocks));
  if (partitionToSignVector(part, x.ground()) != x)
    throw std::logic_error("partition reconstruction failed to round-trip");
  return part;
}

struct SweepOMCheck {
  bool ok = true;
  std::optional<SignVector> witnessCovector;
  std::optional<TransitivityViolation> witnessTriple;
};

/// A validated OM on Pairs(n) is a sweep OM iff every covector is transitive.
inline SweepOMCheck isSweepOM(const OrientedMatroid& m) {
  if (!m.ground()->pairsN())
    throw std::invalid_argument("isSweepOM: ground set is not of Pairs(n) form");
  SweepOMCheck out;
  for (const auto& x : m.covectors()) {
    TransitivityReport rep = checkTransitivity(x);
    if (!rep.ok) {
      out.ok = false;
      out.witnessCovector = x;
      out.witnessTriple = rep.violations.front();
      return out;
    }
  }
  return out;
}

// Oriented matroid on Pairs(n) all of whose covectors encode ordered partitions.
class SweepOrientedMatroid {
 public:
  explicit SweepOrientedMatroid(OrientedMatroid om) : om_(std::move(om)) {
    const auto n = om_.ground()->pairsN();
    if (!n) throw std::invalid_argument("sweep oriented matroid needs ground Pairs(n)");
    n_ = *n;
    SweepOMCheck chk = isSweepOM(om_);
    if (!chk.ok)
      throw std::invalid_argument("not a sweep oriented matroid: covector " +
                                  chk.witnessCovector->str() + " fails transitivity");
  }

  int n() const { return n_; }
  const OrientedMatroid& om() const { return om_; }
  const GroundPtr& ground() const { return om_.ground(); }
  size_t rank() const { return om_.rank(); }

  /// Images of the topes under the partition bijection (the maximal sweeps).
  std::vector<OrderedPartition> sweepPermutations() const {
    std::vector<OrderedPartition> out;
    out.reserve(om_.topes().size());
    for (const auto& t : om_.topes()) out.push_back(signVectorToPartition(t));
    return out;
  }

  std::vector<OrderedPartition> allSweeps() const {
    std::vector<OrderedPartition> out;
    out.reserve(om_.covectors().size());
    for (const auto& x : om_.covectors()) out.push_back(signVectorToPartition(x));
    return out;
  }

 private:
  OrientedMatroid om_;
  int n_;
};

// Refinement-ordered poset of all sweeps of a sweep oriented matroid.
struct SweepPoset {
  int n = 0;
  std::vector<OrderedPartition> elements;  // sorted by serialization

  bool lessThan(size_t i, size_t j) const {
    return i != j && refines(elements[j], elements[i]);
  }
  Poset toPoset() const {
    Poset p;
    p.elements.reserve(elements.size());
    for (const auto& e : elements) p.elements.push_back(e.str());
    const size_t m = elements.size();
    p.less.assign(m, std::vector<bool>(m, false));
    for (size_t i = 0; i < m; ++i)
      for (size_t j = 0; j < m; ++j)
        if (lessThan(i, j)) p.less[i][j] = true;
    return p;
  }
  /// Same poset with the trivial sweep removed.
  Poset toNontrivialPoset() const {
    Poset p;
    std::vector<size_t> keep;
    for (size_t i = 0; i < elements.size(); ++i)
      if (elements[i].blockCount() > 1) keep.push_back(i);
    for (size_t i : keep) p.elements.push_back(elements[i].str());
    p.less.assign(keep.size(), std::vector<bool>(keep.size(), false));
    for (size_t a = 0; a < keep.size(); ++a)
      for (size_t b = 0; b < keep.size(); ++b)
        if (lessThan(keep[a], keep[b])) p.less[a][b] = true;
    return p;
  }
};

inline SweepPoset posetOfSweeps(const SweepOrientedMatroid& m) {
  SweepPoset poset;
  poset.n = m.n();
  poset.elements = m.allSweeps();
  std::sort(poset.elements.begin(), poset.elements.end());
  return poset;
}

}  // namespace sweepscope
