#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sweepscope/big_om.hpp"
#include "sweepscope/covectors.hpp"
#include "sweepscope/rational.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

// Unoriented matroid, either carried by an explicit lattice of flats or by a
// rank oracle (flats are then enumerated lazily by closure BFS).
class UnorientedMatroid {
 public:
  static UnorientedMatroid fromLattice(FlatLattice lattice) {
    UnorientedMatroid u;
    u.ground_ = lattice.ground;
    u.lattice_ = std::move(lattice);
    return u;
  }
  static UnorientedMatroid fromOriented(const OrientedMatroid& m) {
    return fromLattice(flatLattice(m));
  }
  static UnorientedMatroid fromRankOracle(GroundPtr ground,
                                          std::function<int(uint64_t)> rank) {
    UnorientedMatroid u;
    u.ground_ = std::move(ground);
    u.rankFn_ = std::move(rank);
    return u;
  }

  const GroundPtr& ground() const { return ground_; }

  int rankOf(uint64_t subset) const {
    if (rankFn_) return rankFn_(subset);
    return lattice_->rankOf(subset);
  }
  int rank() const { return rankOf(SignVector::maskForSize(ground_->size())); }

  /// Closure: S plus every element whose addition keeps the rank.
  uint64_t closure(uint64_t subset) const {
    if (!rankFn_) return lattice_->closure(subset);
    const int r = rankOf(subset);
    uint64_t cl = subset;
    for (size_t e = 0; e < ground_->size(); ++e) {
      const uint64_t be = uint64_t(1) << e;
      if ((subset & be) == 0 && rankOf(subset | be) == r) cl |= be;
    }
    return cl;
  }

  /// Flats; enumerated from the oracle on first use when lattice-less.
  const FlatLattice& flats() const {
    if (!lattice_) {
      FlatLattice l;
      l.ground = ground_;
      std::set<uint64_t> found;
      std::vector<uint64_t> frontier{closure(0)};
      found.insert(frontier[0]);
      while (!frontier.empty()) {
        std::vector<uint64_t> next;
        for (uint64_t f : frontier)
          for (size_t e = 0; e < ground_->size(); ++e) {
            const uint64_t be = uint64_t(1) << e;
            if (f & be) continue;
            const uint64_t g = closure(f | be);
            if (found.insert(g).second) next.push_back(g);
          }
        frontier = std::move(next);
      }
      l.flats.assign(found.begin(), found.end());
      std::sort(l.flats.begin(), l.flats.end(), [](uint64_t a, uint64_t b) {
        const int pa = detail::popcount64(a), pb = detail::popcount64(b);
        return pa != pb ? pa < pb : a < b;
      });
      for (uint64_t f : l.flats) l.ranks.push_back(rankOf(f));
      lattice_ = std::move(l);
    }
    return *lattice_;
  }

 private:
  GroundPtr ground_;
  mutable std::optional<FlatLattice> lattice_;
  std::function<int(uint64_t)> rankFn_;
};

/// First-Dilworth-truncation rank of a set F of (index) pairs of N's ground:
/// min over partitions {F_1..F_l} of F of sum_k rank(vertices of F_k) - l.
/// Merging parts with overlapping supports never increases the value (no
/// loops among the touched vertices), so the minimum runs over groupings of
/// the connected components of F.
inline int dilworthRank(const UnorientedMatroid& n,
                        const std::vector<std::pair<size_t, size_t>>& f) {
  if (f.empty()) return 0;
  const size_t e = n.ground()->size();
  for (const auto& pr : f)
    if (pr.first >= e || pr.second >= e || pr.first == pr.second)
      throw std::invalid_argument("dilworthRank: malformed pair set");

  // Connected components of the edge set, as vertex masks.
  std::vector<size_t> parent(e);
  for (size_t i = 0; i < e; ++i) parent[i] = i;
  std::function<size_t(size_t)> find = [&](size_t v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& pr : f) parent[find(pr.first)] = find(pr.second);
  std::map<size_t, uint64_t> compMask;
  for (const auto& pr : f) {
    compMask[find(pr.first)] |= uint64_t(1) << pr.first;
    compMask[find(pr.first)] |= uint64_t(1) << pr.second;
  }
  std::vector<uint64_t> comps;
  for (auto& [root, mask] : compMask) comps.push_back(mask);

  bool looplessSupport = true;
  for (uint64_t c : comps)
    for (size_t v = 0; v < e; ++v)
      if ((c & (uint64_t(1) << v)) && n.rankOf(uint64_t(1) << v) == 0) looplessSupport = false;

  if (!looplessSupport) {
    // Loops break the merge argument; fall back to the full partition scan.
    if (f.size() > 12)
      throw std::invalid_argument("dilworthRank: pair set too large for exhaustive scan");
    int best = -1;
    std::vector<int> assign(f.size(), -1);
    std::function<void(size_t, int)> rec = [&](size_t idx, int parts) {
      if (idx == f.size()) {
        int total = 0;
        for (int p = 0; p < parts; ++p) {
          uint64_t verts = 0;
          for (size_t t = 0; t < f.size(); ++t)
            if (assign[t] == p) verts |= (uint64_t(1) << f[t].first) | (uint64_t(1) << f[t].second);
          total += n.rankOf(verts) - 1;
        }
        if (best < 0 || total < best) best = total;
        return;
      }
      for (int p = 0; p <= parts; ++p) {
        assign[idx] = p;
        rec(idx + 1, std::max(parts, p + 1));
      }
    };
    rec(0, 0);
    return best;
  }

  // Partitions of the components into groups.
  int best = -1;
  std::vector<uint64_t> groups;
  std::function<void(size_t)> rec = [&](size_t idx) {
    if (idx == comps.size()) {
      int total = 0;
      for (uint64_t g : groups) total += n.rankOf(g) - 1;
      if (best < 0 || total < best) best = total;
      return;
    }
    for (size_t g = 0; g < groups.size(); ++g) {
      groups[g] |= comps[idx];
      rec(idx + 1);
      groups[g] &= ~comps[idx];
    }
    groups.push_back(comps[idx]);
    rec(idx + 1);
    groups.pop_back();
  };
  rec(0);
  return best;
}

/// Rank oracle for the first Dilworth truncation of N, on ground Pairs(E).
inline UnorientedMatroid dilworthTruncation(const UnorientedMatroid& n) {
  const size_t e = n.ground()->size();
  std::vector<GroundLabel> pairLabels;
  std::vector<std::pair<size_t, size_t>> pairIndex;
  for (size_t i = 0; i < e; ++i)
    for (size_t j = i + 1; j < e; ++j) {
      pairLabels.push_back(
          GroundLabel::pair(static_cast<int>(i) + 1, static_cast<int>(j) + 1));
      pairIndex.push_back({i, j});
    }
  GroundPtr ground = GroundSet::fromLabels(std::move(pairLabels));
  auto rank = [n, pairIndex](uint64_t subset) {
    std::vector<std::pair<size_t, size_t>> f;
    for (size_t t = 0; t < pairIndex.size(); ++t)
      if (subset & (uint64_t(1) << t)) f.push_back(pairIndex[t]);
    return dilworthRank(n, f);
  };
  return UnorientedMatroid::fromRankOracle(std::move(ground), rank);
}

struct WeakMapReport {
  bool ok = true;
  std::optional<uint64_t> violatingSubset;  // rank went up
  std::vector<uint64_t> strictDrops;        // flats where the rank strictly fell
};

/// Weak map from source to target: rank_target(F) <= rank_source(F) for all
/// F. Scanning the flats of both matroids suffices: for any subset,
/// rank_target(F) <= rank_target(cl_source(F)) <= rank_source(cl_source(F)) =
/// rank_source(F).
inline WeakMapReport weakMapCheck(const UnorientedMatroid& source,
                                  const UnorientedMatroid& target) {
  if (!(*source.ground() == *target.ground()))
    throw std::invalid_argument("weakMapCheck: ground sets differ");
  std::set<uint64_t> toCheck;
  for (uint64_t f : source.flats().flats) toCheck.insert(f);
  for (uint64_t f : target.flats().flats) toCheck.insert(f);
  WeakMapReport rep;
  for (uint64_t f : toCheck) {
    const int rs = source.rankOf(f), rt = target.rankOf(f);
    if (rt > rs) {
      rep.ok = false;
      if (!rep.violatingSubset) rep.violatingSubset = f;
    } else if (rt < rs) {
      rep.strictDrops.push_back(f);
    }
  }
  return rep;
}

struct DilworthCheck {
  bool ok = true;
  std::optional<uint64_t> witnessFlat;              // flat of the sweep OM
  std::optional<OrderedPartition> witnessPartition;  // its block structure
};

/// Dilworth-ness: the rank of every flat of the sweep OM equals
/// sum_k rank_little(I_k) - l over its partition blocks.
inline DilworthCheck isDilworth(const SweepOrientedMatroid& s) {
  const FlatLattice sweepFlats = flatLattice(s.om());
  const OrientedMatroid little = littleOM(s);
  const FlatLattice littleFlats = flatLattice(little);
  DilworthCheck out;
  for (size_t fi = 0; fi < sweepFlats.flats.size(); ++fi) {
    const uint64_t f = sweepFlats.flats[fi];
    // Any covector with this zero-set carries the block structure.
    const SignVector* x = nullptr;
    for (const auto& c : s.om().covectors())
      if (c.zeroMask() == f) { x = &c; break; }
    if (!x) throw std::logic_error("flat without covector");
    const OrderedPartition part = signVectorToPartition(*x);
    int rhs = 0;
    for (const auto& block : part.blocks()) {
      uint64_t mask = 0;
      for (int v : block) mask |= uint64_t(1) << little.ground()->pointIndex(v);
      rhs += littleFlats.rankOf(mask) - 1;
    }
    if (sweepFlats.ranks[fi] != rhs) {
      out.ok = false;
      out.witnessFlat = f;
      out.witnessPartition = part;
      return out;
    }
  }
  return out;
}

// Characteristic polynomial of a geometric lattice, integer coefficients,
// leading coefficient 1, computed via the Moebius function.
struct CharPoly {
  std::vector<BigInt> coeffs;  // coeffs[i] multiplies t^i

  BigInt eval(const BigInt& t) const {
    BigInt acc = 0, power = 1;
    for (const auto& c : coeffs) {
      acc += c * power;
      power *= t;
    }
    return acc;
  }
  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

inline CharPoly characteristicPolynomial(const FlatLattice& l) {
  const size_t m = l.flats.size();
  if (m == 0) throw std::invalid_argument("characteristicPolynomial: empty lattice");
  // Graded sanity: covers must raise the rank by exactly one.
  for (size_t i = 0; i < m; ++i)
    for (size_t j = 0; j < m; ++j) {
      if (i == j || (l.flats[i] & ~l.flats[j]) != 0 || l.flats[i] == l.flats[j]) continue;
      bool cover = true;
      for (size_t k = 0; k < m && cover; ++k) {
        if (k == i || k == j) continue;
        if ((l.flats[i] & ~l.flats[k]) == 0 && (l.flats[k] & ~l.flats[j]) == 0 &&
            l.flats[k] != l.flats[i] && l.flats[k] != l.flats[j])
          cover = false;
      }
      if (cover && l.ranks[j] != l.ranks[i] + 1)
        throw std::invalid_argument("characteristicPolynomial: lattice is not graded");
    }

  const int r = l.rank();
  std::vector<BigInt> mu(m);
  CharPoly chi;
  chi.coeffs.assign(r + 1, BigInt(0));
  for (size_t i = 0; i < m; ++i) {  // flats sorted upward-compatible
    BigInt s = 0;
    for (size_t j = 0; j < m; ++j)
      if (j != i && (l.flats[j] & ~l.flats[i]) == 0) s += mu[j];
    mu[i] = (i == 0) ? BigInt(1) : BigInt(-s);
    chi.coeffs[r - l.ranks[i]] += mu[i];
  }
  return chi;
}

/// Number of topes of any oriented matroid with this lattice of flats:
/// (-1)^r * chi(-1).
inline BigInt topeCount(const FlatLattice& l) {
  const CharPoly chi = characteristicPolynomial(l);
  BigInt v = chi.eval(BigInt(-1));
  return (l.rank() % 2 == 0) ? v : BigInt(-v);
}

/// Unsigned Stirling numbers of the first kind, c(n, k).
inline BigInt stirlingFirstUnsigned(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::vector<std::vector<BigInt>> c(n + 1, std::vector<BigInt>(n + 1, BigInt(0)));
  c[0][0] = 1;
  for (int i = 1; i <= n; ++i)
    for (int j = 0; j <= i; ++j) {
      c[i][j] = (j > 0 ? c[i - 1][j - 1] : BigInt(0)) + BigInt(i - 1) * c[i - 1][j];
    }
  return c[n][k];
}

/// Upper bound on the number of sweep permutations of a rank-r sweep OM on
/// Pairs(n): sum over i of 2*c(n, n-r+1+2i).
inline BigInt stirlingBound(int n, int r) {
  if (n < 1 || r < 0) throw std::invalid_argument("stirlingBound: parameters out of range");
  BigInt total = 0;
  for (int i = 0; 2 * i <= r - 1; ++i) total += 2 * stirlingFirstUnsigned(n, n - r + 1 + 2 * i);
  return total;
}

}  // namespace sweepscope
