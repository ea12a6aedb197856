#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sweepscope/covectors.hpp"
#include "sweepscope/ordered_partition.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

using Permutation = std::vector<int>;  // the word [s(1),...,s(n)], values 1..n

inline void requirePermutation(const Permutation& w) {
  std::vector<bool> seen(w.size() + 1, false);
  for (int v : w) {
    if (v < 1 || v > static_cast<int>(w.size()) || seen[v])
      throw std::invalid_argument("not a permutation word");
    seen[v] = true;
  }
}

inline Permutation reverseOf(const Permutation& w) { return {w.rbegin(), w.rend()}; }

inline size_t pairBit(int i, int j, int n) {
  // lexicographic index of (i,j), i<j, in Pairs(n)
  return static_cast<size_t>((i - 1) * (2 * n - i) / 2 + (j - i - 1));
}

/// Inversions as a mask over Pairs(n): pair (i,j), i<j, with i after j in the word.
inline uint64_t inversionMask(const Permutation& w) {
  const int n = static_cast<int>(w.size());
  std::vector<int> pos(n + 1);
  for (int t = 0; t < n; ++t) pos[w[t]] = t;
  uint64_t m = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (pos[i] > pos[j]) m |= uint64_t(1) << pairBit(i, j, n);
  return m;
}

inline std::vector<std::pair<int, int>> pairsOfMask(uint64_t mask, int n) {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (mask & (uint64_t(1) << pairBit(i, j, n))) out.push_back({i, j});
  return out;
}

// A move: one or more disjoint contiguous position ranges (1-based, inclusive),
// each of length >= 2, reversed simultaneously.
struct Move {
  std::vector<std::pair<int, int>> ranges;
};

inline Permutation applyMove(const Permutation& w, const Move& m) {
  const int n = static_cast<int>(w.size());
  if (m.ranges.empty()) throw std::invalid_argument("move has no substrings");
  std::vector<bool> used(n + 1, false);
  Permutation out = w;
  for (const auto& [lo, hi] : m.ranges) {
    if (lo < 1 || hi > n || hi - lo < 1)
      throw std::invalid_argument("move range must be contiguous of length >= 2");
    for (int t = lo; t <= hi; ++t) {
      if (used[t]) throw std::invalid_argument("move ranges overlap");
      used[t] = true;
    }
    std::reverse(out.begin() + (lo - 1), out.begin() + hi);
  }
  return out;
}

/// Inversion set of the move between two permutations: inv(s) symdiff inv(g).
inline uint64_t moveInversionSet(const Permutation& s, const Permutation& g) {
  return inversionMask(s) ^ inversionMask(g);
}

namespace detail {
/// A nonempty pair mask is a single-move difference iff its components are
/// cliques on disjoint element sets (condition M1').
inline bool isMoveMask(uint64_t mask, int n) {
  if (!mask) return false;
  std::vector<int> parent(n + 1);
  std::vector<bool> touched(n + 1, false);
  for (int i = 0; i <= n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (mask & (uint64_t(1) << pairBit(i, j, n))) {
        parent[find(i)] = find(j);
        touched[i] = touched[j] = true;
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (touched[i] && touched[j] && find(i) == find(j) &&
          !(mask & (uint64_t(1) << pairBit(i, j, n))))
        return false;
  return true;
}

/// Element blocks (the cliques) of a move mask.
inline std::vector<uint64_t> moveBlocks(uint64_t mask, int n) {
  std::vector<int> parent(n + 1);
  for (int i = 0; i <= n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int v) {
    return parent[v] == v ? v : parent[v] = find(parent[v]);
  };
  for (const auto& [i, j] : pairsOfMask(mask, n)) parent[find(i)] = find(j);
  std::map<int, uint64_t> byRoot;
  for (const auto& [i, j] : pairsOfMask(mask, n)) {
    byRoot[find(i)] |= uint64_t(1) << (i - 1);
    byRoot[find(i)] |= uint64_t(1) << (j - 1);
  }
  std::vector<uint64_t> blocks;
  for (auto& [r, b] : byRoot) blocks.push_back(b);
  return blocks;
}
}  // namespace detail

struct SequenceReport {
  bool ok = true;
  std::string reason;
  std::optional<size_t> stepIndex;               // failing step (0-based, move s->s+1)
  std::optional<std::pair<int, int>> repeatedPair;
};

/// M1: every step reverses disjoint substrings (equivalently its inversion
/// set satisfies M1'); M2: no pair is reversed twice.
inline SequenceReport verifyAllowableSequence(const std::vector<Permutation>& seq) {
  SequenceReport rep;
  if (seq.size() < 1) {
    rep.ok = false;
    rep.reason = "empty sequence";
    return rep;
  }
  const int n = static_cast<int>(seq.front().size());
  for (const auto& w : seq) {
    requirePermutation(w);
    if (static_cast<int>(w.size()) != n) {
      rep.ok = false;
      rep.reason = "permutations of different sizes";
      return rep;
    }
  }
  uint64_t reversed = 0;
  for (size_t s = 0; s + 1 < seq.size(); ++s) {
    const uint64_t d = moveInversionSet(seq[s], seq[s + 1]);
    if (!detail::isMoveMask(d, n)) {
      rep.ok = false;
      rep.stepIndex = s;
      rep.reason = d ? "step is not a reversal of disjoint substrings"
                     : "consecutive permutations are equal";
      return rep;
    }
    if (reversed & d) {
      rep.ok = false;
      rep.stepIndex = s;
      const auto prs = pairsOfMask(reversed & d, n);
      rep.repeatedPair = prs.front();
      rep.reason = "pair {" + std::to_string(prs.front().first) + "," +
                   std::to_string(prs.front().second) + "} is reversed twice";
      return rep;
    }
    reversed |= d;
  }
  return rep;
}

struct AllowableGraphResult {
  bool ok = false;
  std::string reason;
  int n = 0;
  std::vector<Permutation> perms;                 // deduplicated, sorted
  std::vector<std::pair<size_t, size_t>> edges;   // indices into perms, i<j
  std::vector<uint64_t> moveClasses;              // distinct edge inversion sets
};

/// P1 symmetry; edges inferred as minimal inversion-set differences; P3 on
/// the edge classes; P2 by search using only those classes.
inline AllowableGraphResult isAllowableGraph(const std::vector<Permutation>& input) {
  AllowableGraphResult res;
  if (input.empty()) {
    res.reason = "empty permutation set";
    return res;
  }
  const int n = static_cast<int>(input.front().size());
  res.n = n;
  std::set<Permutation> uniq;
  for (const auto& w : input) {
    requirePermutation(w);
    if (static_cast<int>(w.size()) != n) {
      res.reason = "permutations of different sizes";
      return res;
    }
    uniq.insert(w);
  }
  res.perms.assign(uniq.begin(), uniq.end());
  const size_t m = res.perms.size();

  // P1
  for (const auto& w : res.perms)
    if (!uniq.count(reverseOf(w))) {
      res.reason = "P1 fails: reverse of a member is missing";
      return res;
    }

  std::vector<uint64_t> inv(m);
  for (size_t i = 0; i < m; ++i) inv[i] = inversionMask(res.perms[i]);

  // Edges: (i,j) minimal when no k has inv(i)^inv(k) strictly inside inv(i)^inv(j).
  std::vector<std::vector<size_t>> adj(m);
  for (size_t i = 0; i < m; ++i)
    for (size_t j = i + 1; j < m; ++j) {
      const uint64_t d = inv[i] ^ inv[j];
      bool minimal = true;
      for (size_t k = 0; k < m && minimal; ++k) {
        if (k == i) continue;
        const uint64_t dk = inv[i] ^ inv[k];
        if (dk != d && (dk & ~d) == 0) minimal = false;
      }
      if (minimal) {
        if (!detail::isMoveMask(d, n)) {
          res.reason = "an edge difference is not a move (M1' fails)";
          return res;
        }
        res.edges.push_back({i, j});
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
    }

  // P3 on the edge classes.
  std::set<uint64_t> classes;
  for (const auto& [i, j] : res.edges) classes.insert(inv[i] ^ inv[j]);
  res.moveClasses.assign(classes.begin(), classes.end());
  for (size_t a = 0; a < res.moveClasses.size(); ++a)
    for (size_t b = a + 1; b < res.moveClasses.size(); ++b)
      if (res.moveClasses[a] & res.moveClasses[b]) {
        res.reason = "P3 fails: two move inversion sets overlap without being equal";
        return res;
      }

  // P2: from each ordered pair, steps must stay inside the residual difference.
  for (size_t src = 0; src < m; ++src)
    for (size_t dst = src + 1; dst < m; ++dst) {
      std::vector<bool> visited(m, false);
      std::vector<size_t> stack{src};
      visited[src] = true;
      bool reached = false;
      while (!stack.empty() && !reached) {
        const size_t t = stack.back();
        stack.pop_back();
        if (t == dst) {
          reached = true;
          break;
        }
        const uint64_t residual = inv[t] ^ inv[dst];
        for (size_t u : adj[t]) {
          if (visited[u]) continue;
          const uint64_t step = inv[t] ^ inv[u];
          if ((step & ~residual) == 0) {
            visited[u] = true;
            stack.push_back(u);
          }
        }
      }
      if (!reached) {
        res.reason = "P2 fails: no allowable sequence between two members";
        return res;
      }
    }

  res.ok = true;
  return res;
}

/// Sign vectors of the permutations under the partition correspondence.
inline std::vector<SignVector> topesFromPermutations(const std::vector<Permutation>& perms) {
  if (perms.empty()) throw std::invalid_argument("empty permutation set");
  const int n = static_cast<int>(perms.front().size());
  const GroundPtr ground = GroundSet::pairs(n);
  std::set<Permutation> uniq(perms.begin(), perms.end());
  std::vector<SignVector> out;
  for (const auto& w : uniq)
    out.push_back(partitionToSignVector(OrderedPartition::fromPermutation(w), ground));
  return out;
}

/// Parallelism classes of an arbitrary sign-vector family, as masks over the
/// ground (loops, i.e. always-zero coordinates, are excluded).
inline std::vector<uint64_t> parallelClassMasksOf(const std::vector<SignVector>& vecs,
                                                  size_t groundSize) {
  std::vector<uint64_t> classes;
  std::vector<bool> assigned(groundSize, false);
  auto column = [&](size_t e) {
    std::pair<std::vector<bool>, std::vector<bool>> col;
    for (const auto& v : vecs) {
      col.first.push_back(v.at(e) == Sign::Plus);
      col.second.push_back(v.at(e) == Sign::Minus);
    }
    return col;
  };
  std::vector<std::pair<std::vector<bool>, std::vector<bool>>> cols;
  for (size_t e = 0; e < groundSize; ++e) cols.push_back(column(e));
  for (size_t e = 0; e < groundSize; ++e) {
    if (assigned[e]) continue;
    bool loop = true;
    for (size_t t = 0; t < vecs.size(); ++t)
      if (cols[e].first[t] || cols[e].second[t]) loop = false;
    if (loop) continue;
    uint64_t mask = uint64_t(1) << e;
    assigned[e] = true;
    for (size_t f = e + 1; f < groundSize; ++f) {
      if (assigned[f]) continue;
      if ((cols[e].first == cols[f].first && cols[e].second == cols[f].second) ||
          (cols[e].first == cols[f].second && cols[e].second == cols[f].first)) {
        mask |= uint64_t(1) << f;
        assigned[f] = true;
      }
    }
    classes.push_back(mask);
  }
  return classes;
}

struct AcycloidReport {
  bool t1 = true, t2 = true, t3 = true;
  std::string detail;
  bool ok() const { return t1 && t2 && t3; }
};

/// T1 common support, T2 closure under negation, T3 a parallelism-class
/// reorientation step inside every separator.
inline AcycloidReport acycloidCheck(const std::vector<SignVector>& topes) {
  AcycloidReport rep;
  if (topes.empty()) {
    rep.t1 = false;
    rep.detail = "empty tope set";
    return rep;
  }
  const uint64_t support = topes.front().supportMask();
  for (const auto& t : topes)
    if (t.supportMask() != support) {
      rep.t1 = false;
      rep.detail = "T1: supports differ (" + t.str() + ")";
      return rep;
    }
  CovectorSet set(topes.front().ground(), topes);
  for (const auto& t : set.covectors())
    if (!set.contains(t.opposite())) {
      rep.t2 = false;
      rep.detail = "T2: opposite of " + t.str() + " missing";
      return rep;
    }
  const size_t gsize = topes.front().ground()->size();
  const auto classes = parallelClassMasksOf(set.covectors(), gsize);
  auto classOf = [&](size_t e) -> uint64_t {
    for (uint64_t c : classes)
      if (c & (uint64_t(1) << e)) return c;
    return 0;
  };
  for (const auto& x : set.covectors())
    for (const auto& y : set.covectors()) {
      if (x == y) continue;
      const uint64_t sep = x.separationMask(y);
      if (!sep) continue;
      bool found = false;
      for (size_t e = 0; e < gsize && !found; ++e)
        if (sep & (uint64_t(1) << e))
          if (set.contains(x.reorient(classOf(e)))) found = true;
      if (!found) {
        rep.t3 = false;
        rep.detail = "T3: no class step from " + x.str() + " toward " + y.str();
        return rep;
      }
    }
  return rep;
}

/// Sweep acycloid: an acycloid on Pairs(n) with transitive topes and
/// clique-transitive parallelism classes. Elements outside the support are
/// removed first by identifying tied points (the restriction keeps the
/// tope-graph intact).
inline bool isSweepAcycloid(const std::vector<SignVector>& topes) {
  if (topes.empty()) return false;
  const auto nOpt = topes.front().ground()->pairsN();
  if (!nOpt) throw std::invalid_argument("isSweepAcycloid: ground is not Pairs(n)");
  if (!acycloidCheck(topes).ok()) return false;
  for (const auto& t : topes)
    if (!checkTransitivity(t).ok) return false;

  const int n = *nOpt;
  const uint64_t support = topes.front().supportMask();
  if (support != SignVector::maskForSize(topes.front().size())) {
    // Some pair (i,j) is identically zero: drop point j and recurse.
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (!(support & (uint64_t(1) << topes.front().ground()->pairIndex(i, j)))) {
          const GroundPtr small = GroundSet::pairs(n - 1);
          auto relabel = [&](int v) { return v < j ? v : v - 1; };
          std::vector<SignVector> restricted;
          for (const auto& t : topes) {
            std::vector<Sign> signs(small->size(), Sign::Zero);
            for (int a = 1; a <= n; ++a)
              for (int b = a + 1; b <= n; ++b) {
                if (a == j || b == j) continue;
                signs[small->pairIndex(relabel(a), relabel(b))] =
                    t.at(t.ground()->pairIndex(a, b));
              }
            restricted.emplace_back(small, signs);
          }
          return isSweepAcycloid(restricted);
        }
    return false;  // unreachable
  }

  const auto classes = parallelClassMasksOf(topes, topes.front().size());
  auto classIndexOfPair = [&](int a, int b) -> int {
    const size_t bit = topes.front().ground()->pairIndex(std::min(a, b), std::max(a, b));
    for (size_t c = 0; c < classes.size(); ++c)
      if (classes[c] & (uint64_t(1) << bit)) return static_cast<int>(c);
    return -1;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k) {
        const int cij = classIndexOfPair(i, j);
        const int cjk = classIndexOfPair(j, k);
        const int cik = classIndexOfPair(i, k);
        if (cij == cjk && cij != cik) return false;
        if (cij == cik && cij != cjk) return false;
        if (cjk == cik && cjk != cij) return false;
      }
  return true;
}

/// Faces of an acycloid: X with X o T in T for every tope T.
inline std::vector<SignVector> faces(const std::vector<SignVector>& topes) {
  if (topes.empty()) throw std::invalid_argument("empty tope set");
  return covectorsFromTopes(topes.front().ground(), topes).covectors();
}

/// Coboundaries: X conforming to a tope such that X o T = T forces X o (-T) in T.
inline std::vector<SignVector> coboundaries(const std::vector<SignVector>& topes) {
  if (topes.empty()) throw std::invalid_argument("empty tope set");
  const GroundPtr& ground = topes.front().ground();
  CovectorSet set(ground, topes);
  const uint64_t support = topes.front().supportMask();
  if (detail::popcount64(support) > 22)
    throw std::invalid_argument("tope support too large for exhaustive coboundary scan");
  std::unordered_set<std::pair<uint64_t, uint64_t>, detail::MaskPairHash> seen;
  std::vector<SignVector> out;
  for (const auto& t : set.covectors()) {
    uint64_t sub = support;
    while (true) {
      const uint64_t keep = support & ~sub;
      const uint64_t p = t.plusMask() & keep, mm = t.minusMask() & keep;
      if (seen.insert({p, mm}).second) {
        SignVector x(ground, p, mm);
        bool cob = true;
        for (const auto& tt : set.covectors())
          if (x.compose(tt) == tt && !set.contains(x.compose(tt.opposite()))) {
            cob = false;
            break;
          }
        if (cob) out.push_back(std::move(x));
      }
      if (!sub) break;
      sub = (sub - 1) & support;
    }
  }
  std::sort(out.begin(), out.end(), SignVectorLess{});
  return out;
}

/// Sweeps of an allowable graph: partitions I with I o sigma in Pi for all sigma.
inline std::vector<OrderedPartition> sweepsOfGraph(const std::vector<Permutation>& perms) {
  if (perms.empty()) throw std::invalid_argument("empty permutation set");
  std::set<Permutation> uniq(perms.begin(), perms.end());
  std::set<OrderedPartition> candidates;
  for (const auto& w : uniq)
    for (auto& c : consecutiveCoarsenings(OrderedPartition::fromPermutation(w)))
      candidates.insert(std::move(c));
  std::vector<OrderedPartition> out;
  for (const auto& cand : candidates) {
    bool sweep = true;
    for (const auto& w : uniq) {
      const OrderedPartition split =
          composePartitions(cand, OrderedPartition::fromPermutation(w));
      if (!uniq.count(split.asPermutationWord())) {
        sweep = false;
        break;
      }
    }
    if (sweep) out.push_back(cand);
  }
  return out;
}

/// Potential sweeps: partitions refined by a member, with I o reverse(sigma)
/// in Pi for every refining member sigma.
inline std::vector<OrderedPartition> potentialSweeps(const std::vector<Permutation>& perms) {
  if (perms.empty()) throw std::invalid_argument("empty permutation set");
  std::set<Permutation> uniq(perms.begin(), perms.end());
  std::set<OrderedPartition> candidates;
  for (const auto& w : uniq)
    for (auto& c : consecutiveCoarsenings(OrderedPartition::fromPermutation(w)))
      candidates.insert(std::move(c));
  std::vector<OrderedPartition> out;
  for (const auto& cand : candidates) {
    bool refinedBySomeone = false;
    bool good = true;
    for (const auto& w : uniq) {
      const OrderedPartition perm = OrderedPartition::fromPermutation(w);
      if (!refines(perm, cand)) continue;
      refinedBySomeone = true;
      const OrderedPartition flipped =
          composePartitions(cand, OrderedPartition::fromPermutation(reverseOf(w)));
      if (!uniq.count(flipped.asPermutationWord())) {
        good = false;
        break;
      }
    }
    if (refinedBySomeone && good) out.push_back(cand);
  }
  return out;
}

/// Contraction by a move: keep the permutations adjacent across it and
/// collapse each of its blocks to the block minimum, renumbering the ground
/// set to 1..n'.
inline std::vector<Permutation> elementaryContraction(const std::vector<Permutation>& perms,
                                                      uint64_t moveClass) {
  std::set<Permutation> uniq(perms.begin(), perms.end());
  const int n = static_cast<int>(perms.front().size());
  if (!detail::isMoveMask(moveClass, n))
    throw std::invalid_argument("elementaryContraction: mask is not a move");
  const auto blocks = detail::moveBlocks(moveClass, n);

  // Kept elements: everything outside the blocks plus each block minimum.
  std::vector<int> relabel(n + 1, 0);
  {
    std::vector<bool> dropped(n + 1, false);
    for (uint64_t b : blocks) {
      const int keep = __builtin_ctzll(b) + 1;
      for (int v = 1; v <= n; ++v)
        if ((b & (uint64_t(1) << (v - 1))) && v != keep) dropped[v] = true;
    }
    int next = 1;
    for (int v = 1; v <= n; ++v)
      if (!dropped[v]) relabel[v] = next++;
  }

  std::set<Permutation> out;
  for (const auto& w : uniq) {
    // Adjacent across the move iff the partner with inversions ^ moveClass is present.
    bool contiguous = true;
    Permutation partner = w;
    for (uint64_t b : blocks) {
      // positions of the block's elements must be consecutive
      std::vector<int> pos;
      for (int t = 0; t < n; ++t)
        if (b & (uint64_t(1) << (w[t] - 1))) pos.push_back(t);
      for (size_t t = 1; t < pos.size(); ++t)
        if (pos[t] != pos[t - 1] + 1) contiguous = false;
      if (!contiguous) break;
      std::reverse(partner.begin() + pos.front(), partner.begin() + pos.back() + 1);
    }
    if (!contiguous || !uniq.count(partner)) continue;
    Permutation reduced;
    for (int t = 0; t < n; ++t)
      if (relabel[w[t]] != 0) reduced.push_back(relabel[w[t]]);
    out.insert(reduced);
  }
  return {out.begin(), out.end()};
}

struct CharacterizationReport {
  bool allowable = false;
  std::string allowableReason;
  bool omVerdict = false;             // (i) topes close into an oriented matroid
  bool potentialEqualsSweeps = false; // (ii)
  bool contractionsAllowable = false; // (iii) all iterated contractions stay allowable
  bool agree = false;
};

namespace detail {
inline bool allContractionsAllowable(const std::vector<Permutation>& perms,
                                     std::set<std::vector<Permutation>>& memo) {
  AllowableGraphResult g = isAllowableGraph(perms);
  if (!g.ok) return false;
  for (uint64_t cls : g.moveClasses) {
    std::vector<Permutation> contracted = elementaryContraction(g.perms, cls);
    if (contracted.empty()) return false;
    if (memo.count(contracted)) continue;
    memo.insert(contracted);
    if (!allContractionsAllowable(contracted, memo)) return false;
  }
  return true;
}
}  // namespace detail

/// The three testable equivalent conditions for an allowable graph to arise
/// from a sweep oriented matroid.
inline CharacterizationReport characterizationReport(const std::vector<Permutation>& perms) {
  CharacterizationReport rep;
  AllowableGraphResult g = isAllowableGraph(perms);
  rep.allowable = g.ok;
  rep.allowableReason = g.reason;
  if (!g.ok) return rep;

  // (i) the faces of the tope set satisfy the covector axioms
  const auto topes = topesFromPermutations(g.perms);
  const CovectorSet faceSet = covectorsFromTopes(topes.front().ground(), topes);
  rep.omVerdict = verifyCovectorAxioms(faceSet).ok;

  // (ii)
  auto sweeps = sweepsOfGraph(g.perms);
  auto potentials = potentialSweeps(g.perms);
  std::sort(sweeps.begin(), sweeps.end());
  std::sort(potentials.begin(), potentials.end());
  rep.potentialEqualsSweeps = sweeps == potentials;

  // (iii)
  std::set<std::vector<Permutation>> memo;
  rep.contractionsAllowable = detail::allContractionsAllowable(g.perms, memo);

  rep.agree = (rep.omVerdict == rep.potentialEqualsSweeps) &&
              (rep.omVerdict == rep.contractionsAllowable);
  return rep;
}

}  // namespace sweepscope
