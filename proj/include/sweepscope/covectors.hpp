#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "sweepscope/sign_vector.hpp"

namespace sweepscope {

namespace detail {
struct MaskPairHash {
  size_t operator()(const std::pair<uint64_t, uint64_t>& k) const {
    uint64_t h = k.first * 0x9e3779b97f4a7c15ULL;
    h ^= k.second + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return static_cast<size_t>(h);
  }
};
struct Mask3Hash {
  size_t operator()(const std::array<uint64_t, 3>& k) const {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (uint64_t v : k) {
      h ^= v;
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return static_cast<size_t>(h);
  }
};
inline int popcount64(uint64_t v) { return __builtin_popcountll(v); }
}  // namespace detail

// A deduplicated, canonically sorted set of sign vectors over one ground set.
class CovectorSet {
 public:
  CovectorSet(GroundPtr ground, std::vector<SignVector> covectors)
      : ground_(std::move(ground)), covectors_(std::move(covectors)) {
    for (const auto& x : covectors_)
      if (!sameGround(x.ground(), ground_))
        throw std::invalid_argument("covector on a different ground set");
    std::sort(covectors_.begin(), covectors_.end(), SignVectorLess{});
    covectors_.erase(std::unique(covectors_.begin(), covectors_.end()), covectors_.end());
    keys_.reserve(covectors_.size());
    for (const auto& x : covectors_) keys_.insert({x.plusMask(), x.minusMask()});
  }

  const GroundPtr& ground() const { return ground_; }
  const std::vector<SignVector>& covectors() const { return covectors_; }
  size_t size() const { return covectors_.size(); }

  bool contains(const SignVector& x) const { return containsMasks(x.plusMask(), x.minusMask()); }
  bool containsMasks(uint64_t p, uint64_t m) const { return keys_.count({p, m}) != 0; }

  bool operator==(const CovectorSet& o) const {
    return sameGround(ground_, o.ground_) && covectors_ == o.covectors_;
  }

 private:
  GroundPtr ground_;
  std::vector<SignVector> covectors_;
  std::unordered_set<std::pair<uint64_t, uint64_t>, detail::MaskPairHash> keys_;
};

struct AxiomViolation {
  std::string axiom;  // "V0" | "V1" | "V2" | "V3"
  std::string detail;
  std::vector<SignVector> witnesses;
  std::optional<GroundLabel> element;
};

struct AxiomReport {
  bool ok = true;
  std::vector<AxiomViolation> violations;
};

/// Checks V0-V3 on an explicit covector collection. Each axiom reports the
/// first failing witness in canonical scan order.
inline AxiomReport verifyCovectorAxioms(const CovectorSet& s) {
  AxiomReport rep;
  const auto& cov = s.covectors();
  const size_t n = cov.size();
  auto fail = [&rep](AxiomViolation v) {
    rep.ok = false;
    rep.violations.push_back(std::move(v));
  };

  // V0
  if (!s.containsMasks(0, 0))
    fail({"V0", "zero covector missing", {}, std::nullopt});

  // V1
  for (const auto& x : cov) {
    if (!s.contains(x.opposite())) {
      fail({"V1", "opposite of " + x.str() + " missing", {x}, std::nullopt});
      break;
    }
  }

  // V2
  [&] {
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        const SignVector xy = cov[i].compose(cov[j]);
        if (!s.contains(xy)) {
          fail({"V2", cov[i].str() + " o " + cov[j].str() + " = " + xy.str() + " missing",
                {cov[i], cov[j]}, std::nullopt});
          return;
        }
        const SignVector yx = cov[j].compose(cov[i]);
        if (!s.contains(yx)) {
          fail({"V2", cov[j].str() + " o " + cov[i].str() + " = " + yx.str() + " missing",
                {cov[j], cov[i]}, std::nullopt});
          return;
        }
      }
  }();

  // V3. The witness requirement for (X, Y, e) only depends on D = S(X,Y) and
  // on X o Y off D (where X o Y = Y o X), so queries are memoized on that key.
  [&] {
    std::unordered_map<std::array<uint64_t, 3>, uint64_t, detail::Mask3Hash> witnessed;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j) {
        const uint64_t d = cov[i].separationMask(cov[j]);
        if (!d) continue;
        const SignVector c = cov[i].compose(cov[j]);
        const std::array<uint64_t, 3> key{d, c.plusMask() & ~d, c.minusMask() & ~d};
        auto it = witnessed.find(key);
        if (it == witnessed.end()) {
          uint64_t acc = 0;
          for (const auto& z : cov)
            if ((z.plusMask() & ~d) == key[1] && (z.minusMask() & ~d) == key[2])
              acc |= z.zeroMask() & d;
          it = witnessed.emplace(key, acc).first;
        }
        const uint64_t missing = d & ~it->second;
        if (missing) {
          const size_t e = static_cast<size_t>(__builtin_ctzll(missing));
          fail({"V3",
                "no Z eliminating " + s.ground()->label(e).str() + " between " + cov[i].str() +
                    " and " + cov[j].str(),
                {cov[i], cov[j]}, s.ground()->label(e)});
          return;
        }
      }
  }();

  return rep;
}

struct ValidationError : std::runtime_error {
  explicit ValidationError(const AxiomReport& rep)
      : std::runtime_error(describe(rep)) {}
  static std::string describe(const AxiomReport& rep) {
    std::string msg = "covector axioms violated:";
    for (const auto& v : rep.violations) msg += " [" + v.axiom + "] " + v.detail + ";";
    return msg;
  }
};

// Covector-set core with derived structure. Instances are immutable; all the
// cached queries are computed when the matroid is validated.
class OrientedMatroid {
 public:
  enum class Validation { Check, Trust, Defer };

  OrientedMatroid(CovectorSet base, Validation mode) : base_(std::move(base)) {
    switch (mode) {
      case Validation::Check: {
        AxiomReport rep = verifyCovectorAxioms(base_);
        if (!rep.ok) throw ValidationError(rep);
        validated_ = true;
        break;
      }
      case Validation::Trust:
        validated_ = true;
        break;
      case Validation::Defer:
        validated_ = false;
        break;
    }
    if (validated_) computeCaches();
  }

  static OrientedMatroid checked(CovectorSet base) {
    return OrientedMatroid(std::move(base), Validation::Check);
  }
  static OrientedMatroid trusted(CovectorSet base) {
    return OrientedMatroid(std::move(base), Validation::Trust);
  }

  const CovectorSet& base() const { return base_; }
  const GroundPtr& ground() const { return base_.ground(); }
  const std::vector<SignVector>& covectors() const { return base_.covectors(); }
  bool contains(const SignVector& x) const { return base_.contains(x); }
  bool validated() const { return validated_; }

  /// Maximal covectors. A rank-0 matroid has none (zero is excluded).
  const std::vector<SignVector>& topes() const { require(); return topes_; }
  /// Minimal nonzero covectors.
  const std::vector<SignVector>& cocircuits() const { require(); return cocircuits_; }
  /// Length of maximal chains in the covector poset.
  size_t rank() const { require(); return rank_; }
  const std::vector<std::vector<GroundLabel>>& parallelismClasses() const {
    require();
    return parallelClasses_;
  }
  const std::vector<GroundLabel>& loops() const { require(); return loops_; }
  uint64_t loopMask() const { require(); return loopMask_; }
  bool isAcyclic() const {
    require();
    return base_.contains(SignVector::allPlus(base_.ground()));
  }
  /// Parallelism class of one element, as a mask (loops excluded).
  uint64_t parallelClassMask(size_t elem) const {
    require();
    for (uint64_t m : parallelClassMasks_)
      if (m & (uint64_t(1) << elem)) return m;
    throw std::invalid_argument("element is a loop or out of range");
  }
  const std::vector<uint64_t>& parallelClassMasks() const { require(); return parallelClassMasks_; }

 private:
  void require() const {
    if (!validated_) throw std::logic_error("operation requires a validated oriented matroid");
  }

  void computeCaches() {
    const auto& cov = base_.covectors();
    const size_t n = cov.size();
    const size_t e = base_.ground()->size();

    // Topes and cocircuits by scanning the conformal order. Minimality is
    // among the nonzero covectors.
    std::vector<bool> maximal(n, true), minimal(n, true);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        if (cov[i].conformsTo(cov[j])) {
          maximal[i] = false;
          if (!cov[i].isZero()) minimal[j] = false;
        }
      }
    for (size_t i = 0; i < n; ++i) {
      if (maximal[i] && !cov[i].isZero()) topes_.push_back(cov[i]);
      if (minimal[i] && !cov[i].isZero()) cocircuits_.push_back(cov[i]);
    }

    // Rank = longest chain from zero; DP over support sizes.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return detail::popcount64(cov[a].supportMask()) < detail::popcount64(cov[b].supportMask());
    });
    std::vector<size_t> depth(n, 0);
    rank_ = 0;
    for (size_t a = 0; a < n; ++a) {
      const size_t i = order[a];
      for (size_t b = 0; b < a; ++b) {
        const size_t j = order[b];
        if (cov[j] != cov[i] && cov[j].conformsTo(cov[i]))
          depth[i] = std::max(depth[i], depth[j] + 1);
      }
      rank_ = std::max(rank_, depth[i]);
    }

    // Parallelism classes from per-element sign columns; loops excluded.
    const size_t words = (n + 63) / 64;
    std::vector<std::vector<uint64_t>> colPlus(e, std::vector<uint64_t>(words, 0)),
        colMinus(e, std::vector<uint64_t>(words, 0));
    for (size_t i = 0; i < n; ++i)
      for (size_t k = 0; k < e; ++k) {
        const Sign sg = cov[i].at(k);
        if (sg == Sign::Plus) colPlus[k][i / 64] |= uint64_t(1) << (i % 64);
        else if (sg == Sign::Minus) colMinus[k][i / 64] |= uint64_t(1) << (i % 64);
      }
    std::vector<bool> isLoop(e, false);
    for (size_t k = 0; k < e; ++k) {
      bool empty = true;
      for (size_t w = 0; w < words; ++w)
        if (colPlus[k][w] | colMinus[k][w]) empty = false;
      if (empty) {
        isLoop[k] = true;
        loops_.push_back(base_.ground()->label(k));
        loopMask_ |= uint64_t(1) << k;
      }
    }
    std::vector<bool> assigned(e, false);
    for (size_t k = 0; k < e; ++k) {
      if (isLoop[k] || assigned[k]) continue;
      uint64_t mask = uint64_t(1) << k;
      std::vector<GroundLabel> cls{base_.ground()->label(k)};
      assigned[k] = true;
      for (size_t l = k + 1; l < e; ++l) {
        if (isLoop[l] || assigned[l]) continue;
        if ((colPlus[k] == colPlus[l] && colMinus[k] == colMinus[l]) ||
            (colPlus[k] == colMinus[l] && colMinus[k] == colPlus[l])) {
          mask |= uint64_t(1) << l;
          cls.push_back(base_.ground()->label(l));
          assigned[l] = true;
        }
      }
      parallelClasses_.push_back(std::move(cls));
      parallelClassMasks_.push_back(mask);
    }
  }

  CovectorSet base_;
  bool validated_ = false;
  std::vector<SignVector> topes_, cocircuits_;
  size_t rank_ = 0;
  std::vector<std::vector<GroundLabel>> parallelClasses_;
  std::vector<uint64_t> parallelClassMasks_;
  std::vector<GroundLabel> loops_;
  uint64_t loopMask_ = 0;
};

/// All X with X o T' in T for every tope T' (scans zeroings of the topes).
inline CovectorSet covectorsFromTopes(const GroundPtr& ground,
                                      const std::vector<SignVector>& topes) {
  if (topes.empty()) throw std::invalid_argument("covectorsFromTopes: empty tope set");
  const uint64_t support = topes.front().supportMask();
  for (const auto& t : topes) {
    if (!sameGround(t.ground(), ground))
      throw std::invalid_argument("tope on a different ground set");
    if (t.supportMask() != support)
      throw std::invalid_argument("topes do not share a common support");
  }
  if (detail::popcount64(support) > 22)
    throw std::invalid_argument("tope support too large for exhaustive covector scan");

  CovectorSet topeSet(ground, topes);
  std::unordered_set<std::pair<uint64_t, uint64_t>, detail::MaskPairHash> seen;
  std::vector<SignVector> result;
  for (const auto& t : topeSet.covectors()) {
    // Enumerate all zeroings of t (submasks of the support).
    uint64_t sub = support;
    while (true) {
      const uint64_t keep = support & ~sub;
      const uint64_t p = t.plusMask() & keep, m = t.minusMask() & keep;
      if (seen.insert({p, m}).second) {
        SignVector x(ground, p, m);
        bool face = true;
        for (const auto& tt : topeSet.covectors())
          if (!topeSet.contains(x.compose(tt))) {
            face = false;
            break;
          }
        if (face) result.push_back(std::move(x));
      }
      if (sub == 0) break;
      sub = (sub - 1) & support;
    }
  }
  return CovectorSet(ground, std::move(result));
}

/// {zero} plus all finite compositions of elements of C (fixed point).
inline CovectorSet cocircuitClosure(const GroundPtr& ground,
                                    const std::vector<SignVector>& cocircuits) {
  for (const auto& c : cocircuits) {
    bool hasOpp = false;
    for (const auto& d : cocircuits)
      if (d == c.opposite()) { hasOpp = true; break; }
    if (!hasOpp)
      throw std::invalid_argument("cocircuit set is not symmetric: missing -" + c.str());
  }
  std::unordered_set<std::pair<uint64_t, uint64_t>, detail::MaskPairHash> seen;
  std::vector<SignVector> all;
  std::queue<SignVector> work;
  auto push = [&](const SignVector& x) {
    if (seen.insert({x.plusMask(), x.minusMask()}).second) {
      all.push_back(x);
      work.push(x);
    }
  };
  push(SignVector::zero(ground));
  for (const auto& c : cocircuits) push(c);
  while (!work.empty()) {
    SignVector x = work.front();
    work.pop();
    for (const auto& c : cocircuits) push(x.compose(c));
  }
  return CovectorSet(ground, std::move(all));
}

/// Sub-ground containing exactly the labels of `mask`, in canonical order.
inline GroundPtr subGround(const GroundPtr& ground, uint64_t mask) {
  std::vector<GroundLabel> ls;
  for (size_t k = 0; k < ground->size(); ++k)
    if (mask & (uint64_t(1) << k)) ls.push_back(ground->label(k));
  return GroundSet::fromLabels(std::move(ls));
}

inline uint64_t maskOfLabels(const GroundPtr& ground, const std::vector<GroundLabel>& ls) {
  uint64_t m = 0;
  for (const auto& l : ls) m |= uint64_t(1) << ground->indexOf(l);
  return m;
}

/// Keeps the coordinates in F of all covectors.
inline OrientedMatroid restriction(const OrientedMatroid& m, uint64_t fMask) {
  const GroundPtr sub = subGround(m.ground(), fMask);
  std::vector<SignVector> out;
  out.reserve(m.covectors().size());
  for (const auto& x : m.covectors()) out.push_back(x.restrictTo(sub));
  return OrientedMatroid::checked(CovectorSet(sub, std::move(out)));
}
inline OrientedMatroid restriction(const OrientedMatroid& m, const std::vector<GroundLabel>& f) {
  return restriction(m, maskOfLabels(m.ground(), f));
}

/// Keeps the coordinates outside F of the covectors vanishing on F.
inline OrientedMatroid contraction(const OrientedMatroid& m, uint64_t fMask) {
  const uint64_t all = SignVector::maskForSize(m.ground()->size());
  if (fMask & ~all) throw std::invalid_argument("contraction: mask outside ground set");
  const GroundPtr sub = subGround(m.ground(), all & ~fMask);
  std::vector<SignVector> out;
  for (const auto& x : m.covectors())
    if ((x.supportMask() & fMask) == 0) out.push_back(x.restrictTo(sub));
  return OrientedMatroid::checked(CovectorSet(sub, std::move(out)));
}
inline OrientedMatroid contraction(const OrientedMatroid& m, const std::vector<GroundLabel>& f) {
  return contraction(m, maskOfLabels(m.ground(), f));
}

// Lattice of flats: zero-sets of covectors ordered by inclusion, graded by
// the matroid rank function.
struct FlatLattice {
  GroundPtr ground;
  std::vector<uint64_t> flats;  // sorted by (popcount, value); includes bottom and top
  std::vector<int> ranks;       // longest chain from the bottom flat

  int rank() const { return ranks.empty() ? 0 : ranks.back(); }

  size_t indexOf(uint64_t flat) const {
    for (size_t i = 0; i < flats.size(); ++i)
      if (flats[i] == flat) return i;
    throw std::invalid_argument("not a flat of this lattice");
  }
  bool isFlat(uint64_t mask) const {
    for (uint64_t f : flats)
      if (f == mask) return true;
    return false;
  }
  /// Rank of an arbitrary subset: rank of the minimal flat containing it.
  int rankOf(uint64_t subset) const {
    int best = -1;
    for (size_t i = 0; i < flats.size(); ++i)
      if ((subset & ~flats[i]) == 0 && (best < 0 || ranks[i] < best)) best = ranks[i];
    if (best < 0) throw std::invalid_argument("subset not contained in any flat");
    return best;
  }
  /// Minimal flat containing the subset.
  uint64_t closure(uint64_t subset) const {
    uint64_t best = 0;
    int bestRank = -1;
    for (size_t i = 0; i < flats.size(); ++i)
      if ((subset & ~flats[i]) == 0 && (bestRank < 0 || ranks[i] < bestRank)) {
        bestRank = ranks[i];
        best = flats[i];
      }
    if (bestRank < 0) throw std::invalid_argument("subset not contained in any flat");
    return best;
  }
};

inline FlatLattice flatLattice(const OrientedMatroid& m) {
  FlatLattice l;
  l.ground = m.ground();
  std::unordered_set<uint64_t> seen;
  for (const auto& x : m.covectors())
    if (seen.insert(x.zeroMask()).second) l.flats.push_back(x.zeroMask());
  std::sort(l.flats.begin(), l.flats.end(), [](uint64_t a, uint64_t b) {
    const int pa = detail::popcount64(a), pb = detail::popcount64(b);
    return pa != pb ? pa < pb : a < b;
  });
  l.ranks.assign(l.flats.size(), 0);
  for (size_t i = 0; i < l.flats.size(); ++i)
    for (size_t j = 0; j < i; ++j)
      if ((l.flats[j] & ~l.flats[i]) == 0 && l.flats[j] != l.flats[i])
        l.ranks[i] = std::max(l.ranks[i], l.ranks[j] + 1);
  return l;
}

// Finite poset by explicit strict-order matrix; elements carry display names.
struct Poset {
  std::vector<std::string> elements;
  std::vector<std::vector<bool>> less;  // less[i][j] : i strictly below j

  std::vector<std::pair<size_t, size_t>> covers() const {
    std::vector<std::pair<size_t, size_t>> out;
    const size_t n = elements.size();
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (!less[i][j]) continue;
        bool cover = true;
        for (size_t k = 0; k < n && cover; ++k)
          if (less[i][k] && less[k][j]) cover = false;
        if (cover) out.push_back({i, j});
      }
    return out;
  }
};

/// Euler characteristic of the order complex: sum over k >= 1 of
/// (-1)^(k-1) * (number of k-chains).
inline long long orderComplexEuler(const Poset& p) {
  const size_t n = p.elements.size();
  // f(v) = 1 - sum_{u < v} f(u); chi = sum_v f(v), evaluated in topological order.
  std::vector<size_t> indeg(n, 0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (p.less[i][j]) ++indeg[j];
  std::vector<size_t> topo;
  std::vector<size_t> stack;
  for (size_t i = 0; i < n; ++i)
    if (indeg[i] == 0) stack.push_back(i);
  while (!stack.empty()) {
    size_t v = stack.back();
    stack.pop_back();
    topo.push_back(v);
    for (size_t j = 0; j < n; ++j)
      if (p.less[v][j] && --indeg[j] == 0) stack.push_back(j);
  }
  if (topo.size() != n) throw std::invalid_argument("orderComplexEuler: relation is not a strict order");
  std::vector<long long> f(n, 0);
  long long chi = 0;
  for (size_t v : topo) {
    long long s = 1;
    for (size_t u = 0; u < n; ++u)
      if (p.less[u][v]) s -= f[u];
    f[v] = s;
    chi += s;
  }
  return chi;
}

/// Poset of the nonzero covectors of M under the conformal order.
inline Poset covectorPoset(const OrientedMatroid& m, bool includeZero = false) {
  std::vector<SignVector> elems;
  for (const auto& x : m.covectors())
    if (includeZero || !x.isZero()) elems.push_back(x);
  Poset p;
  const size_t n = elems.size();
  p.elements.reserve(n);
  for (const auto& x : elems) p.elements.push_back(x.str());
  p.less.assign(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j && elems[i].conformsTo(elems[j])) p.less[i][j] = true;
  return p;
}

}  // namespace sweepscope
