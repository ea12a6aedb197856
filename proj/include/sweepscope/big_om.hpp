#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sweepscope/covectors.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

struct LiftedCovector {
  SignVector base;      // on Pairs(n)
  int k = 1;            // 1..2l+1 for l blocks
  SignVector combined;  // on Points(1..n) u Pairs(n)
};

/// The X^k sign-vector: point i gets - when p(i) <= floor((k-1)/2), + when
/// p(i) > floor(k/2), 0 when k is even and p(i) = k/2; pairs are copied.
inline LiftedCovector liftCovector(const SignVector& x, int k,
                                   const GroundPtr& bigGround = nullptr) {
  const OrderedPartition part = signVectorToPartition(x);
  const int n = part.n();
  const int l = static_cast<int>(part.blockCount());
  if (k < 1 || k > 2 * l + 1)
    throw std::invalid_argument("liftCovector: k out of range 1..2l+1");
  GroundPtr ground = bigGround ? bigGround : GroundSet::pointsAndPairs(n);
  uint64_t p = 0, m = 0;
  for (int i = 1; i <= n; ++i) {
    const int pi = part.blockIndexOf(i);
    const size_t idx = ground->pointIndex(i);
    if (pi <= (k - 1) / 2) m |= uint64_t(1) << idx;
    else if (pi > k / 2) p |= uint64_t(1) << idx;
    // else k even and pi == k/2: zero
  }
  size_t pairPos = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++pairPos) {
      const Sign s = x.at(pairPos);
      const size_t idx = ground->pairIndex(i, j);
      if (s == Sign::Plus) p |= uint64_t(1) << idx;
      else if (s == Sign::Minus) m |= uint64_t(1) << idx;
    }
  return LiftedCovector{x, k, SignVector(ground, p, m)};
}

/// Big oriented matroid of a sweep oriented matroid: all lifts X^k.
inline OrientedMatroid bigOM(const SweepOrientedMatroid& s) {
  const GroundPtr ground = GroundSet::pointsAndPairs(s.n());
  std::vector<SignVector> out;
  for (const auto& x : s.om().covectors()) {
    const int l = static_cast<int>(signVectorToPartition(x).blockCount());
    for (int k = 1; k <= 2 * l + 1; ++k)
      out.push_back(liftCovector(x, k, ground).combined);
  }
  return OrientedMatroid::trusted(CovectorSet(ground, std::move(out)));
}

/// Little oriented matroid of a sweep OM: the big one with all pairs deleted.
inline OrientedMatroid littleOM(const SweepOrientedMatroid& s) {
  const OrientedMatroid big = bigOM(s);
  std::vector<GroundLabel> points;
  for (int i = 1; i <= s.n(); ++i) points.push_back(GroundLabel::point(i));
  return restriction(big, points);
}

inline OrientedMatroid reorientOM(const OrientedMatroid& m, uint64_t flipMask) {
  std::vector<SignVector> out;
  out.reserve(m.covectors().size());
  for (const auto& x : m.covectors()) out.push_back(x.reorient(flipMask));
  return OrientedMatroid::trusted(CovectorSet(m.ground(), std::move(out)));
}

namespace detail {
/// F is a hyperplane iff it is the zero-set of some cocircuit.
inline bool isHyperplaneFlat(const OrientedMatroid& m, uint64_t fMask) {
  for (const auto& c : m.cocircuits())
    if (c.zeroMask() == fMask) return true;
  return false;
}

/// Closure of {x,y}: intersection of the zero-sets of all covectors vanishing
/// on both (the zero covector always does).
inline uint64_t closureOfTwo(const OrientedMatroid& m, size_t x, size_t y) {
  uint64_t acc = SignVector::maskForSize(m.ground()->size());
  const uint64_t need = (uint64_t(1) << x) | (uint64_t(1) << y);
  for (const auto& cov : m.covectors())
    if ((cov.supportMask() & need) == 0) acc &= cov.zeroMask();
  return acc;
}

inline bool modularHyperplaneNoThrow(const OrientedMatroid& m, uint64_t fMask) {
  if (!isHyperplaneFlat(m, fMask)) return false;
  const size_t e = m.ground()->size();
  const uint64_t loops = m.loopMask();
  for (size_t x = 0; x < e; ++x) {
    const uint64_t bx = uint64_t(1) << x;
    if ((bx & fMask) || (bx & loops)) continue;
    for (size_t y = x + 1; y < e; ++y) {
      const uint64_t by = uint64_t(1) << y;
      if ((by & fMask) || (by & loops)) continue;
      if (m.parallelClassMask(x) & by) continue;  // parallel pair spans no line
      if ((closureOfTwo(m, x, y) & fMask) == 0) return false;
    }
  }
  return true;
}
}  // namespace detail

/// F (a hyperplane) is modular iff it meets the line spanned by every pair of
/// non-parallel, non-loop elements outside it.
inline bool isModularHyperplane(const OrientedMatroid& m, uint64_t fMask) {
  if (!detail::isHyperplaneFlat(m, fMask))
    throw std::invalid_argument("isModularHyperplane: F is not a hyperplane");
  return detail::modularHyperplaneNoThrow(m, fMask);
}
inline bool isModularHyperplane(const OrientedMatroid& m, const std::vector<GroundLabel>& f) {
  return isModularHyperplane(m, maskOfLabels(m.ground(), f));
}

/// Simplification: restriction to one representative per non-loop parallelism
/// class. Returns the simplified matroid and the representative mask.
inline std::pair<OrientedMatroid, uint64_t> simplified(const OrientedMatroid& m) {
  uint64_t repMask = 0;
  for (uint64_t cls : m.parallelClassMasks())
    repMask |= uint64_t(1) << __builtin_ctzll(cls);
  return {restriction(m, repMask), repMask};
}

/// Tight: no single element of F can be deleted leaving F\z modular in M\z.
/// Runs on the simplification, matching the "tight up to simplification of
/// parallel elements" reading.
inline bool isTightModularHyperplane(const OrientedMatroid& m, uint64_t fMask) {
  if (!isModularHyperplane(m, fMask)) return false;
  auto [simple, repMask] = simplified(m);
  // Map F into the simplified ground (classes never straddle a hyperplane flat).
  uint64_t fSimple = 0;
  for (size_t k = 0; k < simple.ground()->size(); ++k) {
    const size_t orig = m.ground()->indexOf(simple.ground()->label(k));
    if (fMask & (uint64_t(1) << orig)) fSimple |= uint64_t(1) << k;
  }
  if (!detail::modularHyperplaneNoThrow(simple, fSimple)) return false;
  const uint64_t all = SignVector::maskForSize(simple.ground()->size());
  for (size_t z = 0; z < simple.ground()->size(); ++z) {
    const uint64_t bz = uint64_t(1) << z;
    if (!(fSimple & bz)) continue;
    OrientedMatroid deleted = restriction(simple, all & ~bz);
    // Re-index F\z in the deletion minor.
    uint64_t fDel = 0;
    for (size_t k = 0; k < deleted.ground()->size(); ++k) {
      const size_t src = simple.ground()->indexOf(deleted.ground()->label(k));
      if ((fSimple & ~bz) & (uint64_t(1) << src)) fDel |= uint64_t(1) << k;
    }
    if (detail::modularHyperplaneNoThrow(deleted, fDel)) return false;
  }
  return true;
}
inline bool isTightModularHyperplane(const OrientedMatroid& m, const std::vector<GroundLabel>& f) {
  return isTightModularHyperplane(m, maskOfLabels(m.ground(), f));
}

struct BigOMRecognition {
  bool ok = false;
  std::string reason;
  std::vector<GroundLabel> reorientation;  // flipping these makes M a big OM
};

/// Big-OM recognition on Points(1..n) u Pairs(n): (1) a cocircuit whose
/// zero-set is exactly the pairs, (2) two zeros among X_i, X_j, X_(i,j) force
/// the third. On success the constructive reorientation witness is returned
/// and the rebuilt big OM is checked for equality.
inline BigOMRecognition recognizeBigOM(const OrientedMatroid& m) {
  BigOMRecognition out;
  const GroundPtr& g = m.ground();
  int n = 0;
  for (const auto& l : g->labels())
    if (l.kind == GroundLabel::Kind::Point) n = std::max(n, l.i);
  if (n == 0 || !(*g == *GroundSet::pointsAndPairs(n))) {
    throw std::invalid_argument("recognizeBigOM: ground set is not Points(1..n) u Pairs(n)");
  }
  uint64_t pairsMask = 0, pointsMask = 0;
  for (size_t k = 0; k < g->size(); ++k) {
    if (g->label(k).kind == GroundLabel::Kind::Pair) pairsMask |= uint64_t(1) << k;
    else pointsMask |= uint64_t(1) << k;
  }

  // (1) cocircuit vanishing exactly on the pairs
  const SignVector* z0 = nullptr;
  for (const auto& c : m.cocircuits())
    if (c.zeroMask() == pairsMask) { z0 = &c; break; }
  if (!z0) out.reason = "no cocircuit with zero-set exactly the pairs";

  // (2) two zeros among X_i, X_j, X_(i,j) force the third
  for (const auto& x : m.covectors())
    for (int i = 1; i <= n && out.reason.find("two zeros") == std::string::npos; ++i)
      for (int j = i + 1; j <= n; ++j) {
        const Sign si = x.at(g->pointIndex(i));
        const Sign sj = x.at(g->pointIndex(j));
        const Sign sij = x.at(g->pairIndex(i, j));
        const int zeros = (si == Sign::Zero) + (sj == Sign::Zero) + (sij == Sign::Zero);
        if (zeros == 2) {
          if (!out.reason.empty()) out.reason += "; ";
          out.reason += "covector " + x.str() + " has exactly two zeros among {" +
                        std::to_string(i) + "," + std::to_string(j) + ",(" + std::to_string(i) +
                        "," + std::to_string(j) + ")}";
          break;
        }
      }
  if (!out.reason.empty()) return out;

  // Constructive reorientation: points so that Z0 becomes all-plus, then each
  // pair so that X_i = -, X_j = + forces X_(i,j) = +.
  uint64_t flip = 0;
  for (int i = 1; i <= n; ++i)
    if (z0->at(g->pointIndex(i)) == Sign::Minus) flip |= uint64_t(1) << g->pointIndex(i);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      const size_t idxI = g->pointIndex(i), idxJ = g->pointIndex(j);
      const size_t idxP = g->pairIndex(i, j);
      std::optional<Sign> seen;
      bool conflict = false;
      for (const auto& x : m.covectors()) {
        Sign si = x.at(idxI), sj = x.at(idxJ), sp = x.at(idxP);
        if (flip & (uint64_t(1) << idxI)) si = negated(si);
        if (flip & (uint64_t(1) << idxJ)) sj = negated(sj);
        if (si == Sign::Minus && sj == Sign::Plus) {
          if (sp == Sign::Zero) { conflict = true; break; }
          if (seen && *seen != sp) { conflict = true; break; }
          seen = sp;
        }
      }
      if (conflict) {
        out.reason = "pair (" + std::to_string(i) + "," + std::to_string(j) +
                     ") has inconsistent separating covectors";
        return out;
      }
      if (!seen) {
        // i and j parallel with equal sign: the pair element must be a loop.
        if (!(m.loopMask() & (uint64_t(1) << idxP))) {
          out.reason = "points " + std::to_string(i) + "," + std::to_string(j) +
                       " are never separated but (" + std::to_string(i) + "," +
                       std::to_string(j) + ") is not a loop";
          return out;
        }
        continue;
      }
      if (*seen == Sign::Minus) flip |= uint64_t(1) << idxP;
    }

  // Rebuild and compare.
  OrientedMatroid reoriented = reorientOM(m, flip);
  OrientedMatroid pairsPart = restriction(reoriented, pairsMask);
  SweepOMCheck chk = isSweepOM(pairsPart);
  if (!chk.ok) {
    out.reason = "pairs restriction is not a sweep oriented matroid";
    return out;
  }
  SweepOrientedMatroid sweepPart{std::move(pairsPart)};
  if (!(bigOM(sweepPart).base() == reoriented.base())) {
    out.reason = "covectors do not match the lift of the pairs restriction";
    return out;
  }
  out.ok = true;
  std::vector<GroundLabel> witness;
  for (size_t k = 0; k < g->size(); ++k)
    if (flip & (uint64_t(1) << k)) witness.push_back(g->label(k));
  out.reorientation = std::move(witness);
  return out;
}

// Decoration of a modular hyperplane F: delta assigns to each f in F the pairs
// whose spanned line meets F at f; epsilon orients each pair.
struct Decoration {
  int n = 0;
  std::map<std::string, std::vector<std::pair<int, int>>> delta;  // keyed by F label string
  std::map<std::pair<int, int>, Sign> epsilon;

  bool operator==(const Decoration& o) const {
    return n == o.n && delta == o.delta && epsilon == o.epsilon;
  }
};

inline void requireSimple(const OrientedMatroid& m, const char* who) {
  if (!m.loops().empty())
    throw std::invalid_argument(std::string(who) + ": matroid has loops");
  for (const auto& cls : m.parallelismClasses())
    if (cls.size() > 1)
      throw std::invalid_argument(std::string(who) + ": matroid has parallel elements");
}

/// Decoration of F induced by M. Requires M simple, F modular, and all of
/// E\F on a common side of F.
inline Decoration decorationOf(const OrientedMatroid& m, uint64_t fMask) {
  requireSimple(m, "decorationOf");
  if (!isModularHyperplane(m, fMask))
    throw std::invalid_argument("decorationOf: F is not a modular hyperplane");
  const GroundPtr& g = m.ground();
  const uint64_t all = SignVector::maskForSize(g->size());
  const uint64_t outside = all & ~fMask;
  bool halfspace = false;
  for (const auto& c : m.cocircuits())
    if (c.zeroMask() == fMask && (c.plusMask() & outside) == outside) halfspace = true;
  if (!halfspace)
    throw std::invalid_argument(
        "decorationOf: elements outside F are not in a common positive halfspace");

  std::vector<size_t> elem;  // the outside elements, canonical order, labeled 1..n
  for (size_t k = 0; k < g->size(); ++k)
    if (outside & (uint64_t(1) << k)) elem.push_back(k);
  Decoration dec;
  dec.n = static_cast<int>(elem.size());
  for (size_t k = 0; k < g->size(); ++k)
    if (fMask & (uint64_t(1) << k)) dec.delta[g->label(k).str()] = {};
  for (int i = 1; i <= dec.n; ++i)
    for (int j = i + 1; j <= dec.n; ++j) {
      const size_t xi = elem[i - 1], xj = elem[j - 1];
      const uint64_t meet = detail::closureOfTwo(m, xi, xj) & fMask;
      if (!meet || (meet & (meet - 1)))
        throw std::logic_error("decorationOf: line does not meet F in one element");
      const size_t f = static_cast<size_t>(__builtin_ctzll(meet));
      dec.delta[g->label(f).str()].push_back({i, j});
      bool plus = false;
      for (const auto& x : m.covectors()) {
        const Sign sf = x.at(f);
        if (x.at(xi) == Sign::Zero && sf != Sign::Zero && x.at(xj) == sf) {
          plus = true;
          break;
        }
      }
      dec.epsilon[{i, j}] = plus ? Sign::Plus : Sign::Minus;
    }
  return dec;
}
inline Decoration decorationOf(const OrientedMatroid& m, const std::vector<GroundLabel>& f) {
  return decorationOf(m, maskOfLabels(m.ground(), f));
}

/// Checks partition-of-pairs and induced transitivity; throws on failure.
inline void validateDecoration(const OrientedMatroid& n, const Decoration& dec) {
  const GroundPtr& g = n.ground();
  std::set<std::pair<int, int>> seen;
  for (const auto& [fLabel, pairs] : dec.delta) {
    g->indexOf(GroundLabel::parse(fLabel));  // throws if unknown
    for (const auto& pr : pairs) {
      if (!(1 <= pr.first && pr.first < pr.second && pr.second <= dec.n))
        throw std::invalid_argument("decoration pair out of range");
      if (!seen.insert(pr).second)
        throw std::invalid_argument("decoration delta is not disjoint");
    }
  }
  if (seen.size() != static_cast<size_t>(dec.n) * (dec.n - 1) / 2)
    throw std::invalid_argument("decoration delta does not cover Pairs(n)");
  const GroundPtr pairsGround = GroundSet::pairs(dec.n);
  for (const auto& x : n.covectors()) {
    uint64_t p = 0, m = 0;
    for (const auto& [fLabel, pairs] : dec.delta) {
      const Sign sf = x.at(g->indexOf(GroundLabel::parse(fLabel)));
      for (const auto& pr : pairs) {
        auto it = dec.epsilon.find(pr);
        if (it == dec.epsilon.end())
          throw std::invalid_argument("decoration epsilon missing a pair");
        Sign s = sf;
        if (it->second == Sign::Minus) s = negated(s);
        const size_t idx = pairsGround->pairIndex(pr.first, pr.second);
        if (s == Sign::Plus) p |= uint64_t(1) << idx;
        else if (s == Sign::Minus) m |= uint64_t(1) << idx;
      }
    }
    TransitivityReport rep = checkTransitivity(SignVector(pairsGround, p, m));
    if (!rep.ok)
      throw std::invalid_argument("decoration induces a non-transitive covector from " + x.str());
  }
}

/// Unique extension of N for which F becomes a modular hyperplane carrying the
/// given decoration: add the decorated parallel pairs, lift every covector,
/// and restrict to Points u F.
inline OrientedMatroid extendWithDecoration(const OrientedMatroid& n, const Decoration& dec) {
  requireSimple(n, "extendWithDecoration");
  validateDecoration(n, dec);
  const GroundPtr& fGround = n.ground();
  const GroundPtr pairsGround = GroundSet::pairs(dec.n);

  // Result ground: Points(1..dec.n) then the F labels.
  std::vector<GroundLabel> outLabels;
  for (int i = 1; i <= dec.n; ++i) outLabels.push_back(GroundLabel::point(i));
  for (const auto& l : fGround->labels()) outLabels.push_back(l);
  const GroundPtr outGround = GroundSet::fromLabels(outLabels);

  std::vector<SignVector> result;
  for (const auto& x : n.covectors()) {
    // Pairs part of the expanded covector.
    uint64_t pp = 0, pm = 0;
    for (const auto& [fLabel, pairs] : dec.delta) {
      const Sign sf = x.at(fGround->indexOf(GroundLabel::parse(fLabel)));
      for (const auto& pr : pairs) {
        Sign s = sf;
        if (dec.epsilon.at(pr) == Sign::Minus) s = negated(s);
        const size_t idx = pairsGround->pairIndex(pr.first, pr.second);
        if (s == Sign::Plus) pp |= uint64_t(1) << idx;
        else if (s == Sign::Minus) pm |= uint64_t(1) << idx;
      }
    }
    const SignVector pairsPart(pairsGround, pp, pm);
    const OrderedPartition part = signVectorToPartition(pairsPart);
    const int l = static_cast<int>(part.blockCount());
    for (int k = 1; k <= 2 * l + 1; ++k) {
      uint64_t p = 0, m = 0;
      for (int i = 1; i <= dec.n; ++i) {
        const int pi = part.blockIndexOf(i);
        const size_t idx = outGround->pointIndex(i);
        if (pi <= (k - 1) / 2) m |= uint64_t(1) << idx;
        else if (pi > k / 2) p |= uint64_t(1) << idx;
      }
      for (size_t t = 0; t < fGround->size(); ++t) {
        const Sign s = x.at(t);
        const size_t idx = outGround->indexOf(fGround->label(t));
        if (s == Sign::Plus) p |= uint64_t(1) << idx;
        else if (s == Sign::Minus) m |= uint64_t(1) << idx;
      }
      result.emplace_back(outGround, p, m);
    }
  }
  return OrientedMatroid::trusted(CovectorSet(outGround, std::move(result)));
}

}  // namespace sweepscope
