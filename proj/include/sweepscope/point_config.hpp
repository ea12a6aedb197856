#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sweepscope/covectors.hpp"
#include "sweepscope/ordered_partition.hpp"
#include "sweepscope/rational.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

// n labeled points with exact rational coordinates in dimension d.
// Repeated points are permitted.
struct PointConfiguration {
  int d = 0;
  std::vector<RatVec> points;  // labels 1..n in order

  int n() const { return static_cast<int>(points.size()); }

  static PointConfiguration make(int d, std::vector<RatVec> pts) {
    PointConfiguration a;
    a.d = d;
    for (auto& p : pts) {
      if (p.size() != static_cast<size_t>(d))
        throw std::invalid_argument("point has wrong dimension");
      canonicalize(p);
    }
    a.points = std::move(pts);
    return a;
  }
  static PointConfiguration fromInts(int d, const std::vector<std::vector<long>>& pts) {
    std::vector<RatVec> rs;
    for (const auto& p : pts) {
      RatVec r;
      for (long v : p) r.emplace_back(v);
      rs.push_back(std::move(r));
    }
    return make(d, std::move(rs));
  }

  bool hasRepeatedPoints() const {
    for (size_t i = 0; i < points.size(); ++i)
      for (size_t j = i + 1; j < points.size(); ++j)
        if (points[i] == points[j]) return true;
    return false;
  }
};

struct VectorConfiguration {
  int d = 0;
  std::vector<RatVec> vectors;
  GroundPtr labels;

  static VectorConfiguration make(int d, std::vector<RatVec> vecs, GroundPtr labels) {
    if (labels->size() != vecs.size())
      throw std::invalid_argument("label count does not match vector count");
    for (auto& v : vecs) {
      if (v.size() != static_cast<size_t>(d))
        throw std::invalid_argument("vector has wrong dimension");
      canonicalize(v);
    }
    VectorConfiguration c;
    c.d = d;
    c.vectors = std::move(vecs);
    c.labels = std::move(labels);
    return c;
  }
};

/// Covectors {(sign<u,v_1>,...,sign<u,v_m>) : u in R^d}, computed exactly:
/// cocircuits are found as normals of hyperplanes spanned by (rank-1)-subsets,
/// then composed to a fixed point.
inline OrientedMatroid realizableOM(const VectorConfiguration& v) {
  const size_t m = v.vectors.size();
  const GroundPtr& ground = v.labels;
  // Reduce to coordinates in the span: the OM only sees the row space.
  const RatMat basis = rrefBasis(v.vectors);
  const size_t r = basis.size();
  if (r == 0)
    return OrientedMatroid::trusted(CovectorSet(ground, {SignVector::zero(ground)}));

  RatMat coords;  // m vectors in Q^r with the same oriented matroid
  coords.reserve(m);
  for (const auto& vec : v.vectors) {
    auto c = coordinatesIn(basis, vec);
    if (!c) throw std::logic_error("vector outside its own span");
    coords.push_back(std::move(*c));
  }

  // Enumerate (r-1)-subsets spanning a hyperplane of the span; each yields a
  // normal (unique up to sign) and so a cocircuit candidate.
  std::vector<SignVector> cocircuits;
  std::unordered_set<std::pair<uint64_t, uint64_t>, detail::MaskPairHash> seen;
  std::vector<size_t> subset(r ? r - 1 : 0);
  auto emit = [&](const RatVec& normal) {
    uint64_t p = 0, mm = 0;
    for (size_t i = 0; i < m; ++i) {
      const int s = signOf(dot(normal, coords[i]));
      if (s > 0) p |= uint64_t(1) << i;
      else if (s < 0) mm |= uint64_t(1) << i;
    }
    if (!(p | mm)) return;
    if (seen.insert({p, mm}).second) cocircuits.emplace_back(ground, p, mm);
    if (seen.insert({mm, p}).second) cocircuits.emplace_back(ground, mm, p);
  };
  if (r == 1) {
    RatVec w{Rational(1)};
    emit(w);
  } else {
    std::function<void(size_t, size_t)> rec = [&](size_t pos, size_t start) {
      if (pos == r - 1) {
        RatMat rows;
        for (size_t idx : subset) rows.push_back(coords[idx]);
        if (matrixRank(rows) != r - 1) return;
        auto null = nullspaceBasis(rows, r);
        if (null.size() != 1) return;  // rank < r-1 cannot happen here
        emit(null.front());
        return;
      }
      for (size_t i = start; i < m; ++i) {
        subset[pos] = i;
        rec(pos + 1, i + 1);
      }
    };
    rec(0, 0);
  }
  return OrientedMatroid::trusted(cocircuitClosure(ground, cocircuits));
}

inline RatVec homogenized(const RatVec& p) {
  RatVec h = p;
  h.emplace_back(1);
  return h;
}

/// Oriented matroid of the homogenized configuration (a_i, 1) on Points(1..n).
inline OrientedMatroid littleOM(const PointConfiguration& a) {
  if (a.n() < 1) throw std::invalid_argument("littleOM: empty configuration");
  std::vector<RatVec> vecs;
  vecs.reserve(a.points.size());
  for (const auto& p : a.points) vecs.push_back(homogenized(p));
  return realizableOM(VectorConfiguration::make(a.d + 1, std::move(vecs), GroundSet::points(a.n())));
}

/// Oriented matroid of the difference vectors a_j - a_i on Pairs(n).
inline SweepOrientedMatroid sweepOM(const PointConfiguration& a) {
  if (a.n() < 1) throw std::invalid_argument("sweepOM: empty configuration");
  const int n = a.n();
  std::vector<RatVec> vecs;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      RatVec diff(a.d);
      for (int t = 0; t < a.d; ++t) diff[t] = a.points[j - 1][t] - a.points[i - 1][t];
      vecs.push_back(std::move(diff));
    }
  OrientedMatroid om = realizableOM(VectorConfiguration::make(a.d, std::move(vecs), GroundSet::pairs(n)));
  return SweepOrientedMatroid(std::move(om));
}

/// Rank-(d+1) matroid on Points u Pairs of (a_i,1) together with (a_j-a_i,0).
inline OrientedMatroid bigOMRealizable(const PointConfiguration& a) {
  if (a.n() < 1) throw std::invalid_argument("bigOMRealizable: empty configuration");
  const int n = a.n();
  std::vector<RatVec> vecs;
  for (const auto& p : a.points) vecs.push_back(homogenized(p));
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      RatVec diff(a.d + 1, Rational(0));
      for (int t = 0; t < a.d; ++t) diff[t] = a.points[j - 1][t] - a.points[i - 1][t];
      vecs.push_back(std::move(diff));
    }
  return realizableOM(
      VectorConfiguration::make(a.d + 1, std::move(vecs), GroundSet::pointsAndPairs(n)));
}

/// Level sets of <u, .> ordered by increasing value; u = 0 gives the trivial sweep.
inline OrderedPartition sweepOfDirection(const PointConfiguration& a, RatVec u) {
  if (u.size() != static_cast<size_t>(a.d))
    throw std::invalid_argument("sweepOfDirection: direction dimension mismatch");
  canonicalize(u);
  std::map<Rational, std::vector<int>> levels;
  for (int i = 1; i <= a.n(); ++i) levels[dot(u, a.points[i - 1])].push_back(i);
  std::vector<std::vector<int>> blocks;
  for (auto& [value, block] : levels) blocks.push_back(std::move(block));
  return OrderedPartition(a.n(), std::move(blocks));
}

/// S is a k-set iff some affine hyperplane strictly separates it; equivalently
/// the tope that is - exactly on S belongs to the little oriented matroid.
inline std::vector<std::vector<int>> kSets(const PointConfiguration& a, int k,
                                           const OrientedMatroid* littlePrecomputed = nullptr) {
  if (k < 1 || k > a.n()) throw std::invalid_argument("kSets: k out of range");
  std::optional<OrientedMatroid> local;
  const OrientedMatroid& lom =
      littlePrecomputed ? *littlePrecomputed : (local.emplace(littleOM(a)), *local);
  const int n = a.n();
  std::vector<std::vector<int>> out;
  std::vector<int> pick;
  const uint64_t all = SignVector::maskForSize(n);
  std::function<void(int, uint64_t)> rec = [&](int start, uint64_t mask) {
    if (static_cast<int>(pick.size()) == k) {
      if (lom.contains(SignVector(lom.ground(), all & ~mask, mask))) out.push_back(pick);
      return;
    }
    for (int i = start; i <= n; ++i) {
      pick.push_back(i);
      rec(i + 1, mask | (uint64_t(1) << (i - 1)));
      pick.pop_back();
    }
  };
  rec(1, 0);
  return out;
}

/// Barycenters of the k-sets: exactly the vertices of the k-set polytope.
inline std::vector<RatVec> kSetPolytopeVertices(const PointConfiguration& a, int k) {
  std::vector<RatVec> out;
  for (const auto& s : kSets(a, k)) {
    RatVec b(a.d, Rational(0));
    for (int i : s)
      for (int t = 0; t < a.d; ++t) b[t] += a.points[i - 1][t];
    for (auto& c : b) c /= k;
    out.push_back(std::move(b));
  }
  return out;
}

/// Zonotope vertex for each tope T: sum of T_(i,j) * (a_j - a_i) / 2. The
/// rank-0 case maps the trivial sweep to the origin.
inline std::vector<std::pair<SignVector, RatVec>> sweepPolytopeVertices(
    const PointConfiguration& a, const SweepOrientedMatroid* sweepPrecomputed = nullptr) {
  std::optional<SweepOrientedMatroid> local;
  const SweepOrientedMatroid& som =
      sweepPrecomputed ? *sweepPrecomputed : (local.emplace(sweepOM(a)), *local);
  std::vector<std::pair<SignVector, RatVec>> out;
  const auto& topes = som.om().topes();
  if (topes.empty()) {
    out.push_back({SignVector::zero(som.ground()), RatVec(a.d, Rational(0))});
    return out;
  }
  const int n = a.n();
  for (const auto& t : topes) {
    RatVec v(a.d, Rational(0));
    size_t idx = 0;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j, ++idx) {
        const Sign s = t.at(idx);
        if (s == Sign::Zero) continue;
        const Rational half(1, 2);
        for (int tcoord = 0; tcoord < a.d; ++tcoord) {
          Rational diff = a.points[j - 1][tcoord] - a.points[i - 1][tcoord];
          v[tcoord] += (s == Sign::Plus ? half : -half) * diff;
        }
      }
    out.push_back({t, std::move(v)});
  }
  return out;
}

/// Exponent tuples of the monomials of degree <= D in d variables, graded by
/// total degree and lexicographic (x1-major) within each degree.
inline std::vector<std::vector<int>> monomialExponents(int d, int maxDegree) {
  std::vector<std::vector<int>> out;
  if (d == 0) {
    out.push_back({});
    return out;
  }
  std::vector<int> cur(d, 0);
  std::function<void(int, int)> rec = [&](int pos, int remaining) {
    if (pos == d - 1) {
      cur[pos] = remaining;
      out.push_back(cur);
      return;
    }
    for (int e = remaining; e >= 0; --e) {
      cur[pos] = e;
      rec(pos + 1, remaining - e);
    }
  };
  for (int deg = 0; deg <= maxDegree; ++deg) rec(0, deg);
  return out;
}

/// Maps each point v to (M(v)) over all monomials of degree <= D.
inline PointConfiguration veronese(const PointConfiguration& a, int maxDegree) {
  if (maxDegree < 1) throw std::invalid_argument("veronese: degree must be >= 1");
  const auto exps = monomialExponents(a.d, maxDegree);
  std::vector<RatVec> pts;
  for (const auto& p : a.points) {
    RatVec img;
    img.reserve(exps.size());
    for (const auto& e : exps) {
      Rational val(1);
      for (int t = 0; t < a.d; ++t)
        for (int rep = 0; rep < e[t]; ++rep) val *= p[t];
      img.push_back(std::move(val));
    }
    pts.push_back(std::move(img));
  }
  return PointConfiguration::make(static_cast<int>(exps.size()), std::move(pts));
}

}  // namespace sweepscope
