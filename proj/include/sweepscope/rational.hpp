#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepscope {

// Exact rational scalar. GMP keeps it reduced with positive denominator,
// which is exactly the invariant the rest of the library relies on.
using Rational = mpq_class;
using BigInt = mpz_class;

inline int signOf(const Rational& q) { return sgn(q); }

/// Parses "p/q", "p", or "-p/q" (whitespace tolerated). Throws on garbage or q=0.
inline Rational parseRational(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    Rational q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: '" + text + "'");
  }
}

inline std::string toString(const Rational& q) { return q.get_str(); }

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// mpq_class(num, den) does not reduce; normalize anything that crosses an
/// API boundary so comparisons stay exact.
inline void canonicalize(RatVec& v) {
  for (auto& q : v) q.canonicalize();
}

inline Rational dot(const RatVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

/// Reduced row-echelon form of A; returns the nonzero rows (a basis of the row space).
inline RatMat rrefBasis(RatMat a) {
  const size_t rows = a.size();
  const size_t cols = rows == 0 ? 0 : a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[r], a[piv]);
    const Rational inv = 1 / a[r][c];
    for (size_t j = c; j < cols; ++j) a[r][j] *= inv;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c] == 0) continue;
      const Rational f = a[i][c];
      for (size_t j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  a.resize(r);
  return a;
}

inline size_t matrixRank(const RatMat& a) { return rrefBasis(a).size(); }

/// Basis of {x : A x = 0}.
inline std::vector<RatVec> nullspaceBasis(const RatMat& a, size_t cols) {
  RatMat r = rrefBasis(a);
  std::vector<size_t> pivotCol;
  std::vector<bool> isPivot(cols, false);
  for (const auto& row : r) {
    size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    pivotCol.push_back(c);
    if (c < cols) isPivot[c] = true;
  }
  std::vector<RatVec> basis;
  for (size_t freeCol = 0; freeCol < cols; ++freeCol) {
    if (isPivot[freeCol]) continue;
    RatVec x(cols, Rational(0));
    x[freeCol] = 1;
    for (size_t i = 0; i < r.size(); ++i)
      x[pivotCol[i]] = -r[i][freeCol];
    basis.push_back(std::move(x));
  }
  return basis;
}

/// Coordinates of v in the row space spanned by the RREF basis `basis`,
/// or nullopt if v is outside it.
inline std::optional<RatVec> coordinatesIn(const RatMat& basis, const RatVec& v) {
  const size_t cols = v.size();
  RatVec coef;
  coef.reserve(basis.size());
  for (const auto& row : basis) {
    size_t c = 0;
    while (c < cols && row[c] == 0) ++c;
    coef.push_back(c < cols ? v[c] : Rational(0));
  }
  RatVec rebuilt(cols, Rational(0));
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = 0; j < cols; ++j) rebuilt[j] += coef[i] * basis[i][j];
  if (rebuilt != v) return std::nullopt;
  return coef;
}

}  // namespace sweepscope
