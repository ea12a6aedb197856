#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sweepscope {

enum class Sign : int8_t { Minus = -1, Zero = 0, Plus = 1 };

inline Sign negated(Sign s) { return static_cast<Sign>(-static_cast<int8_t>(s)); }
inline char signChar(Sign s) { return s == Sign::Plus ? '+' : (s == Sign::Minus ? '-' : '0'); }
inline Sign signFromChar(char c) {
  switch (c) {
    case '+': return Sign::Plus;
    case '-': return Sign::Minus;
    case '0': return Sign::Zero;
  }
  throw std::invalid_argument(std::string("bad sign character '") + c + "'");
}
inline Sign signOfInt(int v) { return v > 0 ? Sign::Plus : (v < 0 ? Sign::Minus : Sign::Zero); }

// A ground element: Point(i), Pair(i,j) with i<j, or an opaque name.
struct GroundLabel {
  enum class Kind : uint8_t { Point, Pair, Named };
  Kind kind = Kind::Named;
  int i = 0, j = 0;
  std::string name;

  static GroundLabel point(int i) {
    if (i < 1) throw std::invalid_argument("Point label must be >= 1");
    GroundLabel g; g.kind = Kind::Point; g.i = i; return g;
  }
  static GroundLabel pair(int i, int j) {
    if (!(1 <= i && i < j)) throw std::invalid_argument("Pair label needs 1 <= i < j");
    GroundLabel g; g.kind = Kind::Pair; g.i = i; g.j = j; return g;
  }
  static GroundLabel named(std::string n) {
    GroundLabel g; g.kind = Kind::Named; g.name = std::move(n); return g;
  }

  bool operator==(const GroundLabel& o) const {
    return kind == o.kind && i == o.i && j == o.j && name == o.name;
  }
  std::string str() const {
    switch (kind) {
      case Kind::Point: return "p:" + std::to_string(i);
      case Kind::Pair: return "e:" + std::to_string(i) + "," + std::to_string(j);
      case Kind::Named: return name;
    }
    return {};
  }
  /// Parses the "p:i" / "e:i,j" forms; anything else is an opaque name.
  static GroundLabel parse(const std::string& s) {
    if (s.rfind("p:", 0) == 0) return point(std::stoi(s.substr(2)));
    if (s.rfind("e:", 0) == 0) {
      auto comma = s.find(',', 2);
      if (comma == std::string::npos) throw std::invalid_argument("bad pair label: " + s);
      return pair(std::stoi(s.substr(2, comma - 2)), std::stoi(s.substr(comma + 1)));
    }
    return named(s);
  }
};

// Ordered list of distinct labels. Canonical order: Points ascending, then
// Pairs lexicographic, then named labels in the order given. At most 64
// elements so sign vectors pack into two machine words.
class GroundSet {
 public:
  static constexpr size_t kMaxElements = 64;

  explicit GroundSet(std::vector<GroundLabel> labels) : labels_(std::move(labels)) {
    if (labels_.size() > kMaxElements)
      throw std::invalid_argument("ground set exceeds supported size (64)");
    std::stable_sort(labels_.begin(), labels_.end(), [](const GroundLabel& a, const GroundLabel& b) {
      if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
      if (a.kind == GroundLabel::Kind::Named) return false;  // keep given order
      if (a.i != b.i) return a.i < b.i;
      return a.j < b.j;
    });
    for (size_t k = 0; k + 1 < labels_.size(); ++k)
      if (labels_[k] == labels_[k + 1])
        throw std::invalid_argument("duplicate ground label: " + labels_[k].str());
  }

  static std::shared_ptr<const GroundSet> points(int n) {
    std::vector<GroundLabel> ls;
    for (int i = 1; i <= n; ++i) ls.push_back(GroundLabel::point(i));
    return std::make_shared<const GroundSet>(std::move(ls));
  }
  static std::shared_ptr<const GroundSet> pairs(int n) {
    std::vector<GroundLabel> ls;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) ls.push_back(GroundLabel::pair(i, j));
    return std::make_shared<const GroundSet>(std::move(ls));
  }
  static std::shared_ptr<const GroundSet> pointsAndPairs(int n) {
    std::vector<GroundLabel> ls;
    for (int i = 1; i <= n; ++i) ls.push_back(GroundLabel::point(i));
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) ls.push_back(GroundLabel::pair(i, j));
    return std::make_shared<const GroundSet>(std::move(ls));
  }
  static std::shared_ptr<const GroundSet> fromLabels(std::vector<GroundLabel> ls) {
    return std::make_shared<const GroundSet>(std::move(ls));
  }

  size_t size() const { return labels_.size(); }
  const GroundLabel& label(size_t idx) const { return labels_.at(idx); }
  const std::vector<GroundLabel>& labels() const { return labels_; }

  size_t indexOf(const GroundLabel& l) const {
    for (size_t k = 0; k < labels_.size(); ++k)
      if (labels_[k] == l) return k;
    throw std::invalid_argument("label not in ground set: " + l.str());
  }
  bool contains(const GroundLabel& l) const {
    for (const auto& g : labels_)
      if (g == l) return true;
    return false;
  }
  size_t pairIndex(int i, int j) const { return indexOf(GroundLabel::pair(i, j)); }
  size_t pointIndex(int i) const { return indexOf(GroundLabel::point(i)); }

  bool operator==(const GroundSet& o) const { return labels_ == o.labels_; }

  /// True when the ground is exactly Pairs(n) for some n (the sweep-OM shape).
  bool isPairsOf(int n) const {
    return *this == *pairs(n);
  }
  /// If the ground is Pairs(n), returns n; otherwise nullopt.
  std::optional<int> pairsN() const {
    if (labels_.empty()) return 1;  // Pairs(1) is empty
    int n = 0;
    for (const auto& l : labels_) {
      if (l.kind != GroundLabel::Kind::Pair) return std::nullopt;
      n = std::max(n, l.j);
    }
    if (labels_.size() != static_cast<size_t>(n) * (n - 1) / 2) return std::nullopt;
    return isPairsOf(n) ? std::optional<int>(n) : std::nullopt;
  }

 private:
  std::vector<GroundLabel> labels_;
};

using GroundPtr = std::shared_ptr<const GroundSet>;

inline bool sameGround(const GroundPtr& a, const GroundPtr& b) {
  return a == b || (a && b && *a == *b);
}

// Dense sign vector over a ground set, packed as plus/minus bit masks.
class SignVector {
 public:
  SignVector() = default;
  SignVector(GroundPtr ground, uint64_t plusMask, uint64_t minusMask)
      : ground_(std::move(ground)), plus_(plusMask), minus_(minusMask) {
    if (plus_ & minus_) throw std::invalid_argument("sign vector has overlapping +/- masks");
    const uint64_t valid = sizeMask();
    if ((plus_ | minus_) & ~valid) throw std::invalid_argument("sign mask outside ground set");
  }
  SignVector(GroundPtr ground, const std::vector<Sign>& signs)
      : ground_(std::move(ground)) {
    if (signs.size() != ground_->size())
      throw std::invalid_argument("sign count does not match ground size");
    for (size_t k = 0; k < signs.size(); ++k) {
      if (signs[k] == Sign::Plus) plus_ |= bit(k);
      else if (signs[k] == Sign::Minus) minus_ |= bit(k);
    }
  }

  static SignVector zero(GroundPtr ground) { return SignVector(std::move(ground), 0, 0); }
  static SignVector allPlus(GroundPtr ground) {
    uint64_t m = maskForSize(ground->size());
    return SignVector(std::move(ground), m, 0);
  }
  static SignVector allMinus(GroundPtr ground) {
    uint64_t m = maskForSize(ground->size());
    return SignVector(std::move(ground), 0, m);
  }
  static SignVector fromString(GroundPtr ground, const std::string& s) {
    if (s.size() != ground->size())
      throw std::invalid_argument("sign string length does not match ground size");
    uint64_t p = 0, m = 0;
    for (size_t k = 0; k < s.size(); ++k) {
      Sign sg = signFromChar(s[k]);
      if (sg == Sign::Plus) p |= bit(k);
      else if (sg == Sign::Minus) m |= bit(k);
    }
    return SignVector(std::move(ground), p, m);
  }

  const GroundPtr& ground() const { return ground_; }
  size_t size() const { return ground_->size(); }
  uint64_t plusMask() const { return plus_; }
  uint64_t minusMask() const { return minus_; }
  uint64_t supportMask() const { return plus_ | minus_; }
  uint64_t zeroMask() const { return ~(plus_ | minus_) & sizeMask(); }
  bool isZero() const { return (plus_ | minus_) == 0; }

  Sign at(size_t idx) const {
    checkIndex(idx);
    if (plus_ & bit(idx)) return Sign::Plus;
    if (minus_ & bit(idx)) return Sign::Minus;
    return Sign::Zero;
  }
  Sign at(const GroundLabel& l) const { return at(ground_->indexOf(l)); }

  std::string str() const {
    std::string s(size(), '0');
    for (size_t k = 0; k < size(); ++k) s[k] = signChar(at(k));
    return s;
  }

  SignVector opposite() const { return SignVector(ground_, minus_, plus_); }

  /// (X o Y)_e = X_e when nonzero, else Y_e.
  SignVector compose(const SignVector& y) const {
    requireSameGround(y);
    const uint64_t zeros = zeroMask();
    return SignVector(ground_, plus_ | (y.plus_ & zeros), minus_ | (y.minus_ & zeros));
  }

  uint64_t separationMask(const SignVector& y) const {
    requireSameGround(y);
    return (plus_ & y.minus_) | (minus_ & y.plus_);
  }
  std::vector<GroundLabel> separation(const SignVector& y) const {
    return labelsOfMask(separationMask(y));
  }

  /// Disjoint supports, or restrictions to the common support neither equal nor opposite.
  bool orthogonal(const SignVector& y) const {
    requireSameGround(y);
    const uint64_t common = supportMask() & y.supportMask();
    if (common == 0) return true;
    const bool somewhereEqual = ((plus_ & y.plus_) | (minus_ & y.minus_)) != 0;
    const bool somewhereOpp = ((plus_ & y.minus_) | (minus_ & y.plus_)) != 0;
    return somewhereEqual && somewhereOpp;
  }

  SignVector reorient(uint64_t flipMask) const {
    if (flipMask & ~sizeMask()) throw std::invalid_argument("reorient: mask outside ground set");
    const uint64_t p = (plus_ & ~flipMask) | (minus_ & flipMask);
    const uint64_t m = (minus_ & ~flipMask) | (plus_ & flipMask);
    return SignVector(ground_, p, m);
  }
  SignVector reorient(const std::vector<GroundLabel>& f) const {
    return reorient(maskOfLabels(f));
  }

  /// Drops coordinates outside `keep`, preserving canonical order.
  SignVector restrictTo(const GroundPtr& sub) const {
    uint64_t p = 0, m = 0;
    for (size_t k = 0; k < sub->size(); ++k) {
      const size_t src = ground_->indexOf(sub->label(k));
      if (plus_ & bit(src)) p |= bit(k);
      else if (minus_ & bit(src)) m |= bit(k);
    }
    return SignVector(sub, p, m);
  }

  /// X conforms to T when X o T = T.
  bool conformsTo(const SignVector& t) const {
    requireSameGround(t);
    return (plus_ & ~t.plus_) == 0 && (minus_ & ~t.minus_) == 0;
  }
  /// Componentwise order with 0 below +/-: this <= y.
  bool coverLE(const SignVector& y) const { return conformsTo(y); }

  bool operator==(const SignVector& o) const {
    return plus_ == o.plus_ && minus_ == o.minus_ && sameGround(ground_, o.ground_);
  }
  bool operator!=(const SignVector& o) const { return !(*this == o); }

  /// Canonical serialization order: lexicographic on str() with '+' < '-' < '0'.
  bool lessCanonical(const SignVector& o) const {
    for (size_t k = 0; k < size(); ++k) {
      const int a = rankAt(k), b = o.rankAt(k);
      if (a != b) return a < b;
    }
    return false;
  }

  std::vector<GroundLabel> labelsOfMask(uint64_t mask) const {
    std::vector<GroundLabel> out;
    for (size_t k = 0; k < size(); ++k)
      if (mask & bit(k)) out.push_back(ground_->label(k));
    return out;
  }
  uint64_t maskOfLabels(const std::vector<GroundLabel>& ls) const {
    uint64_t m = 0;
    for (const auto& l : ls) m |= bit(ground_->indexOf(l));
    return m;
  }

  void requireSameGround(const SignVector& o) const {
    if (!sameGround(ground_, o.ground_))
      throw std::invalid_argument("sign vectors live on different ground sets");
  }

  static uint64_t maskForSize(size_t n) {
    return n >= 64 ? ~uint64_t(0) : ((uint64_t(1) << n) - 1);
  }

 private:
  static uint64_t bit(size_t k) { return uint64_t(1) << k; }
  uint64_t sizeMask() const { return maskForSize(ground_->size()); }
  void checkIndex(size_t idx) const {
    if (idx >= size()) throw std::out_of_range("sign vector index out of range");
  }
  int rankAt(size_t k) const {  // '+' < '-' < '0'
    if (plus_ & bit(k)) return 0;
    if (minus_ & bit(k)) return 1;
    return 2;
  }

  GroundPtr ground_;
  uint64_t plus_ = 0;
  uint64_t minus_ = 0;
};

struct SignVectorLess {
  bool operator()(const SignVector& a, const SignVector& b) const { return a.lessCanonical(b); }
};

}  // namespace sweepscope
