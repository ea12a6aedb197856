#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sweepscope/pseudo_sweep.hpp"

using namespace sweepscope;

TEST_CASE("the cross-polytope pseudo-sweep that is not a sweep") {
  // labels: 1 = e1, 2 = -e1, 3 = e2, 4 = -e2; the paper's permutation
  // (bar1, 2, 1, bar2) reads (2, 3, 1, 4) here.
  const PointConfiguration cross = corpus::crossPolytope2();
  const OrientedMatroid lom = littleOM(cross);
  const OrderedPartition perm = OrderedPartition::fromPermutation({2, 3, 1, 4});
  CHECK(isPseudoSweep(lom, perm));
  const auto sweeps = sweepOM(cross).sweepPermutations();
  CHECK(std::find(sweeps.begin(), sweeps.end(), perm) == sweeps.end());
}

TEST_CASE("every sweep is a pseudo-sweep (corpus)") {
  for (const auto& entry : corpus::all()) {
    const OrientedMatroid lom = littleOM(entry.config);
    const SweepOrientedMatroid som = sweepOM(entry.config);
    CAPTURE(entry.name);
    for (const auto& x : som.om().covectors())
      CHECK(isPseudoSweep(lom, signVectorToPartition(x)));
    CHECK(containsSweepPoset(lom, som));
  }
}

TEST_CASE("middle collinear point cannot come first") {
  const OrientedMatroid lom = littleOM(corpus::collinear3());
  CHECK_FALSE(isPseudoSweep(lom, OrderedPartition::fromPermutation({2, 1, 3})));
  CHECK(isPseudoSweep(lom, OrderedPartition::fromPermutation({1, 2, 3})));
  CHECK(isPseudoSweep(lom, OrderedPartition::trivial(3)));
}

TEST_CASE("enumerations: cross-polytope has 16 maximal pseudo-sweeps") {
  const OrientedMatroid lom = littleOM(corpus::crossPolytope2());
  const auto maximal = enumerateMaximal(lom);
  CHECK(maximal.size() == 16);
  for (const auto& p : maximal) CHECK(p.isPermutation());
  // the 8 sweep permutations are among them
  const auto sweeps = sweepOM(corpus::crossPolytope2()).sweepPermutations();
  CHECK(sweeps.size() == 8);
  for (const auto& s : sweeps)
    CHECK(std::find(maximal.begin(), maximal.end(), s) != maximal.end());
}

TEST_CASE("triangle: pseudo-sweeps equal sweeps") {
  const OrientedMatroid lom = littleOM(corpus::triangle());
  const auto maximal = enumerateMaximal(lom);
  CHECK(maximal.size() == 6);
  auto all = enumeratePseudoSweeps(lom);
  auto sweeps = posetOfSweeps(sweepOM(corpus::triangle())).elements;
  std::sort(sweeps.begin(), sweeps.end());
  CHECK(all == sweeps);
}

TEST_CASE("collinear points have two pseudo-sweep permutations") {
  CHECK(enumerateMaximal(littleOM(corpus::collinear3())).size() == 2);
}

TEST_CASE("k-set prefix enumeration") {
  CHECK(pseudoSweepPermutationsByKSets(corpus::crossPolytope2()).size() == 16);
  CHECK(pseudoSweepPermutationsByKSets(corpus::triangle()).size() == 6);
  const auto hex = pseudoSweepPermutationsByKSets(corpus::hexagon());
  const OrderedPartition special = OrderedPartition::fromPermutation({1, 2, 3, 6, 5, 4});
  CHECK(std::find(hex.begin(), hex.end(), special) != hex.end());
  const auto hexSweeps = sweepOM(corpus::hexagon()).sweepPermutations();
  CHECK(std::find(hexSweeps.begin(), hexSweeps.end(), special) == hexSweeps.end());
  CHECK_THROWS_AS(pseudoSweepPermutationsByKSets(PointConfiguration::fromInts(1, {{1}, {1}})),
                  std::invalid_argument);
}

TEST_CASE("the two maximal enumerators agree on the corpus") {
  for (const auto& entry : corpus::distinctPoints()) {
    CAPTURE(entry.name);
    CHECK(pseudoSweepPermutationsByKSets(entry.config) ==
          enumerateMaximal(littleOM(entry.config)));
  }
}

TEST_CASE("partition determines its cellular string") {
  const OrientedMatroid lom = littleOM(corpus::square());
  for (const auto& part : enumeratePseudoSweeps(lom)) {
    const CellularString s = stringOfPartition(lom.ground(), part);
    CHECK(isValidCellularString(lom, s));
    // string covectors are - on the consumed prefix, 0 on the block, + after
    uint64_t consumed = 0;
    for (size_t i = 0; i < s.covectors.size(); ++i) {
      CHECK(s.covectors[i].minusMask() == consumed);
      consumed |= s.covectors[i].zeroMask();
    }
    CHECK(consumed == SignVector::maskForSize(lom.ground()->size()));
  }
}

TEST_CASE("cellular string validation catches broken strings") {
  const OrientedMatroid lom = littleOM(corpus::triangle());
  const GroundPtr g = lom.ground();
  CellularString bad;
  bad.covectors = {SignVector::fromString(g, "0-+")};  // starts negative
  CHECK_FALSE(isValidCellularString(lom, bad));
  CellularString trivial;
  trivial.covectors = {SignVector::zero(g)};
  CHECK(isValidCellularString(lom, trivial));
}

TEST_CASE("poset of pseudo-sweeps contains the sweep poset") {
  const OrientedMatroid lom = littleOM(corpus::crossPolytope2());
  const SweepPoset pseudo = posetOfPseudoSweeps(lom);
  const SweepPoset sweeps = posetOfSweeps(sweepOM(corpus::crossPolytope2()));
  for (const auto& s : sweeps.elements)
    CHECK(std::find(pseudo.elements.begin(), pseudo.elements.end(), s) !=
          pseudo.elements.end());
  CHECK(pseudo.elements.size() > sweeps.elements.size());
}

TEST_CASE("sweep-poset Euler characteristic proxies (sphere)") {
  for (const auto& entry : corpus::all()) {
    const SweepOrientedMatroid som = sweepOM(entry.config);
    const long long expected = 1 + ((som.rank() - 1) % 2 == 0 ? 1 : -1);
    CAPTURE(entry.name);
    CHECK(orderComplexEuler(posetOfSweeps(som).toNontrivialPoset()) == expected);
    CHECK(containsSweepPoset(littleOM(entry.config), som));
  }
}

TEST_CASE("preconditions") {
  // non-acyclic input: {e1, -e1, e2} admits no all-positive functional
  std::vector<RatVec> vecs = {{Rational(1), Rational(0)},
                              {Rational(-1), Rational(0)},
                              {Rational(0), Rational(1)}};
  const OrientedMatroid notAcyclic =
      realizableOM(VectorConfiguration::make(2, vecs, GroundSet::points(3)));
  CHECK_FALSE(notAcyclic.isAcyclic());
  CHECK_THROWS_AS(enumeratePseudoSweeps(notAcyclic), std::invalid_argument);
  // enumeration cap triggers a hard error, not truncation
  const OrientedMatroid lom = littleOM(corpus::triangle());
  CHECK_THROWS_AS(enumeratePseudoSweeps(lom, 3), std::runtime_error);
  CHECK_THROWS_AS(containsSweepPoset(littleOM(corpus::square()), sweepOM(corpus::triangle())),
                  std::invalid_argument);
}
