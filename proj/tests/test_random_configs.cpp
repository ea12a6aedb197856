// End-to-end properties on seeded random rational configurations: every
// construction is cross-validated against its independent route.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sweepscope/allowable.hpp"
#include "sweepscope/big_om.hpp"
#include "sweepscope/matroid_flats.hpp"
#include "sweepscope/point_config.hpp"
#include "sweepscope/pseudo_sweep.hpp"

using namespace sweepscope;

namespace {
PointConfiguration randomConfig(std::mt19937& rng, int n, int d) {
  std::uniform_int_distribution<int> num(-6, 6);
  std::uniform_int_distribution<int> den(1, 3);
  std::vector<RatVec> pts;
  for (int i = 0; i < n; ++i) {
    RatVec p;
    for (int t = 0; t < d; ++t) p.emplace_back(num(rng), den(rng));
    pts.push_back(std::move(p));
  }
  return PointConfiguration::make(d, std::move(pts));
}
}  // namespace

TEST_CASE("random configurations satisfy the whole-stack invariants") {
  std::mt19937 rng(987654);
  const std::pair<int, int> shapes[] = {{3, 2}, {4, 2}, {5, 2}, {4, 3}, {5, 3}, {3, 1}};
  for (int trial = 0; trial < 18; ++trial) {
    const auto [n, d] = shapes[trial % 6];
    const PointConfiguration a = randomConfig(rng, n, d);
    CAPTURE(trial);

    const SweepOrientedMatroid som = sweepOM(a);  // validates transitivity on construction
    const OrientedMatroid lom = littleOM(a);
    const OrientedMatroid big = bigOM(som);

    // big OM: axioms, equality with the realizable route, ranks
    CHECK(verifyCovectorAxioms(big.base()).ok);
    CHECK(big.base() == bigOMRealizable(a).base());
    CHECK(big.rank() == som.rank() + 1);
    CHECK(lom.rank() == som.rank() + 1);

    // restrictions of the big OM
    std::vector<GroundLabel> points, pairs;
    for (const auto& l : big.ground()->labels())
      (l.kind == GroundLabel::Kind::Point ? points : pairs).push_back(l);
    CHECK(restriction(big, points).base() == lom.base());
    CHECK(restriction(big, pairs).base() == som.om().base());

    // tope reconstruction and cocircuit closure round trips
    CHECK(covectorsFromTopes(som.ground(), som.om().topes()) == som.om().base());
    CHECK(cocircuitClosure(som.ground(), som.om().cocircuits()) == som.om().base());

    // counting: Las Vergnas-Zaslavsky and the Stirling bound
    CHECK(topeCount(flatLattice(som.om())) ==
          BigInt(static_cast<unsigned long>(som.om().topes().size())));
    CHECK(BigInt(static_cast<unsigned long>(som.om().topes().size())) <=
          stirlingBound(n, static_cast<int>(som.rank())));

    // weak map from the Dilworth truncation of the little matroid
    CHECK(weakMapCheck(dilworthTruncation(UnorientedMatroid::fromOriented(lom)),
                       UnorientedMatroid::fromOriented(som.om()))
              .ok);

    // sweeps are pseudo-sweeps; sphere Euler characteristic
    CHECK(containsSweepPoset(lom, som));
    CHECK(orderComplexEuler(posetOfSweeps(som).toNontrivialPoset()) ==
          1 + ((som.rank() - 1) % 2 == 0 ? 1 : -1));

    // pairs are a modular hyperplane and the big OM recognizes itself
    uint64_t pairsMask = 0;
    for (const auto& l : pairs) pairsMask |= uint64_t(1) << big.ground()->indexOf(l);
    CHECK(isModularHyperplane(big, pairsMask));
    const BigOMRecognition rec = recognizeBigOM(big);
    CHECK(rec.ok);
    CHECK(rec.reorientation.empty());

    if (!a.hasRepeatedPoints()) {
      // the two maximal-pseudo-sweep routes agree
      CHECK(pseudoSweepPermutationsByKSets(a) == enumerateMaximal(lom));
      // sweep permutation words form an allowable graph / sweep acycloid
      std::vector<Permutation> words;
      for (const auto& p : som.sweepPermutations()) words.push_back(p.asPermutationWord());
      CHECK(isAllowableGraph(words).ok);
      CHECK(isSweepAcycloid(topesFromPermutations(words)));
    }

    // k-sets against the Gordan oracle on one k per trial
    const int k = 1 + trial % n;
    const auto sets = kSets(a, k, &lom);
    std::set<std::vector<int>> got(sets.begin(), sets.end());
    std::vector<int> pick;
    std::function<void(int)> rec2 = [&](int start) {
      if (static_cast<int>(pick.size()) == k) {
        CHECK(oracles::strictlySeparable(a, pick) == (got.count(pick) != 0));
        return;
      }
      for (int i = start; i <= n; ++i) {
        pick.push_back(i);
        rec2(i + 1);
        pick.pop_back();
      }
    };
    rec2(1);
  }
}
