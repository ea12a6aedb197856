// Acceptance suite: one pass/fail line per criterion, exact checks throughout.
#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sweepscope/allowable.hpp"
#include "sweepscope/big_om.hpp"
#include "sweepscope/matroid_flats.hpp"
#include "sweepscope/point_config.hpp"
#include "sweepscope/pseudo_sweep.hpp"

using namespace sweepscope;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail,
            double seconds) {
  std::ostringstream line;
  line << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << " (" << name << "): "
       << detail << "  [" << seconds << "s]";
  std::cout << line.str() << std::endl;
  if (!ok) ++failures;
}

void run(int criterion, const std::string& name, const std::function<bool(std::string&)>& body) {
  std::string detail;
  const auto t0 = Clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail += std::string(" exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  report(criterion, name, ok, detail, secs);
}

uint64_t pairsMaskOf(const OrientedMatroid& m) {
  uint64_t mask = 0;
  for (size_t k = 0; k < m.ground()->size(); ++k)
    if (m.ground()->label(k).kind == GroundLabel::Kind::Pair) mask |= uint64_t(1) << k;
  return mask;
}

std::vector<Permutation> wordsOf(const SweepOrientedMatroid& som) {
  std::vector<Permutation> out;
  for (const auto& p : som.sweepPermutations()) out.push_back(p.asPermutationWord());
  return out;
}

long long factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace

int main() {
  // 1. Simplex sweeps: n! topes and ordered-partition poset counts 13, 75, 541.
  run(1, "simplex sweeps", [](std::string& detail) {
    const auto t0 = Clock::now();
    const size_t expectedPoset[] = {13, 75, 541};
    bool ok = true;
    for (int n = 3; n <= 5; ++n) {
      const SweepOrientedMatroid som = sweepOM(corpus::simplex(n));
      const SweepPoset poset = posetOfSweeps(som);
      const bool topesOk =
          som.om().topes().size() == static_cast<size_t>(factorial(n));
      // every tope must be a permutation sign vector
      std::set<std::string> got;
      for (const auto& t : som.om().topes()) got.insert(t.str());
      std::set<std::string> want;
      for (const auto& w : oracles::allPermutations(n))
        want.insert(partitionToSignVector(OrderedPartition::fromPermutation(w), som.ground()).str());
      const bool posetOk = poset.elements.size() == expectedPoset[n - 3];
      ok = ok && topesOk && posetOk && got == want;
      detail += "n=" + std::to_string(n) + ": " + std::to_string(som.om().topes().size()) +
                " topes/" + std::to_string(poset.elements.size()) + " sweeps ";
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= 10.0) {
      ok = false;
      detail += "(exceeded 10s)";
    }
    return ok;
  });

  // 2. Cross-polytope: 8 sweep permutations inside 16 maximal pseudo-sweeps.
  run(2, "cross-polytope sweeps and pseudo-sweeps", [](std::string& detail) {
    const PointConfiguration cross = corpus::crossPolytope2();
    const auto sweeps = sweepOM(cross).sweepPermutations();
    const auto maximal = enumerateMaximal(littleOM(cross));
    bool subset = true;
    for (const auto& s : sweeps)
      if (std::find(maximal.begin(), maximal.end(), s) == maximal.end()) subset = false;
    detail = std::to_string(sweeps.size()) + " sweeps, " + std::to_string(maximal.size()) +
             " maximal pseudo-sweeps, subset=" + (subset ? "yes" : "no");
    return sweeps.size() == 8 && maximal.size() == 16 && subset;
  });

  // 3. Big-OM axioms, equality with the realizable construction, rank + 1.
  run(3, "big OM axioms and realizable equality", [](std::string& detail) {
    bool ok = true;
    for (const auto& entry : corpus::all()) {
      const SweepOrientedMatroid som = sweepOM(entry.config);
      const OrientedMatroid big = bigOM(som);
      const bool axioms = verifyCovectorAxioms(big.base()).ok;
      const bool equal = big.base() == bigOMRealizable(entry.config).base();
      const bool rankOk = big.rank() == som.rank() + 1;
      if (!(axioms && equal && rankOk)) {
        ok = false;
        detail += entry.name + " FAILED ";
      }
    }
    if (ok) detail = "all " + std::to_string(corpus::all().size()) + " configurations";
    return ok;
  });

  // 4. Type A/B identifications.
  run(4, "type A/B identifications", [](std::string& detail) {
    const OrientedMatroid bigA = bigOM(sweepOM(corpus::simplex(3)));
    bool ok = bigA.covectors().size() == 75;
    // relabel i -> (1,i+1), (i,j) -> (i+1,j+1): topes = the 24 permutations of a 4-set
    const GroundPtr p4 = GroundSet::pairs(4);
    std::set<std::string> got;
    for (const auto& t : bigA.topes()) {
      std::vector<Sign> signs(p4->size(), Sign::Zero);
      for (size_t k = 0; k < bigA.ground()->size(); ++k) {
        const GroundLabel& l = bigA.ground()->label(k);
        const GroundLabel target = l.kind == GroundLabel::Kind::Point
                                       ? GroundLabel::pair(1, l.i + 1)
                                       : GroundLabel::pair(l.i + 1, l.j + 1);
        signs[p4->indexOf(target)] = t.at(k);
      }
      got.insert(SignVector(p4, signs).str());
    }
    std::set<std::string> want;
    for (const auto& w : oracles::allPermutations(4))
      want.insert(partitionToSignVector(OrderedPartition::fromPermutation(w), p4).str());
    ok = ok && got == want && got.size() == 24;

    // type B: tope count of the rank-3 type-B arrangement minus one element
    const OrientedMatroid bigB = bigOM(sweepOM(corpus::crossPolytope2()));
    std::vector<RatVec> normals;
    auto mk = [](long a, long b, long c) { return RatVec{Rational(a), Rational(b), Rational(c)}; };
    for (const auto& v : {mk(1, 0, 0), mk(0, 1, 0), mk(1, -1, 0), mk(1, 1, 0), mk(1, 0, -1),
                          mk(1, 0, 1), mk(0, 1, -1), mk(0, 1, 1)})
      normals.push_back(v);
    std::vector<GroundLabel> ls;
    for (int i = 1; i <= 8; ++i) ls.push_back(GroundLabel::named("h" + std::to_string(i)));
    const OrientedMatroid arrangement =
        realizableOM(VectorConfiguration::make(3, normals, GroundSet::fromLabels(ls)));
    ok = ok && bigB.topes().size() == arrangement.topes().size();
    detail = "braid: 75 covectors/24 permutation topes; cross: " +
             std::to_string(bigB.topes().size()) + " topes vs B3-minus-element " +
             std::to_string(arrangement.topes().size());
    return ok;
  });

  // 5. Pairs are a modular hyperplane; recognizeBigOM with identity witness.
  run(5, "modular hyperplane and recognition", [](std::string& detail) {
    bool ok = true;
    for (const auto& entry : corpus::all()) {
      const OrientedMatroid big = bigOM(sweepOM(entry.config));
      const bool modular = isModularHyperplane(big, pairsMaskOf(big));
      const BigOMRecognition rec = recognizeBigOM(big);
      if (!(modular && rec.ok && rec.reorientation.empty())) {
        ok = false;
        detail += entry.name + " FAILED ";
      }
    }
    if (ok) detail = "all corpus big OMs";
    return ok;
  });

  // 6. Las Vergnas-Zaslavsky on sweep and little OMs.
  run(6, "Las Vergnas-Zaslavsky counts", [](std::string& detail) {
    bool ok = true;
    for (const auto& entry : corpus::all()) {
      const SweepOrientedMatroid som = sweepOM(entry.config);
      const OrientedMatroid lom = littleOM(entry.config);
      const bool sweepOk = topeCount(flatLattice(som.om())) ==
                           BigInt(static_cast<unsigned long>(som.om().topes().size()));
      const bool littleOk = topeCount(flatLattice(lom)) ==
                            BigInt(static_cast<unsigned long>(lom.topes().size()));
      if (!(sweepOk && littleOk)) {
        ok = false;
        detail += entry.name + " FAILED ";
      }
    }
    if (ok) detail = "chi(-1) matches enumeration on all corpus sweep and little OMs";
    return ok;
  });

  // 7. Stirling bound with the stated equalities and the strict square case.
  run(7, "Stirling bound", [](std::string& detail) {
    bool ok = true;
    for (const auto& entry : corpus::all()) {
      const SweepOrientedMatroid som = sweepOM(entry.config);
      if (BigInt(static_cast<unsigned long>(som.om().topes().size())) >
          stirlingBound(som.n(), static_cast<int>(som.rank()))) {
        ok = false;
        detail += entry.name + " exceeds bound ";
      }
    }
    const auto count = [](const PointConfiguration& a) {
      return BigInt(static_cast<unsigned long>(sweepOM(a).om().topes().size()));
    };
    ok = ok && count(corpus::triangle()) == stirlingBound(3, 2);
    ok = ok && count(corpus::quadGeneric()) == stirlingBound(4, 2);
    ok = ok && count(corpus::simplex(4)) == stirlingBound(4, 3);
    const BigInt squareCount = count(corpus::square());
    ok = ok && squareCount == 8 && stirlingBound(4, 2) == 12 && squareCount < stirlingBound(4, 2);
    detail += "equalities 6=6, 12=12, 24=24; square strict 8 < 12";
    return ok;
  });

  // 8. Dilworth: square weak-map witness and generic-quad Dilworth-ness.
  run(8, "Dilworth weak map", [](std::string& detail) {
    const PointConfiguration sq = corpus::square();
    const UnorientedMatroid little = UnorientedMatroid::fromOriented(littleOM(sq));
    const SweepOrientedMatroid som = sweepOM(sq);
    const GroundPtr pairs = som.ground();
    const std::vector<std::pair<size_t, size_t>> sideFlat = {{0, 1}, {2, 3}};  // (1,2),(3,4)
    const int dr = dilworthRank(little, sideFlat);
    const uint64_t flatMask = (uint64_t(1) << pairs->pairIndex(1, 2)) |
                              (uint64_t(1) << pairs->pairIndex(3, 4));
    const UnorientedMatroid sweepUn = UnorientedMatroid::fromOriented(som.om());
    const int sweepRank = sweepUn.rankOf(flatMask);
    const WeakMapReport wm = weakMapCheck(dilworthTruncation(little), sweepUn);
    bool witnessed = false;
    for (uint64_t f : wm.strictDrops) witnessed |= f == flatMask;
    const bool quadOk = isDilworth(sweepOM(corpus::quadGeneric())).ok;
    detail = "square flat {(1,2),(3,4)}: dilworth " + std::to_string(dr) + " vs sweep " +
             std::to_string(sweepRank) + (witnessed ? " (witnessed)" : " (NO witness)") +
             "; generic quad Dilworth: " + (quadOk ? "yes" : "no");
    return dr == 2 && sweepRank == 1 && wm.ok && witnessed && quadOk;
  });

  // 9. Sphere Euler characteristics of nontrivial sweep posets.
  run(9, "sphere Euler characteristics", [](std::string& detail) {
    bool ok = true;
    for (const auto& entry : corpus::all()) {
      const SweepOrientedMatroid som = sweepOM(entry.config);
      const long long expected = 1 + ((som.rank() - 1) % 2 == 0 ? 1 : -1);
      const long long chi = orderComplexEuler(posetOfSweeps(som).toNontrivialPoset());
      if (chi != expected) {
        ok = false;
        detail += entry.name + " chi=" + std::to_string(chi) + " ";
      }
    }
    if (ok) detail = "chi = 1 + (-1)^(r-1) on the whole corpus";
    return ok;
  });

  // 10. Allowable-sequence oracle and graph checks.
  run(10, "allowable sequences and graphs", [](std::string& detail) {
    const std::vector<Permutation> good = {
        {1, 2, 3, 4, 5}, {3, 2, 1, 4, 5}, {3, 2, 4, 1, 5}, {3, 4, 2, 5, 1}};
    const std::vector<Permutation> bad = {
        {1, 2, 3, 4, 5}, {3, 2, 1, 4, 5}, {3, 2, 4, 1, 5}, {4, 2, 3, 5, 1}};
    const std::vector<Permutation> pentagon = {
        {1, 2, 3, 4, 5}, {1, 2, 4, 3, 5}, {2, 1, 4, 3, 5}, {2, 1, 4, 5, 3},
        {2, 4, 1, 5, 3}, {2, 4, 5, 1, 3}, {4, 2, 5, 1, 3}, {4, 5, 2, 1, 3},
        {4, 5, 2, 3, 1}, {4, 5, 3, 2, 1}, {5, 4, 3, 2, 1}};
    bool ok = verifyAllowableSequence(good).ok;
    ok = ok && !verifyAllowableSequence(bad).ok;
    ok = ok && verifyAllowableSequence(pentagon).ok;
    detail = std::string("worked sequences ") + (ok ? "ok" : "FAILED");

    auto checkGraph = [&ok, &detail](const std::string& name,
                                     const std::vector<Permutation>& words) {
      const AllowableGraphResult g = isAllowableGraph(words);
      const auto topes = topesFromPermutations(words);
      const bool acy = acycloidCheck(topes).ok();
      const bool sweepAcy = isSweepAcycloid(topes);
      const CharacterizationReport cr = characterizationReport(words);
      const bool all = g.ok && acy && sweepAcy && cr.agree && cr.omVerdict &&
                       cr.potentialEqualsSweeps && cr.contractionsAllowable;
      if (!all) {
        ok = false;
        detail += " " + name + " FAILED";
      }
    };
    for (int n = 3; n <= 5; ++n) checkGraph("S" + std::to_string(n), oracles::allPermutations(n));
    for (const auto& entry : corpus::all()) {
      if (entry.config.hasRepeatedPoints()) continue;
      checkGraph(entry.name, wordsOf(sweepOM(entry.config)));
    }
    if (ok) detail += "; S_3..S_5 and all corpus tope sets pass";
    return ok;
  });

  // 11. Oracle equivalence of the two maximal-pseudo-sweep enumerations.
  run(11, "pseudo-sweep oracle equivalence", [](std::string& detail) {
    const auto t0 = Clock::now();
    bool ok = true;
    for (const auto& entry : corpus::distinctPoints()) {
      if (pseudoSweepPermutationsByKSets(entry.config) !=
          enumerateMaximal(littleOM(entry.config))) {
        ok = false;
        detail += entry.name + " MISMATCH ";
      }
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (secs >= 60.0) {
      ok = false;
      detail += "(exceeded 60s)";
    }
    if (ok) detail = "k-set route equals maximal-pseudo-sweep route on the whole corpus";
    return ok;
  });

  std::cout << (failures == 0 ? "ACCEPTANCE: all criteria passed"
                              : "ACCEPTANCE: " + std::to_string(failures) + " criteria FAILED")
            << std::endl;
  return failures;
}
