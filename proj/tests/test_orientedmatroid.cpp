#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "oracles.hpp"
#include "sweepscope/covectors.hpp"
#include "sweepscope/matroid_flats.hpp"
#include "sweepscope/point_config.hpp"
#include "sweepscope/sweep_om.hpp"

using namespace sweepscope;

namespace {
/// The braid covector set on Pairs(n) as the image of all ordered partitions
/// (the independent oracle route for the braid oriented matroid).
CovectorSet braidCovectors(int n) {
  const GroundPtr g = GroundSet::pairs(n);
  std::vector<SignVector> covs;
  for (const auto& part : oracles::allOrderedPartitions(n))
    covs.push_back(partitionToSignVector(part, g));
  return CovectorSet(g, std::move(covs));
}

GroundPtr g2 = GroundSet::fromLabels({GroundLabel::named("e1"), GroundLabel::named("e2")});
SignVector sv2(const std::string& s) { return SignVector::fromString(g2, s); }
}  // namespace

TEST_CASE("braid covectors satisfy the axioms") {
  const CovectorSet braid3 = braidCovectors(3);
  CHECK(braid3.size() == 13);
  CHECK(verifyCovectorAxioms(braid3).ok);
  CHECK(verifyCovectorAxioms(braidCovectors(4)).ok);
}

TEST_CASE("V0 violation when zero is missing") {
  const CovectorSet s(g2, {sv2("++"), sv2("--")});
  const AxiomReport rep = verifyCovectorAxioms(s);
  CHECK_FALSE(rep.ok);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations.front().axiom == "V0");
}

TEST_CASE("V3 violation detected on the two-element example") {
  // {0, ++, --, +-, -+}: exhaustive check shows the first elimination failure
  // is between ++ and +- at e2 (needs Z = (+,0)).
  const CovectorSet s(g2, {sv2("00"), sv2("++"), sv2("--"), sv2("+-"), sv2("-+")});
  const AxiomReport rep = verifyCovectorAxioms(s);
  CHECK_FALSE(rep.ok);
  bool hasV3 = false;
  for (const auto& v : rep.violations)
    if (v.axiom == "V3") {
      hasV3 = true;
      CHECK(v.witnesses.size() == 2);
      CHECK(v.witnesses[0].str() == "++");
      CHECK(v.witnesses[1].str() == "+-");
      REQUIRE(v.element.has_value());
      CHECK(v.element->str() == "e2");
    }
  CHECK(hasV3);
}

TEST_CASE("V1 and V2 violations") {
  const CovectorSet noOpp(g2, {sv2("00"), sv2("++")});
  bool sawV1 = false;
  for (const auto& v : verifyCovectorAxioms(noOpp).violations) sawV1 |= v.axiom == "V1";
  CHECK(sawV1);
  const CovectorSet noComp(g2, {sv2("00"), sv2("+0"), sv2("-0"), sv2("0+"), sv2("0-")});
  bool sawV2 = false;
  for (const auto& v : verifyCovectorAxioms(noComp).violations) sawV2 |= v.axiom == "V2";
  CHECK(sawV2);
}

TEST_CASE("topes, cocircuits, rank of the braid") {
  const OrientedMatroid m = OrientedMatroid::checked(braidCovectors(3));
  CHECK(m.topes().size() == 6);
  CHECK(m.cocircuits().size() == 6);
  CHECK(m.rank() == 2);
  CHECK(m.rank() == oracles::chainRankByDfs(m.covectors()));
}

TEST_CASE("rank-0 matroid has no topes") {
  const GroundPtr g = GroundSet::pairs(2);
  const OrientedMatroid m = OrientedMatroid::checked(CovectorSet(g, {SignVector::zero(g)}));
  CHECK(m.topes().empty());
  CHECK(m.cocircuits().empty());
  CHECK(m.rank() == 0);
}

TEST_CASE("cross-polytope sweep OM: 8 topes, rank 2") {
  const SweepOrientedMatroid som = sweepOM(corpus::crossPolytope2());
  CHECK(som.om().topes().size() == 8);
  CHECK(som.rank() == 2);
}

TEST_CASE("covectorsFromTopes") {
  const OrientedMatroid braid = OrientedMatroid::checked(braidCovectors(3));
  const CovectorSet rebuilt = covectorsFromTopes(braid.ground(), braid.topes());
  CHECK(rebuilt == braid.base());

  // single opposite pair -> rank 1
  GroundPtr g = GroundSet::points(3);
  SignVector t = SignVector::fromString(g, "+-+");
  const CovectorSet pair = covectorsFromTopes(g, {t, t.opposite()});
  CHECK(pair.size() == 3);
  CHECK(pair.contains(SignVector::zero(g)));

  // cross-polytope: 8 topes + 8 cocircuits + zero
  const SweepOrientedMatroid som = sweepOM(corpus::crossPolytope2());
  const CovectorSet cross = covectorsFromTopes(som.ground(), som.om().topes());
  CHECK(cross.size() == 17);
  CHECK(cross == som.om().base());

  CHECK_THROWS_AS(covectorsFromTopes(g, {}), std::invalid_argument);
}

TEST_CASE("cocircuitClosure") {
  const OrientedMatroid braid = OrientedMatroid::checked(braidCovectors(3));
  CHECK(cocircuitClosure(braid.ground(), braid.cocircuits()) == braid.base());

  GroundPtr g = GroundSet::points(2);
  SignVector x = SignVector::fromString(g, "+-");
  CHECK(cocircuitClosure(g, {x, x.opposite()}).size() == 3);
  CHECK(cocircuitClosure(g, {}).size() == 1);
  CHECK_THROWS_AS(cocircuitClosure(g, {x}), std::invalid_argument);  // not symmetric
}

TEST_CASE("restriction and contraction of the braid") {
  const OrientedMatroid braid = OrientedMatroid::checked(braidCovectors(3));
  const OrientedMatroid r = restriction(braid, {GroundLabel::pair(1, 2)});
  CHECK(r.covectors().size() == 3);
  CHECK(r.rank() == 1);

  const OrientedMatroid c = contraction(braid, {GroundLabel::pair(2, 3)});
  CHECK(c.rank() == 1);
  CHECK(c.covectors().size() == 3);

  const OrientedMatroid empty = restriction(braid, uint64_t(0));
  CHECK(empty.covectors().size() == 1);
  CHECK(empty.rank() == 0);

  CHECK(restriction(braid, braid.ground()->labels()).base() == braid.base());
  // minor ranks never exceed the original
  for (uint64_t mask : {uint64_t(0b011), uint64_t(0b101), uint64_t(0b001)}) {
    CHECK(restriction(braid, mask).rank() <= braid.rank());
    CHECK(contraction(braid, mask).rank() <= braid.rank());
  }
}

TEST_CASE("parallelism classes, loops, acyclicity") {
  const OrientedMatroid braid = OrientedMatroid::checked(braidCovectors(3));
  CHECK(braid.parallelismClasses().size() == 3);
  CHECK(braid.loops().empty());

  const SweepOrientedMatroid col = sweepOM(corpus::collinear3());
  CHECK(col.om().parallelismClasses().size() == 1);
  CHECK(col.om().parallelismClasses().front().size() == 3);

  for (const auto& entry : corpus::all()) CHECK(littleOM(entry.config).isAcyclic());
}

TEST_CASE("flat lattice of the braid is the partition lattice") {
  const OrientedMatroid braid = OrientedMatroid::checked(braidCovectors(3));
  const FlatLattice l = flatLattice(braid);
  CHECK(l.flats.size() == 5);
  CHECK(l.rank() == 2);
  // atoms = the three singleton pair flats
  int atoms = 0;
  for (size_t i = 0; i < l.flats.size(); ++i)
    if (l.ranks[i] == 1) ++atoms;
  CHECK(atoms == 3);
}

TEST_CASE("order complex Euler characteristics") {
  const SweepOrientedMatroid tri = sweepOM(corpus::triangle());
  CHECK(orderComplexEuler(posetOfSweeps(tri).toNontrivialPoset()) == 0);  // circle

  Poset single;
  single.elements = {"x"};
  single.less = {{false}};
  CHECK(orderComplexEuler(single) == 1);
}

TEST_CASE("roundtrip and closure invariants on realizable corpus") {
  for (const auto& entry : corpus::all()) {
    const SweepOrientedMatroid som = sweepOM(entry.config);
    const OrientedMatroid& m = som.om();
    CAPTURE(entry.name);
    CHECK(covectorsFromTopes(m.ground(), m.topes()) == m.base());
    CHECK(cocircuitClosure(m.ground(), m.cocircuits()) == m.base());
    CHECK(verifyCovectorAxioms(m.base()).ok);
  }
}

TEST_CASE("unvalidated matroid refuses derived queries") {
  OrientedMatroid m(braidCovectors(3), OrientedMatroid::Validation::Defer);
  CHECK_FALSE(m.validated());
  CHECK_THROWS_AS(m.topes(), std::logic_error);
  CHECK_THROWS_AS(m.rank(), std::logic_error);
}
