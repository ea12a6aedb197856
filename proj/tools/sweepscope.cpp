// sweepscope command-line tool: sweeps of point configurations, sweep/big/
// little oriented matroids, Dilworth ranks, pseudo-sweeps, k-sets, and
// allowable-graph reports. Every command is deterministic: identical inputs
// produce byte-identical outputs.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "sweepscope/io.hpp"
#include "sweepscope/pseudo_sweep.hpp"

using namespace sweepscope;

namespace {

struct Options {
  bool table = false;
  int threads = 1;
  std::string output;
};

size_t enumerationCap() {
  if (const char* env = std::getenv("SWEEPSCOPE_MAX_COVECTORS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return static_cast<size_t>(v);
    throw std::invalid_argument("SWEEPSCOPE_MAX_COVECTORS must be a positive integer");
  }
  return kDefaultEnumerationCap;
}

void emit(const Options& opt, const Json& json, const std::string& table) {
  std::string text = opt.table ? table : json.dump(2) + "\n";
  if (opt.output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(opt.output);
    if (!out) throw std::runtime_error("cannot write output file: " + opt.output);
    out << text;
  }
}

bool looksLikeConfig(const Json& j) { return j.contains("dim") && j.contains("points"); }

/// Accepts a configuration (JSON/CSV) or an OM file; configs go through fn.
OrientedMatroid loadAcyclicOM(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return littleOM(configFromCsv(readFile(path)));
  const Json j = readJsonFile(path);
  if (looksLikeConfig(j)) return littleOM(configFromJson(j));
  return omFromJson(j);
}

std::vector<GroundLabel> parseFlatSpec(const OrientedMatroid& m, const std::string& spec) {
  std::vector<GroundLabel> out;
  if (spec == "pairs") {
    for (const auto& l : m.ground()->labels())
      if (l.kind == GroundLabel::Kind::Pair) out.push_back(l);
    return out;
  }
  std::string cur;
  for (char c : spec + ";") {
    if (c == ';') {
      if (!cur.empty()) out.push_back(GroundLabel::parse(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return out;
}

Json axiomReportToJson(const AxiomReport& rep) {
  Json v = Json::array();
  for (const auto& viol : rep.violations) {
    Json w = Json::object();
    w["axiom"] = viol.axiom;
    w["detail"] = viol.detail;
    Json wit = Json::array();
    for (const auto& x : viol.witnesses) wit.push_back(x.str());
    w["witnesses"] = wit;
    if (viol.element) w["element"] = viol.element->str();
    v.push_back(w);
  }
  return Json{{"ok", rep.ok}, {"violations", v}};
}

std::string tableOfPartitions(const std::string& title, const std::vector<OrderedPartition>& ps) {
  std::string s = title + " (" + std::to_string(ps.size()) + ")\n";
  for (const auto& p : ps) s += "  " + p.str() + "\n";
  return s;
}

// ---- subcommands -----------------------------------------------------------

int cmdSweeps(const Options& opt, const std::string& path) {
  const PointConfiguration a = configFromFile(path);
  const SweepOrientedMatroid som = sweepOM(a);
  const SweepPoset poset = posetOfSweeps(som);
  std::vector<OrderedPartition> topes = som.sweepPermutations();
  std::sort(topes.begin(), topes.end());
  Json out{{"n", som.n()},
           {"rank", som.rank()},
           {"tope_count", topes.size()},
           {"covector_count", som.om().covectors().size()},
           {"topes", partitionsToJson(topes)},
           {"poset", posetToJson(poset.toPoset())}};
  std::string table = "sweep oriented matroid on Pairs(" + std::to_string(som.n()) + ")\n" +
                      "rank " + std::to_string(som.rank()) + ", " + std::to_string(topes.size()) +
                      " topes, " + std::to_string(som.om().covectors().size()) + " covectors\n" +
                      tableOfPartitions("sweep permutations", topes);
  emit(opt, out, table);
  return 0;
}

int cmdLittleOM(const Options& opt, const std::string& path) {
  const OrientedMatroid lom = littleOM(configFromFile(path));
  Json out = omToJson(lom);
  out["rank"] = lom.rank();
  out["acyclic"] = lom.isAcyclic();
  emit(opt, out,
       "little oriented matroid: rank " + std::to_string(lom.rank()) + ", " +
           std::to_string(lom.covectors().size()) + " covectors, " +
           std::to_string(lom.topes().size()) + " topes\n");
  return 0;
}

int cmdBigOM(const Options& opt, const std::string& path) {
  std::optional<OrientedMatroid> big;
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv") {
    big = bigOMRealizable(configFromCsv(readFile(path)));
  } else {
    const Json j = readJsonFile(path);
    if (looksLikeConfig(j)) big = bigOMRealizable(configFromJson(j));
    else big = bigOM(SweepOrientedMatroid(omFromJson(j)));
  }
  Json out = omToJson(*big);
  out["rank"] = big->rank();
  emit(opt, out,
       "big oriented matroid: rank " + std::to_string(big->rank()) + ", " +
           std::to_string(big->covectors().size()) + " covectors, " +
           std::to_string(big->topes().size()) + " topes\n");
  return 0;
}

int cmdCheckOM(const Options& opt, const std::string& path) {
  const CovectorSet set = covectorSetFromJson(readJsonFile(path));
  const AxiomReport rep = verifyCovectorAxioms(set);
  Json out{{"axioms", axiomReportToJson(rep)}};
  std::string table = std::string("covector axioms: ") + (rep.ok ? "ok" : "FAILED") + "\n";
  for (const auto& v : rep.violations) table += "  [" + v.axiom + "] " + v.detail + "\n";
  if (set.ground()->pairsN()) {
    Json tviol = Json::array();
    bool tok = true;
    for (const auto& x : set.covectors()) {
      const TransitivityReport t = checkTransitivity(x);
      if (!t.ok) {
        tok = false;
        for (const auto& v : t.violations)
          tviol.push_back(Json{{"covector", x.str()},
                               {"triple", Json::array({v.i, v.j, v.k})},
                               {"pattern", v.pattern}});
      }
    }
    out["transitivity"] = Json{{"ok", tok}, {"violations", tviol}};
    table += std::string("transitivity: ") + (tok ? "ok" : "FAILED") + "\n";
  }
  emit(opt, out, table);
  return 0;
}

int cmdRecognizeBig(const Options& opt, const std::string& path) {
  const OrientedMatroid m = omFromJson(readJsonFile(path));
  const BigOMRecognition rec = recognizeBigOM(m);
  Json reo = Json::array();
  for (const auto& l : rec.reorientation) reo.push_back(l.str());
  Json out{{"ok", rec.ok}, {"reason", rec.reason}, {"reorientation", reo}};
  emit(opt, out,
       std::string("big oriented matroid: ") + (rec.ok ? "yes" : "no") +
           (rec.ok ? " (reorient " + std::to_string(rec.reorientation.size()) + " elements)\n"
                   : " (" + rec.reason + ")\n"));
  return 0;
}

int cmdModular(const Options& opt, const std::string& path, const std::string& flatSpec) {
  const OrientedMatroid m = omFromJson(readJsonFile(path));
  const auto flat = parseFlatSpec(m, flatSpec);
  const bool modular = isModularHyperplane(m, flat);
  const bool tight = modular && isTightModularHyperplane(m, maskOfLabels(m.ground(), flat));
  Json flatJson = Json::array();
  for (const auto& l : flat) flatJson.push_back(l.str());
  Json out{{"flat", flatJson}, {"modular", modular}, {"tight", tight}};
  emit(opt, out,
       std::string("modular hyperplane: ") + (modular ? "yes" : "no") + ", tight: " +
           (tight ? "yes" : "no") + "\n");
  return 0;
}

int cmdDilworth(const Options& opt, const std::string& path) {
  const PointConfiguration a = configFromFile(path);
  const SweepOrientedMatroid som = sweepOM(a);
  const OrientedMatroid lom = littleOM(a);
  const UnorientedMatroid littleUn = UnorientedMatroid::fromOriented(lom);
  const UnorientedMatroid sweepUn = UnorientedMatroid::fromOriented(som.om());
  const FlatLattice sweepFlats = flatLattice(som.om());

  Json flats = Json::array();
  std::string table = "flat ranks (sweep vs Dilworth truncation)\n";
  for (size_t fi = 0; fi < sweepFlats.flats.size(); ++fi) {
    const uint64_t f = sweepFlats.flats[fi];
    std::vector<std::pair<size_t, size_t>> pairIdx;
    Json labels = Json::array();
    for (size_t k = 0; k < som.ground()->size(); ++k)
      if (f & (uint64_t(1) << k)) {
        const GroundLabel& l = som.ground()->label(k);
        labels.push_back(l.str());
        pairIdx.push_back({static_cast<size_t>(l.i - 1), static_cast<size_t>(l.j - 1)});
      }
    const int dr = dilworthRank(littleUn, pairIdx);
    flats.push_back(Json{{"flat", labels},
                         {"sweep_rank", sweepFlats.ranks[fi]},
                         {"dilworth_rank", dr}});
    table += "  rank " + std::to_string(sweepFlats.ranks[fi]) + " vs " + std::to_string(dr) +
             "  {" + std::to_string(pairIdx.size()) + " pairs}\n";
  }
  const DilworthCheck dil = isDilworth(som);
  const WeakMapReport wm = weakMapCheck(dilworthTruncation(littleUn), sweepUn);
  Json wmJson{{"ok", wm.ok}};
  Json drops = Json::array();
  for (uint64_t f : wm.strictDrops) {
    Json labels = Json::array();
    for (size_t k = 0; k < som.ground()->size(); ++k)
      if (f & (uint64_t(1) << k)) labels.push_back(som.ground()->label(k).str());
    drops.push_back(labels);
  }
  wmJson["strict_drops"] = drops;
  Json out{{"is_dilworth", dil.ok}, {"flats", flats}, {"weak_map", wmJson}};
  if (!dil.ok && dil.witnessPartition) out["witness_partition"] = dil.witnessPartition->str();
  table += std::string("Dilworth: ") + (dil.ok ? "yes" : "no") + ", weak map: " +
           (wm.ok ? "ok" : "VIOLATED") + " (" + std::to_string(wm.strictDrops.size()) +
           " strict drops)\n";
  emit(opt, out, table);
  return 0;
}

int cmdBound(const Options& opt, int n, int r) {
  const BigInt b = stirlingBound(n, r);
  Json out{{"n", n}, {"rank", r}, {"bound", b.get_str()}};
  std::string table;
  if (opt.table) {
    table = "sweep-permutation bounds (rows n, columns rank)\n     ";
    for (int rr = 0; rr <= r; ++rr) table += "r=" + std::to_string(rr) + "\t";
    table += "\n";
    for (int nn = 1; nn <= n; ++nn) {
      table += "n=" + std::to_string(nn) + "  ";
      for (int rr = 0; rr <= r; ++rr) table += stirlingBound(nn, rr).get_str() + "\t";
      table += "\n";
    }
  }
  emit(opt, out, table);
  return 0;
}

int cmdCount(const Options& opt, const std::string& path) {
  const OrientedMatroid m = loadAcyclicOM(path);
  const FlatLattice lattice = flatLattice(m);
  const BigInt lvz = topeCount(lattice);
  const size_t enumerated = m.topes().size();
  const bool agree = lvz == BigInt(static_cast<unsigned long>(enumerated));
  Json out{{"tope_count_enumerated", enumerated},
           {"tope_count_lvz", lvz.get_str()},
           {"agree", agree}};
  emit(opt, out,
       "topes: enumerated " + std::to_string(enumerated) + ", Las Vergnas-Zaslavsky " +
           lvz.get_str() + (agree ? " (agree)\n" : " (MISMATCH)\n"));
  return agree ? 0 : 1;
}

int cmdPseudoSweeps(const Options& opt, const std::string& path, bool maximalOnly) {
  const OrientedMatroid m = loadAcyclicOM(path);
  const size_t cap = enumerationCap();
  const std::vector<OrderedPartition> elems =
      maximalOnly ? enumerateMaximal(m, cap) : enumeratePseudoSweeps(m, cap);
  Json out{{"count", elems.size()},
           {"maximal_only", maximalOnly},
           {"elements", partitionsToJson(elems)}};
  if (!maximalOnly) {
    SweepPoset poset;
    poset.n = static_cast<int>(m.ground()->size());
    poset.elements = elems;
    out["poset"] = posetToJson(poset.toPoset());
  }
  emit(opt, out,
       tableOfPartitions(maximalOnly ? "maximal pseudo-sweeps" : "pseudo-sweeps", elems));
  return 0;
}

int cmdKSets(const Options& opt, const std::string& path, int k) {
  const PointConfiguration a = configFromFile(path);
  const auto sets = kSets(a, k);
  Json ks = Json::array();
  for (const auto& s : sets) ks.push_back(s);
  Json vs = Json::array();
  for (const auto& v : kSetPolytopeVertices(a, k)) {
    Json row = Json::array();
    for (const auto& c : v) row.push_back(toString(c));
    vs.push_back(row);
  }
  Json out{{"k", k}, {"count", sets.size()}, {"sets", ks}, {"polytope_vertices", vs}};
  std::string table = std::to_string(sets.size()) + " " + std::to_string(k) + "-sets\n";
  for (const auto& s : sets) {
    table += "  {";
    for (size_t i = 0; i < s.size(); ++i) table += (i ? "," : "") + std::to_string(s[i]);
    table += "}\n";
  }
  emit(opt, out, table);
  return 0;
}

int cmdZonotope(const Options& opt, const std::string& path) {
  const PointConfiguration a = configFromFile(path);
  const SweepOrientedMatroid som = sweepOM(a);
  auto verts = sweepPolytopeVertices(a, &som);
  std::sort(verts.begin(), verts.end(),
            [](const auto& x, const auto& y) { return x.first.lessCanonical(y.first); });
  Json arr = Json::array();
  std::string table = "sweep polytope vertices (" + std::to_string(verts.size()) + ")\n";
  for (const auto& [tope, v] : verts) {
    Json coords = Json::array();
    std::string row;
    for (const auto& c : v) {
      coords.push_back(toString(c));
      row += toString(c) + " ";
    }
    const std::string part =
        tope.isZero() && som.om().topes().empty()
            ? OrderedPartition::trivial(a.n()).str()
            : signVectorToPartition(tope).str();
    arr.push_back(Json{{"tope", tope.str()}, {"partition", part}, {"vertex", coords}});
    table += "  " + part + "  ->  " + row + "\n";
  }
  Json out{{"vertex_count", verts.size()}, {"vertices", arr}};
  emit(opt, out, table);
  return 0;
}

int cmdVeronese(const Options& opt, const std::string& path, int degree) {
  const PointConfiguration image = veronese(configFromFile(path), degree);
  Json out = configToJson(image);
  emit(opt, out,
       "veronese image: " + std::to_string(image.n()) + " points in dimension " +
           std::to_string(image.d) + "\n");
  return 0;
}

int cmdAllowable(const Options& opt, const std::string& path, bool asSequence) {
  const std::vector<Permutation> perms = permsFromJson(readJsonFile(path));
  if (asSequence) {
    const SequenceReport rep = verifyAllowableSequence(perms);
    Json out{{"ok", rep.ok}, {"reason", rep.reason}};
    if (rep.stepIndex) out["step"] = *rep.stepIndex;
    if (rep.repeatedPair)
      out["repeated_pair"] = Json::array({rep.repeatedPair->first, rep.repeatedPair->second});
    emit(opt, out,
         std::string("allowable sequence: ") + (rep.ok ? "valid" : "INVALID (" + rep.reason + ")") +
             "\n");
    return 0;
  }
  const AllowableGraphResult g = isAllowableGraph(perms);
  Json out{{"allowable_graph", Json{{"ok", g.ok}, {"reason", g.reason}}}};
  std::string table = std::string("allowable graph: ") + (g.ok ? "yes" : "no (" + g.reason + ")") + "\n";
  if (g.ok) {
    Json classes = Json::array();
    for (uint64_t cls : g.moveClasses) {
      Json prs = Json::array();
      for (const auto& [i, j] : pairsOfMask(cls, g.n)) prs.push_back(Json::array({i, j}));
      classes.push_back(prs);
    }
    out["allowable_graph"]["edge_count"] = g.edges.size();
    out["allowable_graph"]["move_classes"] = classes;
    const auto topes = topesFromPermutations(g.perms);
    const AcycloidReport ac = acycloidCheck(topes);
    out["acycloid"] = Json{{"t1", ac.t1}, {"t2", ac.t2}, {"t3", ac.t3}, {"detail", ac.detail}};
    out["sweep_acycloid"] = isSweepAcycloid(topes);
    const CharacterizationReport cr = characterizationReport(g.perms);
    out["characterization"] = Json{{"oriented_matroid", cr.omVerdict},
                                   {"potential_sweeps_equal_sweeps", cr.potentialEqualsSweeps},
                                   {"contractions_allowable", cr.contractionsAllowable},
                                   {"agree", cr.agree}};
    table += "acycloid: " + std::string(ac.ok() ? "yes" : "no") + "\n";
    table += "sweep acycloid: " + std::string(out["sweep_acycloid"].get<bool>() ? "yes" : "no") + "\n";
    table += "characterization (i)=" + std::to_string(cr.omVerdict) +
             " (ii)=" + std::to_string(cr.potentialEqualsSweeps) +
             " (iii)=" + std::to_string(cr.contractionsAllowable) +
             " agree=" + std::to_string(cr.agree) + "\n";
  }
  emit(opt, out, table);
  return 0;
}

int cmdEuler(const Options& opt, const std::string& path) {
  const Json j = readJsonFile(path);
  long long chi = 0;
  std::string what;
  if (j.contains("elements") && j.contains("covers")) {
    chi = orderComplexEuler(posetFromJson(j));
    what = "poset";
  } else if (looksLikeConfig(j)) {
    const SweepOrientedMatroid som = sweepOM(configFromJson(j));
    chi = orderComplexEuler(posetOfSweeps(som).toNontrivialPoset());
    what = "nontrivial sweep poset";
  } else {
    chi = orderComplexEuler(covectorPoset(omFromJson(j), /*includeZero=*/false));
    what = "nonzero covector poset";
  }
  Json out{{"euler_characteristic", chi}, {"of", what}};
  emit(opt, out, "Euler characteristic of " + what + ": " + std::to_string(chi) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sweepscope: sweeps, sweep oriented matroids, and allowable graphs"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand arguments
  Options opt;
  app.add_flag("--table", opt.table, "human-readable tables instead of JSON");
  app.add_option("--threads", opt.threads, "enumeration threads (merges are deterministic)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", opt.output, "write output to a file instead of stdout");

  std::string path, flatSpec;
  int kArg = 1, nArg = 1, rankArg = 0, degreeArg = 1;
  bool maximalOnly = false, asSequence = false;

  auto* sweeps = app.add_subcommand("sweeps", "topes and poset of the sweep oriented matroid");
  sweeps->add_option("config", path, "point configuration (JSON or CSV)")->required();
  auto* littleom = app.add_subcommand("littleom", "little oriented matroid of a configuration");
  littleom->add_option("config", path)->required();
  auto* bigom = app.add_subcommand("bigom", "big oriented matroid (from a configuration or a sweep OM)");
  bigom->add_option("input", path)->required();
  auto* checkom = app.add_subcommand("check-om", "verify covector axioms and transitivity");
  checkom->add_option("om", path)->required();
  auto* recog = app.add_subcommand("recognize-big", "recognize big oriented matroids");
  recog->add_option("om", path)->required();
  auto* modular = app.add_subcommand("modular", "modular/tight hyperplane test");
  modular->add_option("om", path)->required();
  modular->add_option("--flat", flatSpec, "';'-separated labels, or 'pairs'")->required();
  auto* dilworth = app.add_subcommand("dilworth", "Dilworth ranks and weak-map check");
  dilworth->add_option("config", path)->required();
  auto* bound = app.add_subcommand("bound", "Stirling upper bound on sweep permutations");
  bound->add_option("--n", nArg, "number of points")->required();
  bound->add_option("--rank", rankArg, "sweep OM rank")->required();
  auto* count = app.add_subcommand("count", "tope count: enumeration vs characteristic polynomial");
  count->add_option("om", path)->required();
  auto* pseudo = app.add_subcommand("pseudosweeps", "pseudo-sweeps of a configuration or acyclic OM");
  pseudo->add_option("input", path)->required();
  pseudo->add_flag("--maximal-only", maximalOnly, "only the maximal pseudo-sweeps");
  auto* ksets = app.add_subcommand("ksets", "k-sets and k-set polytope vertices");
  ksets->add_option("config", path)->required();
  ksets->add_option("--k", kArg)->required();
  auto* zonotope = app.add_subcommand("zonotope", "sweep polytope vertices");
  zonotope->add_option("config", path)->required();
  auto* veroneseCmd = app.add_subcommand("veronese", "Veronese lift of a configuration");
  veroneseCmd->add_option("config", path)->required();
  veroneseCmd->add_option("--degree", degreeArg)->required();
  auto* allowable = app.add_subcommand("allowable", "allowable graph / sequence reports");
  allowable->add_option("perms", path, "JSON list of permutation words")->required();
  allowable->add_flag("--sequence", asSequence, "validate as an allowable sequence instead");
  auto* euler = app.add_subcommand("euler", "order-complex Euler characteristic");
  euler->add_option("input", path, "OM, configuration, or poset JSON")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweeps->parsed()) return cmdSweeps(opt, path);
    if (littleom->parsed()) return cmdLittleOM(opt, path);
    if (bigom->parsed()) return cmdBigOM(opt, path);
    if (checkom->parsed()) return cmdCheckOM(opt, path);
    if (recog->parsed()) return cmdRecognizeBig(opt, path);
    if (modular->parsed()) return cmdModular(opt, path, flatSpec);
    if (dilworth->parsed()) return cmdDilworth(opt, path);
    if (bound->parsed()) return cmdBound(opt, nArg, rankArg);
    if (count->parsed()) return cmdCount(opt, path);
    if (pseudo->parsed()) return cmdPseudoSweeps(opt, path, maximalOnly);
    if (ksets->parsed()) return cmdKSets(opt, path, kArg);
    if (zonotope->parsed()) return cmdZonotope(opt, path);
    if (veroneseCmd->parsed()) return cmdVeronese(opt, path, degreeArg);
    if (allowable->parsed()) return cmdAllowable(opt, path, asSequence);
    if (euler->parsed()) return cmdEuler(opt, path);
  } catch (const ParseError& e) {
    std::cout << Json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cout << Json{{"error", {{"type", "parse"}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cout << Json{{"error", {{"type", "validation"}, {"message", e.what()}}}}.dump(2) << "\n";
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
