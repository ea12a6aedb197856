#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sweepscope/allowable.hpp"
#include "sweepscope/big_om.hpp"
#include "sweepscope/covectors.hpp"
#include "sweepscope/matroid_flats.hpp"
#include "sweepscope/point_config.hpp"
#include "sweepscope/sweep_om.hpp"

namespace sweepscope {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- ground sets ----------------------------------------------------------

inline Json groundToJson(const GroundSet& g) {
  // Pairs(n) and Points(n) get the compact form; everything else lists labels.
  if (auto n = g.pairsN(); n && g.size() > 0) return Json{{"points", *n}, {"pairs", true}};
  bool allPoints = !g.labels().empty();
  int maxI = 0;
  for (const auto& l : g.labels()) {
    if (l.kind != GroundLabel::Kind::Point) allPoints = false;
    maxI = std::max(maxI, l.i);
  }
  if (allPoints && g == *GroundSet::points(maxI)) return Json{{"points", maxI}, {"pairs", false}};
  Json labels = Json::array();
  for (const auto& l : g.labels()) labels.push_back(l.str());
  return Json{{"labels", labels}};
}

inline GroundPtr groundFromJson(const Json& j) {
  if (j.contains("labels")) {
    std::vector<GroundLabel> ls;
    for (const auto& s : j.at("labels")) ls.push_back(GroundLabel::parse(s.get<std::string>()));
    return GroundSet::fromLabels(std::move(ls));
  }
  if (!j.contains("points")) throw ParseError("ground set JSON needs 'points' or 'labels'");
  const int n = j.at("points").get<int>();
  const bool pairs = j.value("pairs", false);
  return pairs ? GroundSet::pairs(n) : GroundSet::points(n);
}

// ---- covector sets / oriented matroids -------------------------------------

inline Json omToJson(const OrientedMatroid& m) {
  Json covs = Json::array();
  for (const auto& x : m.covectors()) covs.push_back(x.str());
  return Json{{"ground", groundToJson(*m.ground())}, {"from", "covectors"}, {"covectors", covs}};
}

inline CovectorSet covectorSetFromJson(const Json& j) {
  GroundPtr ground = groundFromJson(j.at("ground"));
  std::string from = j.value("from", std::string());
  if (from.empty()) {
    if (j.contains("covectors")) from = "covectors";
    else if (j.contains("topes")) from = "topes";
    else if (j.contains("cocircuits")) from = "cocircuits";
    else throw ParseError("OM JSON needs covectors, topes, or cocircuits");
  }
  auto readVecs = [&](const char* key) {
    if (!j.contains(key)) throw ParseError(std::string("OM JSON missing '") + key + "'");
    std::vector<SignVector> out;
    for (const auto& s : j.at(key))
      out.push_back(SignVector::fromString(ground, s.get<std::string>()));
    return out;
  };
  if (from == "covectors") return CovectorSet(ground, readVecs("covectors"));
  if (from == "topes") return covectorsFromTopes(ground, readVecs("topes"));
  if (from == "cocircuits") return cocircuitClosure(ground, readVecs("cocircuits"));
  throw ParseError("OM JSON has unknown 'from' discriminator: " + from);
}

inline OrientedMatroid omFromJson(const Json& j) {
  return OrientedMatroid::checked(covectorSetFromJson(j));
}

// ---- point configurations ---------------------------------------------------

inline Json configToJson(const PointConfiguration& a) {
  Json pts = Json::array();
  for (const auto& p : a.points) {
    Json row = Json::array();
    for (const auto& c : p) row.push_back(toString(c));
    pts.push_back(row);
  }
  return Json{{"dim", a.d}, {"points", pts}};
}

inline PointConfiguration configFromJson(const Json& j) {
  if (!j.contains("dim") || !j.contains("points"))
    throw ParseError("configuration JSON needs 'dim' and 'points'");
  const int d = j.at("dim").get<int>();
  std::vector<RatVec> pts;
  for (const auto& row : j.at("points")) {
    RatVec p;
    for (const auto& c : row) {
      if (c.is_string()) p.push_back(parseRational(c.get<std::string>()));
      else if (c.is_number_integer()) p.push_back(Rational(c.get<long>()));
      else throw ParseError("coordinates must be integers or 'p/q' strings");
    }
    pts.push_back(std::move(p));
  }
  if (j.contains("labels") && j.at("labels").size() != pts.size())
    throw ParseError("label count does not match point count");
  try {
    return PointConfiguration::make(d, std::move(pts));
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

/// CSV: one point per row, coordinates as integers or "p/q".
inline PointConfiguration configFromCsv(const std::string& text) {
  std::vector<RatVec> pts;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    RatVec p;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) p.push_back(parseRational(cell));
    if (!p.empty()) pts.push_back(std::move(p));
  }
  if (pts.empty()) throw ParseError("CSV has no points");
  const int d = static_cast<int>(pts.front().size());
  for (const auto& p : pts)
    if (static_cast<int>(p.size()) != d) throw ParseError("CSV rows have different widths");
  return PointConfiguration::make(d, std::move(pts));
}

// ---- posets, lattices, partitions ------------------------------------------

inline Json posetToJson(const Poset& p) {
  Json covers = Json::array();
  for (const auto& [lo, hi] : p.covers()) covers.push_back(Json::array({lo, hi}));
  return Json{{"elements", p.elements}, {"covers", covers}};
}

inline Poset posetFromJson(const Json& j) {
  Poset p;
  for (const auto& e : j.at("elements")) p.elements.push_back(e.get<std::string>());
  const size_t n = p.elements.size();
  p.less.assign(n, std::vector<bool>(n, false));
  for (const auto& cov : j.at("covers")) {
    const size_t lo = cov.at(0).get<size_t>(), hi = cov.at(1).get<size_t>();
    if (lo >= n || hi >= n) throw ParseError("poset cover index out of range");
    p.less[lo][hi] = true;
  }
  // transitive closure of the cover relation
  for (size_t k = 0; k < n; ++k)
    for (size_t i = 0; i < n; ++i)
      for (size_t j2 = 0; j2 < n; ++j2)
        if (p.less[i][k] && p.less[k][j2]) p.less[i][j2] = true;
  return p;
}

inline Json latticeToJson(const FlatLattice& l) {
  Json flats = Json::array(), ranks = Json::array();
  for (size_t i = 0; i < l.flats.size(); ++i) {
    Json flat = Json::array();
    for (size_t k = 0; k < l.ground->size(); ++k)
      if (l.flats[i] & (uint64_t(1) << k)) flat.push_back(l.ground->label(k).str());
    flats.push_back(flat);
    ranks.push_back(l.ranks[i]);
  }
  return Json{{"flats", flats}, {"ranks", ranks}};
}

inline Json partitionsToJson(const std::vector<OrderedPartition>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

inline Json permsToJson(const std::vector<Permutation>& ps) {
  Json out = Json::array();
  for (const auto& p : ps) out.push_back(p);
  return out;
}

inline std::vector<Permutation> permsFromJson(const Json& j) {
  std::vector<Permutation> out;
  for (const auto& row : j) {
    Permutation w;
    for (const auto& v : row) w.push_back(v.get<int>());
    requirePermutation(w);
    out.push_back(std::move(w));
  }
  if (out.empty()) throw ParseError("permutation list is empty");
  return out;
}

inline Json decorationToJson(const Decoration& dec) {
  Json delta = Json::object();
  for (const auto& [f, prs] : dec.delta) {
    Json arr = Json::array();
    for (const auto& pr : prs) arr.push_back(Json::array({pr.first, pr.second}));
    delta[f] = arr;
  }
  Json eps = Json::object();
  for (const auto& [pr, s] : dec.epsilon)
    eps[std::to_string(pr.first) + "," + std::to_string(pr.second)] =
        std::string(1, signChar(s));
  return Json{{"n", dec.n}, {"delta", delta}, {"epsilon", eps}};
}

inline Decoration decorationFromJson(const Json& j) {
  Decoration dec;
  dec.n = j.at("n").get<int>();
  for (auto it = j.at("delta").begin(); it != j.at("delta").end(); ++it) {
    std::vector<std::pair<int, int>> prs;
    for (const auto& pr : it.value()) prs.push_back({pr.at(0).get<int>(), pr.at(1).get<int>()});
    dec.delta[it.key()] = prs;
  }
  for (auto it = j.at("epsilon").begin(); it != j.at("epsilon").end(); ++it) {
    const std::string key = it.key();
    const auto comma = key.find(',');
    if (comma == std::string::npos) throw ParseError("bad epsilon key: " + key);
    const std::string val = it.value().get<std::string>();
    if (val.size() != 1) throw ParseError("bad epsilon sign: " + val);
    dec.epsilon[{std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1))}] =
        signFromChar(val[0]);
  }
  return dec;
}

// ---- files -------------------------------------------------------------------

inline std::string readFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json readJsonFile(const std::string& path) {
  try {
    return Json::parse(readFile(path));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("bad JSON in " + path + ": " + e.what());
  }
}

inline PointConfiguration configFromFile(const std::string& path) {
  if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
    return configFromCsv(readFile(path));
  return configFromJson(readJsonFile(path));
}

}  // namespace sweepscope
