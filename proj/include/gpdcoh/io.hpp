#pragma once

// JSON loaders and writers. Rationals travel as strings "p/q"; input matrices
// are lists of rows, report matrices are sparse triplet lists.

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "constructors.hpp"
#include "division.hpp"
#include "rep.hpp"

namespace gpdcoh {

using Json = nlohmann::ordered_json;

/// Parse failure carrying the path of the offending field, e.g. "lambda0.(1,p)[0][1]".
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& field, const std::string& msg)
      : std::runtime_error(field.empty() ? msg : field + ": " + msg), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace io {

inline std::string join(const std::string& a, const std::string& b) { return a.empty() ? b : a + "." + b; }

inline const Json& member(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(join(path, key), "missing field");
  return *it;
}

inline std::string str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> strings(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline std::map<std::string, std::string> stringMap(const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object of strings");
  std::map<std::string, std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = str(it.value(), join(path, it.key()));
  return out;
}

inline Rational rational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError(path, "expected a rational as a string \"p/q\" or an integer");
  try {
    return parseRational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw InputError(path, e.what());
  }
}

inline std::size_t dimension(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long>() < 0) throw InputError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace io

// ---------------------------------------------------------------------------
// Matrices

/// Row list; `rows` x `cols` is the expected shape, which also makes an empty
/// list meaningful.
inline Matrix matrixFromJson(const Json& j, std::size_t rows, std::size_t cols, const std::string& path = "") {
  if (!j.is_array()) throw InputError(path, "expected a matrix as a list of rows");
  if (j.size() != rows)
    throw InputError(path, "expected " + std::to_string(rows) + " rows, found " + std::to_string(j.size()));
  MatrixBuilder mb(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::string rp = path + "[" + std::to_string(r) + "]";
    if (!j[r].is_array() || j[r].size() != cols)
      throw InputError(rp, "expected a row of " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) mb.add(r, c, io::rational(j[r][c], rp + "[" + std::to_string(c) + "]"));
  }
  return std::move(mb).build();
}

inline Json matrixToJson(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.toDense()) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(formatRational(x));
    rows.push_back(std::move(r));
  }
  return rows;
}

inline Json reportMatrix(const Matrix& m) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (const auto& [c, v] : m.row(r)) entries.push_back(Json::array({r, c, formatRational(v)}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix reportMatrixFromJson(const Json& j, const std::string& path = "") {
  const std::size_t rows = io::dimension(io::member(j, "rows", path), io::join(path, "rows"));
  const std::size_t cols = io::dimension(io::member(j, "cols", path), io::join(path, "cols"));
  MatrixBuilder mb(rows, cols);
  const Json& e = io::member(j, "entries", path);
  if (!e.is_array()) throw InputError(io::join(path, "entries"), "expected an array");
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string p = io::join(path, "entries") + "[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() != 3) throw InputError(p, "expected [row, col, value]");
    const std::size_t r = io::dimension(e[i][0], p), c = io::dimension(e[i][1], p);
    if (r >= rows || c >= cols) throw InputError(p, "entry outside the matrix");
    mb.add(r, c, io::rational(e[i][2], p));
  }
  return std::move(mb).build();
}

// ---------------------------------------------------------------------------
// Groupoids, covers, surjections, division presentations

inline GroupoidData groupoidDataFromJson(const Json& j, const std::string& path = "") {
  GroupoidData d;
  d.objects = io::strings(io::member(j, "objects", path), io::join(path, "objects"));
  const Json& arrows = io::member(j, "arrows", path);
  if (!arrows.is_array()) throw InputError(io::join(path, "arrows"), "expected an array");
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    const std::string p = io::join(path, "arrows") + "[" + std::to_string(i) + "]";
    d.arrows.push_back({io::str(io::member(arrows[i], "id", p), p + ".id"), io::str(io::member(arrows[i], "src", p), p + ".src"),
                        io::str(io::member(arrows[i], "tgt", p), p + ".tgt")});
  }
  const Json& comp = io::member(j, "compose", path);
  if (!comp.is_array()) throw InputError(io::join(path, "compose"), "expected an array");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    const std::string p = io::join(path, "compose") + "[" + std::to_string(i) + "]";
    auto t = io::strings(comp[i], p);
    if (t.size() != 3) throw InputError(p, "expected a triple [g, h, gh]");
    d.compose.push_back({t[0], t[1], t[2]});
  }
  if (j.contains("units")) d.units = io::stringMap(j["units"], io::join(path, "units"));
  if (j.contains("inverses")) d.inverses = io::stringMap(j["inverses"], io::join(path, "inverses"));
  return d;
}

inline Json groupoidToJson(const FiniteGroupoid& G) {
  const GroupoidData d = G.toData(true);
  Json arrows = Json::array(), comp = Json::array();
  for (const auto& a : d.arrows) arrows.push_back(Json{{"id", a.id}, {"src", a.src}, {"tgt", a.tgt}});
  for (const auto& c : d.compose) comp.push_back(Json::array({c[0], c[1], c[2]}));
  Json j{{"objects", d.objects}, {"arrows", std::move(arrows)}, {"compose", std::move(comp)}};
  if (d.units) j["units"] = Json(*d.units);
  if (d.inverses) j["inverses"] = Json(*d.inverses);
  return j;
}

inline std::vector<std::vector<std::string>> coverFromJson(const Json& j, const std::string& path = "") {
  const Json& c = io::member(j, "cover", path);
  if (!c.is_array()) throw InputError(io::join(path, "cover"), "expected an array of object lists");
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < c.size(); ++i)
    out.push_back(io::strings(c[i], io::join(path, "cover") + "[" + std::to_string(i) + "]"));
  return out;
}

inline Json coverToJson(const std::vector<std::vector<std::string>>& cover) { return Json{{"cover", cover}}; }

inline Surjection surjectionFromJson(const Json& j, const std::string& path = "") {
  return {io::strings(io::member(j, "P", path), io::join(path, "P")), io::stringMap(io::member(j, "map", path), io::join(path, "map"))};
}

inline Json surjectionToJson(const Surjection& s) {
  return Json{{"P", s.P}, {"map", Json(s.map)}};
}

inline DivisionPresentation divisionFromJson(const Json& j, const std::string& path = "") {
  DivisionPresentation d;
  d.arrows = io::strings(io::member(j, "arrows", path), io::join(path, "arrows"));
  d.source = io::stringMap(io::member(j, "source", path), io::join(path, "source"));
  const Json& m = io::member(j, "mbar", path);
  if (!m.is_array()) throw InputError(io::join(path, "mbar"), "expected an array");
  for (std::size_t i = 0; i < m.size(); ++i) {
    const std::string p = io::join(path, "mbar") + "[" + std::to_string(i) + "]";
    auto t = io::strings(m[i], p);
    if (t.size() != 3) throw InputError(p, "expected a triple [g, h, mbar(g,h)]");
    d.mbar.push_back({t[0], t[1], t[2]});
  }
  return d;
}

inline Json divisionToJson(const DivisionPresentation& d) {
  Json m = Json::array();
  for (const auto& t : d.mbar) m.push_back(Json::array({t[0], t[1], t[2]}));
  return Json{{"arrows", d.arrows}, {"source", Json(d.source)}, {"mbar", std::move(m)}};
}

// ---------------------------------------------------------------------------
// Representations and RUTHs

namespace io {

inline VectorBundle bundleFromJson(const FiniteGroupoid& G, const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object {object: dim}");
  VectorBundle b{std::vector<std::size_t>(G.numObjects(), 0)};
  std::vector<bool> seen(G.numObjects(), false);
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto x = G.findObject(it.key());
    if (!x) throw InputError(join(path, it.key()), "unknown object");
    b.dims[static_cast<std::size_t>(*x)] = dimension(it.value(), join(path, it.key()));
    seen[static_cast<std::size_t>(*x)] = true;
  }
  for (std::size_t x = 0; x < G.numObjects(); ++x)
    if (!seen[x]) throw InputError(join(path, G.objectId(static_cast<Object>(x))), "missing fiber dimension");
  return b;
}

inline Json bundleToJson(const FiniteGroupoid& G, const VectorBundle& b) {
  Json j = Json::object();
  for (std::size_t x = 0; x < G.numObjects(); ++x) j[G.objectId(static_cast<Object>(x))] = b.dims[x];
  return j;
}

/// Arrow-indexed matrices; every arrow must be present.
inline std::vector<Matrix> arrowMaps(const FiniteGroupoid& G, const Json& j, const VectorBundle& from, const VectorBundle& to,
                                     const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object {arrow: matrix}");
  std::vector<std::optional<Matrix>> maps(G.numArrows());
  for (auto it = j.begin(); it != j.end(); ++it) {
    const auto g = G.findArrow(it.key());
    if (!g) throw InputError(join(path, it.key()), "unknown arrow");
    maps[static_cast<std::size_t>(*g)] =
        matrixFromJson(it.value(), to.dim(G.tgt(*g)), from.dim(G.src(*g)), join(path, it.key()));
  }
  std::vector<Matrix> out;
  for (std::size_t g = 0; g < G.numArrows(); ++g) {
    if (!maps[g]) throw InputError(join(path, G.arrowId(static_cast<Arrow>(g))), "missing matrix");
    out.push_back(std::move(*maps[g]));
  }
  return out;
}

inline Json arrowMapsToJson(const FiniteGroupoid& G, const std::vector<Matrix>& maps) {
  Json j = Json::object();
  for (std::size_t g = 0; g < G.numArrows(); ++g) j[G.arrowId(static_cast<Arrow>(g))] = matrixToJson(maps[g]);
  return j;
}

}  // namespace io

/// {"E": {obj: dim}, "action": {arrow: matrix}}.
inline Representation repFromJson(const FiniteGroupoid& G, const Json& j, const std::string& path = "") {
  Representation r;
  r.bundle = io::bundleFromJson(G, io::member(j, "E", path), io::join(path, "E"));
  r.maps = io::arrowMaps(G, io::member(j, "action", path), r.bundle, r.bundle, io::join(path, "action"));
  return r;
}

inline Json repToJson(const FiniteGroupoid& G, const Representation& r) {
  return Json{{"E", io::bundleToJson(G, r.bundle)}, {"action", io::arrowMapsToJson(G, r.maps)}};
}

/// Missing "K" entries are zero; present ones must name a composable pair.
inline Ruth2 ruthFromJson(const FiniteGroupoid& G, const Json& j, const std::string& path = "") {
  Ruth2 r;
  r.arrows = G.numArrows();
  r.E0 = io::bundleFromJson(G, io::member(j, "E0", path), io::join(path, "E0"));
  r.E1 = io::bundleFromJson(G, io::member(j, "E1", path), io::join(path, "E1"));
  const Json& partial = io::member(j, "partial", path);
  if (!partial.is_object()) throw InputError(io::join(path, "partial"), "expected an object {object: matrix}");
  std::vector<std::optional<Matrix>> d(G.numObjects());
  for (auto it = partial.begin(); it != partial.end(); ++it) {
    const auto x = G.findObject(it.key());
    if (!x) throw InputError(io::join(io::join(path, "partial"), it.key()), "unknown object");
    d[static_cast<std::size_t>(*x)] =
        matrixFromJson(it.value(), r.E1.dim(*x), r.E0.dim(*x), io::join(io::join(path, "partial"), it.key()));
  }
  for (std::size_t x = 0; x < G.numObjects(); ++x) {
    if (!d[x]) {
      if (r.E0.dims[x] * r.E1.dims[x] != 0)
        throw InputError(io::join(io::join(path, "partial"), G.objectId(static_cast<Object>(x))), "missing matrix");
      d[x] = Matrix::zero(r.E1.dims[x], r.E0.dims[x]);
    }
    r.partial.push_back(std::move(*d[x]));
  }
  r.lambda0 = {r.E0, io::arrowMaps(G, io::member(j, "lambda0", path), r.E0, r.E0, io::join(path, "lambda0"))};
  r.lambda1 = {r.E1, io::arrowMaps(G, io::member(j, "lambda1", path), r.E1, r.E1, io::join(path, "lambda1"))};
  r.curvature = Ruth2::zeroCurvature(G, r.E0, r.E1);
  if (j.contains("K")) {
    const Json& K = j["K"];
    const std::string kp = io::join(path, "K");
    if (!K.is_object()) throw InputError(kp, "expected an object {\"g|h\": matrix}");
    for (auto it = K.begin(); it != K.end(); ++it) {
      const std::string key = it.key();
      const auto bar = key.find('|');
      if (bar == std::string::npos || key.find('|', bar + 1) != std::string::npos)
        throw InputError(io::join(kp, key), "expected a key of the form \"g|h\"");
      const auto g = G.findArrow(key.substr(0, bar)), h = G.findArrow(key.substr(bar + 1));
      if (!g || !h) throw InputError(io::join(kp, key), "unknown arrow");
      if (!G.composable(*g, *h)) throw InputError(io::join(kp, key), "arrows are not composable");
      r.K(*g, *h) = matrixFromJson(it.value(), r.E0.dim(G.tgt(*g)), r.E1.dim(G.src(*h)), io::join(kp, key));
    }
  }
  return r;
}

inline Json ruthToJson(const FiniteGroupoid& G, const Ruth2& r) {
  Json partial = Json::object(), K = Json::object();
  for (std::size_t x = 0; x < G.numObjects(); ++x) partial[G.objectId(static_cast<Object>(x))] = matrixToJson(r.partial[x]);
  for (std::size_t g = 0; g < G.numArrows(); ++g)
    for (Arrow h : G.arrowsWithTarget(G.src(static_cast<Arrow>(g)))) {
      const Matrix& k = r.K(static_cast<Arrow>(g), h);
      if (!k.isZero()) K[G.arrowId(static_cast<Arrow>(g)) + "|" + G.arrowId(h)] = matrixToJson(k);
    }
  return Json{{"E0", io::bundleToJson(G, r.E0)},
              {"E1", io::bundleToJson(G, r.E1)},
              {"partial", std::move(partial)},
              {"lambda0", io::arrowMapsToJson(G, r.lambda0.maps)},
              {"lambda1", io::arrowMapsToJson(G, r.lambda1.maps)},
              {"K", std::move(K)}};
}

// ---------------------------------------------------------------------------
// Reports

inline constexpr int kReportVersion = 1;

struct CohomologyReport {
  int version = kReportVersion;
  std::map<std::string, std::string> inputs;  // descriptor -> value
  int maxDegree = 0;                          // truncation degree
  std::vector<std::size_t> dims;              // H^0 .. H^{maxDegree - 1}
  std::map<std::string, bool> checks;
  std::vector<std::string> witnesses;

  bool operator==(const CohomologyReport&) const = default;
};

inline Json toJson(const CohomologyReport& r) {
  return Json{{"version", r.version}, {"inputs", Json(r.inputs)}, {"max_degree", r.maxDegree},
              {"dims", r.dims},       {"checks", Json(r.checks)}, {"witnesses", r.witnesses}};
}

inline CohomologyReport cohomologyReportFromJson(const Json& j) {
  CohomologyReport r;
  const Json& v = io::member(j, "version", "");
  if (!v.is_number_integer() || v.get<int>() != kReportVersion)
    throw InputError("version", "unsupported report version");
  r.version = v.get<int>();
  r.inputs = io::stringMap(io::member(j, "inputs", ""), "inputs");
  const Json& md = io::member(j, "max_degree", "");
  r.maxDegree = static_cast<int>(io::dimension(md, "max_degree"));
  const Json& dims = io::member(j, "dims", "");
  if (!dims.is_array()) throw InputError("dims", "expected an array");
  for (std::size_t i = 0; i < dims.size(); ++i) r.dims.push_back(io::dimension(dims[i], "dims[" + std::to_string(i) + "]"));
  const Json& checks = io::member(j, "checks", "");
  if (!checks.is_object()) throw InputError("checks", "expected an object");
  for (auto it = checks.begin(); it != checks.end(); ++it) {
    if (!it.value().is_boolean()) throw InputError("checks." + it.key(), "expected a boolean");
    r.checks[it.key()] = it.value().get<bool>();
  }
  r.witnesses = io::strings(io::member(j, "witnesses", ""), "witnesses");
  return r;
}

inline Json toJson(const ValidationReport& r) {
  Json v = Json::array();
  for (const auto& x : r.violations) v.push_back(Json{{"axiom", x.axiom}, {"witnesses", x.witnesses}, {"message", x.message}});
  return Json{{"valid", r.valid()}, {"violations", std::move(v)}};
}

// ---------------------------------------------------------------------------
// Files

/// Reads and parses a JSON file; syntax errors report line and column.
inline Json readJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path, "cannot open file");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path, e.what());
  }
}

inline void writeJsonFile(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError(path, "cannot write file");
  out << j.dump(2) << "\n";
}

}  // namespace gpdcoh
