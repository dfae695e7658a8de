#pragma once

// Wire format for the CLI: canonical single-line JSON, arbitrary-precision
// integers as JSON numbers when they fit in 64 bits and as decimal strings
// otherwise, rationals as "p/q" strings. Parsing is strict: floating point
// numbers are rejected everywhere, and every structural problem raises
// schema_error with a path-ish message.

#include <toric/cone.hpp>
#include <toric/equivalence.hpp>
#include <toric/invariants.hpp>
#include <toric/lattice.hpp>
#include <toric/polytope.hpp>

#include <json.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace toric::io {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

struct schema_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace wire {

inline bool looks_like_integer(const std::string& s) {
  std::size_t i = (s.size() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i >= s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline json to_json(const Int& v) {
  static const Int lo = std::numeric_limits<std::int64_t>::min();
  static const Int hi = std::numeric_limits<std::int64_t>::max();
  if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
  return v.str();
}

inline Int int_from(const json& j, const std::string& what) {
  if (j.is_number_integer()) return Int(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Int(j.get<std::uint64_t>());
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (!looks_like_integer(s)) throw schema_error(what + ": not an integer: '" + s + "'");
    return Int(s);
  }
  throw schema_error(what + ": expected an integer");
}

inline json to_json(const Rat& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return to_json(numerator(r));
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rat rat_from(const json& j, const std::string& what) {
  if (j.is_number_integer() || j.is_number_unsigned() ||
      (j.is_string() && looks_like_integer(j.get<std::string>())))
    return Rat(int_from(j, what));
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos || slash == 0 || slash + 1 >= s.size())
      throw schema_error(what + ": not a rational: '" + s + "'");
    const std::string p = s.substr(0, slash), q = s.substr(slash + 1);
    if (!looks_like_integer(p) || !looks_like_integer(q))
      throw schema_error(what + ": not a rational: '" + s + "'");
    Int den(q);
    if (den == 0) throw schema_error(what + ": zero denominator");
    return Rat(Int(p), den);
  }
  throw schema_error(what + ": expected an integer or 'p/q' string");
}

inline json to_json(const Vec& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(to_json(x));
  return a;
}

inline Vec vec_from(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw schema_error(what + ": expected a nonempty array");
  Vec v;
  v.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    v.push_back(int_from(j[i], what + "[" + std::to_string(i) + "]"));
  return v;
}

inline json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
  return rows;
}

inline const json& field(const json& j, const char* key, const std::string& what) {
  if (!j.is_object()) throw schema_error(what + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw schema_error(what + ": missing field '" + key + "'");
  return *it;
}

inline std::size_t dim_from(const json& j, const std::string& what) {
  Int d = int_from(field(j, "dim", what), what + ".dim");
  if (d < 1 || d > 16) throw schema_error(what + ".dim: out of range");
  return d.convert_to<std::size_t>();
}

}  // namespace wire

inline json polytope_to_json(const Polytope& p) {
  json j;
  j["dim"] = p.dim();
  json vs = json::array();
  for (const QVec& v : p.vertices()) {
    json row = json::array();
    for (const Rat& x : v) row.push_back(wire::to_json(x));
    vs.push_back(std::move(row));
  }
  j["vertices"] = std::move(vs);
  return j;
}

inline Polytope polytope_from_json(const json& j) {
  const std::string what = "polytope";
  std::size_t dim = wire::dim_from(j, what);
  const json& vj = wire::field(j, "vertices", what);
  if (!vj.is_array()) throw schema_error(what + ".vertices: expected an array");
  std::vector<QVec> vertices;
  for (std::size_t i = 0; i < vj.size(); ++i) {
    const json& row = vj[i];
    const std::string vwhat = what + ".vertices[" + std::to_string(i) + "]";
    if (!row.is_array() || row.size() != dim)
      throw schema_error(vwhat + ": expected an array of length dim");
    QVec v;
    for (std::size_t k = 0; k < dim; ++k)
      v.push_back(wire::rat_from(row[k], vwhat + "[" + std::to_string(k) + "]"));
    vertices.push_back(std::move(v));
  }
  return Polytope(dim, std::move(vertices));
}

inline json cone_to_json(const Cone& c) {
  json j;
  j["dim"] = c.dim();
  json ns = json::array();
  for (const Vec& n : c.normals()) ns.push_back(wire::to_json(n));
  j["normals"] = std::move(ns);
  if (c.pointed()) {
    json rs = json::array();
    for (const Vec& r : c.extreme_rays()) rs.push_back(wire::to_json(r));
    j["rays"] = std::move(rs);
  }
  return j;
}

// Rays in the input are ignored (they are derived data); normals are kept
// verbatim so diagnostic predicates can judge the description as given.
inline Cone cone_from_json(const json& j) {
  const std::string what = "cone";
  std::size_t dim = wire::dim_from(j, what);
  const json& nj = wire::field(j, "normals", what);
  if (!nj.is_array() || nj.empty())
    throw schema_error(what + ".normals: expected a nonempty array");
  std::vector<Vec> normals;
  for (std::size_t i = 0; i < nj.size(); ++i) {
    Vec n = wire::vec_from(nj[i], what + ".normals[" + std::to_string(i) + "]");
    if (n.size() != dim)
      throw schema_error(what + ".normals[" + std::to_string(i) + "]: wrong dimension");
    normals.push_back(std::move(n));
  }
  return Cone(dim, std::move(normals), /*keep_redundant=*/true);
}

inline json params_to_json(const HirzebruchParams& p) {
  json j;
  j["a"] = wire::to_json(p.a());
  j["b"] = wire::to_json(p.b);
  j["c"] = wire::to_json(p.c);
  j["m"] = wire::to_json(p.m);
  return j;
}

inline HirzebruchParams params_from_json(const json& j) {
  const std::string what = "params";
  if (!j.is_object()) throw schema_error(what + ": expected an object");
  Int b = wire::int_from(wire::field(j, "b", what), what + ".b");
  Int m = wire::int_from(wire::field(j, "m", what), what + ".m");
  if (j.contains("c")) return HirzebruchParams(b, wire::int_from(j["c"], what + ".c"), m);
  if (j.contains("a"))
    return HirzebruchParams::from_abm(wire::rat_from(j["a"], what + ".a"), b, m);
  throw schema_error(what + ": need either 'a' or 'c'");
}

inline json face_to_json(const Face& f) {
  json j;
  j["dim"] = f.dim;
  j["facets"] = f.facets;
  j["rays"] = f.rays;
  return j;
}

inline json goodness_to_json(const GoodnessReport& r) {
  json j;
  j["verdict"] = r.verdict;
  j["primitive_ok"] = r.primitive_ok;
  j["minimal_ok"] = r.minimal_ok;
  j["faces_ok"] = r.faces_ok;
  j["failing_face"] = r.failing_face ? face_to_json(*r.failing_face) : json(nullptr);
  return j;
}

inline json delzant_to_json(const DelzantReport& r) {
  json j;
  j["delzant"] = r.delzant;
  json vs = json::array();
  for (const auto& v : r.vertices) {
    json e;
    e["vertex"] = v.vertex;
    e["simple_ok"] = v.simple_ok;
    e["unimodular_ok"] = v.unimodular_ok;
    vs.push_back(std::move(e));
  }
  j["vertices"] = std::move(vs);
  return j;
}

inline json witness_to_json(const EquivalenceWitness& w) {
  json j;
  j["sign"] = w.sign;
  j["transform"] = wire::to_json(w.transform);
  return j;
}

inline json chain_to_json(const ToriChain& c) {
  json j;
  j["a"] = wire::to_json(c.a);
  j["b"] = wire::to_json(c.b);
  j["k"] = wire::to_json(c.k);
  j["length_ell"] = wire::to_json(c.length_ell);
  json ms = json::array();
  for (const auto& p : c.members) ms.push_back(params_to_json(p));
  j["members"] = std::move(ms);
  return j;
}

inline json bundle_to_json(const BundleInvariant& b) {
  json j;
  j["a"] = wire::to_json(b.a);
  j["b"] = wire::to_json(b.b);
  j["c1_l1"] = wire::to_json(b.c1_l1);
  j["c1_l2"] = wire::to_json(b.c1_l2);
  j["iso_class"] = wire::to_json(b.iso_class);
  return j;
}

struct Report {
  std::string status;  // "ok" or "error"
  json result;         // null on error
  std::vector<std::string> diagnostics;
};

inline std::string emit_json(const Report& r) {
  json j;
  j["status"] = r.status;
  j["result"] = r.result;
  j["diagnostics"] = r.diagnostics;
  j["version"] = kSchemaVersion;
  return j.dump() + "\n";
}

}  // namespace toric::io
