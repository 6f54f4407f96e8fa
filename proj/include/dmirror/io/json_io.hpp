#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dmirror/cone/gorenstein_cone.hpp"
#include "dmirror/lattice/embedding.hpp"

namespace dmirror {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Scalars. Integers that fit in 64 bits are JSON numbers, larger ones are
// decimal strings; rationals with denominator other than 1 are "n/d" strings.

inline Json to_json(const Integer& x) {
  if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
    return Json(static_cast<std::int64_t>(x));
  return Json(x.str());
}

inline Json to_json(const Rational& q) {
  if (boost::multiprecision::denominator(q) == 1) return to_json(Integer(boost::multiprecision::numerator(q)));
  return Json(boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str());
}

inline Json to_json(std::span<const Integer> v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

inline Json to_json(const IntVector& v) { return to_json(std::span<const Integer>(v)); }

inline Json to_json(const QPoint& p) {
  Json out = Json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) out.push_back(to_json(p.coord(i)));
  return out;
}

inline Json to_json(const std::vector<IntVector>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) out.push_back(to_json(r));
  return out;
}

inline Json to_json(const std::vector<QPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

namespace detail {

inline bool is_decimal(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

}  // namespace detail

/// Field path used in parse error messages, e.g. "cone.generators[3][1]".
struct JsonPath {
  std::string text;
  JsonPath operator/(const std::string& key) const { return {text.empty() ? key : text + "." + key}; }
  JsonPath operator[](std::size_t i) const { return {text + "[" + std::to_string(i) + "]"}; }
};

[[noreturn]] inline void parse_fail(const JsonPath& at, const std::string& what) {
  throw Error(ErrorKind::input, "field " + (at.text.empty() ? std::string("<root>") : at.text) + ": " + what);
}

inline Integer integer_from_json(const Json& j, const JsonPath& at) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
    return Integer(j.get<std::int64_t>());
  }
  if (j.is_string() && detail::is_decimal(j.get<std::string>())) {
    std::string s = j.get<std::string>();
    if (s[0] == '+') s.erase(0, 1);
    return Integer(s);
  }
  if (j.is_number_float()) parse_fail(at, "floating-point values are not accepted");
  parse_fail(at, "expected an integer");
}

inline Rational rational_from_json(const Json& j, const JsonPath& at) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash != std::string::npos) {
      std::string n = s.substr(0, slash), d = s.substr(slash + 1);
      if (!detail::is_decimal(n) || !detail::is_decimal(d)) parse_fail(at, "expected \"num/den\"");
      Integer den(d[0] == '+' ? d.substr(1) : d);
      if (den == 0) parse_fail(at, "zero denominator");
      return Rational(Integer(n[0] == '+' ? n.substr(1) : n), den);
    }
  }
  return Rational(integer_from_json(j, at));
}

inline IntVector vector_from_json(const Json& j, const JsonPath& at, std::optional<std::size_t> len = {}) {
  if (!j.is_array()) parse_fail(at, "expected an array of integers");
  if (len && j.size() != *len)
    parse_fail(at, "expected " + std::to_string(*len) + " entries, found " + std::to_string(j.size()));
  IntVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(integer_from_json(j[i], at[i]));
  return out;
}

inline std::vector<IntVector> rows_from_json(const Json& j, const JsonPath& at, std::optional<std::size_t> len = {}) {
  if (!j.is_array()) parse_fail(at, "expected an array of vectors");
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(vector_from_json(j[i], at[i], len));
  return out;
}

inline const Json& field(const Json& obj, const std::string& key, const JsonPath& at) {
  if (!obj.is_object()) parse_fail(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(at / key, "missing");
  return *it;
}

inline void reject_unknown(const Json& obj, const std::vector<std::string>& known, const JsonPath& at) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) parse_fail(at / it.key(), "unknown field");
}

/// Parses text, reporting syntax errors with line and column.
inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorKind::input, "JSON syntax error at line " + std::to_string(line) + ", column " +
                                      std::to_string(col) + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Instance files.

struct LatticeSpec {
  std::size_t ambient_rank = 0;
  std::string kind = "full";  // full, kernel or quotient
  std::vector<IntVector> rows;

  LatticeEmbedding embedding() const {
    if (kind == "full") return LatticeEmbedding::full(ambient_rank);
    IntMatrix m = rows.empty() ? IntMatrix(0, ambient_rank) : IntMatrix::from_rows(rows);
    if (kind == "kernel") return rows.empty() ? LatticeEmbedding::full(ambient_rank) : LatticeEmbedding::kernel(m);
    return rows.empty() ? LatticeEmbedding::full(ambient_rank) : LatticeEmbedding::quotient(m);
  }
};

struct ConeSpec {
  std::vector<IntVector> generators;  // ambient coordinates
  std::optional<IntVector> deg;       // ambient coordinates
  std::optional<IntVector> deg_dual;  // ambient functional
};

struct CoefficientSpec {
  std::string field = "prime";  // prime or rational
  std::optional<std::uint64_t> prime;
  std::optional<std::uint64_t> seed;
  std::map<IntVector, Rational> values;  // keyed by ambient slice-point coordinates
};

struct Instance {
  LatticeSpec lattice;
  std::optional<std::vector<std::vector<IntVector>>> nef_partition;  // vertex lists
  std::optional<ConeSpec> cone;
  std::optional<CoefficientSpec> coefficients;
};

inline std::string point_key(const IntVector& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].str();
  return out;
}

inline IntVector point_from_key(const std::string& key, const JsonPath& at) {
  IntVector out;
  std::size_t start = 0;
  for (;;) {
    auto comma = key.find(',', start);
    std::string part = key.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    if (!detail::is_decimal(part)) parse_fail(at, "coefficient key must be comma-separated integers");
    out.push_back(Integer(part[0] == '+' ? part.substr(1) : part));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

inline Json to_json(const Instance& in) {
  Json j = Json::object();
  Json lat = {{"ambient_rank", in.lattice.ambient_rank}, {"kind", in.lattice.kind}};
  if (in.lattice.kind != "full") lat["rows"] = to_json(in.lattice.rows);
  j["lattice"] = lat;
  if (in.nef_partition) {
    Json parts = Json::array();
    for (const auto& p : *in.nef_partition) parts.push_back(to_json(p));
    j["nef_partition"] = parts;
  }
  if (in.cone) {
    Json c = {{"generators", to_json(in.cone->generators)}};
    if (in.cone->deg) c["deg"] = to_json(*in.cone->deg);
    if (in.cone->deg_dual) c["deg_dual"] = to_json(*in.cone->deg_dual);
    j["cone"] = c;
  }
  if (in.coefficients) {
    Json c = {{"field", in.coefficients->field}};
    if (in.coefficients->prime) c["prime"] = *in.coefficients->prime;
    if (in.coefficients->seed) c["seed"] = *in.coefficients->seed;
    if (!in.coefficients->values.empty()) {
      Json v = Json::object();
      for (const auto& [pt, q] : in.coefficients->values) v[point_key(pt)] = to_json(q);
      c["values"] = v;
    }
    j["coefficients"] = c;
  }
  return j;
}

inline std::uint64_t small_unsigned(const Json& j, const JsonPath& at) {
  Integer x = integer_from_json(j, at);
  if (x < 0 || x > std::numeric_limits<std::int64_t>::max()) parse_fail(at, "value out of range");
  return static_cast<std::uint64_t>(x);
}

inline Instance instance_from_json(const Json& j) {
  const JsonPath root;
  if (!j.is_object()) parse_fail(root, "expected an object");
  reject_unknown(j, {"lattice", "nef_partition", "cone", "coefficients"}, root);
  Instance in;
  const Json& lat = field(j, "lattice", root);
  const JsonPath lp = root / "lattice";
  reject_unknown(lat, {"ambient_rank", "kind", "rows"}, lp);
  in.lattice.ambient_rank = static_cast<std::size_t>(small_unsigned(field(lat, "ambient_rank", lp), lp / "ambient_rank"));
  if (in.lattice.ambient_rank == 0 || in.lattice.ambient_rank > 64) parse_fail(lp / "ambient_rank", "must be in 1..64");
  if (lat.contains("kind")) {
    if (!lat["kind"].is_string()) parse_fail(lp / "kind", "expected a string");
    in.lattice.kind = lat["kind"].get<std::string>();
  }
  if (in.lattice.kind != "full" && in.lattice.kind != "kernel" && in.lattice.kind != "quotient")
    parse_fail(lp / "kind", "must be full, kernel or quotient");
  if (lat.contains("rows")) in.lattice.rows = rows_from_json(lat["rows"], lp / "rows", in.lattice.ambient_rank);
  if (in.lattice.kind == "full" && !in.lattice.rows.empty()) parse_fail(lp / "rows", "a full lattice takes no rows");
  const std::size_t n = in.lattice.ambient_rank;

  if (j.contains("nef_partition") == j.contains("cone"))
    parse_fail(root, "exactly one of nef_partition and cone is required");
  if (j.contains("nef_partition")) {
    const Json& parts = j["nef_partition"];
    const JsonPath pp = root / "nef_partition";
    if (!parts.is_array() || parts.empty()) parse_fail(pp, "expected a nonempty list of vertex lists");
    in.nef_partition.emplace();
    for (std::size_t i = 0; i < parts.size(); ++i) {
      auto verts = rows_from_json(parts[i], pp[i], n);
      if (verts.empty()) parse_fail(pp[i], "part has no vertices");
      in.nef_partition->push_back(std::move(verts));
    }
  } else {
    const Json& c = j["cone"];
    const JsonPath cp = root / "cone";
    reject_unknown(c, {"generators", "deg", "deg_dual"}, cp);
    ConeSpec cs;
    cs.generators = rows_from_json(field(c, "generators", cp), cp / "generators", n);
    if (cs.generators.empty()) parse_fail(cp / "generators", "no generators");
    if (c.contains("deg")) cs.deg = vector_from_json(c["deg"], cp / "deg", n);
    if (c.contains("deg_dual")) cs.deg_dual = vector_from_json(c["deg_dual"], cp / "deg_dual", n);
    in.cone = std::move(cs);
  }
  if (j.contains("coefficients")) {
    const Json& c = j["coefficients"];
    const JsonPath cp = root / "coefficients";
    reject_unknown(c, {"field", "prime", "seed", "values"}, cp);
    CoefficientSpec cs;
    if (c.contains("field")) {
      if (!c["field"].is_string()) parse_fail(cp / "field", "expected a string");
      cs.field = c["field"].get<std::string>();
    }
    if (cs.field != "prime" && cs.field != "rational") parse_fail(cp / "field", "must be prime or rational");
    if (c.contains("prime")) {
      if (cs.field != "prime") parse_fail(cp / "prime", "only valid for the prime field");
      cs.prime = small_unsigned(c["prime"], cp / "prime");
    }
    if (c.contains("seed")) cs.seed = small_unsigned(c["seed"], cp / "seed");
    if (c.contains("values")) {
      const Json& v = c["values"];
      if (!v.is_object()) parse_fail(cp / "values", "expected an object keyed by point coordinates");
      for (auto it = v.begin(); it != v.end(); ++it) {
        const JsonPath at = cp / "values" / it.key();
        IntVector pt = point_from_key(it.key(), at);
        if (pt.size() != n) parse_fail(at, "point has the wrong number of coordinates");
        Rational q = rational_from_json(it.value(), at);
        if (cs.field == "prime" && boost::multiprecision::denominator(q) != 1)
          parse_fail(at, "prime-field coefficients must be integers");
        cs.values[pt] = q;
      }
    }
    in.coefficients = std::move(cs);
  }
  return in;
}

inline Instance parse_instance(const std::string& text) { return instance_from_json(parse_json_text(text)); }

/// Canonical text: keys sorted, no whitespace, trailing LF.
inline std::string canonical_text(const Json& j) { return j.dump() + "\n"; }

// ---------------------------------------------------------------------------
// From instances to library values.

inline NefPartition instance_nef_partition(const Instance& in) {
  require(in.nef_partition.has_value(), ErrorKind::input, "instance has no nef_partition");
  LatticeEmbedding lat = in.lattice.embedding();
  std::vector<Polytope> parts;
  for (const auto& verts : *in.nef_partition) {
    std::vector<IntVector> coords;
    for (const auto& v : verts) coords.push_back(lat.to_coords(v));
    parts.push_back(Polytope::hull(lat.rank(), coords));
  }
  return validate_nef_partition(std::move(parts));
}

/// The cone pair of a cone instance. Missing degree elements are solved for
/// from the height-one conditions on both sides.
inline GorensteinConePair instance_cone(const Instance& in) {
  require(in.cone.has_value(), ErrorKind::input, "instance has no cone");
  LatticeEmbedding lat = in.lattice.embedding();
  const std::size_t n = lat.rank();
  std::vector<IntVector> gens;
  for (const auto& g : in.cone->generators) gens.push_back(lat.to_coords(g));
  IntVector deg_dual;
  if (in.cone->deg_dual) {
    deg_dual = lat.dual_coords(*in.cone->deg_dual);
  } else {
    auto sol = solve_linear_integer(IntMatrix::from_rows(gens), IntVector(gens.size(), 1));
    require(sol.has_value(), ErrorKind::input, "cone: generators do not lie on a lattice hyperplane at height one");
    deg_dual = *sol;
  }
  IntVector deg;
  if (in.cone->deg) {
    deg = lat.to_coords(*in.cone->deg);
  } else {
    std::vector<IntVector> dual = cone_facets(n, gens);
    auto sol = solve_linear_integer(IntMatrix::from_rows(dual), IntVector(dual.size(), 1));
    require(sol.has_value(), ErrorKind::not_reflexive, "cone: the dual cone is not Gorenstein");
    deg = *sol;
  }
  return cone_from_generators(lat, std::move(gens), std::move(deg), std::move(deg_dual));
}

}  // namespace dmirror
