#pragma once

// JSON documents for polyhedra, verdicts and cut sets.
//
//   {"name": "...",
//    "hrep": {"A": [[-1,0],[0,-1],[1,1]], "b": [0,0,2]},
//    "vrep": {"vertices": [["0","0"],["1/2","1"]], "rays": [], "lines": []},
//    "ambient_dim": 2,
//    "metadata": {...}}
//
// Rationals are strings "p/q" or "p" (plain JSON integers are accepted too);
// integers beyond 64 bits are written as strings.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "polyrank/arith.hpp"
#include "polyrank/closure.hpp"
#include "polyrank/polyhedron.hpp"
#include "polyrank/reverse_rank.hpp"

namespace polyrank::io {

using Json = nlohmann::json;

struct PolyhedronDocument {
  std::string name;
  Polyhedron polyhedron;
  Json metadata = Json::object();
};

namespace detail {

[[noreturn]] inline void bad(const std::string& field, const std::string& what) {
  fail(ErrorKind::ParseError, field + ": " + what);
}

inline bool is_integer_text(const std::string& s) {
  std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

inline Integer parse_integer_text(const std::string& s, const std::string& field) {
  if (!is_integer_text(s)) bad(field, "not an integer: \"" + s + "\"");
  return Integer(s[0] == '+' ? s.substr(1) : s);
}

inline Integer integer_of(const Json& j, const std::string& field) {
  if (j.is_number_float()) fail(ErrorKind::IrrationalData, field + ": floating-point value " + j.dump());
  if (j.is_number_integer()) return j.is_number_unsigned() ? Integer(std::to_string(j.get<unsigned long long>()))
                                                           : Integer(std::to_string(j.get<long long>()));
  if (j.is_string()) return parse_integer_text(j.get<std::string>(), field);
  bad(field, "expected an integer, got " + j.dump());
}

inline Rational rational_of(const Json& j, const std::string& field) {
  if (j.is_number_float()) fail(ErrorKind::IrrationalData, field + ": floating-point value " + j.dump());
  if (j.is_number_integer()) return Rational(integer_of(j, field));
  if (!j.is_string()) bad(field, "expected a rational string, got " + j.dump());
  const std::string s = j.get<std::string>();
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_integer_text(s, field));
  const Integer num = parse_integer_text(s.substr(0, slash), field);
  const std::string den_text = s.substr(slash + 1);
  if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+')) bad(field, "signed denominator in \"" + s + "\"");
  const Integer den = parse_integer_text(den_text, field);
  if (den == 0) bad(field, "zero denominator in \"" + s + "\"");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline const Json& array_at(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array");
  return j;
}

inline IntVector int_vector(const Json& j, const std::string& field) {
  IntVector v;
  for (std::size_t i = 0; i < array_at(j, field).size(); ++i)
    v.push_back(integer_of(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

inline RatVector rat_vector(const Json& j, const std::string& field) {
  RatVector v;
  for (std::size_t i = 0; i < array_at(j, field).size(); ++i)
    v.push_back(rational_of(j[i], field + "[" + std::to_string(i) + "]"));
  return v;
}

template <class V, class F>
std::vector<V> rows_of(const Json& j, const std::string& field, std::size_t n, F&& parse) {
  std::vector<V> out;
  for (std::size_t i = 0; i < array_at(j, field).size(); ++i) {
    const std::string name = field + "[" + std::to_string(i) + "]";
    V row = parse(j[i], name);
    if (row.size() != n) bad(name, "expected " + std::to_string(n) + " entries, got " + std::to_string(row.size()));
    out.push_back(std::move(row));
  }
  return out;
}

inline std::size_t first_row_length(const Json& j) {
  return (j.is_array() && !j.empty() && j[0].is_array()) ? j[0].size() : 0;
}

inline Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return Json(x.get_si());
  return Json(x.get_str());
}

inline Json rational_json(const Rational& q) { return Json(q.get_str()); }

inline Json int_vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

inline Json rat_vector_json(const RatVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(rational_json(x));
  return out;
}

inline Json int_matrix_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(int_vector_json(m.row(i)));
  return out;
}

}  // namespace detail

inline PolyhedronDocument parse_polyhedron(const Json& doc) {
  using namespace detail;
  if (!doc.is_object()) bad("document", "expected a JSON object");
  PolyhedronDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) bad("name", "expected a string");
    out.name = doc["name"].get<std::string>();
  }
  if (doc.contains("metadata")) out.metadata = doc["metadata"];
  const bool has_h = doc.contains("hrep"), has_v = doc.contains("vrep");
  if (!has_h && !has_v) bad("document", "needs \"hrep\" or \"vrep\"");

  std::size_t n = 0;
  if (doc.contains("ambient_dim")) {
    const Integer d = integer_of(doc["ambient_dim"], "ambient_dim");
    if (d < 0) bad("ambient_dim", "negative dimension");
    n = d.get_ui();
  } else if (has_h) {
    n = first_row_length(doc["hrep"].value("A", Json::array()));
  } else {
    const Json& v = doc["vrep"];
    for (const char* key : {"vertices", "rays", "lines"})
      if (v.contains(key)) n = std::max(n, first_row_length(v[key]));
  }

  std::optional<Polyhedron> from_h, from_v;
  if (has_h) {
    const Json& h = doc["hrep"];
    if (!h.is_object() || !h.contains("A") || !h.contains("b")) bad("hrep", "needs \"A\" and \"b\"");
    std::vector<IntVector> rows = rows_of<IntVector>(h["A"], "hrep.A", n, int_vector);
    IntVector b = int_vector(h["b"], "hrep.b");
    if (b.size() != rows.size()) bad("hrep.b", "length differs from the number of rows of A");
    std::vector<Constraint> cons;
    for (std::size_t i = 0; i < rows.size(); ++i) cons.push_back({rows[i], b[i]});
    from_h = Polyhedron::from_constraints(n, cons);
  }
  if (has_v) {
    const Json& v = doc["vrep"];
    if (!v.is_object()) bad("vrep", "expected an object");
    VRep rep;
    if (v.contains("vertices")) rep.vertices = rows_of<RatVector>(v["vertices"], "vrep.vertices", n, rat_vector);
    if (v.contains("rays")) rep.rays = rows_of<IntVector>(v["rays"], "vrep.rays", n, int_vector);
    if (v.contains("lines")) rep.lines = rows_of<IntVector>(v["lines"], "vrep.lines", n, int_vector);
    for (const auto* group : {&rep.rays, &rep.lines})
      for (const auto& r : *group)
        if (is_zero(r)) bad("vrep", "zero ray or line");
    from_v = Polyhedron::from_vrep(n, rep);
  }
  if (from_h && from_v && !(*from_h == *from_v)) bad("document", "hrep and vrep describe different sets");
  out.polyhedron = from_h ? *from_h : *from_v;
  return out;
}

inline PolyhedronDocument parse_polyhedron_text(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::ParseError, std::string("malformed JSON: ") + e.what());
  }
  return parse_polyhedron(doc);
}

inline PolyhedronDocument read_polyhedron(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_polyhedron_text(buf.str());
}

inline Json emit_polyhedron(const Polyhedron& p, const std::string& name = "", const Json& metadata = Json::object()) {
  using namespace detail;
  Json doc = Json::object();
  doc["name"] = name;
  doc["ambient_dim"] = p.ambient_dim();
  HRep h = p.hrep();
  doc["hrep"] = {{"A", int_matrix_json(h.A)}, {"b", int_vector_json(h.b)}};
  Json v = Json::object();
  v["vertices"] = Json::array();
  v["rays"] = Json::array();
  v["lines"] = Json::array();
  for (const auto& x : p.vertices()) v["vertices"].push_back(rat_vector_json(x));
  for (const auto& r : p.rays()) v["rays"].push_back(int_vector_json(r));
  for (const auto& l : p.lines()) v["lines"].push_back(int_vector_json(l));
  doc["vrep"] = v;
  doc["metadata"] = metadata;
  return doc;
}

inline Json emit_cuts(const CutSet& cuts) {
  Json out = Json::object();
  out["ambient_dim"] = cuts.ambient_dim;
  out["cuts"] = Json::array();
  for (const auto& c : cuts.cuts)
    out["cuts"].push_back({{"c", detail::int_vector_json(c.normal)}, {"rhs", detail::integer_json(c.rhs)},
                           {"provenance", c.provenance}});
  return out;
}

inline Json emit_verdict(const RcgrVerdict& v) {
  using namespace detail;
  Json out = Json::object();
  out["outcome"] = to_string(v.outcome);
  out["reason"] = to_string(v.reason);
  out["rule"] = v.rule;
  out["witness"] = int_vector_json(v.witness);
  out["interior_point"] = int_vector_json(v.interior_point);
  out["covering_level"] = v.covering_level;
  out["trace"] = Json::array();
  for (const auto& s : v.trace) out["trace"].push_back({{"kind", s.kind}, {"U", int_matrix_json(s.U)}, {"kept", s.kept}});
  out["last_k"] = v.last_k;
  out["last_norm"] = v.last_norm;
  out["diagnostics"] = v.diagnostics;
  return out;
}

inline RcgrVerdict parse_verdict(const Json& j) {
  using namespace detail;
  if (!j.is_object()) bad("verdict", "expected a JSON object");
  RcgrVerdict v;
  const std::string outcome = j.value("outcome", "");
  if (outcome == "FINITE") v.outcome = Outcome::Finite;
  else if (outcome == "INFINITE") v.outcome = Outcome::Infinite;
  else if (outcome == "CAP_EXCEEDED") v.outcome = Outcome::CapExceeded;
  else bad("outcome", "unknown value \"" + outcome + "\"");
  const std::string reason = j.value("reason", "none");
  if (reason == "none") v.reason = FiniteReason::None;
  else if (reason == "empty") v.reason = FiniteReason::Empty;
  else if (reason == "interior_point") v.reason = FiniteReason::InteriorPoint;
  else if (reason == "covered") v.reason = FiniteReason::Covered;
  else bad("reason", "unknown value \"" + reason + "\"");
  v.rule = j.value("rule", "");
  if (j.contains("witness")) v.witness = int_vector(j["witness"], "witness");
  if (j.contains("interior_point")) v.interior_point = int_vector(j["interior_point"], "interior_point");
  if (j.contains("covering_level")) v.covering_level = integer_of(j["covering_level"], "covering_level").get_si();
  if (j.contains("trace")) {
    for (std::size_t i = 0; i < array_at(j["trace"], "trace").size(); ++i) {
      const Json& s = j["trace"][i];
      const std::string field = "trace[" + std::to_string(i) + "]";
      ReductionStep step;
      step.kind = s.value("kind", "");
      const std::size_t n = first_row_length(s.value("U", Json::array()));
      step.U = IntMatrix::from_rows(rows_of<IntVector>(s["U"], field + ".U", n, int_vector), n);
      step.kept = integer_of(s.value("kept", Json(0)), field + ".kept").get_ui();
      v.trace.push_back(std::move(step));
    }
  }
  v.last_k = j.value("last_k", std::size_t{0});
  v.last_norm = j.value("last_norm", std::size_t{0});
  v.diagnostics = j.value("diagnostics", "");
  return v;
}

}  // namespace polyrank::io
