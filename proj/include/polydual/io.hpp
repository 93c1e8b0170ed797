#pragma once

// JSON documents ("schema": "polydual/1") and OFF export.
//
// Numbers are exact: integers that fit in 64 bits are JSON integers, larger
// integers are decimal strings and non-integers are "p/q" strings. Floating
// point JSON numbers are rejected. Output is canonical: sorted keys, two-space
// indentation, trailing newline.

#include <cstdint>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "polydual/pipelines.hpp"

namespace polydual::io {

using nlohmann::json;

inline constexpr const char* kSchema = "polydual/1";

struct ReadOptions {
  bool lenient = false;  // accept unknown fields
};

inline json encode(const Rational& q) {
  if (is_integer(q)) {
    static const Rational lo(std::numeric_limits<std::int64_t>::min());
    static const Rational hi(std::numeric_limits<std::int64_t>::max());
    if (q >= lo && q <= hi) return numerator(q).convert_to<std::int64_t>();
  }
  return q.str();
}
inline json encode(const Integer& z) { return encode(Rational(z)); }
inline json encode(const Vec3& v) { return json::array({encode(v.x), encode(v.y), encode(v.z)}); }
inline json encode(const Vec2& v) { return json::array({encode(v.x), encode(v.y)}); }

inline Rational decode(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(Integer(j.get<std::uint64_t>()));
    return Rational(Integer(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    auto q = parse_rational(j.get<std::string>());
    if (!q) throw ParseError(where + ": '" + j.get<std::string>() + "' is not an exact number", "bad_number");
    return *q;
  }
  if (j.is_number_float()) throw ParseError(where + ": floating point numbers are not exact", "bad_number");
  throw ParseError(where + ": expected a number", "bad_number");
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what(), "malformed_json");
  }
}

namespace detail {

inline void check_keys(const json& obj, std::initializer_list<const char*> allowed, const ReadOptions& opt,
                       const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object", "bad_type");
  if (opt.lenient) return;
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) throw ParseError(where + ": unknown field '" + key + "'", "unknown_field");
  }
}

inline const json& require(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'", "missing_field");
  return *it;
}

inline VertexId decode_id(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + ": vertex ids are integers", "bad_id");
  return j.get<VertexId>();
}

struct RawVertices {
  std::vector<VertexId> ids;
  std::vector<std::vector<Rational>> coords;
};

inline RawVertices read_vertices(const json& arr, std::size_t dim, const ReadOptions& opt,
                                 std::initializer_list<const char*> extra = {}) {
  if (!arr.is_array()) throw ParseError("vertices: expected an array", "bad_type");
  RawVertices out;
  std::vector<const char*> allowed{"id", "coords"};
  allowed.insert(allowed.end(), extra.begin(), extra.end());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto& v = arr[k];
    const std::string where = "vertices[" + std::to_string(k) + "]";
    if (!v.is_object()) throw ParseError(where + ": expected an object", "bad_type");
    if (!opt.lenient)
      for (const auto& [key, value] : v.items())
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }) == allowed.end())
          throw ParseError(where + ": unknown field '" + key + "'", "unknown_field");
    out.ids.push_back(decode_id(require(v, "id", where), where + ".id"));
    const auto& c = require(v, "coords", where);
    if (!c.is_array() || c.size() != dim)
      throw ParseError(where + ".coords: expected " + std::to_string(dim) + " numbers", "bad_coords");
    std::vector<Rational> xs;
    for (std::size_t d = 0; d < dim; ++d) xs.push_back(decode(c[d], where + ".coords"));
    out.coords.push_back(std::move(xs));
  }
  return out;
}

inline std::vector<std::vector<VertexId>> read_faces(const json& arr) {
  if (!arr.is_array()) throw ParseError("faces: expected an array", "bad_type");
  std::vector<std::vector<VertexId>> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "faces[" + std::to_string(k) + "]";
    if (!arr[k].is_array()) throw ParseError(where + ": expected an array of vertex ids", "bad_type");
    std::vector<VertexId> f;
    for (const auto& id : arr[k]) f.push_back(decode_id(id, where));
    out.push_back(std::move(f));
  }
  return out;
}

inline Index index_of(const PlanarGraph& g, VertexId id, const std::string& where) {
  auto v = g.find(id);
  if (!v) throw ParseError(where + ": unknown vertex id " + std::to_string(id), "unknown_vertex");
  return *v;
}

inline Stress read_stress(const json& arr, const PlanarGraph& g, const ReadOptions& opt) {
  if (!arr.is_array()) throw ParseError("stress: expected an array", "bad_type");
  Stress s = Stress::zero(g);
  std::vector<bool> seen(g.num_edges(), false);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "stress[" + std::to_string(k) + "]";
    check_keys(arr[k], {"i", "j", "w"}, opt, where);
    const Index i = index_of(g, decode_id(require(arr[k], "i", where), where), where);
    const Index j = index_of(g, decode_id(require(arr[k], "j", where), where), where);
    const Rational w = decode(require(arr[k], "w", where), where + ".w");
    auto e = g.edge_index(i, j);
    if (!e) throw PreconditionError("not_an_edge", where + ": " + std::to_string(g.id(i)) + "-" + std::to_string(g.id(j)) + " is not an edge");
    if (seen[*e] && s.w[*e] != w) throw PreconditionError("conflicting_entry", where + ": edge listed twice with different values");
    seen[*e] = true;
    s.w[*e] = w;
  }
  return s;
}

inline CdvMatrix read_matrix(const json& obj, const PlanarGraph& g, const ReadOptions& opt) {
  check_keys(obj, {"diagonal", "entries"}, opt, "matrix");
  CdvMatrix M = CdvMatrix::zero(g);
  if (auto it = obj.find("diagonal"); it != obj.end()) {
    if (!it->is_array()) throw ParseError("matrix.diagonal: expected an array", "bad_type");
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "matrix.diagonal[" + std::to_string(k) + "]";
      check_keys((*it)[k], {"i", "v"}, opt, where);
      const Index i = index_of(g, decode_id(require((*it)[k], "i", where), where), where);
      M.diagonal[i] = decode(require((*it)[k], "v", where), where + ".v");
    }
  }
  if (auto it = obj.find("entries"); it != obj.end()) {
    if (!it->is_array()) throw ParseError("matrix.entries: expected an array", "bad_type");
    std::vector<bool> seen(g.num_edges(), false);
    for (std::size_t k = 0; k < it->size(); ++k) {
      const std::string where = "matrix.entries[" + std::to_string(k) + "]";
      check_keys((*it)[k], {"i", "j", "v"}, opt, where);
      const Index i = index_of(g, decode_id(require((*it)[k], "i", where), where), where);
      const Index j = index_of(g, decode_id(require((*it)[k], "j", where), where), where);
      const Rational v = decode(require((*it)[k], "v", where), where + ".v");
      if (i == j) {
        M.diagonal[i] = v;
        continue;
      }
      auto e = g.edge_index(i, j);
      if (!e) {
        if (v == 0) continue;
        throw PreconditionError("cdv_support", where + ": nonzero entry off the edge set");
      }
      if (seen[*e] && M.off[*e] != v) throw PreconditionError("cdv_asymmetric", where + ": M_ij differs from M_ji");
      seen[*e] = true;
      M.off[*e] = v;
    }
  }
  return M;
}

inline void check_header(const json& doc, const std::string& kind) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object", "bad_type");
  const auto& s = require(doc, "schema", "document");
  if (!s.is_string() || s.get<std::string>() != kSchema)
    throw ParseError("unsupported schema, expected " + std::string(kSchema), "bad_schema");
  const auto& k = require(doc, "kind", "document");
  if (!k.is_string() || k.get<std::string>() != kind)
    throw ParseError("expected a document of kind '" + kind + "'", "bad_kind");
}

inline std::optional<FaceIndex> read_boundary(const json& doc, const PlanarGraph& g) {
  auto it = doc.find("boundary_face");
  if (it == doc.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0 ||
      static_cast<std::size_t>(it->get<std::int64_t>()) >= g.num_faces())
    throw ParseError("boundary_face: expected a face index", "bad_boundary");
  return static_cast<FaceIndex>(it->get<std::int64_t>());
}

inline json vertices_json(const PlanarGraph& g, const std::vector<json>& coords) {
  json arr = json::array();
  for (Index v = 0; v < g.num_vertices(); ++v) arr.push_back({{"id", g.id(v)}, {"coords", coords[v]}});
  return arr;
}

inline json faces_json(const PlanarGraph& g) {
  json arr = json::array();
  for (FaceIndex f = 0; f < g.num_faces(); ++f) arr.push_back(g.face_ids(f));
  return arr;
}

}  // namespace detail

inline std::string document_kind(const json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object", "bad_type");
  auto it = doc.find("kind");
  if (it == doc.end() || !it->is_string()) throw ParseError("document has no kind", "missing_field");
  return it->get<std::string>();
}

// ---- 2d drawings ----

struct Embedding2DDoc {
  Embedding2D embedding;
  std::optional<Stress> stress;
  json flags = json::object();
};

inline Embedding2DDoc read_embedding2d(const json& doc, const ReadOptions& opt = {}) {
  detail::check_header(doc, "embedding2d");
  detail::check_keys(doc, {"schema", "kind", "vertices", "faces", "boundary_face", "stress", "flags", "report"}, opt, "document");
  auto raw = detail::read_vertices(detail::require(doc, "vertices", "document"), 2, opt);
  auto faces = detail::read_faces(detail::require(doc, "faces", "document"));
  Embedding2DDoc out;
  out.embedding.graph = PlanarGraph(raw.ids, faces);
  for (auto& c : raw.coords) out.embedding.p.push_back({c[0], c[1]});
  out.embedding.boundary_face = detail::read_boundary(doc, out.embedding.graph);
  if (auto it = doc.find("stress"); it != doc.end()) out.stress = detail::read_stress(*it, out.embedding.graph, opt);
  if (auto it = doc.find("flags"); it != doc.end()) out.flags = *it;
  return out;
}

inline json stress_json(const PlanarGraph& g, const Stress& s) {
  json arr = json::array();
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    arr.push_back({{"i", g.id(a)}, {"j", g.id(b)}, {"w", encode(s.w[e])}});
  }
  return arr;
}

inline json to_json(const Embedding2D& e, const std::optional<Stress>& stress = std::nullopt) {
  std::vector<json> coords;
  for (const auto& p : e.p) coords.push_back(encode(p));
  json doc = {{"schema", kSchema},
              {"kind", "embedding2d"},
              {"vertices", detail::vertices_json(e.graph, coords)},
              {"faces", detail::faces_json(e.graph)},
              {"flags", {{"integer", is_integer(e)}}}};
  if (e.boundary_face) doc["boundary_face"] = *e.boundary_face;
  if (stress) {
    doc["stress"] = stress_json(e.graph, *stress);
    doc["flags"]["integer_stress"] = is_integer(stress->w);
  }
  return doc;
}

// ---- 3d polytopes ----

struct PolytopeDoc {
  Embedding3D embedding;
  std::optional<CdvMatrix> matrix;
  std::optional<FaceIndex> boundary_face;
  json flags = json::object();
};

inline PolytopeDoc read_polytope(const json& doc, const ReadOptions& opt = {}) {
  detail::check_header(doc, "polytope");
  detail::check_keys(doc, {"schema", "kind", "vertices", "faces", "boundary_face", "matrix", "flags", "report"}, opt, "document");
  auto raw = detail::read_vertices(detail::require(doc, "vertices", "document"), 3, opt);
  auto faces = detail::read_faces(detail::require(doc, "faces", "document"));
  PolytopeDoc out;
  out.embedding.graph = PlanarGraph(raw.ids, faces);
  for (auto& c : raw.coords) out.embedding.u.push_back({c[0], c[1], c[2]});
  out.boundary_face = detail::read_boundary(doc, out.embedding.graph);
  if (auto it = doc.find("matrix"); it != doc.end()) out.matrix = detail::read_matrix(*it, out.embedding.graph, opt);
  if (auto it = doc.find("flags"); it != doc.end()) out.flags = *it;
  return out;
}

inline json matrix_json(const PlanarGraph& g, const CdvMatrix& M) {
  json diag = json::array(), entries = json::array();
  for (Index v = 0; v < g.num_vertices(); ++v) diag.push_back({{"i", g.id(v)}, {"v", encode(M.diagonal[v])}});
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto [a, b] = g.edges()[e];
    entries.push_back({{"i", g.id(a)}, {"j", g.id(b)}, {"v", encode(M.off[e])}});
  }
  return {{"diagonal", diag}, {"entries", entries}};
}

inline json to_json(const Embedding3D& e, const std::optional<CdvMatrix>& M = std::nullopt) {
  std::vector<json> coords;
  for (const auto& u : e.u) coords.push_back(encode(u));
  json doc = {{"schema", kSchema},
              {"kind", "polytope"},
              {"vertices", detail::vertices_json(e.graph, coords)},
              {"faces", detail::faces_json(e.graph)},
              {"flags", {{"integer", is_integer(e)}}}};
  if (M) doc["matrix"] = matrix_json(e.graph, *M);
  return doc;
}

// ---- dual realizations ----

struct DualDoc {
  Embedding3D primal;
  CdvMatrix matrix;
  DualRealization dual;
  std::vector<std::vector<VertexId>> dual_faces;  // as stored
  json report = json::object();
};

inline json checks_json(const std::vector<BoundCheck>& checks) {
  json arr = json::array();
  for (const auto& c : checks) arr.push_back({{"name", c.name}, {"holds", c.holds}, {"detail", c.detail}});
  return arr;
}

inline json report_json(const PipelineReport& r) {
  json rep = {{"grid_size", encode(r.grid)},
              {"n", r.u.graph.num_vertices()},
              {"max_degree", r.u.graph.max_degree()},
              {"checks", checks_json(r.checks)},
              {"phi_bound",
               {{"max_phi_sq", encode(r.lovasz_bound.max_phi_sq)},
                {"max_term_sq", encode(r.lovasz_bound.max_term_sq)},
                {"path_length", r.lovasz_bound.path_length},
                {"holds", r.lovasz_bound.holds}}}};
  if (r.stacking) {
    rep["stacking"] = {{"lambda", encode(r.stacking->lambda)},
                       {"stress_part", matrix_json(r.u.graph, r.stacking->M1)},
                       {"tetrahedron_part", matrix_json(r.u.graph, r.stacking->M2)}};
  }
  return rep;
}

inline json to_json(const Embedding3D& primal, const CdvMatrix& M, const DualRealization& d,
                    const json& report = json::object()) {
  const auto& g = primal.graph;
  json verts = json::array();
  for (FaceIndex f = 0; f < g.num_faces(); ++f)
    verts.push_back({{"id", f}, {"coords", encode(d.phi[f])}, {"primal_face", g.face_ids(f)}});
  const PlanarGraph dg = dual(g);
  json faces = json::array();
  for (FaceIndex f = 0; f < dg.num_faces(); ++f) faces.push_back(dg.face_ids(f));
  std::vector<json> coords;
  for (const auto& u : primal.u) coords.push_back(encode(u));
  json doc = {{"schema", kSchema},
              {"kind", "dual_realization"},
              {"vertices", verts},
              {"faces", faces},
              {"anchor", {{"face", g.face_ids(d.anchor_face)}, {"phi", encode(d.anchor_phi)}}},
              {"primal",
               {{"vertices", detail::vertices_json(g, coords)},
                {"faces", detail::faces_json(g)},
                {"matrix", matrix_json(g, M)}}},
              {"flags", {{"integer", std::all_of(d.phi.begin(), d.phi.end(), [](const Vec3& x) { return is_integer(x); })}}}};
  if (!report.empty()) doc["report"] = report;
  return doc;
}

inline DualDoc read_dual(const json& doc, const ReadOptions& opt = {}) {
  detail::check_header(doc, "dual_realization");
  detail::check_keys(doc, {"schema", "kind", "vertices", "faces", "anchor", "primal", "flags", "report"}, opt, "document");
  const auto& primal = detail::require(doc, "primal", "document");
  detail::check_keys(primal, {"vertices", "faces", "matrix"}, opt, "primal");
  auto praw = detail::read_vertices(detail::require(primal, "vertices", "primal"), 3, opt);
  auto pfaces = detail::read_faces(detail::require(primal, "faces", "primal"));
  DualDoc out;
  out.primal.graph = PlanarGraph(praw.ids, pfaces);
  for (auto& c : praw.coords) out.primal.u.push_back({c[0], c[1], c[2]});
  const auto& g = out.primal.graph;
  out.matrix = detail::read_matrix(detail::require(primal, "matrix", "primal"), g, opt);

  const auto& verts = detail::require(doc, "vertices", "document");
  auto raw = detail::read_vertices(verts, 3, opt, {"primal_face"});
  if (raw.ids.size() != g.num_faces()) throw PreconditionError("size_mismatch", "one dual vertex per primal face expected");
  out.dual.phi.assign(g.num_faces(), Vec3{});
  std::vector<bool> seen(g.num_faces(), false);
  for (std::size_t k = 0; k < raw.ids.size(); ++k) {
    const VertexId id = raw.ids[k];
    if (id < 0 || static_cast<std::size_t>(id) >= g.num_faces() || seen[id])
      throw PreconditionError("bad_dual_vertex", "dual vertex ids must be the primal face indices");
    seen[id] = true;
    out.dual.phi[id] = {raw.coords[k][0], raw.coords[k][1], raw.coords[k][2]};
    if (auto pf = verts[k].find("primal_face"); pf != verts[k].end()) {
      std::vector<VertexId> cycle;
      for (const auto& x : *pf) cycle.push_back(detail::decode_id(x, "primal_face"));
      if (g.find_face_by_ids(cycle) != std::optional<FaceIndex>(id))
        throw PreconditionError("bad_dual_vertex", "primal_face of dual vertex " + std::to_string(id) + " does not match");
    }
  }
  out.dual_faces = detail::read_faces(detail::require(doc, "faces", "document"));
  if (auto it = doc.find("anchor"); it != doc.end()) {
    detail::check_keys(*it, {"face", "phi"}, opt, "anchor");
    std::vector<VertexId> cycle;
    for (const auto& x : detail::require(*it, "face", "anchor")) cycle.push_back(detail::decode_id(x, "anchor.face"));
    auto f = g.find_face_by_ids(cycle);
    if (!f) throw PreconditionError("bad_anchor", "anchor face is not a primal face");
    out.dual.anchor_face = *f;
    const auto& phi = detail::require(*it, "phi", "anchor");
    if (!phi.is_array() || phi.size() != 3) throw ParseError("anchor.phi: expected 3 numbers", "bad_coords");
    out.dual.anchor_phi = {decode(phi[0], "anchor.phi"), decode(phi[1], "anchor.phi"), decode(phi[2], "anchor.phi")};
  }
  if (auto it = doc.find("report"); it != doc.end()) out.report = *it;
  return out;
}

// ---- OFF ----

struct OffData {
  std::vector<Vec3> points;
  std::vector<std::vector<Index>> faces;
};

namespace detail {

inline bool terminating(Integer d) {
  while (d % 2 == 0) d /= 2;
  while (d % 5 == 0) d /= 5;
  return d == 1;
}

inline std::string decimal(const Rational& q) {
  if (is_integer(q)) return q.str();
  const Integer d = denominator(q);
  unsigned k = 0;
  Integer ten = 1;
  while (ten % d != 0) {
    ten *= 10;
    ++k;
  }
  Integer n = numerator(q) * (ten / d);
  const bool neg = n < 0;
  if (neg) n = -n;
  std::string digits = n.str();
  if (digits.size() <= k) digits.insert(0, k + 1 - digits.size(), '0');
  digits.insert(digits.size() - k, ".");
  return (neg ? "-" : "") + digits;
}

inline std::optional<Rational> parse_decimal(const std::string& s) {
  std::string t = s;
  bool neg = false;
  if (!t.empty() && (t[0] == '-' || t[0] == '+')) {
    neg = t[0] == '-';
    t.erase(0, 1);
  }
  const auto dot = t.find('.');
  std::string ip = dot == std::string::npos ? t : t.substr(0, dot);
  std::string fp = dot == std::string::npos ? "" : t.substr(dot + 1);
  if (ip.empty() && fp.empty()) return std::nullopt;
  for (char c : ip + fp)
    if (c < '0' || c > '9') return std::nullopt;
  std::string digits = ip + fp;
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));  // no octal
  Integer num(digits);
  Rational q(num, pow(Integer(10), static_cast<unsigned>(fp.size())));
  return neg ? -q : q;
}

}  // namespace detail

// Integer coordinates are written as is and terminating fractions as exact
// decimals. Anything else is written as integers scaled by the common
// denominator, with the scale and the exact values in comment lines.
inline std::string write_off(const OffData& data) {
  std::ostringstream os;
  os << "OFF\n";
  bool all_int = true, all_term = true;
  Integer D = 1;
  for (const auto& x : data.points)
    for (int k = 0; k < 3; ++k) {
      all_int = all_int && is_integer(x[k]);
      all_term = all_term && detail::terminating(denominator(x[k]));
      D = lcm(D, denominator(x[k]));
    }
  const bool scaled = !all_int && !all_term;
  if (scaled) {
    os << "# scale " << D << "\n";
    for (Index v = 0; v < data.points.size(); ++v)
      os << "# v " << v << " " << data.points[v].x << " " << data.points[v].y << " " << data.points[v].z << "\n";
  }
  os << data.points.size() << " " << data.faces.size() << " 0\n";
  for (const auto& x : data.points) {
    for (int k = 0; k < 3; ++k) {
      if (k) os << " ";
      if (scaled) os << Rational(Rational(D) * x[k]).str();
      else os << detail::decimal(x[k]);
    }
    os << "\n";
  }
  for (const auto& f : data.faces) {
    os << f.size();
    for (Index v : f) os << " " << v;
    os << "\n";
  }
  return os.str();
}

inline OffData read_off(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> tokens;
  Integer scale = 1;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) {
      std::istringstream c(line.substr(hash + 1));
      std::string word, value;
      if (c >> word >> value && word == "scale") {
        auto q = parse_rational(value);
        if (!q || !is_integer(*q) || *q <= 0) throw ParseError("OFF: bad scale comment", "bad_off");
        scale = numerator(*q);
      }
      line.erase(hash);
    }
    std::istringstream ls(line);
    for (std::string t; ls >> t;) tokens.push_back(t);
  }
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= tokens.size()) throw ParseError("OFF: unexpected end of input", "bad_off");
    return tokens[pos++];
  };
  auto count = [&]() {
    const std::string& t = next();
    if (t.empty() || !std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ParseError("OFF: expected a count, got '" + t + "'", "bad_off");
    return static_cast<std::size_t>(std::stoull(t));
  };
  if (next() != "OFF") throw ParseError("OFF: missing header", "bad_off");
  const std::size_t nv = count(), nf = count();
  count();
  OffData out;
  for (std::size_t v = 0; v < nv; ++v) {
    Vec3 x;
    for (int k = 0; k < 3; ++k) {
      const std::string& t = next();
      auto q = detail::parse_decimal(t);
      if (!q) throw ParseError("OFF: bad coordinate '" + t + "'", "bad_off");
      x[k] = *q / Rational(scale);
    }
    out.points.push_back(x);
  }
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t k = count();
    std::vector<Index> face;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t v = count();
      if (v >= nv) throw ParseError("OFF: face index out of range", "bad_off");
      face.push_back(v);
    }
    out.faces.push_back(std::move(face));
  }
  return out;
}

// The dual polytope as OFF: one point per primal face, one polygon per
// primal vertex.
inline OffData off_of_dual(const PlanarGraph& primal, const DualRealization& d) {
  OffData out{d.phi, {}};
  for (Index v = 0; v < primal.num_vertices(); ++v) out.faces.push_back(primal.faces_around(v));
  return out;
}

}  // namespace polydual::io
