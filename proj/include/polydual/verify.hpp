#pragma once

// Runs every applicable invariant on a JSON document of any kind.

#include <string>
#include <vector>

#include "polydual/io.hpp"

namespace polydual {

enum class CheckStatus { pass, fail, info };

struct CheckRow {
  std::string name;
  CheckStatus status;
  std::string detail;
};

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "PASS";
    case CheckStatus::fail: return "FAIL";
    default: return "INFO";
  }
}

inline bool all_passed(const std::vector<CheckRow>& rows) {
  for (const auto& r : rows)
    if (r.status == CheckStatus::fail) return false;
  return true;
}

namespace detail {

inline CheckRow row(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok ? CheckStatus::pass : CheckStatus::fail, std::move(detail)};
}

template <class V>
std::string residual_list(const PlanarGraph& g, const std::vector<std::pair<Index, V>>& res) {
  if (res.empty()) return "all residuals zero";
  std::string s = "residual at vertices";
  for (std::size_t k = 0; k < res.size(); ++k) s += (k ? ", " : " ") + std::to_string(g.id(res[k].first));
  return s;
}

inline bool same_cycle(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  if (a.size() != b.size() || a.empty()) return false;
  auto it = std::find(b.begin(), b.end(), a[0]);
  if (it == b.end()) return false;
  const std::size_t off = static_cast<std::size_t>(it - b.begin());
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] != b[(off + k) % b.size()]) return false;
  return true;
}

inline CheckRow graph_row(const PlanarGraph& g, const std::string& name) {
  const auto v = validate(g);
  return row(name, v.ok(), v.ok() ? std::to_string(g.num_vertices()) + " vertices, " +
                                        std::to_string(g.num_faces()) + " faces"
                                  : v.violations.front().code + ": " + v.violations.front().message);
}

inline void cdv_rows(const Embedding3D& u, const CdvMatrix& M, std::vector<CheckRow>& rows) {
  const auto c = check_cdv(u, M);
  rows.push_back(row("cdv_equilibrium", c.ok, residual_list(u.graph, c.residuals)));
  rows.push_back(row("cdv_positive", c.positive, c.positive ? "all edge entries > 0" : "some edge entry <= 0"));
}

}  // namespace detail

inline std::vector<CheckRow> verify_document(const io::json& doc, const io::ReadOptions& opt = {}) {
  using detail::row;
  std::vector<CheckRow> rows;
  const std::string kind = io::document_kind(doc);
  if (kind == "embedding2d") {
    const auto d = io::read_embedding2d(doc, opt);
    const auto& e = d.embedding;
    rows.push_back(detail::graph_row(e.graph, "graph_valid"));
    if (rows.back().status != CheckStatus::pass) return rows;
    rows.push_back(row("nondegenerate", is_nondegenerate(e)));
    rows.push_back({"integer", is_integer(e) ? CheckStatus::pass : CheckStatus::info, ""});
    if (d.stress) {
      const auto eq = check_equilibrium(e, *d.stress);
      rows.push_back(row("stress_equilibrium", eq.ok, detail::residual_list(e.graph, eq.residuals)));
      if (e.boundary_face) {
        const auto& bf = e.graph.face(*e.boundary_face);
        bool positive = true;
        for (std::size_t k = 0; k < e.graph.num_edges(); ++k) {
          const auto [a, b] = e.graph.edges()[k];
          const bool on = std::find(bf.begin(), bf.end(), a) != bf.end() && std::find(bf.begin(), bf.end(), b) != bf.end();
          if (!on && d.stress->w[k] <= 0) positive = false;
        }
        rows.push_back({"stress_positive_interior", positive ? CheckStatus::pass : CheckStatus::info, ""});
      }
    }
  } else if (kind == "polytope") {
    const auto d = io::read_polytope(doc, opt);
    const auto& u = d.embedding;
    rows.push_back(detail::graph_row(u.graph, "graph_valid"));
    if (rows.back().status != CheckStatus::pass) return rows;
    rows.push_back(row("strictly_convex", is_strictly_convex(u)));
    rows.push_back({"origin_interior", origin_interior(u) ? CheckStatus::pass : CheckStatus::info, ""});
    rows.push_back({"simplicial", u.graph.is_simplicial() ? CheckStatus::pass : CheckStatus::info, ""});
    rows.push_back({"integer", is_integer(u) ? CheckStatus::pass : CheckStatus::info, ""});
    if (d.matrix) {
      detail::cdv_rows(u, *d.matrix, rows);
      const auto cc = check_cone_convex(u);
      rows.push_back(row("cone_convex", cc.ok(), cc.ok() ? "" : cc.violations.front().message));
    }
  } else if (kind == "dual_realization") {
    const auto d = io::read_dual(doc, opt);
    const auto& g = d.primal.graph;
    rows.push_back(detail::graph_row(g, "primal_graph_valid"));
    if (rows.back().status != CheckStatus::pass) return rows;
    detail::cdv_rows(d.primal, d.matrix, rows);
    const auto cc = check_cone_convex(d.primal);
    rows.push_back(row("cone_convex", cc.ok(), cc.ok() ? "" : cc.violations.front().message));
    {
      const PlanarGraph dg = dual(g);
      bool match = d.dual_faces.size() == dg.num_faces();
      for (FaceIndex f = 0; match && f < dg.num_faces(); ++f) match = detail::same_cycle(d.dual_faces[f], dg.face_ids(f));
      rows.push_back(row("dual_faces", match, "faces are the cycles around the primal vertices"));
    }
    rows.push_back(row("anchor", d.dual.phi[d.dual.anchor_face] == d.dual.anchor_phi));
    const auto conv = verify_dual_polytope(d.primal, d.dual, &d.matrix);
    rows.push_back(row("dual_polytope", conv.ok(), conv.ok() ? std::to_string(conv.faces_checked) + " faces convex"
                                                             : conv.violations.front().code + ": " + conv.violations.front().message));
    const auto b = bound_report(d.primal, d.matrix, d.dual);
    rows.push_back(row("phi_bound", b.holds, "max|phi - phi_anchor|^2 = " + b.max_phi_sq.str()));
    rows.push_back({"grid_size", CheckStatus::info, grid_size(d.dual.phi).str()});
  } else {
    throw ParseError("unknown document kind '" + kind + "'", "bad_kind");
  }
  return rows;
}

}  // namespace polydual
