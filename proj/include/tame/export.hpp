#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tame/analyzer.hpp"
#include "tame/coset_graph.hpp"
#include "tame/decomposition.hpp"
#include "tame/two_complex.hpp"

namespace tame {

using Json = nlohmann::ordered_json;

inline std::string generator_name(std::vector<std::string> const& names,
                                  int gen) {
  auto const g = static_cast<std::size_t>(gen);
  return g < names.size() ? names[g] : "x" + std::to_string(gen);
}

inline Json certified_radius_json(CosetGraph const& g) {
  return g.exact ? Json("exact") : Json(g.certified_radius);
}

/// {vertices:[{id,depth}], basepoint, edges:[[v,label,w]], certified_radius}
/// with one edge per geometric edge in its positive orientation.
inline Json graph_json(CosetGraph const& g) {
  Json j;
  j["vertices"] = Json::array();
  for (VertexId v = 0; v < g.size(); ++v) {
    j["vertices"].push_back({{"id", v}, {"depth", g.depth[v]}});
  }
  j["basepoint"] = g.basepoint();
  j["edges"] = Json::array();
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t gen = 0; gen < g.rank; ++gen) {
      VertexId const w = g.table[v][2 * gen];
      if (w != kNoVertex) {
        j["edges"].push_back(Json::array(
            {v, generator_name(g.generator_names, static_cast<int>(gen)), w}));
      }
    }
  }
  j["certified_radius"] = certified_radius_json(g);
  return j;
}

inline std::string graph_dot(CosetGraph const& g,
                             std::optional<std::size_t> faces = std::nullopt) {
  std::ostringstream out;
  out << "digraph coset_graph {\n";
  if (faces) {
    out << "  label=\"faces: " << *faces << "\";\n";
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    out << "  n" << v << " [label=\"" << v << " (d=" << g.depth[v] << ")\"";
    if (v == g.basepoint()) {
      out << ", shape=doublecircle";
    }
    out << "];\n";
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t gen = 0; gen < g.rank; ++gen) {
      VertexId const w = g.table[v][2 * gen];
      if (w != kNoVertex) {
        out << "  n" << v << " -> n" << w << " [label=\""
            << generator_name(g.generator_names, static_cast<int>(gen))
            << "\"];\n";
      }
    }
  }
  out << "}\n";
  return out.str();
}

inline Json complex_json(TwoComplex const& c) {
  Json j;
  j["generators"] = c.generator_names;
  j["relators"] = Json::array();
  for (Word const& r : c.relators) {
    j["relators"].push_back(format_word(r, c.generator_names));
  }
  Json cells;
  cells["vertices"] = Json::array();
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    cells["vertices"].push_back({{"id", v}, {"depth", c.depth[v]}});
  }
  cells["edges"] = Json::array();
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    auto const& e = c.edges[i];
    cells["edges"].push_back({{"id", i},
                              {"tail", e.tail},
                              {"label", generator_name(c.generator_names, e.gen)},
                              {"head", e.head}});
  }
  cells["faces"] = Json::array();
  for (std::size_t i = 0; i < c.face_count(); ++i) {
    Face const& f = c.faces[i];
    Json edges = Json::array();
    for (OrientedEdge e : f.boundary) {
      edges.push_back(e.sign > 0 ? static_cast<std::int64_t>(e.edge) + 1
                                 : -static_cast<std::int64_t>(e.edge) - 1);
    }
    cells["faces"].push_back(
        {{"id", i},
         {"base", f.base},
         {"relator", f.relator},
         {"boundary", format_word(c.boundary_word(f), c.generator_names)},
         {"edges", edges}});
  }
  j["cells"] = cells;
  j["counts"] = {{"vertices", c.vertex_count()},
                 {"edges", c.edge_count()},
                 {"faces", c.face_count()}};
  if (c.basepoint) {
    j["basepoint"] = *c.basepoint;
  } else {
    j["basepoint"] = nullptr;
  }
  if (c.truncation) {
    j["truncation"] = {{"radius", c.truncation->radius},
                       {"frontier", c.truncation->frontier},
                       {"skipped_traces", c.skipped_traces}};
  } else {
    j["truncation"] = nullptr;
  }
  return j;
}

inline Json sweep_json(SweepReport const& s, Verdict const& v,
                       std::string const& case_name,
                       std::optional<bool> agreement) {
  Json j;
  j["case"] = case_name;
  j["removal"] = {{"center", s.removal.center}, {"c", s.removal.radius}};
  j["radii"] = s.radii;
  j["families"] = Json::array();
  for (Family const& f : s.families) {
    Json touches = Json::array();
    for (bool b : f.touches_frontier) {
      touches.push_back(b);
    }
    j["families"].push_back({{"anchor", f.anchor},
                             {"b1_interior", f.b1_interior},
                             {"b1_total", f.b1_total},
                             {"touches_frontier", touches}});
  }
  j["verdict"] = v.text();
  if (agreement) {
    j["agreement"] = *agreement;
  } else {
    j["agreement"] = nullptr;
  }
  return j;
}

inline Json decomposition_json(
    std::vector<FactorComponentReport> const& reports,
    std::string const& case_name, std::optional<bool> agreement) {
  Json j;
  j["case"] = case_name;
  j["reports"] = Json::array();
  for (auto const& r : reports) {
    Json rep;
    rep["radius"] = r.radius;
    char const* side_name[2] = {"X", "Y"};
    for (int s = 0; s < 2; ++s) {
      auto const& sum = r.summary[s];
      rep[side_name[s]] = {{"components", sum.components},
                           {"non_simply_connected", sum.non_simply_connected},
                           {"generic", sum.generic},
                           {"non_generic", sum.non_generic}};
    }
    rep["components"] = Json::array();
    for (auto const& fc : r.components) {
      rep["components"].push_back({{"side", side_name[fc.side]},
                                   {"entry", fc.entry},
                                   {"vertices", fc.vertices.size()},
                                   {"edges", fc.edges.size()},
                                   {"faces", fc.faces.size()},
                                   {"b1", fc.b1},
                                   {"pi1_generators", fc.pi1_generators},
                                   {"simply_connected", fc.simply_connected},
                                   {"contains_basepoint", fc.contains_basepoint},
                                   {"generic", fc.generic}});
    }
    j["reports"].push_back(rep);
  }
  if (agreement) {
    j["agreement"] = *agreement;
  } else {
    j["agreement"] = nullptr;
  }
  return j;
}

inline std::string decomposition_text(FactorComponentReport const& r) {
  std::ostringstream out;
  char const* side_name[2] = {"X", "Y"};
  out << "radius " << r.radius << "\n";
  for (int s = 0; s < 2; ++s) {
    auto const& sum = r.summary[s];
    out << side_name[s] << "-components: " << sum.components
        << " (non-simply-connected: " << sum.non_simply_connected
        << ", generic: " << sum.generic << ")\n";
  }
  out << "non-generic X-components: " << r.summary[0].non_generic
      << "; non-generic Y-components: " << r.summary[1].non_generic << "\n";
  out << "non-generic: " << r.non_generic() << "\n";
  return out.str();
}

}  // namespace tame
