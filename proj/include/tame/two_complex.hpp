#pragma once

#include <cstddef>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "tame/coset_graph.hpp"
#include "tame/error.hpp"
#include "tame/word.hpp"

namespace tame {

/// Undirected edge of the complex, stored in its positive orientation
/// tail --gen--> head. The two directed edges (v, x) and (vx, x^-1) of the
/// coset graph are one geometric edge.
struct GeometricEdge {
  VertexId tail;
  int gen;
  VertexId head;
};

struct OrientedEdge {
  std::size_t edge;
  int sign;  // +1 along tail->head
};

/// The lift of relator `relator` based at coset `base`.
struct Face {
  VertexId base;
  std::size_t relator;
  std::vector<OrientedEdge> boundary;
};

struct BallTruncation {
  int radius = 0;
  std::vector<VertexId> frontier;  // vertices at depth exactly `radius`
};

/// A finite 2-complex whose 1-skeleton is (part of) a coset graph, with one
/// face per (coset, relator) whose trace closes inside the skeleton.
///
/// Vertex ids are dense. `depth` keeps the depth from the ambient basepoint
/// even in subcomplexes; `vertex_source`, `edge_source` and `face_source`
/// map cells back to the complex this one was cut from (identity for a
/// freshly built complex).
struct TwoComplex {
  std::vector<std::string> generator_names;
  std::vector<Word> relators;
  std::vector<int> depth;
  std::vector<GeometricEdge> edges;
  std::vector<Face> faces;
  std::optional<BallTruncation> truncation;
  std::optional<VertexId> basepoint;

  std::vector<VertexId> vertex_source;
  std::vector<std::size_t> edge_source;
  std::vector<std::size_t> face_source;

  /// Traces that hit a missing edge (skipped faces).
  std::size_t skipped_traces = 0;
  /// Traces that stayed inside but did not close; zero for genuine coset
  /// graphs.
  std::size_t open_traces = 0;

  std::size_t vertex_count() const noexcept { return depth.size(); }
  std::size_t edge_count() const noexcept { return edges.size(); }
  std::size_t face_count() const noexcept { return faces.size(); }

  VertexId start(OrientedEdge e) const {
    return e.sign > 0 ? edges[e.edge].tail : edges[e.edge].head;
  }
  VertexId end(OrientedEdge e) const {
    return e.sign > 0 ? edges[e.edge].head : edges[e.edge].tail;
  }

  /// Boundary as a word in the generators.
  Word boundary_word(Face const& f) const {
    Word w;
    for (OrientedEdge e : f.boundary) {
      w.push_back({edges[e.edge].gen, e.sign});
    }
    return w;
  }
};

/// Adds one face per (vertex, relator) whose trace from the vertex stays
/// inside `g` and closes. Duplicate boundaries are kept (one face per lift).
inline TwoComplex attach_relator_cells(CosetGraph const& g,
                                       std::vector<Word> const& relators) {
  TwoComplex c;
  c.generator_names = g.generator_names;
  c.relators = relators;
  c.depth = g.depth;
  c.basepoint = g.size() > 0 ? std::optional<VertexId>(0) : std::nullopt;
  c.vertex_source.resize(g.size());
  for (VertexId v = 0; v < g.size(); ++v) {
    c.vertex_source[v] = v;
  }
  // slot[v][letter] -> oriented edge leaving v with that label
  std::vector<std::vector<std::optional<OrientedEdge>>> slot(
      g.size(), std::vector<std::optional<OrientedEdge>>(g.letters()));
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t gen = 0; gen < g.rank; ++gen) {
      VertexId const w = g.table[v][2 * gen];
      if (w == kNoVertex) {
        continue;
      }
      std::size_t const id = c.edges.size();
      c.edges.push_back({v, static_cast<int>(gen), w});
      slot[v][2 * gen] = OrientedEdge{id, 1};
      slot[w][2 * gen + 1] = OrientedEdge{id, -1};
    }
  }
  c.edge_source.resize(c.edges.size());
  for (std::size_t i = 0; i < c.edges.size(); ++i) {
    c.edge_source[i] = i;
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t r = 0; r < relators.size(); ++r) {
      Face f{v, r, {}};
      VertexId at = v;
      bool inside = true;
      for (Letter l : relators[r]) {
        auto const e = slot[at][letter_index(l)];
        if (!e) {
          inside = false;
          break;
        }
        f.boundary.push_back(*e);
        at = c.end(*e);
      }
      if (!inside) {
        ++c.skipped_traces;
      } else if (at != v) {
        ++c.open_traces;
      } else {
        c.faces.push_back(std::move(f));
      }
    }
  }
  c.face_source.resize(c.faces.size());
  for (std::size_t i = 0; i < c.faces.size(); ++i) {
    c.face_source[i] = i;
  }
  if (g.ball_radius) {
    BallTruncation t{*g.ball_radius, {}};
    for (VertexId v = 0; v < g.size(); ++v) {
      if (g.depth[v] == t.radius) {
        t.frontier.push_back(v);
      }
    }
    c.truncation = std::move(t);
  }
  return c;
}

/// Full subcomplex spanned by the kept vertices: edges with both ends kept,
/// faces whose whole boundary survives. Ids are renumbered in order.
inline TwoComplex restrict_complex(TwoComplex const& c,
                                   std::vector<bool> const& keep) {
  TwoComplex out;
  out.generator_names = c.generator_names;
  out.relators = c.relators;
  std::vector<VertexId> vmap(c.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    if (keep[v]) {
      vmap[v] = out.depth.size();
      out.depth.push_back(c.depth[v]);
      out.vertex_source.push_back(c.vertex_source[v]);
    }
  }
  std::vector<std::size_t> emap(c.edge_count(), kNoVertex);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    auto const& e = c.edges[i];
    if (keep[e.tail] && keep[e.head]) {
      emap[i] = out.edges.size();
      out.edges.push_back({vmap[e.tail], e.gen, vmap[e.head]});
      out.edge_source.push_back(c.edge_source[i]);
    }
  }
  for (std::size_t i = 0; i < c.face_count(); ++i) {
    Face const& f = c.faces[i];
    Face nf{kNoVertex, f.relator, {}};
    bool ok = keep[f.base];
    for (OrientedEdge e : f.boundary) {
      if (!ok || emap[e.edge] == kNoVertex) {
        ok = false;
        break;
      }
      nf.boundary.push_back({emap[e.edge], e.sign});
    }
    if (ok) {
      nf.base = vmap[f.base];
      out.faces.push_back(std::move(nf));
      out.face_source.push_back(c.face_source[i]);
    }
  }
  if (c.basepoint && keep[*c.basepoint]) {
    out.basepoint = vmap[*c.basepoint];
  }
  if (c.truncation) {
    BallTruncation t{c.truncation->radius, {}};
    for (VertexId v : c.truncation->frontier) {
      if (keep[v]) {
        t.frontier.push_back(vmap[v]);
      }
    }
    out.truncation = std::move(t);
  }
  return out;
}

/// Adjacency lists over geometric edges (both directions, loops once).
inline std::vector<std::vector<std::pair<VertexId, std::size_t>>> adjacency(
    TwoComplex const& c) {
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(
      c.vertex_count());
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    auto const& e = c.edges[i];
    adj[e.tail].emplace_back(e.head, i);
    if (e.head != e.tail) {
      adj[e.head].emplace_back(e.tail, i);
    }
  }
  return adj;
}

/// Graph distance in the 1-skeleton; -1 for unreachable vertices.
inline std::vector<int> distances_from(TwoComplex const& c, VertexId center) {
  std::vector<int> dist(c.vertex_count(), -1);
  auto const adj = adjacency(c);
  std::deque<VertexId> queue{center};
  dist[center] = 0;
  while (!queue.empty()) {
    VertexId const v = queue.front();
    queue.pop_front();
    for (auto const& [w, e] : adj[v]) {
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

/// Full subcomplex on the vertices within `radius` of `center`.
inline TwoComplex ball_subcomplex(TwoComplex const& c, VertexId center,
                                  int radius) {
  if (center >= c.vertex_count()) {
    throw Error("ball center " + std::to_string(center) +
                " is not a vertex of the complex");
  }
  if (radius < 0) {
    throw Error("ball radius must be nonnegative");
  }
  auto const dist = distances_from(c, center);
  std::vector<bool> keep(c.vertex_count());
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    keep[v] = dist[v] >= 0 && dist[v] <= radius;
  }
  TwoComplex out = restrict_complex(c, keep);
  BallTruncation t{radius, {}};
  for (VertexId v = 0, nv = 0; v < c.vertex_count(); ++v) {
    if (keep[v]) {
      if (dist[v] == radius) {
        t.frontier.push_back(nv);
      }
      ++nv;
    }
  }
  out.truncation = std::move(t);
  return out;
}

}  // namespace tame
