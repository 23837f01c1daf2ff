#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

#include "tame/smith.hpp"
#include "tame/two_complex.hpp"

namespace tame {

/// Connected components of the 1-skeleton, numbered in order of their least
/// vertex id.
struct Components {
  std::vector<std::size_t> of_vertex;
  std::size_t count = 0;
};

inline Components connected_components(TwoComplex const& c) {
  std::vector<std::size_t> parent(c.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (auto const& e : c.edges) {
    std::size_t a = find(e.tail);
    std::size_t b = find(e.head);
    if (a != b) {
      parent[std::max(a, b)] = std::min(a, b);
    }
  }
  Components out;
  out.of_vertex.assign(c.vertex_count(), 0);
  std::vector<std::size_t> label(c.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    std::size_t const r = find(v);
    if (label[r] == kNoVertex) {
      label[r] = out.count++;
    }
    out.of_vertex[v] = label[r];
  }
  return out;
}

/// Row of the cellular boundary map for one face: signed traversal counts
/// over geometric edges.
inline SparseRow face_boundary_row(Face const& f) {
  std::vector<std::pair<std::size_t, std::int64_t>> entries;
  entries.reserve(f.boundary.size());
  for (OrientedEdge e : f.boundary) {
    entries.emplace_back(e.edge, e.sign);
  }
  return make_sparse_row(entries);
}

/// Rank over Q of the face boundary matrix, rows in face order.
inline std::size_t boundary_rank(TwoComplex const& c) {
  RationalEchelon ech;
  for (Face const& f : c.faces) {
    ech.add(face_boundary_row(f));
  }
  return ech.rank();
}

/// First Betti number over Q: E - V + #components - rank(d2).
inline std::size_t betti_one(TwoComplex const& c) {
  std::size_t const cycles =
      c.edge_count() + connected_components(c).count - c.vertex_count();
  return cycles - boundary_rank(c);
}

/// Fundamental cycles of a spanning forest of the subgraph formed by the
/// edges with `use_edge[i]` set, one per non-tree edge.
inline std::vector<SparseRow> fundamental_cycles(
    TwoComplex const& c, std::vector<bool> const& use_edge) {
  std::size_t const n = c.vertex_count();
  std::vector<std::vector<std::pair<VertexId, std::size_t>>> adj(n);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (!use_edge[i]) {
      continue;
    }
    auto const& e = c.edges[i];
    adj[e.tail].emplace_back(e.head, i);
    if (e.head != e.tail) {
      adj[e.head].emplace_back(e.tail, i);
    }
  }
  // parent edge oriented towards the root
  std::vector<std::size_t> parent_edge(n, kNoVertex);
  std::vector<VertexId> parent(n, kNoVertex);
  std::vector<bool> seen(n, false);
  std::vector<bool> tree(c.edge_count(), false);
  for (VertexId root = 0; root < n; ++root) {
    if (seen[root]) {
      continue;
    }
    seen[root] = true;
    std::deque<VertexId> queue{root};
    while (!queue.empty()) {
      VertexId const v = queue.front();
      queue.pop_front();
      for (auto const& [w, e] : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          parent[w] = v;
          parent_edge[w] = e;
          tree[e] = true;
          queue.push_back(w);
        }
      }
    }
  }
  // path from v up to its root, as signed edges in the direction v -> root
  auto climb = [&](VertexId v, std::int64_t sign,
                   std::vector<std::pair<std::size_t, std::int64_t>>& out) {
    while (parent[v] != kNoVertex) {
      auto const& e = c.edges[parent_edge[v]];
      std::int64_t const along = e.tail == v ? 1 : -1;
      out.emplace_back(parent_edge[v], sign * along);
      v = parent[v];
    }
  };
  std::vector<SparseRow> rows;
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (!use_edge[i] || tree[i]) {
      continue;
    }
    auto const& e = c.edges[i];
    // tail -> head along e, then head -> root, then root -> tail
    std::vector<std::pair<std::size_t, std::int64_t>> entries{{i, 1}};
    climb(e.head, 1, entries);
    climb(e.tail, -1, entries);
    rows.push_back(make_sparse_row(entries));
  }
  return rows;
}

/// Rank of the image of H1(sub) in H1(c), where `sub` is the graph on the
/// edges with `use_edge` set: independent cycles of the subgraph modulo the
/// face boundaries of the whole complex.
inline std::size_t supported_betti(TwoComplex const& c,
                                   std::vector<bool> const& use_edge) {
  RationalEchelon ech;
  for (Face const& f : c.faces) {
    ech.add(face_boundary_row(f));
  }
  std::size_t extra = 0;
  for (SparseRow& row : fundamental_cycles(c, use_edge)) {
    extra += ech.add(std::move(row)) ? 1 : 0;
  }
  return extra;
}

}  // namespace tame
