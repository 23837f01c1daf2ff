#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "tame/word.hpp"

namespace tame {

using VertexId = std::size_t;
inline constexpr VertexId kNoVertex = std::numeric_limits<VertexId>::max();

/// The coset graph Cayley(G, H), or a finite piece of it.
///
/// Vertices are dense ids assigned in breadth-first order from the basepoint
/// H*1 (id 0), letters visited in `letter_index` order. `table[v][i]` is the
/// target of the edge (v, letter_at(i)) or kNoVertex when unknown or outside
/// the ball.
///
/// Certification: when `exact` is set the graph is the whole of Cayley(G,H).
/// Otherwise every vertex with depth < `certified_radius` has its full star.
struct CosetGraph {
  std::size_t rank = 0;
  std::vector<std::string> generator_names;
  std::vector<std::vector<VertexId>> table;
  std::vector<int> depth;
  std::vector<Word> representative;
  bool exact = false;
  int certified_radius = 0;
  /// Radius the graph was truncated at, if it is a ball.
  std::optional<int> ball_radius;

  std::size_t size() const noexcept { return table.size(); }
  VertexId basepoint() const noexcept { return 0; }
  std::size_t letters() const noexcept { return 2 * rank; }

  VertexId target(VertexId v, Letter l) const {
    return table[v][letter_index(l)];
  }

  bool full_star(VertexId v) const {
    for (VertexId t : table[v]) {
      if (t == kNoVertex) {
        return false;
      }
    }
    return true;
  }

  /// Follows `w` from `v`; kNoVertex if some edge is missing.
  VertexId follow(VertexId v, std::span<Letter const> w) const {
    for (Letter l : w) {
      if (v == kNoVertex) {
        break;
      }
      v = target(v, l);
    }
    return v;
  }

  /// Number of geometric edges: (v, x) with x a positive generator.
  std::size_t geometric_edge_count() const {
    std::size_t n = 0;
    for (auto const& row : table) {
      for (std::size_t g = 0; g < rank; ++g) {
        n += row[2 * g] != kNoVertex ? 1 : 0;
      }
    }
    return n;
  }

  VertexId add_vertex(int d, Word rep) {
    table.emplace_back(letters(), kNoVertex);
    depth.push_back(d);
    representative.push_back(std::move(rep));
    return table.size() - 1;
  }

  void set_edge(VertexId v, Letter l, VertexId w) {
    table[v][letter_index(l)] = w;
    table[w][letter_index(l.inverse())] = v;
  }
};

/// If (v, x) -> w is present then (w, x^-1) -> v is present.
inline bool has_edge_symmetry(CosetGraph const& g) {
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t i = 0; i < g.letters(); ++i) {
      VertexId const w = g.table[v][i];
      if (w == kNoVertex) {
        continue;
      }
      if (w >= g.size() ||
          g.table[w][letter_index(letter_at(i).inverse())] != v) {
        return false;
      }
    }
  }
  return true;
}

/// Basepoint at depth 0 and |depth(v) - depth(w)| <= 1 across every edge;
/// every non-base vertex has a neighbour one level closer.
inline bool has_consistent_depths(CosetGraph const& g) {
  if (g.size() == 0 || g.depth[0] != 0) {
    return false;
  }
  for (VertexId v = 0; v < g.size(); ++v) {
    bool has_parent = v == 0;
    for (VertexId w : g.table[v]) {
      if (w == kNoVertex) {
        continue;
      }
      int const diff = g.depth[v] - g.depth[w];
      if (diff > 1 || diff < -1) {
        return false;
      }
      has_parent = has_parent || diff == 1;
    }
    if (!has_parent) {
      return false;
    }
  }
  return true;
}

inline bool respects_certification(CosetGraph const& g) {
  for (VertexId v = 0; v < g.size(); ++v) {
    bool const must_be_full = g.exact || g.depth[v] < g.certified_radius;
    if (must_be_full && !g.full_star(v)) {
      return false;
    }
  }
  return true;
}

/// Breadth-first renumbering of the part of `table` reachable from `root`,
/// with letters visited in index order, limited to depth <= radius. Edges
/// between kept vertices are all retained. Returns the graph together with
/// a flag telling whether some edge left the kept set.
struct BallCut {
  CosetGraph graph;
  bool escaped = false;
};

inline BallCut bfs_ball(std::vector<std::vector<VertexId>> const& table,
                        std::size_t rank, VertexId root,
                        std::optional<int> radius) {
  BallCut out;
  CosetGraph& g = out.graph;
  g.rank = rank;
  std::vector<VertexId> renum(table.size(), kNoVertex);
  std::vector<VertexId> order;
  std::deque<VertexId> queue;
  renum[root] = g.add_vertex(0, {});
  order.push_back(root);
  queue.push_back(root);
  while (!queue.empty()) {
    VertexId const old = queue.front();
    queue.pop_front();
    VertexId const v = renum[old];
    for (std::size_t i = 0; i < 2 * rank; ++i) {
      VertexId const t = table[old][i];
      if (t == kNoVertex || renum[t] != kNoVertex) {
        continue;
      }
      if (radius && g.depth[v] >= *radius) {
        out.escaped = true;
        continue;
      }
      Word rep = g.representative[v];
      rep.push_back(letter_at(i));
      renum[t] = g.add_vertex(g.depth[v] + 1, std::move(rep));
      order.push_back(t);
      queue.push_back(t);
    }
  }
  for (VertexId v = 0; v < order.size(); ++v) {
    for (std::size_t i = 0; i < 2 * rank; ++i) {
      VertexId const t = table[order[v]][i];
      if (t != kNoVertex && renum[t] != kNoVertex) {
        g.table[v][i] = renum[t];
      }
    }
  }
  g.ball_radius = radius;
  return out;
}

}  // namespace tame
