#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "tame/coset_graph.hpp"
#include "tame/engine.hpp"
#include "tame/error.hpp"
#include "tame/todd_coxeter.hpp"

namespace tame {

struct CosetBallOptions {
  std::size_t max_vertices = 1'000'000;
};

/// Breadth-first ball of radius r around H*1 in Cayley(G, H), identifying
/// g1 and g2 iff g1 g2^-1 is in H. Uses canonical coset keys when the
/// engine supports them and pairwise membership otherwise.
///
/// The result has certified_radius = r; when no edge leaves the ball it is
/// the whole coset graph and `exact` is set. Throws MembershipUnknown when
/// two cosets cannot be told apart and LimitExceeded past max_vertices.
inline CosetGraph coset_ball(std::shared_ptr<NormalFormEngine const> engine,
                             SubgroupSpec const& subgroup, int radius,
                             CosetBallOptions options = {}) {
  if (radius < 0) {
    throw Error("ball radius must be nonnegative");
  }
  SubgroupOracle const oracle(engine, subgroup);
  NormalFormEngine const& e = *engine;

  CosetGraph g;
  g.rank = e.rank();
  g.ball_radius = radius;
  g.certified_radius = radius;
  std::map<CosetKey, VertexId> by_key;
  std::vector<std::vector<VertexId>> by_depth(1);

  auto key_of = [&](Word const& w) { return oracle.key(w); };
  bool const keyed = key_of({}).has_value();

  auto find_existing = [&](Word const& w, int near_depth) -> VertexId {
    if (keyed) {
      auto it = by_key.find(*key_of(w));
      return it == by_key.end() ? kNoVertex : it->second;
    }
    for (int d = near_depth - 1; d <= near_depth + 1; ++d) {
      if (d < 0 || static_cast<std::size_t>(d) >= by_depth.size()) {
        continue;
      }
      for (VertexId h : by_depth[static_cast<std::size_t>(d)]) {
        Word probe = w;
        Word const hi = inverse(g.representative[h]);
        probe.insert(probe.end(), hi.begin(), hi.end());
        switch (oracle.contains(free_reduce(probe))) {
          case MembershipAnswer::Yes:
            return h;
          case MembershipAnswer::No:
            break;
          case MembershipAnswer::Unknown:
            throw MembershipUnknown(
                "cannot decide coset equality for subgroup over " +
                e.describe() + "; use the todd-coxeter engine");
        }
      }
    }
    return kNoVertex;
  };

  auto add = [&](int depth, Word rep) {
    if (g.size() >= options.max_vertices) {
      throw LimitExceeded("coset ball exceeded " +
                          std::to_string(options.max_vertices) + " vertices");
    }
    if (keyed) {
      by_key.emplace(*key_of(rep), g.size());
    }
    if (static_cast<std::size_t>(depth) >= by_depth.size()) {
      by_depth.resize(static_cast<std::size_t>(depth) + 1);
    }
    by_depth[static_cast<std::size_t>(depth)].push_back(g.size());
    return g.add_vertex(depth, std::move(rep));
  };

  add(0, {});
  bool escaped = false;
  for (VertexId v = 0; v < g.size(); ++v) {
    for (std::size_t i = 0; i < g.letters(); ++i) {
      if (g.table[v][i] != kNoVertex) {
        continue;
      }
      Letter const x = letter_at(i);
      Word next = g.representative[v];
      next.push_back(x);
      next = free_reduce(next);
      VertexId w = find_existing(next, g.depth[v]);
      if (w == kNoVertex) {
        if (g.depth[v] >= radius) {
          escaped = true;
          continue;
        }
        w = add(g.depth[v] + 1, std::move(next));
      }
      g.set_edge(v, x, w);
    }
  }
  g.exact = !escaped;
  return g;
}

/// Cayley(G/N) ball for a normal subgroup given by its quotient engine.
inline CosetGraph quotient_ball(std::shared_ptr<NormalFormEngine const> quotient,
                                int radius, CosetBallOptions options = {}) {
  return coset_ball(std::move(quotient), SubgroupSpec{}, radius, options);
}

/// Restricts a complete or partial coset table to the ball of the given
/// radius. Only a complete table yields a certified ball.
inline CosetGraph ball_from_table(CosetGraph const& full, bool complete,
                                  int radius) {
  BallCut cut = bfs_ball(full.table, full.rank, 0, radius);
  CosetGraph g = std::move(cut.graph);
  g.generator_names = full.generator_names;
  g.exact = complete && !cut.escaped;
  g.certified_radius = complete ? radius : 0;
  return g;
}

}  // namespace tame
