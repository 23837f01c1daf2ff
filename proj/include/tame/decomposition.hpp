#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "tame/coset_ball.hpp"
#include "tame/engine.hpp"
#include "tame/error.hpp"
#include "tame/homology.hpp"
#include "tame/tietze.hpp"
#include "tame/two_complex.hpp"

namespace tame {

/// One maximal connected single-alphabet subcomplex. Side 0 is the X
/// alphabet (left factor), side 1 the Y alphabet.
struct FactorComponent {
  int side = 0;
  std::vector<VertexId> vertices;
  std::vector<std::size_t> edges;  // edge ids in the decomposed complex
  std::vector<std::size_t> faces;  // face ids in the decomposed complex
  std::size_t b1 = 0;
  std::size_t pi1_generators = 0;
  /// b1 = 0 and the simplified pi_1 presentation has no generators. A
  /// component can fail this and still be simply connected.
  bool simply_connected = false;
  bool contains_basepoint = false;
  /// Vertex closest to the basepoint (least id on ties).
  VertexId entry = 0;
  /// Isomorphic, as a rooted labeled complex, to the factor's Cayley
  /// complex ball of radius (truncation radius - depth of entry).
  bool generic = false;
};

struct FactorSideSummary {
  std::size_t components = 0;
  std::size_t non_simply_connected = 0;
  std::size_t generic = 0;
  std::size_t non_generic = 0;
};

struct FactorComponentReport {
  int radius = 0;
  std::vector<std::string> generator_names;
  std::vector<int> side;  // per generator
  std::vector<FactorComponent> components;  // X components first, then Y
  FactorSideSummary summary[2];

  std::size_t non_generic() const {
    return summary[0].non_generic + summary[1].non_generic;
  }
};

namespace detail {

inline std::vector<int> relator_sides(std::vector<Word> const& relators,
                                      std::vector<int> const& side,
                                      std::vector<std::string> const& names) {
  std::vector<int> out;
  for (Word const& r : relators) {
    int s = -1;
    for (Letter l : r) {
      int const t = side[static_cast<std::size_t>(l.gen)];
      if (s >= 0 && s != t) {
        throw MixedRelator("relator " + format_word(r, names) +
                           " mixes letters of both factors");
      }
      s = t;
    }
    out.push_back(s);
  }
  return out;
}

/// Subcomplex on `members` using only edges and faces of one alphabet.
inline TwoComplex side_subcomplex(TwoComplex const& c,
                                  std::vector<int> const& side,
                                  std::vector<int> const& rel_side, int sigma,
                                  std::vector<bool> const& members) {
  TwoComplex out;
  out.generator_names = c.generator_names;
  out.relators = c.relators;
  std::vector<VertexId> vmap(c.vertex_count(), kNoVertex);
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    if (members[v]) {
      vmap[v] = out.depth.size();
      out.depth.push_back(c.depth[v]);
      out.vertex_source.push_back(v);
    }
  }
  std::vector<std::size_t> emap(c.edge_count(), kNoVertex);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    auto const& e = c.edges[i];
    if (side[static_cast<std::size_t>(e.gen)] == sigma && members[e.tail]) {
      emap[i] = out.edges.size();
      out.edges.push_back({vmap[e.tail], e.gen, vmap[e.head]});
      out.edge_source.push_back(i);
    }
  }
  for (std::size_t i = 0; i < c.face_count(); ++i) {
    Face const& f = c.faces[i];
    if (rel_side[f.relator] != sigma || !members[f.base]) {
      continue;
    }
    Face nf{vmap[f.base], f.relator, {}};
    for (OrientedEdge e : f.boundary) {
      nf.boundary.push_back({emap[e.edge], e.sign});
    }
    out.faces.push_back(std::move(nf));
    out.face_source.push_back(i);
  }
  if (c.basepoint && members[*c.basepoint]) {
    out.basepoint = vmap[*c.basepoint];
  }
  return out;
}

/// Rooted labeled isomorphism between a component (letters given by local
/// index through `local`) and a factor complex ball rooted at 0.
inline bool rooted_isomorphic(TwoComplex const& k, VertexId root,
                              std::vector<int> const& local,
                              std::vector<int> const& rel_local,
                              std::size_t factor_rank, TwoComplex const& ball) {
  if (k.vertex_count() != ball.vertex_count() ||
      k.edge_count() != ball.edge_count() ||
      k.face_count() != ball.face_count()) {
    return false;
  }
  std::size_t const letters = 2 * factor_rank;
  auto table_of = [letters](TwoComplex const& c, auto gen_of) {
    std::vector<std::vector<VertexId>> t(
        c.vertex_count(), std::vector<VertexId>(letters, kNoVertex));
    for (auto const& e : c.edges) {
      auto const g = static_cast<std::size_t>(gen_of(e.gen));
      t[e.tail][2 * g] = e.head;
      t[e.head][2 * g + 1] = e.tail;
    }
    return t;
  };
  auto const kt = table_of(k, [&](int g) { return local[static_cast<std::size_t>(g)]; });
  auto const bt = table_of(ball, [](int g) { return g; });
  std::vector<VertexId> phi(k.vertex_count(), kNoVertex);
  std::vector<VertexId> inv(ball.vertex_count(), kNoVertex);
  phi[root] = 0;
  inv[0] = root;
  std::deque<VertexId> queue{root};
  while (!queue.empty()) {
    VertexId const u = queue.front();
    queue.pop_front();
    for (std::size_t i = 0; i < letters; ++i) {
      VertexId const a = kt[u][i];
      VertexId const b = bt[phi[u]][i];
      if ((a == kNoVertex) != (b == kNoVertex)) {
        return false;
      }
      if (a == kNoVertex) {
        continue;
      }
      if (phi[a] == kNoVertex && inv[b] == kNoVertex) {
        phi[a] = b;
        inv[b] = a;
        queue.push_back(a);
      } else if (phi[a] != b) {
        return false;
      }
    }
  }
  std::vector<std::pair<VertexId, std::size_t>> kf;
  std::vector<std::pair<VertexId, std::size_t>> bf;
  for (Face const& f : k.faces) {
    if (phi[f.base] == kNoVertex) {
      return false;
    }
    kf.emplace_back(phi[f.base],
                    static_cast<std::size_t>(rel_local[f.relator]));
  }
  for (Face const& f : ball.faces) {
    bf.emplace_back(f.base, f.relator);
  }
  std::sort(kf.begin(), kf.end());
  std::sort(bf.begin(), bf.end());
  return kf == bf;
}

}  // namespace detail

/// Splits a truncated Cayley complex over a free-product presentation into
/// maximal X- and Y-components and compares each against the generic
/// factor ball. Components without edges (frontier vertices reached only
/// through the other alphabet) are not reported.
inline FactorComponentReport xy_decomposition(TwoComplex const& c,
                                              NormalFormEngine const& engine) {
  auto const* prod = engine.product();
  if (prod == nullptr || !prod->free) {
    throw Error("decomposition needs a free product engine, got " +
                engine.describe());
  }
  if (!c.truncation) {
    throw Error("decomposition needs a truncated complex");
  }
  if (engine.rank() != c.generator_names.size()) {
    throw AlphabetError("engine rank does not match the complex alphabet");
  }
  FactorComponentReport rep;
  rep.radius = c.truncation->radius;
  rep.generator_names = c.generator_names;
  rep.side = engine.sides();
  auto const rel_side =
      detail::relator_sides(c.relators, rep.side, c.generator_names);

  std::vector<int> local(rep.side.size());
  for (std::size_t g = 0; g < rep.side.size(); ++g) {
    local[g] = prod->route[g].second;
  }
  std::vector<Word> factor_relators[2];
  std::vector<int> rel_local(c.relators.size(), -1);
  for (std::size_t j = 0; j < c.relators.size(); ++j) {
    int const s = rel_side[j];
    if (s < 0) {
      continue;
    }
    Word w;
    for (Letter l : c.relators[j]) {
      w.push_back({local[static_cast<std::size_t>(l.gen)], l.sign});
    }
    rel_local[j] = static_cast<int>(factor_relators[s].size());
    factor_relators[s].push_back(std::move(w));
  }
  std::shared_ptr<NormalFormEngine const> factors[2] = {prod->left,
                                                        prod->right};
  std::map<std::pair<int, int>, TwoComplex> balls;
  auto generic_ball = [&](int s, int radius) -> TwoComplex const& {
    auto it = balls.find({s, radius});
    if (it == balls.end()) {
      CosetGraph g = coset_ball(factors[s], SubgroupSpec{}, radius);
      it = balls.emplace(std::pair{s, radius},
                         attach_relator_cells(g, factor_relators[s]))
               .first;
    }
    return it->second;
  };

  for (int s = 0; s < 2; ++s) {
    std::vector<std::size_t> parent(c.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
      while (parent[v] != v) {
        v = parent[v] = parent[parent[v]];
      }
      return v;
    };
    std::vector<bool> touched(c.vertex_count(), false);
    for (auto const& e : c.edges) {
      if (rep.side[static_cast<std::size_t>(e.gen)] != s) {
        continue;
      }
      touched[e.tail] = touched[e.head] = true;
      std::size_t const a = find(e.tail);
      std::size_t const b = find(e.head);
      parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<bool>> groups;
    for (VertexId v = 0; v < c.vertex_count(); ++v) {
      if (touched[v]) {
        auto& m = groups[find(v)];
        m.resize(c.vertex_count());
        m[v] = true;
      }
    }
    for (auto const& [root, members] : groups) {
      TwoComplex const k =
          detail::side_subcomplex(c, rep.side, rel_side, s, members);
      FactorComponent fc;
      fc.side = s;
      fc.vertices = k.vertex_source;
      fc.edges = k.edge_source;
      fc.faces = k.face_source;
      fc.b1 = betti_one(k);
      fc.pi1_generators =
          simplify_presentation(pi1_spanning_tree_presentation(k, 0))
              .generators.size();
      fc.simply_connected = fc.b1 == 0 && fc.pi1_generators == 0;
      fc.contains_basepoint = k.basepoint.has_value();
      VertexId entry = 0;
      for (VertexId v = 1; v < k.vertex_count(); ++v) {
        if (k.depth[v] < k.depth[entry]) {
          entry = v;
        }
      }
      fc.entry = k.vertex_source[entry];
      int const depth_left = rep.radius - k.depth[entry];
      fc.generic = depth_left >= 0 &&
                   detail::rooted_isomorphic(k, entry, local, rel_local,
                                             factors[s]->rank(),
                                             generic_ball(s, depth_left));
      FactorSideSummary& sum = rep.summary[s];
      ++sum.components;
      sum.non_simply_connected += fc.simply_connected ? 0 : 1;
      sum.generic += fc.generic ? 1 : 0;
      sum.non_generic += fc.generic ? 0 : 1;
      rep.components.push_back(std::move(fc));
    }
  }
  return rep;
}

}  // namespace tame
