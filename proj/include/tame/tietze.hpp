#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <set>
#include <string>
#include <vector>

#include "tame/error.hpp"
#include "tame/homology.hpp"
#include "tame/presentation.hpp"
#include "tame/smith.hpp"
#include "tame/two_complex.hpp"

namespace tame {

/// Presentation of pi_1(c, base) from a breadth-first spanning tree:
/// one generator per non-tree edge (named "e<edge id>"), one relator per
/// face, read off the face boundary with tree edges deleted. Boundaries that
/// reduce to the identity impose nothing and are dropped.
inline GroupPresentation pi1_spanning_tree_presentation(TwoComplex const& c,
                                                        VertexId base) {
  if (base >= c.vertex_count()) {
    throw Error("base vertex is not in the complex");
  }
  if (connected_components(c).count != 1) {
    throw Error(
        "complex is disconnected; select a component before computing pi_1");
  }
  auto const adj = adjacency(c);
  std::vector<bool> tree(c.edge_count(), false);
  std::vector<bool> seen(c.vertex_count(), false);
  std::deque<VertexId> queue{base};
  seen[base] = true;
  while (!queue.empty()) {
    VertexId const v = queue.front();
    queue.pop_front();
    for (auto const& [w, e] : adj[v]) {
      if (!seen[w]) {
        seen[w] = true;
        tree[e] = true;
        queue.push_back(w);
      }
    }
  }
  GroupPresentation p;
  std::vector<int> gen_of(c.edge_count(), -1);
  for (std::size_t i = 0; i < c.edge_count(); ++i) {
    if (!tree[i]) {
      gen_of[i] = static_cast<int>(p.generators.size());
      p.generators.push_back("e" + std::to_string(i));
    }
  }
  for (Face const& f : c.faces) {
    Word w;
    for (OrientedEdge e : f.boundary) {
      if (gen_of[e.edge] >= 0) {
        w.push_back({gen_of[e.edge], e.sign});
      }
    }
    w = free_reduce(w);
    if (!w.empty()) {
      p.relators.push_back(std::move(w));
    }
  }
  return p;
}

/// Rank of the free part of the abelianization.
inline std::size_t abelian_rank(GroupPresentation const& p) {
  RationalEchelon ech;
  for (Word const& r : p.relators) {
    auto const sums = exponent_sums(r, p.rank());
    std::vector<std::pair<std::size_t, std::int64_t>> entries;
    for (std::size_t g = 0; g < sums.size(); ++g) {
      entries.emplace_back(g, sums[g]);
    }
    ech.add(make_sparse_row(entries));
  }
  return p.rank() - ech.rank();
}

namespace detail {

// Least rotation of r or r^-1, compared by letter index; used to detect
// relators that are equal up to cyclic permutation and inversion.
inline Word cyclic_canonical(Word const& r) {
  Word best;
  bool have = false;
  for (Word const& w : {r, inverse(r)}) {
    for (std::size_t s = 0; s < w.size(); ++s) {
      Word rot(w.begin() + static_cast<std::ptrdiff_t>(s), w.end());
      rot.insert(rot.end(), w.begin(), w.begin() + static_cast<std::ptrdiff_t>(s));
      auto less = [](Word const& a, Word const& b) {
        return std::lexicographical_compare(
            a.begin(), a.end(), b.begin(), b.end(),
            [](Letter x, Letter y) { return letter_index(x) < letter_index(y); });
      };
      if (!have || less(rot, best)) {
        best = std::move(rot);
        have = true;
      }
    }
  }
  return best;
}

inline void tidy(std::vector<Word>& relators) {
  std::vector<Word> out;
  std::set<std::vector<std::size_t>> seen;
  for (Word const& r : relators) {
    Word c = cyclically_reduce(r);
    if (c.empty()) {
      continue;
    }
    c = cyclic_canonical(c);
    std::vector<std::size_t> key;
    for (Letter l : c) {
      key.push_back(letter_index(l));
    }
    if (seen.insert(key).second) {
      out.push_back(std::move(c));
    }
  }
  relators = std::move(out);
}

}  // namespace detail

struct SimplifyOptions {
  /// Eliminations that would push the total relator length past this are
  /// not performed.
  std::size_t max_total_length = 2'000'000;
};

/// Bounded Tietze simplification: cyclically reduce, drop trivial and
/// duplicate relators, and repeatedly eliminate a generator that occurs
/// exactly once in some relator (shortest such relator first). No search;
/// deterministic; never increases the generator count.
inline GroupPresentation simplify_presentation(GroupPresentation p,
                                               SimplifyOptions options = {}) {
  detail::tidy(p.relators);
  while (true) {
    // (relator index, position) of the chosen elimination
    std::size_t best_rel = kNoVertex;
    std::size_t best_pos = 0;
    std::vector<std::size_t> order(p.relators.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      order[i] = i;
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
      return p.relators[a].size() < p.relators[b].size();
    });
    for (std::size_t ri : order) {
      Word const& r = p.relators[ri];
      std::vector<std::size_t> count(p.rank(), 0);
      for (Letter l : r) {
        ++count[static_cast<std::size_t>(l.gen)];
      }
      std::size_t pick = kNoVertex;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (count[static_cast<std::size_t>(r[i].gen)] == 1 &&
            (pick == kNoVertex || r[i].gen < r[pick].gen)) {
          pick = i;
        }
      }
      if (pick != kNoVertex) {
        best_rel = ri;
        best_pos = pick;
        break;
      }
    }
    if (best_rel == kNoVertex) {
      break;
    }
    // r = u x^e v  =>  x^e = u^-1 v^-1, i.e. x = (v u)^-e
    Word const& r = p.relators[best_rel];
    Letter const x = r[best_pos];
    Word vu(r.begin() + static_cast<std::ptrdiff_t>(best_pos) + 1, r.end());
    vu.insert(vu.end(), r.begin(),
              r.begin() + static_cast<std::ptrdiff_t>(best_pos));
    Word const image = x.sign > 0 ? inverse(vu) : vu;  // value of x^+1
    Word const image_inv = inverse(image);

    std::size_t total = 0;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i == best_rel) {
        continue;
      }
      for (Letter l : p.relators[i]) {
        total += l.gen == x.gen ? image.size() : 1;
      }
    }
    if (total > options.max_total_length) {
      break;
    }
    std::vector<Word> next;
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      if (i == best_rel) {
        continue;
      }
      Word w;
      for (Letter l : p.relators[i]) {
        if (l.gen == x.gen) {
          Word const& s = l.sign > 0 ? image : image_inv;
          w.insert(w.end(), s.begin(), s.end());
        } else {
          w.push_back(l);
        }
      }
      for (Letter& l : w) {
        if (l.gen > x.gen) {
          --l.gen;
        }
      }
      next.push_back(free_reduce(w));
    }
    p.generators.erase(p.generators.begin() + x.gen);
    p.relators = std::move(next);
    detail::tidy(p.relators);
  }
  return p;
}

}  // namespace tame
