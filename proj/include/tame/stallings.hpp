#pragma once

#include <cstddef>
#include <deque>
#include <numeric>
#include <utility>
#include <vector>

#include "tame/coset_graph.hpp"
#include "tame/word.hpp"

namespace tame {

/// Folded (Stallings) graph of a finitely generated subgroup of a free group.
/// No vertex has two outgoing edges with the same label; the basepoint is
/// vertex 0. The full coset graph Cayley(F, H) is this core with a regular
/// tree hanging off every missing (vertex, letter) slot.
struct FoldedGraph {
  std::size_t rank = 0;
  std::vector<std::vector<VertexId>> table;

  std::size_t size() const noexcept { return table.size(); }
  VertexId basepoint() const noexcept { return 0; }

  std::size_t edge_count() const {
    std::size_t n = 0;
    for (auto const& row : table) {
      for (std::size_t g = 0; g < rank; ++g) {
        n += row[2 * g] != kNoVertex ? 1 : 0;
      }
    }
    return n;
  }

  /// Reads as much of `w` as the core allows. Returns the vertex reached and
  /// the number of letters consumed.
  std::pair<VertexId, std::size_t> read(std::span<Letter const> w) const {
    VertexId v = 0;
    std::size_t i = 0;
    for (; i < w.size(); ++i) {
      VertexId const t = table[v][letter_index(w[i])];
      if (t == kNoVertex) {
        break;
      }
      v = t;
    }
    return {v, i};
  }

  /// Exact membership: reduced `w` is in H iff it labels a closed loop at the
  /// basepoint.
  bool accepts(std::span<Letter const> w) const {
    Word const r = free_reduce(w);
    auto const [v, n] = read(r);
    return n == r.size() && v == 0;
  }
};

namespace detail {

class Folder {
 public:
  explicit Folder(std::size_t rank) : rank_(rank) { new_vertex(); }

  VertexId new_vertex() {
    out_.emplace_back(2 * rank_, kNoVertex);
    parent_.push_back(parent_.size());
    return out_.size() - 1;
  }

  VertexId find(VertexId v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }

  void add_edge(VertexId u, Letter l, VertexId v) {
    set(find(u), letter_index(l), find(v));
    set(find(v), letter_index(l.inverse()), find(u));
    drain();
  }

  FoldedGraph finish() {
    std::vector<std::vector<VertexId>> table(out_.size(),
                                             std::vector<VertexId>(2 * rank_));
    for (VertexId v = 0; v < out_.size(); ++v) {
      for (std::size_t i = 0; i < 2 * rank_; ++i) {
        table[v][i] = out_[v][i] == kNoVertex ? kNoVertex : find(out_[v][i]);
      }
    }
    BallCut cut = bfs_ball(table, rank_, find(0), std::nullopt);
    return FoldedGraph{rank_, std::move(cut.graph.table)};
  }

 private:
  std::size_t rank_;
  std::vector<std::vector<VertexId>> out_;
  std::vector<VertexId> parent_;
  std::deque<std::pair<VertexId, VertexId>> pending_;

  void set(VertexId u, std::size_t li, VertexId v) {
    VertexId& slot = out_[u][li];
    if (slot == kNoVertex) {
      slot = v;
    } else if (find(slot) != v) {
      pending_.emplace_back(find(slot), v);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) {
        continue;
      }
      if (b < a) {
        std::swap(a, b);
      }
      parent_[b] = a;
      for (std::size_t i = 0; i < 2 * rank_; ++i) {
        VertexId const t = out_[b][i];
        if (t != kNoVertex) {
          out_[b][i] = kNoVertex;
          set(a, i, find(t));
        }
      }
    }
  }
};

}  // namespace detail

/// Folds the bouquet of subgroup generator loops. For an empty generator list
/// the result is a single vertex with no edges.
inline FoldedGraph stallings_fold(std::size_t rank,
                                  std::vector<Word> const& generators) {
  detail::Folder f(rank);
  for (Word const& raw : generators) {
    Word const w = free_reduce(raw);
    if (w.empty()) {
      continue;
    }
    VertexId prev = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      VertexId const next = i + 1 == w.size() ? 0 : f.new_vertex();
      f.add_edge(prev, w[i], next);
      prev = next;
    }
  }
  return f.finish();
}

}  // namespace tame
