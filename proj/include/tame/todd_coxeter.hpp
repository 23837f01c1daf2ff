#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "tame/coset_graph.hpp"
#include "tame/presentation.hpp"
#include "tame/word.hpp"

namespace tame {

struct ToddCoxeterLimits {
  std::size_t max_cosets = 100'000;
  std::size_t max_deductions = 20'000'000;
};

/// Outcome of a coset enumeration. When `complete` the graph is exactly
/// Cayley(G, H) (finite index). Otherwise it is the current partial table:
/// it never identifies two distinct cosets, but carries no certification.
struct ToddCoxeterResult {
  bool complete = false;
  CosetGraph graph;
  std::size_t cosets_defined = 0;
  std::size_t deductions = 0;
};

namespace detail {

// HLT enumeration with Holt-style coincidence processing.
class ToddCoxeter {
 public:
  ToddCoxeter(std::size_t rank, ToddCoxeterLimits limits)
      : rank_(rank), limits_(limits) {
    new_coset();
  }

  ToddCoxeterResult run(std::vector<Word> const& relators,
                        std::vector<Word> const& subgroup) {
    for (Word const& h : subgroup) {
      if (!scan_and_fill(0, h)) {
        return result(false);
      }
    }
    for (VertexId c = 0; c < table_.size(); ++c) {
      if (!live(c)) {
        continue;
      }
      for (Word const& r : relators) {
        if (!scan_and_fill(c, r)) {
          return result(false);
        }
        if (!live(c)) {
          break;
        }
      }
      if (!live(c)) {
        continue;
      }
      for (std::size_t i = 0; i < 2 * rank_; ++i) {
        if (table_[c][i] == kNoVertex) {
          if (!define(c, i)) {
            return result(false);
          }
        }
      }
    }
    return result(true);
  }

 private:
  std::size_t rank_;
  ToddCoxeterLimits limits_;
  std::vector<std::vector<VertexId>> table_;
  std::vector<VertexId> forward_;
  std::deque<VertexId> dead_queue_;
  std::size_t deductions_ = 0;

  static std::size_t inv(std::size_t i) { return i ^ 1U; }

  bool live(VertexId c) const { return forward_[c] == c; }

  VertexId new_coset() {
    table_.emplace_back(2 * rank_, kNoVertex);
    forward_.push_back(forward_.size());
    return table_.size() - 1;
  }

  bool define(VertexId c, std::size_t i) {
    if (table_.size() >= limits_.max_cosets) {
      return false;
    }
    VertexId const d = new_coset();
    table_[c][i] = d;
    table_[d][inv(i)] = c;
    ++deductions_;
    return true;
  }

  VertexId rep(VertexId c) {
    VertexId r = c;
    while (forward_[r] != r) {
      r = forward_[r];
    }
    while (forward_[c] != r) {
      VertexId const next = forward_[c];
      forward_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(VertexId a, VertexId b) {
    a = rep(a);
    b = rep(b);
    if (a == b) {
      return;
    }
    if (b < a) {
      std::swap(a, b);
    }
    forward_[b] = a;
    dead_queue_.push_back(b);
  }

  void coincidence(VertexId a, VertexId b) {
    merge(a, b);
    while (!dead_queue_.empty()) {
      VertexId const e = dead_queue_.front();
      dead_queue_.pop_front();
      for (std::size_t i = 0; i < 2 * rank_; ++i) {
        VertexId const f = table_[e][i];
        if (f == kNoVertex) {
          continue;
        }
        if (table_[f][inv(i)] == e) {
          table_[f][inv(i)] = kNoVertex;
        }
        VertexId const mu = rep(e);
        VertexId const nu = rep(f);
        if (table_[mu][i] != kNoVertex) {
          merge(nu, table_[mu][i]);
        } else if (table_[nu][inv(i)] != kNoVertex) {
          merge(mu, table_[nu][inv(i)]);
        } else {
          table_[mu][i] = nu;
          table_[nu][inv(i)] = mu;
        }
      }
    }
  }

  // Scans `w` from coset c in both directions, defining cosets to close the
  // gap. Returns false when a limit is hit.
  bool scan_and_fill(VertexId c, Word const& w) {
    if (w.empty()) {
      return true;
    }
    VertexId f = c;
    VertexId b = c;
    std::size_t i = 0;
    std::size_t j = w.size();  // letters [i, j) still unscanned
    while (true) {
      while (i < j && table_[f][letter_index(w[i])] != kNoVertex) {
        f = table_[f][letter_index(w[i])];
        ++i;
      }
      if (i == j) {
        if (f != b) {
          coincidence(f, b);
        }
        return true;
      }
      while (j > i && table_[b][letter_index(w[j - 1].inverse())] != kNoVertex) {
        b = table_[b][letter_index(w[j - 1].inverse())];
        --j;
      }
      if (i == j) {
        coincidence(f, b);
        return true;
      }
      if (j == i + 1) {
        std::size_t const li = letter_index(w[i]);
        table_[f][li] = b;
        table_[b][inv(li)] = f;
        if (++deductions_ > limits_.max_deductions) {
          return false;
        }
        return true;
      }
      if (!define(f, letter_index(w[i]))) {
        return false;
      }
      if (deductions_ > limits_.max_deductions) {
        return false;
      }
    }
  }

  ToddCoxeterResult result(bool complete) {
    ToddCoxeterResult out;
    out.cosets_defined = table_.size();
    out.deductions = deductions_;
    BallCut cut = bfs_ball(table_, rank_, rep(0), std::nullopt);
    out.graph = std::move(cut.graph);
    out.graph.ball_radius.reset();
    if (complete) {
      for (VertexId v = 0; v < out.graph.size(); ++v) {
        complete = complete && out.graph.full_star(v);
      }
    }
    out.complete = complete;
    out.graph.exact = complete;
    out.graph.certified_radius = 0;
    return out;
  }
};

}  // namespace detail

/// Coset enumeration of H = <subgroup> in G = <generators | relators>.
inline ToddCoxeterResult todd_coxeter(GroupPresentation const& p,
                                      SubgroupSpec const& s,
                                      ToddCoxeterLimits limits = {}) {
  detail::ToddCoxeter tc(p.rank(), limits);
  ToddCoxeterResult r = tc.run(p.relators, s.generators);
  r.graph.generator_names = p.generators;
  return r;
}

}  // namespace tame
