#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "tame/coset_graph.hpp"
#include "tame/error.hpp"
#include "tame/homology.hpp"
#include "tame/tietze.hpp"
#include "tame/two_complex.hpp"

namespace tame {

/// The finite subcomplex removed before looking at complement components:
/// the full subcomplex on vertices within `radius` of `center`.
struct RemovalSpec {
  VertexId center = 0;
  int radius = 0;
};

struct ComplementComponent {
  std::size_t id = 0;
  std::vector<VertexId> vertices;  // ids in the truncated complex
  std::size_t b1 = 0;
  /// Cycles made of edges explored from depth <= r - margin, modulo all
  /// face boundaries of the component.
  std::size_t b1_interior = 0;
  /// Generator count of the simplified pi_1 presentation (an upper bound on
  /// the rank of pi_1; b1 is the matching lower bound).
  std::size_t generator_bound = 0;
  bool touches_frontier = false;
  VertexId anchor = 0;  // least vertex id
};

namespace detail {

inline std::vector<int> removal_distances(TwoComplex const& c,
                                          RemovalSpec const& rm) {
  if (rm.center >= c.vertex_count()) {
    throw Error("removal center is not a vertex of the complex");
  }
  if (c.basepoint && rm.center == *c.basepoint) {
    return c.depth;
  }
  return distances_from(c, rm.center);
}

}  // namespace detail

/// Components of (truncated complex) - (ball of radius rm.radius about
/// rm.center), ordered by anchor.
inline std::vector<ComplementComponent> complement_components(
    TwoComplex const& c, RemovalSpec const& rm, int margin = 2) {
  if (!c.truncation) {
    throw Error("complement analysis needs a truncated complex");
  }
  if (rm.radius < 0) {
    throw Error("removal radius must be nonnegative");
  }
  int const r = c.truncation->radius;
  if (r <= rm.radius) {
    throw Error("removal radius " + std::to_string(rm.radius) +
                " swallows the whole truncation of radius " +
                std::to_string(r));
  }
  auto const dist = detail::removal_distances(c, rm);
  std::vector<bool> keep(c.vertex_count());
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    keep[v] = dist[v] < 0 || dist[v] > rm.radius;
  }
  TwoComplex const rest = restrict_complex(c, keep);
  Components const comps = connected_components(rest);

  std::vector<ComplementComponent> out(comps.count);
  std::vector<std::vector<bool>> members(comps.count,
                                         std::vector<bool>(rest.vertex_count()));
  for (VertexId v = 0; v < rest.vertex_count(); ++v) {
    std::size_t const k = comps.of_vertex[v];
    members[k][v] = true;
    out[k].vertices.push_back(rest.vertex_source[v]);
  }
  for (std::size_t k = 0; k < comps.count; ++k) {
    ComplementComponent& cc = out[k];
    cc.id = k;
    cc.anchor = cc.vertices.front();
    TwoComplex const piece = restrict_complex(rest, members[k]);
    cc.b1 = betti_one(piece);
    std::vector<bool> interior(piece.edge_count());
    for (std::size_t i = 0; i < piece.edge_count(); ++i) {
      auto const& e = piece.edges[i];
      interior[i] =
          std::min(piece.depth[e.tail], piece.depth[e.head]) <= r - margin;
    }
    cc.b1_interior = supported_betti(piece, interior);
    for (int d : piece.depth) {
      cc.touches_frontier = cc.touches_frontier || d == r;
    }
    cc.generator_bound =
        simplify_presentation(pi1_spanning_tree_presentation(piece, 0))
            .generators.size();
  }
  return out;
}

/// Produces the certified ball of a given radius and the relators to attach.
struct BallSource {
  std::function<CosetGraph(int)> ball;
  std::vector<Word> relators;
};

struct RadiusSample {
  int radius = 0;
  bool certified = false;
  std::size_t vertices = 0;
  std::vector<ComplementComponent> components;
};

/// A chain of matched components across consecutive radii.
struct Family {
  VertexId anchor = 0;  // anchor at the first radius where it appears
  std::size_t first = 0;  // index into SweepReport::radii
  std::vector<std::size_t> b1_interior;
  std::vector<std::size_t> b1_total;
  std::vector<bool> touches_frontier;
  /// Set when the family's component merged into another family's.
  std::optional<std::size_t> merged_at;

  std::size_t last() const { return first + b1_total.size() - 1; }
};

struct SweepReport {
  RemovalSpec removal;
  int margin = 2;
  std::vector<int> radii;
  std::vector<RadiusSample> samples;
  std::vector<Family> families;
  /// Radius-step indices i (matching radii[i] -> radii[i+1]) at which a
  /// component merged or appeared without predecessor.
  std::vector<std::size_t> unmatched_steps;

  bool certified() const {
    return std::all_of(samples.begin(), samples.end(),
                       [](auto const& s) { return s.certified; });
  }
};

inline RadiusSample sample_radius(BallSource const& source,
                                  RemovalSpec const& rm, int radius,
                                  int margin) {
  CosetGraph const g = source.ball(radius);
  TwoComplex const c = attach_relator_cells(g, source.relators);
  RadiusSample s;
  s.radius = radius;
  s.certified = g.exact || g.certified_radius >= radius;
  s.vertices = g.size();
  s.components = complement_components(c, rm, margin);
  return s;
}

/// Builds balls at each radius, computes complement components and matches
/// them across consecutive radii by anchor containment. Radii are processed
/// concurrently; the report does not depend on the schedule.
inline SweepReport radius_sweep(BallSource const& source, RemovalSpec rm,
                                std::vector<int> const& radii, int margin = 2) {
  if (radii.empty()) {
    throw Error("radius sweep needs at least one radius");
  }
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (radii[i] <= radii[i - 1]) {
      throw Error("radii must be strictly increasing");
    }
  }
  if (radii.front() <= rm.radius + margin) {
    throw Error("smallest radius " + std::to_string(radii.front()) +
                " must exceed removal radius + margin = " +
                std::to_string(rm.radius + margin));
  }
  SweepReport rep;
  rep.removal = rm;
  rep.margin = margin;
  rep.radii = radii;

  std::vector<std::future<RadiusSample>> jobs;
  for (int r : radii) {
    jobs.push_back(std::async(std::launch::async, [&source, rm, r, margin] {
      return sample_radius(source, rm, r, margin);
    }));
  }
  for (auto& j : jobs) {
    rep.samples.push_back(j.get());
  }

  // family index owning each component of the previous sample
  std::vector<std::size_t> owner;
  for (auto const& cc : rep.samples.front().components) {
    Family f;
    f.anchor = cc.anchor;
    f.first = 0;
    f.b1_interior.push_back(cc.b1_interior);
    f.b1_total.push_back(cc.b1);
    f.touches_frontier.push_back(cc.touches_frontier);
    owner.push_back(rep.families.size());
    rep.families.push_back(std::move(f));
  }
  for (std::size_t i = 0; i + 1 < rep.samples.size(); ++i) {
    auto const& prev = rep.samples[i].components;
    auto const& next = rep.samples[i + 1].components;
    std::map<VertexId, std::size_t> where;
    for (std::size_t k = 0; k < next.size(); ++k) {
      for (VertexId v : next[k].vertices) {
        where.emplace(v, k);
      }
    }
    std::vector<std::size_t> next_owner(next.size(), kNoVertex);
    bool unmatched = false;
    for (std::size_t k = 0; k < prev.size(); ++k) {
      std::size_t const fam = owner[k];
      auto it = where.find(prev[k].anchor);
      if (it == where.end()) {
        unmatched = true;
        continue;
      }
      std::size_t const succ = it->second;
      if (next_owner[succ] == kNoVertex) {
        next_owner[succ] = fam;
        Family& f = rep.families[fam];
        f.b1_interior.push_back(next[succ].b1_interior);
        f.b1_total.push_back(next[succ].b1);
        f.touches_frontier.push_back(next[succ].touches_frontier);
      } else {
        rep.families[fam].merged_at = i + 1;
        unmatched = true;
      }
    }
    for (std::size_t k = 0; k < next.size(); ++k) {
      if (next_owner[k] == kNoVertex) {
        unmatched = true;
        Family f;
        f.anchor = next[k].anchor;
        f.first = i + 1;
        f.b1_interior.push_back(next[k].b1_interior);
        f.b1_total.push_back(next[k].b1);
        f.touches_frontier.push_back(next[k].touches_frontier);
        next_owner[k] = rep.families.size();
        rep.families.push_back(std::move(f));
      }
    }
    if (unmatched) {
      rep.unmatched_steps.push_back(i);
    }
    owner = std::move(next_owner);
  }
  return rep;
}

using Rational = boost::rational<std::int64_t>;

struct Verdict {
  enum class Kind { Stable, Growing, Inconclusive };
  Kind kind = Kind::Inconclusive;
  /// Stable: plateau per family. Growing: last-step increment per family.
  std::vector<std::int64_t> values;
  std::string reason;

  /// One-line form: "Stable(1)", "Growing(4)", "Inconclusive(uncertified)".
  /// Equal per-family values are printed once.
  std::string text() const {
    if (kind == Kind::Inconclusive) {
      return "Inconclusive(" + reason + ")";
    }
    std::string out = kind == Kind::Stable ? "Stable(" : "Growing(";
    bool const uniform =
        std::all_of(values.begin(), values.end(),
                    [&](auto v) { return v == values.front(); });
    if (uniform && !values.empty()) {
      out += std::to_string(values.front());
    } else {
      for (std::size_t i = 0; i < values.size(); ++i) {
        out += (i ? "," : "") + std::to_string(values[i]);
      }
    }
    return out + ")";
  }
};

/// Finite-scale growth classification over the last `window` sweep steps.
/// Stable: every family alive over the window has constant interior b1.
/// Growing: some family's interior b1 grows by at least `threshold` at each
/// step of the window. Otherwise, or for uncertified or unmatched data,
/// Inconclusive.
inline Verdict classify_growth(SweepReport const& s, std::size_t window = 3,
                               Rational threshold = Rational(1)) {
  if (window == 0 || window + 1 > s.radii.size()) {
    throw Error("window of " + std::to_string(window) +
                " steps needs at least " + std::to_string(window + 1) +
                " radii, sweep has " + std::to_string(s.radii.size()));
  }
  Verdict v;
  if (!s.certified()) {
    v.reason = "uncertified";
    return v;
  }
  std::size_t const last = s.radii.size() - 1;
  std::size_t const from = last - window;
  for (std::size_t step : s.unmatched_steps) {
    if (step >= from) {
      v.reason = "unmatched components";
      return v;
    }
  }
  std::vector<Family const*> alive;
  for (auto const& f : s.families) {
    if (f.first <= from && f.last() == last) {
      alive.push_back(&f);
    }
  }
  auto at = [&](Family const& f, std::size_t i) {
    return static_cast<std::int64_t>(f.b1_interior[i - f.first]);
  };
  bool growing = false;
  for (Family const* f : alive) {
    bool all = true;
    for (std::size_t i = from; i < last; ++i) {
      all = all && Rational(at(*f, i + 1) - at(*f, i)) >= threshold;
    }
    growing = growing || all;
  }
  if (growing) {
    v.kind = Verdict::Kind::Growing;
    for (Family const* f : alive) {
      v.values.push_back(at(*f, last) - at(*f, last - 1));
    }
    return v;
  }
  bool stable = true;
  for (Family const* f : alive) {
    for (std::size_t i = from; i < last; ++i) {
      stable = stable && at(*f, i + 1) == at(*f, i);
    }
  }
  if (stable) {
    v.kind = Verdict::Kind::Stable;
    for (Family const* f : alive) {
      v.values.push_back(at(*f, last));
    }
    return v;
  }
  v.reason = "oscillation";
  return v;
}

}  // namespace tame
