#pragma once

#include <cstddef>
#include <memory>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tame/analyzer.hpp"
#include "tame/coset_ball.hpp"
#include "tame/engine.hpp"
#include "tame/error.hpp"
#include "tame/presentation.hpp"
#include "tame/todd_coxeter.hpp"

namespace tame {

enum class EngineChoice { Auto, Free, Abelian, FreeProduct, ToddCoxeter };

inline EngineChoice parse_engine_choice(std::string const& s) {
  if (s == "auto") return EngineChoice::Auto;
  if (s == "free") return EngineChoice::Free;
  if (s == "abelian") return EngineChoice::Abelian;
  if (s == "freeproduct") return EngineChoice::FreeProduct;
  if (s == "todd-coxeter") return EngineChoice::ToddCoxeter;
  throw Error("unknown engine '" + s +
              "' (expected auto, free, abelian, freeproduct or todd-coxeter)");
}

/// A presentation together with the engine that solves its word problem.
/// `engine` is null in Todd-Coxeter mode, where balls come from coset
/// enumeration and carry no certificate unless the enumeration completes.
struct ResolvedGroup {
  GroupPresentation presentation;
  std::shared_ptr<NormalFormEngine const> engine;

  std::string describe() const {
    return engine ? engine->describe() : "coset enumeration";
  }
};

namespace detail {

inline bool is_commutator(Word const& r) {
  return r.size() == 4 && r[0].gen != r[1].gen && r[2] == r[0].inverse() &&
         r[3] == r[1].inverse();
}

inline bool all_commute(GroupPresentation const& p) {
  std::set<std::pair<int, int>> pairs;
  for (Word const& r : p.relators) {
    Word const c = cyclically_reduce(r);
    if (is_commutator(c)) {
      pairs.emplace(std::min(c[0].gen, c[1].gen), std::max(c[0].gen, c[1].gen));
    }
  }
  std::size_t const n = p.rank();
  return pairs.size() == n * (n - (n > 0 ? 1 : 0)) / 2;
}

/// Generator classes: generators sharing a relator are in the same class.
/// Classes are numbered by least generator.
inline std::vector<int> generator_classes(GroupPresentation const& p) {
  std::vector<int> parent(p.rank());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) {
      v = parent[v] = parent[parent[v]];
    }
    return v;
  };
  for (Word const& r : p.relators) {
    for (Letter l : r) {
      int const a = find(r.front().gen);
      int const b = find(l.gen);
      parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::vector<int> label(p.rank(), -1);
  std::vector<int> out(p.rank());
  int next = 0;
  for (std::size_t g = 0; g < p.rank(); ++g) {
    int const root = find(static_cast<int>(g));
    if (label[root] < 0) {
      label[root] = next++;
    }
    out[g] = label[root];
  }
  return out;
}

/// Subpresentation on the generators with mask[g] set; every relator must
/// lie entirely inside or entirely outside.
inline GroupPresentation sub_presentation(GroupPresentation const& p,
                                          std::vector<bool> const& mask) {
  GroupPresentation out;
  std::vector<int> local(p.rank(), -1);
  for (std::size_t g = 0; g < p.rank(); ++g) {
    if (mask[g]) {
      local[g] = static_cast<int>(out.generators.size());
      out.generators.push_back(p.generators[g]);
    }
  }
  for (Word const& r : p.relators) {
    if (!mask[static_cast<std::size_t>(r.front().gen)]) {
      continue;
    }
    Word w;
    for (Letter l : r) {
      w.push_back({local[static_cast<std::size_t>(l.gen)], l.sign});
    }
    out.relators.push_back(std::move(w));
  }
  return out;
}

inline std::shared_ptr<NormalFormEngine const> auto_engine(
    GroupPresentation const& p, ToddCoxeterLimits const& limits);

inline std::shared_ptr<NormalFormEngine const> split_free_product(
    GroupPresentation const& p, ToddCoxeterLimits const& limits) {
  auto const cls = generator_classes(p);
  std::vector<bool> left(p.rank());
  std::vector<int> side(p.rank());
  for (std::size_t g = 0; g < p.rank(); ++g) {
    left[g] = cls[g] == 0;
    side[g] = left[g] ? 0 : 1;
  }
  std::vector<bool> right(p.rank());
  for (std::size_t g = 0; g < p.rank(); ++g) {
    right[g] = !left[g];
  }
  auto l = auto_engine(sub_presentation(p, left), limits);
  auto r = auto_engine(sub_presentation(p, right), limits);
  if (!l || !r) {
    return nullptr;
  }
  return std::make_shared<NormalFormEngine const>(
      NormalFormEngine::free_product(std::move(l), std::move(r), side));
}

inline std::shared_ptr<NormalFormEngine const> auto_engine(
    GroupPresentation const& p, ToddCoxeterLimits const& limits) {
  if (p.relators.empty()) {
    return std::make_shared<NormalFormEngine const>(
        NormalFormEngine::free(p.rank()));
  }
  if (all_commute(p)) {
    return std::make_shared<NormalFormEngine const>(
        NormalFormEngine::abelian(p.rank(), p.relators));
  }
  auto const cls = generator_classes(p);
  if (std::any_of(cls.begin(), cls.end(), [](int c) { return c > 0; })) {
    if (auto fp = split_free_product(p, limits)) {
      return fp;
    }
  }
  ToddCoxeterResult r = todd_coxeter(p, SubgroupSpec{}, limits);
  if (r.complete) {
    return std::make_shared<NormalFormEngine const>(
        NormalFormEngine::finite(p, limits));
  }
  return nullptr;
}

}  // namespace detail

/// Picks a word-problem engine for `p`. Auto resolution: no relators gives
/// a free group; a commutator relator for every generator pair gives an
/// abelian group; relators in disjoint generator sets give a free product
/// of resolved factors; a closing coset enumeration gives a finite group;
/// anything else falls back to Todd-Coxeter mode.
inline ResolvedGroup resolve_engine(GroupPresentation p, EngineChoice choice,
                                    ToddCoxeterLimits limits = {}) {
  ResolvedGroup out;
  switch (choice) {
    case EngineChoice::Auto:
      out.engine = detail::auto_engine(p, limits);
      break;
    case EngineChoice::Free:
      if (!p.relators.empty()) {
        throw Error("free engine requested but the presentation has relators");
      }
      out.engine = std::make_shared<NormalFormEngine const>(
          NormalFormEngine::free(p.rank()));
      break;
    case EngineChoice::Abelian:
      if (!detail::all_commute(p)) {
        throw Error(
            "abelian engine requested but some generator pair has no "
            "commutator relator");
      }
      out.engine = std::make_shared<NormalFormEngine const>(
          NormalFormEngine::abelian(p.rank(), p.relators));
      break;
    case EngineChoice::FreeProduct: {
      auto const cls = detail::generator_classes(p);
      if (std::none_of(cls.begin(), cls.end(), [](int c) { return c > 0; })) {
        throw MixedRelator(
            "free product engine requested but the relators connect all "
            "generators into one factor");
      }
      out.engine = detail::split_free_product(p, limits);
      if (!out.engine) {
        throw LimitExceeded("a free factor has no exact engine");
      }
      break;
    }
    case EngineChoice::ToddCoxeter:
      break;
  }
  out.presentation = std::move(p);
  return out;
}

struct BallSourceOptions {
  ToddCoxeterLimits limits;
  CosetBallOptions ball;
};

/// Ball producer for Cayley(G, H). Exact engines build certified balls by
/// normal forms; Todd-Coxeter mode enumerates once and cuts balls from the
/// table, certified only when the enumeration completed.
inline BallSource make_ball_source(ResolvedGroup const& g,
                                   SubgroupSpec const& s,
                                   BallSourceOptions options = {}) {
  BallSource src;
  src.relators = g.presentation.relators;
  auto names = g.presentation.generators;
  if (g.engine) {
    if (g.engine->rank() != g.presentation.rank()) {
      throw AlphabetError("engine rank does not match the presentation");
    }
    auto engine = g.engine;
    src.ball = [engine, s, names, options](int r) {
      CosetGraph b = coset_ball(engine, s, r, options.ball);
      b.generator_names = names;
      return b;
    };
    return src;
  }
  if (s.normal()) {
    throw Error("Todd-Coxeter mode needs the subgroup as a list of words");
  }
  auto table = std::make_shared<ToddCoxeterResult const>(
      todd_coxeter(g.presentation, s, options.limits));
  src.ball = [table](int r) {
    return ball_from_table(table->graph, table->complete, r);
  };
  return src;
}

}  // namespace tame
