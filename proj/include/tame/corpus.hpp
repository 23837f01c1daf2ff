#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tame/analyzer.hpp"
#include "tame/decomposition.hpp"
#include "tame/engine.hpp"
#include "tame/error.hpp"
#include "tame/presentation.hpp"
#include "tame/resolve.hpp"

namespace tame {

enum class Expectation { Tame, NonTame, LocallyTame, Open };

inline char const* to_string(Expectation e) {
  switch (e) {
    case Expectation::Tame:
      return "tame";
    case Expectation::NonTame:
      return "non-tame";
    case Expectation::LocallyTame:
      return "locally tame";
    case Expectation::Open:
      return "open";
  }
  return "?";
}

struct CaseSetup {
  ResolvedGroup group;
  SubgroupSpec subgroup;
};

struct CorpusCase {
  std::string name;
  std::string citation;
  Expectation expectation = Expectation::Open;
  std::string expected_verdict;
  std::string presentation;
  std::string subgroup;  // human-readable
  RemovalSpec removal;
  std::vector<int> radii;
  int margin = 2;
  std::size_t window = 3;
  /// Non-empty for cases checked by X/Y decomposition instead of a sweep.
  std::vector<int> decomposition_radii;
  std::function<CaseSetup()> setup;
};

namespace detail {

inline std::shared_ptr<NormalFormEngine const> share(NormalFormEngine e) {
  return std::make_shared<NormalFormEngine const>(std::move(e));
}

inline SubgroupSpec words(std::string const& text,
                          GroupPresentation const& p) {
  SubgroupSpec s;
  s.generators = parse_word_list(text, p.generators);
  return s;
}

inline std::vector<CorpusCase> build_corpus() {
  std::vector<CorpusCase> out;
  auto range = [](int a, int b) {
    std::vector<int> r;
    for (int i = a; i <= b; ++i) {
      r.push_back(i);
    }
    return r;
  };

  {
    CorpusCase c;
    c.name = "z-trivial";
    c.citation = "Z is locally tame; the line has two contractible ends";
    c.expectation = Expectation::Tame;
    c.expected_verdict = "Stable(0)";
    c.presentation = "<a|>";
    c.subgroup = "1";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.setup = [] {
      auto p = parse_presentation("<a|>");
      return CaseSetup{{p, share(NormalFormEngine::free(1))}, {}};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "free2-core-a";
    c.citation = "free groups are locally tame; core graph plus hanging trees";
    c.expectation = Expectation::Tame;
    c.expected_verdict = "Stable(0)";
    c.presentation = "<a,b|>";
    c.subgroup = "<a>";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.setup = [] {
      auto p = parse_presentation("<a,b|>");
      return CaseSetup{{p, share(NormalFormEngine::free(2))}, words("a", p)};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "grid-commutator";
    c.citation =
        "commutator subgroup F' of F2: the grid complex of horizontal and "
        "vertical lines; F' is non-tame in F";
    c.expectation = Expectation::NonTame;
    c.expected_verdict = "Growing";
    c.presentation = "<a,b|>";
    c.subgroup = "F' (normal, quotient Z^2)";
    c.removal = {0, 2};
    c.radii = range(5, 9);
    c.setup = [] {
      auto p = parse_presentation("<a,b|>");
      SubgroupSpec s;
      s.quotient = share(NormalFormEngine::abelian(IntMatrix(0, 2)));
      return CaseSetup{{p, share(NormalFormEngine::free(2))}, s};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "normal-closure-b";
    c.citation =
        "normal closure of b in F2 = <a^n b a^-n>: a line with a loop at "
        "every vertex; non-tame";
    c.expectation = Expectation::NonTame;
    c.expected_verdict = "Growing";
    c.presentation = "<a,b|>";
    c.subgroup = "<<b>> (normal, quotient Z)";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.setup = [] {
      auto p = parse_presentation("<a,b|>");
      IntMatrix m(1, 2);
      m(0, 1) = 1;
      SubgroupSpec s;
      s.quotient = share(NormalFormEngine::abelian(std::move(m)));
      return CaseSetup{{p, share(NormalFormEngine::free(2))}, s};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "z2-trivial";
    c.citation =
        "every subgroup of a finitely generated abelian group is tame; the "
        "plane has one end with Z-annulus complements";
    c.expectation = Expectation::Tame;
    c.expected_verdict = "Stable(1)";
    c.presentation = "<a,b|[a,b]>";
    c.subgroup = "1";
    c.removal = {0, 2};
    c.radii = range(5, 9);
    c.setup = [] {
      auto p = parse_presentation("<a,b|[a,b]>");
      return CaseSetup{{p, share(NormalFormEngine::abelian(2, p.relators))},
                       {}};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "abelian-torsion";
    c.citation = "Z x Z/2: every subgroup of a finitely generated abelian "
                 "group is tame";
    c.expectation = Expectation::Tame;
    c.expected_verdict = "Stable(0)";
    c.presentation = "<a,b|b^2,[a,b]>";
    c.subgroup = "1";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.setup = [] {
      auto p = parse_presentation("<a,b|b^2,[a,b]>");
      return CaseSetup{{p, share(NormalFormEngine::abelian(2, p.relators))},
                       {}};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "product-k-x-z";
    c.citation =
        "subgroups of K x Z with K = Z: H = (H meet K) x t^i, tame in the "
        "product";
    c.expectation = Expectation::Tame;
    c.expected_verdict = "Stable(1)";
    c.presentation = "<k,t|[k,t]>";
    c.subgroup = "<t^2>";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.setup = [] {
      auto p = parse_presentation("<k,t|[k,t]>");
      auto e = share(NormalFormEngine::direct_product(
          share(NormalFormEngine::free(1)), share(NormalFormEngine::free(1))));
      return CaseSetup{{p, e}, words("t^2", p)};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "modular-free-product";
    c.citation =
        "Z/2 * Z/3: a free product of locally tame groups is locally tame; "
        "all but finitely many factor components are generic";
    c.expectation = Expectation::LocallyTame;
    c.expected_verdict = "bounded non-generic count";
    c.presentation = "<a,b|a^2,b^3>";
    c.subgroup = "1";
    c.removal = {0, 1};
    c.radii = range(4, 8);
    c.decomposition_radii = {3, 4, 5};
    c.setup = [] {
      auto p = parse_presentation("<a,b|a^2,b^3>");
      GroupPresentation pa{{"a"}, {p.relators[0]}};
      GroupPresentation pb{{"b"}, {{{0, 1}, {0, 1}, {0, 1}}}};
      auto e = share(NormalFormEngine::free_product(
          share(NormalFormEngine::finite(pa)),
          share(NormalFormEngine::finite(pb))));
      return CaseSetup{{p, e}, {}};
    };
    out.push_back(std::move(c));
  }
  {
    CorpusCase c;
    c.name = "thompson-finite";
    c.citation =
        "Thompson's group F, finite presentation: tameness of the trivial "
        "subgroup is open";
    c.expectation = Expectation::Open;
    c.expected_verdict = "Inconclusive(uncertified)";
    c.presentation = "<A,B|[A*B^-1,A^-1*B*A],[A*B^-1,A^-2*B*A^2]>";
    c.subgroup = "1";
    c.removal = {0, 1};
    c.radii = range(4, 7);
    c.setup = [] {
      auto p = parse_presentation(
          "<A,B|[A*B^-1,A^-1*B*A],[A*B^-1,A^-2*B*A^2]>");
      return CaseSetup{{p, nullptr}, {}};
    };
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace detail

/// The built-in cases, in listing order.
inline std::vector<CorpusCase> const& corpus() {
  static std::vector<CorpusCase> const cases = detail::build_corpus();
  return cases;
}

inline CorpusCase const& corpus_case(std::string const& name) {
  for (auto const& c : corpus()) {
    if (c.name == name) {
      return c;
    }
  }
  throw Error("unknown corpus case '" + name + "'");
}

/// Whether a sweep verdict is consistent with an expectation. Inconclusive
/// never disagrees.
inline bool agrees(Expectation e, Verdict const& v) {
  switch (v.kind) {
    case Verdict::Kind::Inconclusive:
      return true;
    case Verdict::Kind::Stable:
      return e != Expectation::NonTame;
    case Verdict::Kind::Growing:
      return e == Expectation::NonTame || e == Expectation::Open;
  }
  return false;
}

/// Bounded non-generic counts: no radius exceeds the count at the first.
inline bool agrees(Expectation e,
                   std::vector<FactorComponentReport> const& reports) {
  if (e == Expectation::Open || reports.empty()) {
    return true;
  }
  std::size_t const first = reports.front().non_generic();
  return std::all_of(reports.begin(), reports.end(), [&](auto const& r) {
    return r.non_generic() <= first;
  });
}

struct CorpusRun {
  std::optional<std::vector<Word>> subgroup_words;
  std::optional<int> removal_radius;
  std::optional<std::vector<int>> radii;
  std::optional<std::size_t> window;
  std::optional<int> margin;
  BallSourceOptions limits;
};

struct CorpusResult {
  std::string name;
  Expectation expectation = Expectation::Open;
  std::optional<SweepReport> sweep;
  std::optional<Verdict> verdict;
  std::vector<FactorComponentReport> decomposition;
  bool agreement = true;
};

inline CaseSetup setup_case(CorpusCase const& c, CorpusRun const& run) {
  CaseSetup s = c.setup();
  if (run.subgroup_words) {
    s.subgroup = SubgroupSpec{};
    s.subgroup.generators = *run.subgroup_words;
  }
  return s;
}

inline SweepReport sweep_case(CorpusCase const& c, CaseSetup const& s,
                              CorpusRun const& run) {
  RemovalSpec rm = c.removal;
  if (run.removal_radius) {
    rm.radius = *run.removal_radius;
  }
  return radius_sweep(make_ball_source(s.group, s.subgroup, run.limits), rm,
                      run.radii.value_or(c.radii),
                      run.margin.value_or(c.margin));
}

inline std::vector<FactorComponentReport> decompose_case(
    CaseSetup const& s, std::vector<int> const& radii,
    BallSourceOptions const& limits = {}) {
  if (!s.group.engine) {
    throw Error("decomposition needs an exact free product engine");
  }
  BallSource const src = make_ball_source(s.group, s.subgroup, limits);
  std::vector<FactorComponentReport> out;
  for (int r : radii) {
    out.push_back(
        xy_decomposition(attach_relator_cells(src.ball(r), src.relators),
                         *s.group.engine));
  }
  return out;
}

/// Runs a case with its canned parameters (optionally overridden) and
/// compares the outcome with the case's expectation.
inline CorpusResult run_corpus_case(std::string const& name,
                                    CorpusRun const& run = {}) {
  CorpusCase const& c = corpus_case(name);
  CaseSetup const s = setup_case(c, run);
  CorpusResult res;
  res.name = c.name;
  res.expectation = c.expectation;
  if (!c.decomposition_radii.empty()) {
    res.decomposition =
        decompose_case(s, run.radii.value_or(c.decomposition_radii),
                       run.limits);
    res.agreement = agrees(c.expectation, res.decomposition);
    return res;
  }
  res.sweep = sweep_case(c, s, run);
  res.verdict = classify_growth(*res.sweep, run.window.value_or(c.window));
  res.agreement = agrees(c.expectation, *res.verdict);
  return res;
}

}  // namespace tame
