#include <catch_amalgamated.hpp>

#include <memory>
#include <random>

#include "oracles.hpp"
#include "tame/coset_ball.hpp"
#include "tame/stallings.hpp"
#include "tame/todd_coxeter.hpp"

using namespace tame;

namespace {

using EnginePtr = std::shared_ptr<NormalFormEngine const>;

EnginePtr share(NormalFormEngine e) {
  return std::make_shared<NormalFormEngine const>(std::move(e));
}

Word w(std::string const& text, std::vector<std::string> const& names = {"a", "b"}) {
  return parse_word(text, names);
}

SubgroupSpec words(std::vector<Word> gens) {
  SubgroupSpec s;
  s.generators = std::move(gens);
  return s;
}

void check_invariants(CosetGraph const& g) {
  CHECK(has_edge_symmetry(g));
  CHECK(has_consistent_depths(g));
  CHECK(respects_certification(g));
}

// Label-preserving map from the partial table onto the complete one.
bool maps_onto(CosetGraph const& partial, CosetGraph const& complete) {
  std::vector<VertexId> f(partial.size(), kNoVertex);
  f[0] = 0;
  std::vector<VertexId> stack{0};
  while (!stack.empty()) {
    VertexId const u = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i < partial.letters(); ++i) {
      VertexId const x = partial.table[u][i];
      if (x == kNoVertex) {
        continue;
      }
      VertexId const y = complete.table[f[u]][i];
      if (f[x] == kNoVertex) {
        f[x] = y;
        stack.push_back(x);
      } else if (f[x] != y) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

TEST_CASE("stallings folding examples") {
  auto const trivial = stallings_fold(2, {});
  CHECK(trivial.size() == 1);
  CHECK(trivial.edge_count() == 0);

  auto const a = stallings_fold(2, {w("a")});
  CHECK(a.size() == 1);
  CHECK(a.edge_count() == 1);

  auto const a2b = stallings_fold(2, {w("a^2"), w("b")});
  CHECK(a2b.size() == 2);
  CHECK(a2b.edge_count() == 3);
  CHECK(a2b.accepts(w("a^2*b*a^-2")));
  CHECK_FALSE(a2b.accepts(w("a*b*a^-1")));
  CHECK_FALSE(a2b.accepts(w("a*b")));

  auto const folded = stallings_fold(2, {w("a*b"), w("a*b^2")});
  CHECK(folded.accepts(w("b")));
}

TEST_CASE("stallings membership agrees with enumeration on random subgroups") {
  std::mt19937 rng(21);
  for (int k = 0; k < 10; ++k) {
    std::vector<Word> gens;
    std::size_t const n = 1 + rng() % 2;
    for (std::size_t i = 0; i < n; ++i) {
      gens.push_back(oracle::random_reduced_word(rng, 2, 1 + rng() % 3));
    }
    auto const fold = stallings_fold(2, gens);
    auto const elems = oracle::subgroup_elements(gens, 6, 12);
    for (std::size_t len = 0; len <= 6; ++len) {
      for (Word const& x : oracle::all_words(2, len)) {
        if (!is_reduced(x)) {
          continue;
        }
        REQUIRE(fold.accepts(x) == (elems.count(x) > 0));
      }
    }
  }
}

TEST_CASE("coset ball of Z is a path") {
  auto const g = coset_ball(share(NormalFormEngine::free(1)), {}, 3);
  CHECK(g.size() == 7);
  CHECK(g.geometric_edge_count() == 6);
  CHECK_FALSE(g.exact);
  CHECK(g.certified_radius == 3);
  check_invariants(g);
}

TEST_CASE("coset ball of the normal closure of b via its quotient") {
  SubgroupSpec s;
  IntMatrix m(1, 2);
  m(0, 1) = 1;
  s.quotient = share(NormalFormEngine::abelian(std::move(m)));
  auto const g = coset_ball(share(NormalFormEngine::free(2)), s, 2);
  REQUIRE(g.size() == 5);
  std::size_t a_edges = 0;
  std::size_t b_loops = 0;
  for (VertexId v = 0; v < g.size(); ++v) {
    a_edges += g.table[v][0] != kNoVertex ? 1 : 0;
    b_loops += g.table[v][2] == v ? 1 : 0;
  }
  CHECK(a_edges == 4);
  CHECK(b_loops == 5);
  check_invariants(g);

  // hand enumeration of the quotient <a,b|b>: depth d holds a^d and a^-d
  auto const oracle_ball = oracle::keyed_ball(2, 2, [](Word const& x) {
    return exponent_sums(x, 2)[0];
  });
  CHECK(oracle::rooted_isomorphic(g.table, oracle_ball.table));
}

TEST_CASE("finite quotient balls are exact") {
  auto const z2 = share(NormalFormEngine::abelian(2, parse_presentation("<a,b|[a,b]>").relators));
  auto const g = coset_ball(z2, words({w("a^2"), w("b^2")}), 2);
  CHECK(g.size() == 4);
  CHECK(g.exact);
  check_invariants(g);

  auto const e = share(NormalFormEngine::finite(parse_presentation("<a,b|a^2,b^3,a*b*a*b>")));
  auto const s3 = coset_ball(e, {}, 5);
  CHECK(s3.size() == 6);
  CHECK(s3.exact);
}

TEST_CASE("coset ids follow breadth-first letter order") {
  auto const g = coset_ball(share(NormalFormEngine::free(2)), {}, 1);
  REQUIRE(g.size() == 5);
  CHECK(g.table[0][0] == 1);  // a
  CHECK(g.table[0][1] == 2);  // a^-1
  CHECK(g.table[0][2] == 3);  // b
  CHECK(g.table[0][3] == 4);  // b^-1
}

TEST_CASE("coset ball merging agrees with the folded graph") {
  auto const f2 = share(NormalFormEngine::free(2));
  for (auto const& gens : std::vector<std::vector<Word>>{{w("a")}, {w("a^2"), w("b")}, {w("a*b*a^-1")}}) {
    auto const g = coset_ball(f2, words(gens), 3);
    auto const fold = stallings_fold(2, gens);
    std::vector<Word> reps;
    for (std::size_t n = 0; n <= 3; ++n) {
      for (Word const& x : oracle::all_words(2, n)) {
        if (is_reduced(x)) {
          reps.push_back(x);
        }
      }
    }
    for (Word const& u : reps) {
      for (Word const& v : reps) {
        bool const same = g.follow(0, u) == g.follow(0, v);
        REQUIRE(same == fold.accepts(free_reduce(multiply(u, inverse(v)))));
      }
    }
    check_invariants(g);
  }
}

TEST_CASE("membership that cannot be decided is reported") {
  auto const za = share(NormalFormEngine::finite(parse_presentation("<a|a^2>")));
  auto const zb = share(NormalFormEngine::finite(parse_presentation("<b|b^3>")));
  auto const e = share(NormalFormEngine::free_product(za, zb));
  CHECK_THROWS_AS(coset_ball(e, words({w("a"), w("b*a*b^-1")}), 3), MembershipUnknown);
}

TEST_CASE("coset ball vertex limit") {
  CosetBallOptions o;
  o.max_vertices = 10;
  CHECK_THROWS_AS(coset_ball(share(NormalFormEngine::free(2)), {}, 3, o), LimitExceeded);
}

TEST_CASE("todd-coxeter examples") {
  auto const z6 = todd_coxeter(parse_presentation("<a|a^6>"), {}, {});
  CHECK(z6.complete);
  CHECK(z6.graph.size() == 6);
  CHECK(z6.graph.exact);

  auto const p = parse_presentation("<a,b|a^2,b^3>");
  auto const whole = todd_coxeter(p, words({w("a"), w("b")}), {});
  CHECK(whole.complete);
  CHECK(whole.graph.size() == 1);

  ToddCoxeterLimits limits;
  limits.max_cosets = 2000;
  auto const ab = todd_coxeter(p, words({w("a*b")}), limits);
  CHECK_FALSE(ab.complete);
  CHECK(ab.graph.certified_radius == 0);
  CHECK(has_edge_symmetry(ab.graph));
}

TEST_CASE("partial enumerations map onto the complete coset graph") {
  auto const p = parse_presentation("<a,b|a^2,b^3,a*b*a*b*a*b*a*b*a*b>");
  auto const full = todd_coxeter(p, {}, {});
  REQUIRE(full.complete);
  REQUIRE(full.graph.size() == 60);
  for (std::size_t limit : {10, 25, 40, 59}) {
    ToddCoxeterLimits tight;
    tight.max_cosets = limit;
    auto const part = todd_coxeter(p, {}, tight);
    CHECK_FALSE(part.complete);
    CHECK(maps_onto(part.graph, full.graph));
  }
}

TEST_CASE("balls cut from tables") {
  auto const full = todd_coxeter(parse_presentation("<a|a^6>"), {}, {});
  auto const b = ball_from_table(full.graph, full.complete, 2);
  CHECK(b.size() == 5);
  CHECK_FALSE(b.exact);
  CHECK(b.certified_radius == 2);
  auto const all = ball_from_table(full.graph, full.complete, 3);
  CHECK(all.size() == 6);
  CHECK(all.exact);
  auto const uncertified = ball_from_table(full.graph, false, 3);
  CHECK(uncertified.certified_radius == 0);
}

TEST_CASE("flower oracle agrees with enumeration and with folding") {
  std::mt19937 rng(8);
  for (int k = 0; k < 15; ++k) {
    std::vector<Word> gens;
    std::size_t const n = 1 + rng() % 2;
    for (std::size_t i = 0; i < n; ++i) {
      gens.push_back(oracle::random_reduced_word(rng, 2, 2 + rng() % 3));
    }
    oracle::FlowerOracle const flower(gens);
    auto const fold = stallings_fold(2, gens);
    auto const elems = oracle::subgroup_elements(gens, 4, 10);
    for (std::size_t len = 0; len <= 7; ++len) {
      for (Word const& x : oracle::all_words(2, len)) {
        if (!is_reduced(x)) {
          continue;
        }
        REQUIRE(fold.accepts(x) == flower.contains(x));
        if (len <= 4 && elems.count(x) > 0) {
          REQUIRE(flower.contains(x));
        }
      }
    }
  }
}
