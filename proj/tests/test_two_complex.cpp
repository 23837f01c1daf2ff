#include <catch_amalgamated.hpp>

#include <algorithm>
#include <memory>
#include <random>
#include <set>

#include "oracles.hpp"
#include "tame/corpus.hpp"
#include "tame/homology.hpp"
#include "tame/tietze.hpp"
#include "tame/two_complex.hpp"

using namespace tame;

namespace {

std::shared_ptr<NormalFormEngine const> z2_engine() {
  return std::make_shared<NormalFormEngine const>(
      NormalFormEngine::abelian(2, parse_presentation("<a,b|[a,b]>").relators));
}

TwoComplex z2_ball(int r) {
  auto const g = coset_ball(z2_engine(), {}, r);
  return attach_relator_cells(g, parse_presentation("<a,b|[a,b]>").relators);
}

// Unit squares of Z^2 with all four corners in |x| + |y| <= r.
std::size_t lattice_squares(int r) {
  std::size_t n = 0;
  for (int x = -r; x <= r; ++x) {
    for (int y = -r; y <= r; ++y) {
      bool inside = true;
      for (int dx : {0, 1}) {
        for (int dy : {0, 1}) {
          inside = inside && std::abs(x + dx) + std::abs(y + dy) <= r;
        }
      }
      n += inside ? 1 : 0;
    }
  }
  return n;
}

CosetGraph single_loop() {
  CosetGraph g;
  g.rank = 1;
  g.generator_names = {"a"};
  g.add_vertex(0, {});
  g.set_edge(0, {0, 1}, 0);
  g.exact = true;
  return g;
}

}  // namespace

TEST_CASE("free group graphs get no faces") {
  auto const g = coset_ball(std::make_shared<NormalFormEngine const>(NormalFormEngine::free(2)), {}, 3);
  auto const c = attach_relator_cells(g, {});
  CHECK(c.face_count() == 0);
  CHECK(betti_one(c) == 0);
}

TEST_CASE("Z^2 ball faces match trace enumeration and lattice counts") {
  auto const g = coset_ball(z2_engine(), {}, 2);
  auto const relator = parse_presentation("<a,b|[a,b]>").relators[0];
  std::size_t closed = 0;
  for (VertexId v = 0; v < g.size(); ++v) {
    VertexId at = v;
    for (Letter l : relator) {
      at = at == kNoVertex ? kNoVertex : g.target(at, l);
    }
    closed += at == v ? 1 : 0;
  }
  auto const c = attach_relator_cells(g, {relator});
  CHECK(c.face_count() == closed);
  CHECK(c.face_count() == lattice_squares(2));
  CHECK(c.face_count() == 4);
  CHECK(c.vertex_count() == 13);
  for (Face const& f : c.faces) {
    CHECK(c.start(f.boundary.front()) == f.base);
    CHECK(c.end(f.boundary.back()) == f.base);
    CHECK(f.boundary.size() == relator.size());
  }
  CHECK(c.face_count() <= c.vertex_count() * 1);
  CHECK(c.skipped_traces == c.vertex_count() - c.face_count());
}

TEST_CASE("Z/2 quotient complex") {
  auto const c = attach_relator_cells(single_loop(), parse_presentation("<a|a^2>").relators);
  REQUIRE(c.face_count() == 1);
  CHECK(c.faces[0].boundary.size() == 2);
  CHECK(c.faces[0].boundary[0].edge == c.faces[0].boundary[1].edge);
  CHECK(betti_one(c) == 0);

  auto const p = pi1_spanning_tree_presentation(c, 0);
  REQUIRE(p.rank() == 1);
  REQUIRE(p.relators.size() == 1);
  CHECK(p.relators[0] == Word{{0, 1}, {0, 1}});
  CHECK(simplify_presentation(p).rank() == 1);
}

TEST_CASE("betti numbers of small complexes") {
  auto const loop = attach_relator_cells(single_loop(), {});
  CHECK(betti_one(loop) == 1);

  CosetGraph wedge;
  wedge.rank = 2;
  wedge.add_vertex(0, {});
  wedge.set_edge(0, {0, 1}, 0);
  wedge.set_edge(0, {1, 1}, 0);
  auto const c = attach_relator_cells(wedge, {});
  CHECK(betti_one(c) == 2);
  auto const p = pi1_spanning_tree_presentation(c, 0);
  CHECK(p.rank() == 2);
  CHECK(p.relators.empty());
}

TEST_CASE("ball subcomplexes") {
  auto const c = z2_ball(4);
  auto const b = ball_subcomplex(c, 0, 2);
  CHECK(b.vertex_count() == 13);
  CHECK(b.face_count() == lattice_squares(2));
  REQUIRE(b.truncation);
  CHECK(b.truncation->frontier.size() == 8);

  auto const zero = ball_subcomplex(attach_relator_cells(single_loop(), {}), 0, 0);
  CHECK(zero.vertex_count() == 1);
  CHECK(zero.edge_count() == 1);

  auto const line = attach_relator_cells(
      coset_ball(std::make_shared<NormalFormEngine const>(NormalFormEngine::free(1)), {}, 5), {});
  CHECK(ball_subcomplex(line, 0, 3).vertex_count() == 7);

  CHECK_THROWS_AS(ball_subcomplex(c, c.vertex_count(), 1), Error);
  CHECK_THROWS_AS(ball_subcomplex(c, 0, -1), Error);
}

TEST_CASE("ball subcomplexes are monotone in the radius") {
  auto const c = z2_ball(5);
  for (int r = 0; r < 5; ++r) {
    auto const small = ball_subcomplex(c, 3, r);
    auto const big = ball_subcomplex(c, 3, r + 1);
    std::set<std::size_t> bv(big.vertex_source.begin(), big.vertex_source.end());
    std::set<std::size_t> be(big.edge_source.begin(), big.edge_source.end());
    std::set<std::size_t> bf(big.face_source.begin(), big.face_source.end());
    for (auto v : small.vertex_source) CHECK(bv.count(v) == 1);
    for (auto e : small.edge_source) CHECK(be.count(e) == 1);
    for (auto f : small.face_source) CHECK(bf.count(f) == 1);
  }
}

TEST_CASE("grid annulus homology and fundamental group") {
  auto const c = z2_ball(5);
  std::vector<bool> keep(c.vertex_count());
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    keep[v] = c.depth[v] > 2;
  }
  auto const annulus = restrict_complex(c, keep);
  CHECK(betti_one(annulus) == 1);
  CHECK(oracle::brute_betti_one(annulus) == 1);

  auto const p = pi1_spanning_tree_presentation(annulus, 0);
  CHECK(p.rank() == annulus.edge_count() - annulus.vertex_count() + 1);
  CHECK(p.relators.size() <= annulus.face_count());
  CHECK(abelian_rank(p) == 1);
  auto const s = simplify_presentation(p);
  CHECK(s.rank() == 1);
  CHECK(s.relators.empty());
}

TEST_CASE("simplification examples") {
  auto const a = simplify_presentation(parse_presentation("<x,y|y>"));
  CHECK(a.generators == std::vector<std::string>{"x"});
  CHECK(a.relators.empty());

  auto const b = simplify_presentation(parse_presentation("<x|x^2,x^2>"));
  CHECK(b.rank() == 1);
  CHECK(b.relators.size() == 1);

  auto const c = simplify_presentation(parse_presentation("<x,y,z|x*y*z^-1,z*x^-1>"));
  CHECK(c.rank() == 1);
  CHECK(c.relators.empty());

  auto const d = simplify_presentation(parse_presentation("<x,y|[x,y]>"));
  CHECK(d.rank() == 2);
  CHECK(d.relators.size() == 1);
}

TEST_CASE("betti numbers agree with the dense oracle on random complexes") {
  std::mt19937 rng(1234);
  for (int k = 0; k < 150; ++k) {
    auto const c = oracle::random_complex(rng, 50);
    REQUIRE(betti_one(c) == oracle::brute_betti_one(c));
  }
}

TEST_CASE("graph betti numbers agree with union-find cycle counts") {
  std::mt19937 rng(77);
  for (int k = 0; k < 100; ++k) {
    auto c = oracle::random_complex(rng, 40);
    c.faces.clear();
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    for (auto const& e : c.edges) {
      edges.emplace_back(e.tail, e.head);
    }
    REQUIRE(betti_one(c) == oracle::union_find_cycles(c.vertex_count(), edges));
  }
}

TEST_CASE("abelianized pi_1 rank equals b1 on corpus complexes") {
  for (auto const& cc : corpus()) {
    auto const s = cc.setup();
    if (!s.group.engine) {
      continue;
    }
    auto const src = make_ball_source(s.group, s.subgroup);
    for (int r : {2, 4}) {
      auto const c = attach_relator_cells(src.ball(r), src.relators);
      INFO(cc.name << " r=" << r);
      auto const p = pi1_spanning_tree_presentation(c, 0);
      CHECK(abelian_rank(p) == betti_one(c));
      CHECK(p.rank() == c.edge_count() - c.vertex_count() + 1);
      CHECK(simplify_presentation(p).rank() >= betti_one(c));
    }
  }
}

TEST_CASE("pi_1 needs a connected complex") {
  auto const c = z2_ball(3);
  std::vector<bool> keep(c.vertex_count());
  for (VertexId v = 0; v < c.vertex_count(); ++v) {
    keep[v] = c.depth[v] == 3;
  }
  auto const ring = restrict_complex(c, keep);
  CHECK_THROWS_AS(pi1_spanning_tree_presentation(ring, 0), Error);
}
