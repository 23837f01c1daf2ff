// Acceptance run: one PASS/FAIL line per criterion, with its timing and
// time limit. Usage: acceptance <path to tame_cli>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "tame/tame.hpp"

using namespace tame;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, std::string const& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

std::shared_ptr<NormalFormEngine const> share(NormalFormEngine e) {
  return std::make_shared<NormalFormEngine const>(std::move(e));
}

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_cli(std::string const& cli, std::string const& args) {
  Run r;
  std::string const cmd = "'" + cli + "' " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (p == nullptr) {
    return r;
  }
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = std::fread(buf.data(), 1, buf.size(), p)) > 0) {
    r.out.append(buf.data(), n);
  }
  int const status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string json_of(CorpusResult const& res) {
  if (res.sweep) {
    return sweep_json(*res.sweep, *res.verdict, res.name, res.agreement).dump(2);
  }
  return decomposition_json(res.decomposition, res.name, res.agreement).dump(2);
}

Outcome homology() {
  Outcome o;
  std::mt19937 rng(20240601);
  for (int k = 0; k < 200; ++k) {
    auto const c = oracle::random_complex(rng, 50);
    std::size_t const cells = c.vertex_count() + c.edge_count() + c.face_count();
    o.require(cells <= 50, "complex with more than 50 cells");
    o.require(betti_one(c) == oracle::brute_betti_one(c),
              "betti_one differs from dense rank on complex " + std::to_string(k));
  }
  o.detail = o.pass ? "200 random complexes" : o.detail;
  return o;
}

Outcome membership() {
  Outcome o;
  std::mt19937 rng(99);
  auto const f2 = share(NormalFormEngine::free(2));
  std::vector<Word> reduced;
  for (std::size_t n = 0; n <= 8; ++n) {
    for (Word const& x : oracle::all_words(2, n)) {
      if (is_reduced(x)) {
        reduced.push_back(x);
      }
    }
  }
  for (int k = 0; k < 20; ++k) {
    std::vector<Word> gens;
    std::size_t const count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i) {
      gens.push_back(oracle::random_reduced_word(rng, 2, 1 + rng() % 4));
    }
    SubgroupSpec s;
    s.generators = gens;
    oracle::FlowerOracle const flower(gens);
    for (Word const& x : reduced) {
      bool const in = subgroup_membership(f2, s, x) == MembershipAnswer::Yes;
      o.require(in == flower.contains(x),
                "free membership mismatch in subgroup " + std::to_string(k));
    }
  }

  // abelian: Z^2 with subgroups spanned by two vectors, against all
  // combinations with coefficients in [-B, B]
  auto const z2 = share(NormalFormEngine::abelian(IntMatrix(0, 2)));
  std::uniform_int_distribution<int> entry(-3, 3);
  int const B = 30;
  for (int k = 0; k < 20; ++k) {
    std::array<std::array<int, 2>, 2> v{};
    for (auto& row : v) {
      row = {entry(rng), entry(rng)};
    }
    SubgroupSpec s;
    for (auto const& row : v) {
      s.generators.push_back(from_exponents(std::vector<std::int64_t>{row[0], row[1]}));
    }
    std::set<std::pair<int, int>> lattice;
    for (int i = -B; i <= B; ++i) {
      for (int j = -B; j <= B; ++j) {
        lattice.insert({i * v[0][0] + j * v[1][0], i * v[0][1] + j * v[1][1]});
      }
    }
    // entries <= 3 and targets <= 4 keep needed coefficients below 25
    for (int x = -4; x <= 4; ++x) {
      for (int y = -4; y <= 4; ++y) {
        Word const w = from_exponents(std::vector<std::int64_t>{x, y});
        bool const in = subgroup_membership(z2, s, w) == MembershipAnswer::Yes;
        o.require(in == (lattice.count({x, y}) > 0),
                  "abelian membership mismatch in subgroup " + std::to_string(k));
      }
    }
  }
  o.detail = o.pass ? "20 free and 20 abelian subgroups" : o.detail;
  return o;
}

Outcome quotient_identity() {
  Outcome o;
  for (auto const* name : {"grid-commutator", "normal-closure-b"}) {
    auto const s = corpus_case(name).setup();
    for (int r = 0; r <= 6; ++r) {
      auto const cover = coset_ball(s.group.engine, s.subgroup, r);
      auto const quotient = coset_ball(s.subgroup.quotient, {}, r);
      auto const oracle_ball = oracle::keyed_ball(2, r, [&](Word const& w) {
        auto sums = exponent_sums(w, 2);
        return std::string(name) == "normal-closure-b"
                   ? std::vector<std::int64_t>{sums[0]}
                   : sums;
      });
      o.require(oracle::rooted_isomorphic(cover.table, quotient.table),
                std::string(name) + " differs from the quotient ball at r=" + std::to_string(r));
      o.require(oracle::rooted_isomorphic(cover.table, oracle_ball.table),
                std::string(name) + " differs from the enumerated ball at r=" + std::to_string(r));
    }
  }
  o.detail = o.pass ? "2 normal subgroups, r = 0..6" : o.detail;
  return o;
}

Outcome grid() {
  Outcome o;
  auto const res = run_corpus_case("grid-commutator");
  auto const& s = *res.sweep;
  o.require(s.removal.radius == 2 && s.radii == std::vector<int>{5, 6, 7, 8, 9}, "parameters");
  o.require(s.families.size() == 1 && s.unmatched_steps.empty(), "expected a single family");
  if (o.pass) {
    auto const& b = s.families[0].b1_interior;
    for (std::size_t i = 0; i + 1 < b.size(); ++i) {
      o.require(b[i] < b[i + 1], "interior b1 not strictly increasing");
    }
    std::ostringstream d;
    for (std::size_t i = 0; i < b.size(); ++i) {
      d << (i ? "," : "") << b[i];
    }
    o.detail = "interior b1 " + d.str() + ", " + res.verdict->text();
  }
  o.require(res.verdict->kind == Verdict::Kind::Growing, "verdict " + res.verdict->text());
  return o;
}

Outcome normal_closure() {
  Outcome o;
  auto const res = run_corpus_case("normal-closure-b");
  auto const& s = *res.sweep;
  o.require(s.removal.radius == 1 && s.radii == std::vector<int>{4, 5, 6, 7, 8}, "parameters");
  o.require(s.families.size() == 2 && s.unmatched_steps.empty(), "expected two families");
  for (auto const& f : s.families) {
    for (std::size_t i = 0; i < f.b1_interior.size(); ++i) {
      // loops at depths c+1 .. r-margin on one ray
      auto const expect = static_cast<std::size_t>(s.radii[i] - s.margin - s.removal.radius);
      o.require(f.b1_interior[i] == expect, "interior b1 off the ray count");
      if (i > 0) {
        o.require(f.b1_interior[i] == f.b1_interior[i - 1] + 1, "increment is not 1");
      }
    }
  }
  o.require(res.verdict->kind == Verdict::Kind::Growing, "verdict " + res.verdict->text());
  if (o.pass) {
    o.detail = "two rays, +1 per step, " + res.verdict->text();
  }
  return o;
}

Outcome tame_cases() {
  Outcome o;
  struct Expect {
    char const* name;
    std::int64_t plateau;
    bool at_most;
  };
  std::string seen;
  for (auto const& e : {Expect{"z-trivial", 0, false}, Expect{"free2-core-a", 0, false},
                        Expect{"z2-trivial", 1, false}, Expect{"abelian-torsion", 1, true},
                        Expect{"product-k-x-z", 1, true}}) {
    auto const res = run_corpus_case(e.name);
    auto const& v = *res.verdict;
    seen += std::string(seen.empty() ? "" : ", ") + e.name + " " + v.text();
    o.require(v.kind == Verdict::Kind::Stable, std::string(e.name) + " gave " + v.text());
    for (auto x : v.values) {
      o.require(e.at_most ? x <= e.plateau : x == e.plateau,
                std::string(e.name) + " plateau " + v.text());
    }
    o.require(res.agreement, std::string(e.name) + " disagrees with its expectation");
  }
  if (o.pass) {
    o.detail = seen;
  }
  return o;
}

Outcome decomposition() {
  Outcome o;
  auto const& c = corpus_case("modular-free-product");
  auto const base = c.setup();
  std::vector<int> const radii{3, 4, 5};
  auto const trivial = decompose_case(base, radii);
  for (auto const& r : trivial) {
    o.require(r.non_generic() == 0, "S = 1 has non-generic components at r=" + std::to_string(r.radius));
  }
  auto sa = base;
  sa.subgroup.generators = {parse_word("a", base.group.presentation.generators)};
  for (auto const& r : decompose_case(sa, radii)) {
    o.require(r.summary[0].non_generic == 1 && r.summary[1].non_generic == 0,
              "S = <a> counts at r=" + std::to_string(r.radius));
  }
  if (o.pass) {
    o.detail = "S = 1: 0; S = <a>: X 1, Y 0 at r = 3, 4, 5";
  }
  return o;
}

Outcome determinism(std::string const& cli) {
  Outcome o;
  for (auto const& c : corpus()) {
    o.require(json_of(run_corpus_case(c.name)) == json_of(run_corpus_case(c.name)),
              c.name + " library output differs between runs");
    std::string const cmd = (c.decomposition_radii.empty() ? "analyze" : "decompose --format json") +
                            std::string(" --corpus ") + c.name;
    auto const a = run_cli(cli, cmd);
    auto const b = run_cli(cli, cmd);
    o.require(a.exit_code == 0 || a.exit_code == 2, c.name + " CLI failed: " + a.out);
    o.require(a.out == b.out && a.exit_code == b.exit_code,
              c.name + " CLI output differs between runs");
  }
  if (o.pass) {
    o.detail = std::to_string(corpus().size()) + " cases, library and CLI";
  }
  return o;
}

Outcome honesty(std::string const& cli) {
  Outcome o;
  auto const json = run_cli(cli, "analyze --corpus thompson-finite");
  o.require(json.exit_code == 2, "exit code " + std::to_string(json.exit_code));
  o.require(json.out.find("\"verdict\": \"Inconclusive(uncertified)\"") != std::string::npos,
            "verdict missing from: " + json.out);
  auto const text = run_cli(cli, "analyze --corpus thompson-finite --format text");
  o.require(text.exit_code == 2, "text exit code " + std::to_string(text.exit_code));
  o.require(text.out == "Inconclusive(uncertified)\n", "text output: " + text.out);
  for (auto const& out : {json.out, text.out}) {
    o.require(out.find("Stable") == std::string::npos && out.find("Growing") == std::string::npos,
              "partial enumeration produced a verdict");
  }
  auto const res = run_corpus_case("thompson-finite");
  o.require(!res.sweep->certified(), "partial enumeration reported as certified");
  if (o.pass) {
    o.detail = "exit 2, Inconclusive(uncertified)";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <tame_cli>\n";
    return 1;
  }
  std::string const cli = argv[1];
  struct Criterion {
    int id;
    char const* title;
    double limit;
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "homology oracle equivalence", 10, homology},
      {2, "membership oracle equivalence", 10, membership},
      {3, "quotient identity", 5, quotient_identity},
      {4, "grid complement growth", 5, grid},
      {5, "normal closure ray growth", 5, normal_closure},
      {6, "tame-consistent cases", 30, tame_cases},
      {7, "free product decomposition", 10, decomposition},
      {8, "determinism", 60, [&] { return determinism(cli); }},
      {9, "uncertified mode", 10, [&] { return honesty(cli); }},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    auto const t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double const secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool const in_time = secs < c.limit;
    bool const ok = o.pass && in_time;
    failures += ok ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s, limit %.0f s", secs, c.limit);
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " ["
              << timing << "] " << (in_time ? o.detail : o.detail + "; over time limit")
              << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
