#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tame/error.hpp"
#include "tame/presentation.hpp"
#include "tame/smith.hpp"
#include "tame/stallings.hpp"
#include "tame/todd_coxeter.hpp"
#include "tame/word.hpp"

namespace tame {

enum class MembershipAnswer { Yes, No, Unknown };

inline char const* to_string(MembershipAnswer a) {
  switch (a) {
    case MembershipAnswer::Yes:
      return "Yes";
    case MembershipAnswer::No:
      return "No";
    default:
      return "Unknown";
  }
}

/// Canonical coset label: two words get equal keys iff they lie in the same
/// right coset Hg.
using CosetKey = std::vector<std::int64_t>;

/// Exact word-problem solver for the group classes used by the analyzer.
/// Engines are immutable once built.
///
/// Letters are numbered in the engine's own alphabet [0, rank()). Product
/// engines route each of their letters to a (factor, local letter) pair.
class NormalFormEngine {
 public:
  struct Free {
    std::size_t rank;
  };
  struct Abelian {
    IntMatrix relations;  // one row per relation, one column per generator
    SmithForm smith;
  };
  struct Finite {
    CosetGraph elements;  // complete coset table over the trivial subgroup
  };
  struct Product {
    std::shared_ptr<NormalFormEngine const> left;
    std::shared_ptr<NormalFormEngine const> right;
    std::vector<std::pair<int, int>> route;  // letter -> (side, local gen)
    std::vector<int> global[2];              // (side, local gen) -> letter
    bool free = true;                        // free vs direct product
  };

  static NormalFormEngine free(std::size_t rank) {
    return NormalFormEngine(Free{rank}, rank);
  }

  /// Z^n modulo the row lattice of `relations` (n = relations.cols()).
  static NormalFormEngine abelian(IntMatrix relations) {
    std::size_t const n = relations.cols();
    SmithForm smith = smith_normal_form(relations);
    return NormalFormEngine(Abelian{std::move(relations), std::move(smith)},
                            n);
  }

  /// Abelian group given by the exponent-sum rows of `relators`.
  static NormalFormEngine abelian(std::size_t rank,
                                  std::vector<Word> const& relators) {
    IntMatrix m(relators.size(), rank);
    for (std::size_t r = 0; r < relators.size(); ++r) {
      auto const sums = exponent_sums(relators[r], rank);
      for (std::size_t g = 0; g < rank; ++g) {
        m(r, g) = sums[g];
      }
    }
    return abelian(std::move(m));
  }

  /// Finite group from a completed enumeration over the trivial subgroup.
  /// Throws LimitExceeded when the enumeration does not close.
  static NormalFormEngine finite(GroupPresentation const& p,
                                 ToddCoxeterLimits limits = {}) {
    ToddCoxeterResult r = todd_coxeter(p, SubgroupSpec{}, limits);
    if (!r.complete) {
      throw LimitExceeded("coset enumeration of " + format_presentation(p) +
                          " did not complete within " +
                          std::to_string(limits.max_cosets) + " cosets");
    }
    std::size_t const rank = p.rank();
    return NormalFormEngine(Finite{std::move(r.graph)}, rank);
  }

  /// Free product; the letters of `left` come first, then those of `right`.
  static NormalFormEngine free_product(
      std::shared_ptr<NormalFormEngine const> left,
      std::shared_ptr<NormalFormEngine const> right) {
    return product(std::move(left), std::move(right), true, {});
  }

  /// Free product with an explicit side assignment per letter: side[g] is 0
  /// or 1, and letters keep their relative order within each side.
  static NormalFormEngine free_product(
      std::shared_ptr<NormalFormEngine const> left,
      std::shared_ptr<NormalFormEngine const> right,
      std::vector<int> const& side) {
    return product(std::move(left), std::move(right), true, side);
  }

  static NormalFormEngine direct_product(
      std::shared_ptr<NormalFormEngine const> left,
      std::shared_ptr<NormalFormEngine const> right) {
    return product(std::move(left), std::move(right), false, {});
  }

  std::size_t rank() const noexcept { return rank_; }

  bool is_free() const { return std::holds_alternative<Free>(variant_); }
  bool is_abelian() const { return std::holds_alternative<Abelian>(variant_); }
  bool is_finite() const { return std::holds_alternative<Finite>(variant_); }
  bool is_free_product() const {
    auto const* p = std::get_if<Product>(&variant_);
    return p != nullptr && p->free;
  }
  bool is_direct_product() const {
    auto const* p = std::get_if<Product>(&variant_);
    return p != nullptr && !p->free;
  }
  Product const* product() const { return std::get_if<Product>(&variant_); }
  Abelian const* abelian_data() const {
    return std::get_if<Abelian>(&variant_);
  }
  Finite const* finite_data() const { return std::get_if<Finite>(&variant_); }

  /// Short human-readable description, e.g. "Z/2 * Z/3" or "Z x Z/2".
  std::string describe() const {
    return std::visit(
        [this](auto const& v) -> std::string { return describe_(v); },
        variant_);
  }

  void check_alphabet(std::span<Letter const> w) const {
    for (Letter l : w) {
      if (l.gen < 0 || static_cast<std::size_t>(l.gen) >= rank_) {
        throw AlphabetError("letter x" + std::to_string(l.gen) +
                            " is outside an alphabet of " +
                            std::to_string(rank_) + " generators");
      }
    }
  }

  /// Canonical representative: equal in the group iff equal normal forms.
  Word normal_form(std::span<Letter const> w) const {
    check_alphabet(w);
    return std::visit([&](auto const& v) { return nf_(v, w); }, variant_);
  }

  bool words_equal(std::span<Letter const> u, std::span<Letter const> v) const {
    return normal_form(u) == normal_form(v);
  }

  /// Alternating syllables of a free-product normal form. Each syllable is
  /// a nonempty factor normal form in that factor's local letters.
  struct Syllable {
    int side;
    Word local;
  };

  std::vector<Syllable> syllables(std::span<Letter const> w) const {
    auto const& p = std::get<Product>(variant_);
    check_alphabet(w);
    std::vector<Syllable> stack;
    std::size_t i = 0;
    while (i < w.size()) {
      int const side = p.route[static_cast<std::size_t>(w[i].gen)].first;
      Word run;
      while (i < w.size() &&
             p.route[static_cast<std::size_t>(w[i].gen)].first == side) {
        run.push_back(
            {p.route[static_cast<std::size_t>(w[i].gen)].second, w[i].sign});
        ++i;
      }
      push_syllable(p, stack, side, std::move(run));
    }
    return stack;
  }

  Word from_syllables(std::vector<Syllable> const& syl) const {
    auto const& p = std::get<Product>(variant_);
    Word out;
    for (auto const& s : syl) {
      for (Letter l : s.local) {
        out.push_back({p.global[s.side][static_cast<std::size_t>(l.gen)],
                       l.sign});
      }
    }
    return out;
  }

  /// Syllable length after cyclic reduction (conjugating end syllables of the
  /// same factor together).
  std::size_t cyclic_syllable_length(std::span<Letter const> w) const {
    auto const& p = std::get<Product>(variant_);
    auto syl = syllables(w);
    while (syl.size() >= 2 && syl.front().side == syl.back().side) {
      Syllable first = syl.front();
      syl.erase(syl.begin());
      Word merged = syl.back().local;
      merged.insert(merged.end(), first.local.begin(), first.local.end());
      syl.back().local = factor(p, first.side).normal_form(merged);
      if (syl.back().local.empty()) {
        syl.pop_back();
      }
    }
    return syl.size();
  }

  /// Splits a word over a product engine into its two projections (local
  /// letters of each factor, order preserved).
  std::pair<Word, Word> project(std::span<Letter const> w) const {
    auto const& p = std::get<Product>(variant_);
    std::pair<Word, Word> out;
    for (Letter l : w) {
      auto const [side, gen] = p.route[static_cast<std::size_t>(l.gen)];
      (side == 0 ? out.first : out.second).push_back({gen, l.sign});
    }
    return out;
  }

  /// Letters of the given side, mapped to this engine's alphabet.
  Word embed(int side, std::span<Letter const> local) const {
    auto const& p = std::get<Product>(variant_);
    Word out;
    for (Letter l : local) {
      out.push_back({p.global[side][static_cast<std::size_t>(l.gen)], l.sign});
    }
    return out;
  }

  /// Which side each generator of a product engine belongs to.
  std::vector<int> sides() const {
    auto const& p = std::get<Product>(variant_);
    std::vector<int> out;
    for (auto const& r : p.route) {
      out.push_back(r.first);
    }
    return out;
  }

 private:
  using Variant = std::variant<Free, Abelian, Finite, Product>;
  Variant variant_;
  std::size_t rank_;

  NormalFormEngine(Variant v, std::size_t rank)
      : variant_(std::move(v)), rank_(rank) {}

  static NormalFormEngine product(std::shared_ptr<NormalFormEngine const> left,
                                  std::shared_ptr<NormalFormEngine const> right,
                                  bool free, std::vector<int> side) {
    std::size_t const nl = left->rank();
    std::size_t const nr = right->rank();
    if (side.empty()) {
      side.assign(nl, 0);
      side.resize(nl + nr, 1);
    }
    Product p{std::move(left), std::move(right), {}, {}, free};
    int next[2] = {0, 0};
    for (std::size_t g = 0; g < side.size(); ++g) {
      int const s = side[g];
      p.route.emplace_back(s, next[s]++);
      p.global[s].push_back(static_cast<int>(g));
    }
    if (static_cast<std::size_t>(next[0]) != nl ||
        static_cast<std::size_t>(next[1]) != nr) {
      throw Error("side assignment does not match factor ranks");
    }
    return NormalFormEngine(std::move(p), nl + nr);
  }

  static NormalFormEngine const& factor(Product const& p, int side) {
    return side == 0 ? *p.left : *p.right;
  }

  static void push_syllable(Product const& p, std::vector<Syllable>& stack,
                            int side, Word run) {
    if (!stack.empty() && stack.back().side == side) {
      Word merged = std::move(stack.back().local);
      merged.insert(merged.end(), run.begin(), run.end());
      stack.back().local = factor(p, side).normal_form(merged);
      if (stack.back().local.empty()) {
        stack.pop_back();
      }
      return;
    }
    Word nf = factor(p, side).normal_form(run);
    if (!nf.empty()) {
      stack.push_back({side, std::move(nf)});
    }
  }

  // Free group: reduced words.
  Word nf_(Free const&, std::span<Letter const> w) const {
    return free_reduce(w);
  }

  // Abelian: coordinates in the Smith basis, torsion coordinates reduced to
  // [0, d), mapped back to the original generators.
  Word nf_(Abelian const& a, std::span<Letter const> w) const {
    auto const sums = exponent_sums(w, rank_);
    std::vector<BigInt> y = smith_coordinates(a.smith, sums);
    for (std::size_t i = 0; i < a.smith.rank; ++i) {
      BigInt const& d = a.smith.diagonal(i);
      y[i] %= d;
      if (y[i] < 0) {
        y[i] += d;
      }
    }
    std::vector<std::int64_t> x(rank_, 0);
    for (std::size_t j = 0; j < rank_; ++j) {
      BigInt acc = 0;
      for (std::size_t i = 0; i < rank_; ++i) {
        acc += y[i] * a.smith.V_inverse(i, j);
      }
      x[j] = to_small(acc);
    }
    return from_exponents(x);
  }

  // Finite: shortlex-least word of the element, read off the BFS tree.
  Word nf_(Finite const& f, std::span<Letter const> w) const {
    VertexId const v = f.elements.follow(0, w);
    return f.elements.representative[v];
  }

  Word nf_(Product const& p, std::span<Letter const> w) const {
    if (p.free) {
      return from_syllables(syllables(w));
    }
    auto [l, r] = project(w);
    Word out = embed(0, p.left->normal_form(l));
    Word right = embed(1, p.right->normal_form(r));
    out.insert(out.end(), right.begin(), right.end());
    return out;
  }

  std::string describe_(Free const& f) const {
    if (f.rank == 1) {
      return "Z";
    }
    return "F" + std::to_string(f.rank);
  }
  std::string describe_(Abelian const& a) const {
    std::string out;
    std::size_t free_rank = rank_ - a.smith.rank;
    for (std::size_t i = 0; i < free_rank; ++i) {
      out += out.empty() ? "Z" : " x Z";
    }
    for (std::size_t i = 0; i < a.smith.rank; ++i) {
      if (a.smith.diagonal(i) != 1) {
        out += (out.empty() ? "Z/" : " x Z/") + a.smith.diagonal(i).str();
      }
    }
    return out.empty() ? "1" : out;
  }
  std::string describe_(Finite const& f) const {
    return "finite(" + std::to_string(f.elements.size()) + ")";
  }
  std::string describe_(Product const& p) const {
    return "(" + p.left->describe() + (p.free ? " * " : " x ") +
           p.right->describe() + ")";
  }

 public:
  static std::vector<BigInt> smith_coordinates(
      SmithForm const& s, std::vector<std::int64_t> const& v) {
    std::size_t const n = v.size();
    std::vector<BigInt> y(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t i = 0; i < n; ++i) {
        if (v[i] != 0) {
          y[j] += BigInt(v[i]) * s.V(i, j);
        }
      }
    }
    return y;
  }

  static std::int64_t to_small(BigInt const& v) {
    if (abs(v) > BigInt(1'000'000'000)) {
      throw LimitExceeded("normal-form exponent out of range");
    }
    return static_cast<std::int64_t>(v);
  }
};

/// A subgroup prepared for repeated membership and coset-key queries against
/// one engine (folded graph, lattice Smith form or element set computed once).
class SubgroupOracle {
 public:
  SubgroupOracle(std::shared_ptr<NormalFormEngine const> engine,
                 SubgroupSpec subgroup)
      : engine_(std::move(engine)), subgroup_(std::move(subgroup)) {
    for (Word const& g : subgroup_.generators) {
      engine_->check_alphabet(g);
    }
    prepare();
  }

  NormalFormEngine const& engine() const { return *engine_; }
  SubgroupSpec const& subgroup() const { return subgroup_; }

  MembershipAnswer contains(std::span<Letter const> w) const {
    engine_->check_alphabet(w);
    if (subgroup_.quotient) {
      return subgroup_.quotient->normal_form(w).empty() ? MembershipAnswer::Yes
                                                        : MembershipAnswer::No;
    }
    if (gens_.empty()) {
      return engine_->normal_form(w).empty() ? MembershipAnswer::Yes
                                             : MembershipAnswer::No;
    }
    return std::visit([&](auto const& s) { return contains_(s, w); }, state_);
  }

  /// Canonical coset key, when the engine/subgroup class supports one.
  std::optional<CosetKey> key(std::span<Letter const> w) const {
    engine_->check_alphabet(w);
    if (subgroup_.quotient) {
      return letters_key(subgroup_.quotient->normal_form(w));
    }
    if (gens_.empty()) {
      return letters_key(engine_->normal_form(w));
    }
    return std::visit([&](auto const& s) { return key_(s, w); }, state_);
  }

 private:
  struct Unsupported {};
  struct FreeState {
    FoldedGraph folded;
  };
  struct AbelianState {
    SmithForm lattice;  // of [relations; subgroup rows]
  };
  struct FiniteState {
    std::vector<VertexId> members;  // sorted element ids of H
  };
  struct FactorState {  // free product, subgroup inside one factor
    int side;
    std::shared_ptr<SubgroupOracle> inner;
  };
  struct CyclicState {  // free product, cyclic of syllable length >= 2
    Word generator;
    std::size_t cyclic_length;
  };
  struct SplitState {  // direct product, generators each in one factor
    std::shared_ptr<SubgroupOracle> left;
    std::shared_ptr<SubgroupOracle> right;
  };
  using State = std::variant<Unsupported, FreeState, AbelianState, FiniteState,
                             FactorState, CyclicState, SplitState>;

  std::shared_ptr<NormalFormEngine const> engine_;
  SubgroupSpec subgroup_;
  std::vector<Word> gens_;
  State state_;

  static CosetKey letters_key(Word const& w) {
    CosetKey k;
    k.reserve(w.size());
    for (Letter l : w) {
      k.push_back(static_cast<std::int64_t>(letter_index(l)));
    }
    return k;
  }

  void prepare() {
    if (subgroup_.quotient) {
      return;
    }
    for (Word const& g : subgroup_.generators) {
      Word nf = engine_->normal_form(g);
      if (!nf.empty()) {
        gens_.push_back(std::move(nf));
      }
    }
    if (gens_.empty()) {
      return;
    }
    NormalFormEngine const& e = *engine_;
    if (e.is_free()) {
      state_ = FreeState{stallings_fold(e.rank(), gens_)};
    } else if (auto const* a = e.abelian_data()) {
      IntMatrix m(a->relations.rows() + gens_.size(), e.rank());
      for (std::size_t r = 0; r < a->relations.rows(); ++r) {
        for (std::size_t c = 0; c < e.rank(); ++c) {
          m(r, c) = a->relations(r, c);
        }
      }
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        auto const sums = exponent_sums(gens_[k], e.rank());
        for (std::size_t c = 0; c < e.rank(); ++c) {
          m(a->relations.rows() + k, c) = sums[c];
        }
      }
      state_ = AbelianState{smith_normal_form(m)};
    } else if (auto const* f = e.finite_data()) {
      state_ = FiniteState{closure(f->elements)};
    } else if (auto const* p = e.product()) {
      prepare_product(*p);
    }
  }

  std::vector<VertexId> closure(CosetGraph const& elements) const {
    std::set<VertexId> seen{0};
    std::vector<VertexId> frontier{0};
    while (!frontier.empty()) {
      std::vector<VertexId> next;
      for (VertexId h : frontier) {
        for (Word const& g : gens_) {
          VertexId const t = elements.follow(h, g);
          if (seen.insert(t).second) {
            next.push_back(t);
          }
        }
      }
      frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  void prepare_product(NormalFormEngine::Product const& p) {
    NormalFormEngine const& e = *engine_;
    std::vector<int> gen_side;
    for (Word const& g : gens_) {
      int side = -1;
      for (Letter l : g) {
        int const s = p.route[static_cast<std::size_t>(l.gen)].first;
        side = side == -1 || side == s ? s : 2;
      }
      gen_side.push_back(side);
    }
    bool const one_side =
        std::all_of(gen_side.begin(), gen_side.end(),
                    [&](int s) { return s == gen_side.front() && s != 2; });
    if (p.free) {
      if (one_side) {
        int const side = gen_side.front();
        SubgroupSpec local;
        for (Word const& g : gens_) {
          local.generators.push_back(side == 0 ? e.project(g).first
                                               : e.project(g).second);
        }
        state_ = FactorState{side, std::make_shared<SubgroupOracle>(
                                       side == 0 ? p.left : p.right, local)};
      } else if (gens_.size() == 1 &&
                 e.cyclic_syllable_length(gens_.front()) >= 2) {
        state_ = CyclicState{gens_.front(),
                             e.cyclic_syllable_length(gens_.front())};
      }
      return;
    }
    if (std::all_of(gen_side.begin(), gen_side.end(),
                    [](int s) { return s != 2; })) {
      SubgroupSpec l;
      SubgroupSpec r;
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        auto [pl, pr] = e.project(gens_[k]);
        (gen_side[k] == 0 ? l : r)
            .generators.push_back(gen_side[k] == 0 ? pl : pr);
      }
      state_ = SplitState{std::make_shared<SubgroupOracle>(p.left, l),
                          std::make_shared<SubgroupOracle>(p.right, r)};
    }
  }

  MembershipAnswer contains_(Unsupported const&, std::span<Letter const>) const {
    return MembershipAnswer::Unknown;
  }
  std::optional<CosetKey> key_(Unsupported const&,
                               std::span<Letter const>) const {
    return std::nullopt;
  }

  MembershipAnswer contains_(FreeState const& s,
                             std::span<Letter const> w) const {
    return s.folded.accepts(w) ? MembershipAnswer::Yes : MembershipAnswer::No;
  }
  // The coset of reduced w is the vertex reached in core-plus-trees: the
  // core vertex where reading stops, plus the unread tail.
  std::optional<CosetKey> key_(FreeState const& s,
                               std::span<Letter const> w) const {
    Word const r = free_reduce(w);
    auto const [v, n] = s.folded.read(r);
    CosetKey k{static_cast<std::int64_t>(v)};
    for (std::size_t i = n; i < r.size(); ++i) {
      k.push_back(static_cast<std::int64_t>(letter_index(r[i])));
    }
    return k;
  }

  std::vector<BigInt> lattice_coords(AbelianState const& s,
                                     std::span<Letter const> w) const {
    return NormalFormEngine::smith_coordinates(
        s.lattice, exponent_sums(w, engine_->rank()));
  }
  MembershipAnswer contains_(AbelianState const& s,
                             std::span<Letter const> w) const {
    auto const y = lattice_coords(s, w);
    for (std::size_t i = 0; i < y.size(); ++i) {
      bool const ok =
          i < s.lattice.rank ? y[i] % s.lattice.diagonal(i) == 0 : y[i] == 0;
      if (!ok) {
        return MembershipAnswer::No;
      }
    }
    return MembershipAnswer::Yes;
  }
  std::optional<CosetKey> key_(AbelianState const& s,
                               std::span<Letter const> w) const {
    auto y = lattice_coords(s, w);
    CosetKey k;
    for (std::size_t i = 0; i < y.size(); ++i) {
      if (i < s.lattice.rank) {
        BigInt const& d = s.lattice.diagonal(i);
        y[i] %= d;
        if (y[i] < 0) {
          y[i] += d;
        }
      }
      k.push_back(NormalFormEngine::to_small(y[i]));
    }
    return k;
  }

  MembershipAnswer contains_(FiniteState const& s,
                             std::span<Letter const> w) const {
    VertexId const v = engine_->finite_data()->elements.follow(0, w);
    return std::binary_search(s.members.begin(), s.members.end(), v)
               ? MembershipAnswer::Yes
               : MembershipAnswer::No;
  }
  // Hg is labelled by its least element id.
  std::optional<CosetKey> key_(FiniteState const& s,
                               std::span<Letter const> w) const {
    auto const& el = engine_->finite_data()->elements;
    VertexId best = kNoVertex;
    for (VertexId h : s.members) {
      best = std::min(best, el.follow(h, w));
    }
    return CosetKey{static_cast<std::int64_t>(best)};
  }

  MembershipAnswer contains_(FactorState const& s,
                             std::span<Letter const> w) const {
    auto const syl = engine_->syllables(w);
    if (syl.empty()) {
      return MembershipAnswer::Yes;
    }
    if (syl.size() > 1 || syl.front().side != s.side) {
      return MembershipAnswer::No;
    }
    return s.inner->contains(syl.front().local);
  }
  // H s1 rest with s1 the leading syllable when it lies in H's factor; the
  // coset is determined by (H s1 in the factor, rest).
  std::optional<CosetKey> key_(FactorState const& s,
                               std::span<Letter const> w) const {
    auto syl = engine_->syllables(w);
    Word head;
    if (!syl.empty() && syl.front().side == s.side) {
      head = syl.front().local;
      syl.erase(syl.begin());
    }
    auto inner = s.inner->key(head);
    if (!inner) {
      return std::nullopt;
    }
    CosetKey k{static_cast<std::int64_t>(inner->size())};
    k.insert(k.end(), inner->begin(), inner->end());
    for (Letter l : engine_->from_syllables(syl)) {
      k.push_back(static_cast<std::int64_t>(letter_index(l)));
    }
    return k;
  }

  // Syllable length of g^k is at least |k| times the cyclic length, so only
  // powers up to ceil(|w| / cyclic length) + 2 can match.
  MembershipAnswer contains_(CyclicState const& s,
                             std::span<Letter const> w) const {
    Word const target = engine_->normal_form(w);
    std::size_t const len = engine_->syllables(target).size();
    std::size_t const bound =
        (len + s.cyclic_length - 1) / std::max<std::size_t>(1, s.cyclic_length) +
        2;
    for (std::size_t k = 0; k <= bound; ++k) {
      Word const pos = engine_->normal_form(
          power(s.generator, static_cast<long long>(k)));
      if (pos == target) {
        return MembershipAnswer::Yes;
      }
      Word const neg = engine_->normal_form(
          power(s.generator, -static_cast<long long>(k)));
      if (neg == target) {
        return MembershipAnswer::Yes;
      }
    }
    return MembershipAnswer::No;
  }
  std::optional<CosetKey> key_(CyclicState const&,
                               std::span<Letter const>) const {
    return std::nullopt;
  }

  MembershipAnswer contains_(SplitState const& s,
                             std::span<Letter const> w) const {
    auto const [l, r] = engine_->project(w);
    MembershipAnswer const a = s.left->contains(l);
    MembershipAnswer const b = s.right->contains(r);
    if (a == MembershipAnswer::No || b == MembershipAnswer::No) {
      return MembershipAnswer::No;
    }
    if (a == MembershipAnswer::Yes && b == MembershipAnswer::Yes) {
      return MembershipAnswer::Yes;
    }
    return MembershipAnswer::Unknown;
  }
  std::optional<CosetKey> key_(SplitState const& s,
                               std::span<Letter const> w) const {
    auto const [l, r] = engine_->project(w);
    auto kl = s.left->key(l);
    auto kr = s.right->key(r);
    if (!kl || !kr) {
      return std::nullopt;
    }
    CosetKey k{static_cast<std::int64_t>(kl->size())};
    k.insert(k.end(), kl->begin(), kl->end());
    k.insert(k.end(), kr->begin(), kr->end());
    return k;
  }
};

inline Word normal_form(NormalFormEngine const& e, std::span<Letter const> w) {
  return e.normal_form(w);
}

inline bool words_equal(NormalFormEngine const& e, std::span<Letter const> u,
                        std::span<Letter const> v) {
  return e.words_equal(u, v);
}

/// Yes/No exact for free, abelian and finite engines, for free products when
/// the subgroup lies in one factor or is cyclic with cyclic syllable length
/// at least 2, and for direct products of split subgroups; Unknown otherwise.
inline MembershipAnswer subgroup_membership(
    std::shared_ptr<NormalFormEngine const> e, SubgroupSpec const& s,
    std::span<Letter const> w) {
  return SubgroupOracle(std::move(e), s).contains(w);
}

}  // namespace tame
