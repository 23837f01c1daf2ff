#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tame {

/// One letter of X*: a generator index and an exponent sign (+1 or -1).
struct Letter {
  int gen = 0;
  int sign = 1;

  constexpr Letter inverse() const noexcept { return {gen, -sign}; }
  constexpr bool cancels(Letter other) const noexcept {
    return gen == other.gen && sign == -other.sign;
  }
  friend constexpr auto operator<=>(Letter, Letter) = default;
};

/// Dense index of a letter in X*: x_i -> 2i, x_i^-1 -> 2i+1. This is the
/// order used to break ties in breadth-first traversals.
constexpr std::size_t letter_index(Letter l) noexcept {
  return 2 * static_cast<std::size_t>(l.gen) + (l.sign < 0 ? 1 : 0);
}

constexpr Letter letter_at(std::size_t index) noexcept {
  return {static_cast<int>(index / 2), index % 2 == 0 ? 1 : -1};
}

using Word = std::vector<Letter>;

inline Word inverse(std::span<Letter const> w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    out.push_back(it->inverse());
  }
  return out;
}

/// Stack-based free reduction; the result is the unique reduced word equal to
/// `w` in the free group.
inline Word free_reduce(std::span<Letter const> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back().cancels(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

inline bool is_reduced(std::span<Letter const> w) {
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i - 1].cancels(w[i])) {
      return false;
    }
  }
  return true;
}

/// Reduced product u*v.
inline Word multiply(std::span<Letter const> u, std::span<Letter const> v) {
  Word out(u.begin(), u.end());
  out.insert(out.end(), v.begin(), v.end());
  return free_reduce(out);
}

inline Word power(std::span<Letter const> w, long long k) {
  Word base = k < 0 ? inverse(w) : Word(w.begin(), w.end());
  Word out;
  for (long long i = 0; i < (k < 0 ? -k : k); ++i) {
    out.insert(out.end(), base.begin(), base.end());
  }
  return free_reduce(out);
}

/// Strips inverse pairs from the two ends of a reduced word.
inline Word cyclically_reduce(std::span<Letter const> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0;
  std::size_t hi = r.size();
  while (hi - lo >= 2 && r[lo].cancels(r[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

/// Exponent sum of every generator in [0, rank).
inline std::vector<std::int64_t> exponent_sums(std::span<Letter const> w,
                                               std::size_t rank) {
  std::vector<std::int64_t> out(rank, 0);
  for (Letter l : w) {
    out[static_cast<std::size_t>(l.gen)] += l.sign;
  }
  return out;
}

inline Word from_exponents(std::span<std::int64_t const> exps) {
  Word out;
  for (std::size_t g = 0; g < exps.size(); ++g) {
    int const sign = exps[g] < 0 ? -1 : 1;
    for (std::int64_t i = 0; i < (exps[g] < 0 ? -exps[g] : exps[g]); ++i) {
      out.push_back({static_cast<int>(g), sign});
    }
  }
  return out;
}

/// Renders a word in the relator syntax, e.g. "a*b^-1*a^2". The empty word
/// renders as "1".
inline std::string format_word(std::span<Letter const> w,
                               std::vector<std::string> const& names) {
  if (w.empty()) {
    return "1";
  }
  std::string out;
  std::size_t i = 0;
  while (i < w.size()) {
    std::size_t j = i;
    while (j < w.size() && w[j] == w[i]) {
      ++j;
    }
    long long const exp = static_cast<long long>(j - i) * w[i].sign;
    if (!out.empty()) {
      out += '*';
    }
    auto const g = static_cast<std::size_t>(w[i].gen);
    out += g < names.size() ? names[g] : "x" + std::to_string(g);
    if (exp != 1) {
      out += '^' + std::to_string(exp);
    }
    i = j;
  }
  return out;
}

}  // namespace tame
