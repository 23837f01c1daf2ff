#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tame/error.hpp"
#include "tame/word.hpp"

namespace tame {

class NormalFormEngine;

/// A finite presentation <X | R>. Relators are freely reduced and nonempty.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;

  std::size_t rank() const noexcept { return generators.size(); }

  std::optional<int> index_of(std::string_view name) const {
    auto it = std::find(generators.begin(), generators.end(), name);
    if (it == generators.end()) {
      return std::nullopt;
    }
    return static_cast<int>(it - generators.begin());
  }
};

/// A finitely generated subgroup, given by reduced generator words over the
/// ambient alphabet.
///
/// When `quotient` is set the subgroup is normal and is the kernel of the
/// identity-on-generators map onto the group decided by `quotient`; the
/// generator list is then descriptive only (e.g. "b" for the normal closure
/// of b).
struct SubgroupSpec {
  std::vector<Word> generators;
  std::shared_ptr<NormalFormEngine const> quotient;

  bool trivial() const noexcept { return generators.empty() && !quotient; }
  bool normal() const noexcept { return static_cast<bool>(quotient); }
};

inline std::string format_presentation(GroupPresentation const& p) {
  std::string out = "<";
  for (std::size_t i = 0; i < p.generators.size(); ++i) {
    out += (i ? "," : "") + p.generators[i];
  }
  out += "|";
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    out += (i ? "," : "") + format_word(p.relators[i], p.generators);
  }
  return out + ">";
}

namespace detail {

// Recursive-descent parser for the presentation grammar:
//
//   Presentation := "<" Names "|" Relators ">"
//   Names        := name ("," name)*
//   Relators     := e | Relator ("," Relator)*
//   Relator      := Term ("*" Term)*
//   Term         := name Exp? | "[" Relator "," Relator "]"
//   Exp          := "^" ("-"? digits)
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupPresentation presentation() {
    GroupPresentation p;
    expect('<');
    p.generators.push_back(name());
    while (peek() == ',') {
      ++pos_;
      auto const [line, col] = location(skip_ws());
      std::string n = name();
      if (std::find(p.generators.begin(), p.generators.end(), n) !=
          p.generators.end()) {
        throw ParseError("duplicate generator name '" + n + "'", line, col);
      }
      p.generators.push_back(std::move(n));
    }
    expect('|');
    names_ = &p.generators;
    if (peek() != '>') {
      p.relators.push_back(relator_checked());
      while (peek() == ',') {
        ++pos_;
        p.relators.push_back(relator_checked());
      }
    }
    expect('>');
    finish();
    return p;
  }

  /// Parses a whole string as a single word over `names`.
  Word word(std::vector<std::string> const& names) {
    names_ = &names;
    Word w = free_reduce(relator());
    finish();
    return w;
  }

  /// Comma-separated words at bracket depth zero.
  std::vector<Word> word_list(std::vector<std::string> const& names) {
    names_ = &names;
    std::vector<Word> out;
    if (peek() == '\0') {
      return out;
    }
    out.push_back(free_reduce(relator()));
    while (peek() == ',') {
      ++pos_;
      out.push_back(free_reduce(relator()));
    }
    finish();
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> const* names_ = nullptr;

  std::size_t skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  std::pair<std::size_t, std::size_t> location(std::size_t at) const {
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i < at && i < text_.size(); ++i) {
      if (text_[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    return {line, col};
  }

  [[noreturn]] void fail(std::string const& what) {
    auto const [line, col] = location(pos_);
    throw ParseError(what, line, col);
  }

  void expect(char c) {
    if (peek() != c) {
      fail(std::string("expected '") + c + "'" +
           (pos_ < text_.size() ? std::string(", found '") + text_[pos_] + "'"
                                : std::string(", found end of input")));
    }
    ++pos_;
  }

  void finish() {
    if (peek() != '\0') {
      fail(std::string("unexpected trailing '") + text_[pos_] + "'");
    }
  }

  static bool name_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  std::string name() {
    if (!name_start(peek())) {
      fail("expected a generator name");
    }
    std::size_t const start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_')) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  Word relator_checked() {
    std::size_t const start = skip_ws();
    Word w = free_reduce(relator());
    if (w.empty()) {
      auto const [line, col] = location(start);
      throw ParseError("empty relator after reduction", line, col);
    }
    return w;
  }

  Word relator() {
    Word w = term();
    while (peek() == '*') {
      ++pos_;
      Word t = term();
      w.insert(w.end(), t.begin(), t.end());
    }
    return w;
  }

  Word term() {
    if (peek() == '[') {
      ++pos_;
      Word u = relator();
      expect(',');
      Word v = relator();
      expect(']');
      Word out = u;
      out.insert(out.end(), v.begin(), v.end());
      Word ui = inverse(u);
      Word vi = inverse(v);
      out.insert(out.end(), ui.begin(), ui.end());
      out.insert(out.end(), vi.begin(), vi.end());
      return out;
    }
    std::size_t const start = skip_ws();
    std::string const n = name();
    auto const& names = *names_;
    auto it = std::find(names.begin(), names.end(), n);
    if (it == names.end()) {
      auto const [line, col] = location(start);
      throw ParseError("unknown generator '" + n + "'", line, col);
    }
    Letter const l{static_cast<int>(it - names.begin()), 1};
    long long exp = 1;
    if (peek() == '^') {
      ++pos_;
      bool negative = false;
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '-') {
        negative = true;
        ++pos_;
        skip_ws();
      }
      if (pos_ >= text_.size() ||
          !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        fail("expected exponent digits");
      }
      exp = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        exp = exp * 10 + (text_[pos_] - '0');
        if (exp > 1'000'000) {
          fail("exponent too large");
        }
        ++pos_;
      }
      if (negative) {
        exp = -exp;
      }
    }
    Word out;
    Letter const step = exp < 0 ? l.inverse() : l;
    for (long long i = 0; i < (exp < 0 ? -exp : exp); ++i) {
      out.push_back(step);
    }
    return out;
  }
};

}  // namespace detail

/// Parses `<a,b|[a,b],a^2>`-style text. Relators are freely reduced; a relator
/// that reduces to the empty word is an error.
inline GroupPresentation parse_presentation(std::string_view text) {
  return detail::Parser(text).presentation();
}

/// Parses one word in relator syntax over the given generator names.
inline Word parse_word(std::string_view text,
                       std::vector<std::string> const& names) {
  return detail::Parser(text).word(names);
}

/// Parses comma-separated words (commas inside commutator brackets do not
/// split). Words that reduce to the identity are dropped.
inline std::vector<Word> parse_word_list(
    std::string_view text, std::vector<std::string> const& names) {
  auto words = detail::Parser(text).word_list(names);
  std::erase_if(words, [](Word const& w) { return w.empty(); });
  return words;
}

/// Subgroup file format: one word per line; blank lines and lines starting
/// with '#' are ignored.
inline std::vector<Word> parse_subgroup_file(
    std::string_view text, std::vector<std::string> const& names) {
  std::vector<Word> out;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) {
      end = text.size();
    }
    ++line_no;
    std::string_view line = text.substr(start, end - start);
    auto first = line.find_first_not_of(" \t\r");
    if (first != std::string_view::npos && line[first] != '#') {
      try {
        Word w = parse_word(line, names);
        if (!w.empty()) {
          out.push_back(std::move(w));
        }
      } catch (ParseError const& e) {
        throw ParseError(e.message(), line_no, e.column());
      }
    }
    start = end + 1;
  }
  return out;
}

}  // namespace tame
