#pragma once

// Free-group words over a finite alphabet.
//
// A letter is a nonzero int: generator g (0-based) is +(g+1), its inverse
// is -(g+1). Words are always freely reduced. The global tie-break order is
// shortlex with letters ordered by generator index, then positive before
// negative (a < A < b < B < ...).

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qgrp/rational.hpp"

namespace qgrp {

using Letter = int;

inline int generator_of(Letter l) { return (l > 0 ? l : -l) - 1; }
inline Letter make_letter(int generator, bool inverse = false) {
  return inverse ? -(generator + 1) : generator + 1;
}
/// Sort key realizing a < A < b < B < ...
inline int letter_rank(Letter l) { return 2 * generator_of(l) + (l < 0 ? 1 : 0); }

class Alphabet {
 public:
  /// `names` are distinct lowercase letters; uppercase twins denote inverses.
  explicit Alphabet(std::string names);
  /// The first n letters of "abcd...".
  static Alphabet standard(std::size_t n);

  std::size_t size() const { return names_.size(); }
  const std::string& names() const { return names_; }
  char name(int generator) const { return names_.at(static_cast<std::size_t>(generator)); }
  std::optional<int> index_of(char lower) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::string names_;
};

class Word {
 public:
  Word() = default;
  /// Freely reduces `raw`.
  explicit Word(std::span<const Letter> raw);
  Word(std::initializer_list<Letter> raw) : Word(std::span<const Letter>(raw.begin(), raw.size())) {}

  static Word generator(int g, bool inverse = false) { return Word({make_letter(g, inverse)}); }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }

  Word inverse() const;
  Word pow(std::int64_t n) const;
  /// Letters [pos, pos+len) as a word (already reduced).
  Word slice(std::size_t pos, std::size_t len) const;

  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& b) { return *this = *this * b; }

  friend bool operator==(const Word&, const Word&) = default;
  /// Shortlex order.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word free_reduce(std::span<const Letter> raw);

/// Text syntax: lowercase = generator, uppercase = inverse, "1" = identity.
/// Whitespace is ignored. Throws InputError on unknown symbols.
Word parse_word(const Alphabet& alphabet, std::string_view text);
/// Identity prints as "1".
std::string format_word(const Alphabet& alphabet, const Word& w);

bool is_cyclically_reduced(const Word& w);

/// conjugator * core * conjugator^-1 == original.
struct CyclicWord {
  Word core;
  Word conjugator;
};
CyclicWord cyclic_reduce(const Word& w);

/// Rotation moving the first k letters to the end.
Word rotate(const Word& w, std::size_t k);

/// Returns c with c^-1 * u * c == v, or nothing if u and v are not conjugate.
std::optional<Word> find_conjugator(const Word& u, const Word& v);
bool is_conjugate(const Word& u, const Word& v);

struct Root {
  Word root;
  std::int64_t exponent = 1;
};
/// Maximal root of a nonempty cyclically reduced word.
/// Throws std::invalid_argument on empty or non-cyclically-reduced input.
Root extract_root(const Word& w);
bool is_primitive(const Word& w);

/// Shortlex-least cyclic rotation of the core of w or of its inverse.
/// w == conjugator^-1 * rep^(inverted ? -1 : 1) * conjugator.
struct ClassRep {
  Word rep;
  Word conjugator;
  bool inverted = false;
};
ClassRep conjugacy_class_rep(const Word& w, bool identify_inverse = true);

/// (x.y)_o = (|o^-1 x| + |o^-1 y| - |x^-1 y|) / 2.
Rational gromov_product(const Word& x, const Word& y, const Word& o = Word());

/// Sum of exponents of each generator (abelianization).
std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t rank);

}  // namespace qgrp
