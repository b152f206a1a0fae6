#pragma once

// Q-words: products and rational powers over a free alphabet.
//
//   QWord    := Factor+
//   Factor   := Atom ['^' Rational]
//   Atom     := letter | '1' | '(' QWord ')'
//   Rational := ['-'] digits ['/' digits]   (optionally parenthesized)

#include <string>
#include <string_view>
#include <vector>

#include "qgrp/rational.hpp"
#include "qgrp/word.hpp"

namespace qgrp {

struct QWord {
  enum class Kind { letter, product, power };
  Kind kind = Kind::product;
  Letter letter = 0;
  Rational exponent;
  std::vector<QWord> children;

  static QWord of_letter(Letter l) {
    QWord q;
    q.kind = Kind::letter;
    q.letter = l;
    return q;
  }
  static QWord product(std::vector<QWord> factors) {
    QWord q;
    q.children = std::move(factors);
    return q;
  }
  static QWord power(QWord base, const Rational& e) {
    QWord q;
    q.kind = Kind::power;
    q.exponent = e;
    q.children.push_back(std::move(base));
    return q;
  }
  friend bool operator==(const QWord&, const QWord&) = default;
};

/// Throws InputError with the offending position; zero denominators are rejected.
QWord parse_qword(const Alphabet& alphabet, std::string_view text);
/// Lowercase letters appearing in the texts, in alphabetical order.
Alphabet infer_alphabet(const std::vector<std::string>& texts);
/// 1 for letters; max over products; +1 for a non-integral power.
int depth(const QWord& w);
/// Text that parses back to the same tree.
std::string to_text(const Alphabet& alphabet, const QWord& w);

}  // namespace qgrp
