#pragma once

// Random Q-words, axiom instances and axiom rewrites.

#include <random>
#include <utility>
#include <vector>

#include "qgrp/qword.hpp"

namespace qgrp::test {

inline Rational random_rational(std::mt19937& rng, int max_den = 4, bool allow_zero = false) {
  std::uniform_int_distribution<int> num(-4, 4), den(1, max_den);
  for (;;) {
    int n = num(rng);
    if (n != 0 || allow_zero) return Rational(n, den(rng));
  }
}

inline Rational random_fraction(std::mt19937& rng, int max_den = 4) {
  for (;;) {
    Rational r = random_rational(rng, max_den);
    if (!r.is_integer()) return r;
  }
}

/// Random Q-word of depth at most `depth` over `rank` letters.
inline QWord random_qword(std::mt19937& rng, std::size_t rank, int depth) {
  std::uniform_int_distribution<int> count(1, 3), coin(0, 2);
  std::uniform_int_distribution<int> letter(0, static_cast<int>(2 * rank) - 1);
  std::vector<QWord> factors;
  int n = count(rng);
  for (int i = 0; i < n; ++i) {
    if (depth >= 2 && coin(rng) == 0) {
      factors.push_back(QWord::power(random_qword(rng, rank, depth - 1), random_fraction(rng)));
    } else {
      int l = letter(rng);
      factors.push_back(QWord::of_letter(make_letter(l / 2, l % 2 == 1)));
    }
  }
  if (factors.size() == 1) return std::move(factors.front());
  return QWord::product(std::move(factors));
}

inline QWord pow_q(QWord w, const Rational& e) { return QWord::power(std::move(w), e); }
inline QWord mul_q(std::vector<QWord> ws) { return QWord::product(std::move(ws)); }
inline QWord inv_q(QWord w) { return QWord::power(std::move(w), Rational(-1)); }

/// Both sides of one instance of axiom `which` (0..6):
/// g^1 = g, g^0 = 1, 1^a = 1, g^(a+b) = g^a g^b, (g^a)^b = g^(ab),
/// (h^-1 g h)^a = h^-1 g^a h, and (gh)^a = g^a h^a for g, h powers of one x.
inline std::pair<QWord, QWord> axiom_instance(std::mt19937& rng, std::size_t rank, int which) {
  QWord g = random_qword(rng, rank, 2), h = random_qword(rng, rank, 2);
  Rational a = random_rational(rng), b = random_rational(rng);
  switch (which) {
    case 0: return {pow_q(g, Rational(1)), g};
    case 1: return {pow_q(g, Rational(0)), QWord::product({})};
    case 2: return {pow_q(QWord::product({}), a), QWord::product({})};
    case 3: return {pow_q(g, a + b), mul_q({pow_q(g, a), pow_q(g, b)})};
    case 4: return {pow_q(pow_q(g, a), b), pow_q(g, a * b)};
    case 5: return {pow_q(mul_q({inv_q(h), g, h}), a), mul_q({inv_q(h), pow_q(g, a), h})};
    default: {
      QWord gx = pow_q(g, a), hx = pow_q(g, b);
      Rational c = random_rational(rng);
      return {pow_q(mul_q({gx, hx}), c), mul_q({pow_q(gx, c), pow_q(hx, c)})};
    }
  }
}

/// Applies one random axiom instance inside w; the result denotes the same element.
inline QWord rewrite(std::mt19937& rng, std::size_t rank, const QWord& w) {
  std::uniform_int_distribution<int> pick(0, 5);
  // Descend to a random subterm with probability 1/2 per level.
  if (!w.children.empty() && rng() % 2 == 0) {
    QWord out = w;
    std::size_t i = rng() % out.children.size();
    out.children[i] = rewrite(rng, rank, out.children[i]);
    return out;
  }
  Rational a = random_fraction(rng);
  switch (pick(rng)) {
    case 0: return pow_q(w, Rational(1));
    case 1: return pow_q(pow_q(w, a), Rational(1) / a);
    case 2: return mul_q({pow_q(w, a), pow_q(w, Rational(1) - a)});
    case 3: {
      QWord h = random_qword(rng, rank, 2);
      return mul_q({w, h, inv_q(h)});
    }
    case 4: {
      if (w.kind == QWord::Kind::power) {
        // (g^x) -> h (h^-1 g h)^x h^-1
        QWord h = random_qword(rng, rank, 1);
        return mul_q({h, pow_q(mul_q({inv_q(h), w.children.front(), h}), w.exponent), inv_q(h)});
      }
      return mul_q({QWord::product({}), w});
    }
    default: {
      if (w.kind == QWord::Kind::power) {
        // g^x -> g^(x-a) g^a
        return mul_q({pow_q(w.children.front(), w.exponent - a), pow_q(w.children.front(), a)});
      }
      return pow_q(pow_q(w, Rational(2)), Rational(1, 2));
    }
  }
}

}  // namespace qgrp::test
