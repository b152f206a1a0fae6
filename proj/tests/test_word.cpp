#include "doctest.h"
#include "qgrp/errors.hpp"
#include "support.hpp"

using namespace qgrp;
using namespace qgrp::test;

namespace {

// Naive oracle: cancel one adjacent inverse pair at a time until none is left.
std::vector<Letter> cancel_to_fixpoint(std::vector<Letter> v) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      if (v[i] == -v[i + 1]) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i), v.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
  }
  return v;
}

std::size_t common_prefix(const Word& x, const Word& y) {
  std::size_t k = 0;
  while (k < x.size() && k < y.size() && x[k] == y[k]) ++k;
  return k;
}

}  // namespace

TEST_CASE("free_reduce examples") {
  Alphabet abc("abc");
  CHECK(S(W("aA")) == "1");
  CHECK(W("aA").empty());
  CHECK(S(W("aAb")) == "b");
  CHECK(S(W("abBAc", abc), abc) == "c");
  std::vector<Letter> raw{1, 2, -2, -1, 3};
  CHECK(Word(raw).letters() == cancel_to_fixpoint(raw));
}

TEST_CASE("free_reduce rejects unknown symbols") {
  CHECK_THROWS_AS(W("abz"), InputError);
  try {
    W("ab?");
  } catch (const InputError& e) {
    CHECK(e.position() == 2);
  }
}

TEST_CASE("free_reduce agrees with the pairwise cancellation oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int t = 0; t < 2000; ++t) {
    std::vector<Letter> raw;
    for (int i = 0; i < 14; ++i) raw.push_back(make_letter(pick(rng) / 2, pick(rng) % 2 == 1));
    Word w(raw);
    CHECK(w.letters() == cancel_to_fixpoint(raw));
    CHECK(Word(std::span<const Letter>(w.letters())) == w);  // idempotent
  }
}

TEST_CASE("product length never exceeds the sum") {
  std::mt19937 rng(11);
  for (int t = 0; t < 10000; ++t) {
    Word u = random_word_upto(rng, 2, 10);
    Word v = random_word_upto(rng, 2, 10);
    REQUIRE((u * v).size() <= u.size() + v.size());
  }
}

TEST_CASE("cyclic_reduce examples") {
  auto c = cyclic_reduce(W("abA"));
  CHECK(S(c.core) == "b");
  CHECK(S(c.conjugator) == "a");
  c = cyclic_reduce(W("b"));
  CHECK(S(c.core) == "b");
  CHECK(c.conjugator.empty());
  c = cyclic_reduce(W("Abba"));
  CHECK(S(c.core) == "bb");
  CHECK(S(c.conjugator) == "A");
  CHECK(c.conjugator * c.core * c.conjugator.inverse() == W("Abba"));
}

TEST_CASE("cyclic_reduce reconstitutes its input") {
  std::mt19937 rng(3);
  for (int t = 0; t < 2000; ++t) {
    Word w = random_word_upto(rng, 2, 12);
    auto c = cyclic_reduce(w);
    CHECK(is_cyclically_reduced(c.core));
    CHECK(c.conjugator * c.core * c.conjugator.inverse() == w);
  }
}

TEST_CASE("is_conjugate examples") {
  CHECK(is_conjugate(W("ab"), W("ba")));
  CHECK_FALSE(is_conjugate(W("a"), W("b")));
  // Oracle: enumerate rotations explicitly.
  Word u = W("abAB");
  bool rotation_found = false;
  for (std::size_t k = 0; k < u.size(); ++k) rotation_found |= rotate(u, k) == W("bABa");
  CHECK(rotation_found);
  CHECK(is_conjugate(W("abAB"), W("bABa")));
}

TEST_CASE("conjugacy is an equivalence invariant under random conjugation") {
  std::mt19937 rng(5);
  std::vector<Word> sample;
  for (int i = 0; i < 40; ++i) sample.push_back(random_word_upto(rng, 2, 5));
  for (const Word& x : sample) {
    CHECK(is_conjugate(x, x));
    Word c = random_word_upto(rng, 2, 6);
    Word y = c.inverse() * x * c;
    auto found = find_conjugator(x, y);
    REQUIRE(found);
    CHECK(found->inverse() * x * *found == y);
    for (const Word& z : sample) {
      CHECK(is_conjugate(x, z) == is_conjugate(z, x));
      CHECK(is_conjugate(x, z) == is_conjugate(y, z));
    }
  }
}

TEST_CASE("extract_root examples") {
  auto r = extract_root(W("abab"));
  CHECK(S(r.root) == "ab");
  CHECK(r.exponent == 2);
  r = extract_root(W("ab"));
  CHECK(S(r.root) == "ab");
  CHECK(r.exponent == 1);
  r = extract_root(W("aaaaaa"));
  CHECK(S(r.root) == "a");
  CHECK(r.exponent == 6);
  CHECK_THROWS_AS(extract_root(Word()), std::invalid_argument);
  CHECK_THROWS_AS(extract_root(W("abA")), std::invalid_argument);
}

TEST_CASE("extract_root matches a divisor brute force on small words") {
  for (const Word& w : all_words_upto(2, 6)) {
    if (w.empty() || !is_cyclically_reduced(w)) continue;
    std::int64_t best = 1;
    for (const Word& cand : all_words_upto(2, w.size()))
      for (std::int64_t k = 2; !cand.empty() && k * static_cast<std::int64_t>(cand.size()) <= static_cast<std::int64_t>(w.size()); ++k)
        if (cand.pow(k) == w) best = std::max(best, k);
    CHECK(extract_root(w).exponent == best);
  }
}

TEST_CASE("extract_root reconstitutes every cyclically reduced word up to length 12") {
  std::size_t checked = 0;
  std::vector<Word> layer{Word()};
  for (std::size_t n = 1; n <= 12; ++n) {
    std::vector<Word> next;
    for (const Word& w : layer)
      for (Letter l : {1, -1, 2, -2}) {
        if (!w.empty() && w[w.size() - 1] == -l) continue;
        next.push_back(w * Word({l}));
      }
    layer = std::move(next);
    for (const Word& w : layer) {
      if (!is_cyclically_reduced(w)) continue;
      Root r = extract_root(w);
      REQUIRE(r.root.pow(r.exponent) == w);
      REQUIRE(extract_root(r.root).exponent == 1);
      ++checked;
    }
  }
  CHECK(checked > 500000);
}

TEST_CASE("is_primitive") {
  CHECK(is_primitive(W("ab")));
  CHECK_FALSE(is_primitive(W("abab")));
  CHECK(is_primitive(W("a")));
  CHECK_THROWS(is_primitive(Word()));
}

TEST_CASE("gromov_product examples") {
  Alphabet abc("abc");
  CHECK(gromov_product(W("ab", abc), W("ac", abc)) == Rational(1));
  CHECK(gromov_product(W("ab"), W("ab")) == Rational(2));
  CHECK(gromov_product(W("a"), W("B")) == Rational(0));
}

TEST_CASE("free Cayley graph is 0-hyperbolic") {
  std::mt19937 rng(2024);
  for (int t = 0; t < 10000; ++t) {
    Word x = random_word_upto(rng, 2, 8);
    Word y = random_word_upto(rng, 2, 8);
    Word z = random_word_upto(rng, 2, 8);
    Rational xy = gromov_product(x, y);
    REQUIRE(xy == Rational(static_cast<std::int64_t>(common_prefix(x, y))));
    REQUIRE(xy >= std::min(gromov_product(x, z), gromov_product(y, z)));
  }
}

TEST_CASE("powers of cyclically reduced words have exact length") {
  std::mt19937 rng(17);
  for (int t = 0; t < 500; ++t) {
    Word w = cyclic_reduce(random_word(rng, 2, 1 + t % 9)).core;
    if (w.empty()) continue;
    for (std::int64_t n = 1; n <= 8; ++n) CHECK(w.pow(n).size() == static_cast<std::size_t>(n) * w.size());
  }
}

TEST_CASE("conjugacy class representative") {
  auto rep = conjugacy_class_rep(W("ba"));
  CHECK(S(rep.rep) == "ab");
  CHECK(rep.conjugator.inverse() * rep.rep * rep.conjugator == W("ba"));
  rep = conjugacy_class_rep(W("BA"));
  CHECK(S(rep.rep) == "ab");
  CHECK(rep.inverted);
  CHECK(rep.conjugator.inverse() * rep.rep.inverse() * rep.conjugator == W("BA"));
}
