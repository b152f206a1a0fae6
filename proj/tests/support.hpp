#pragma once

#include <random>
#include <string>
#include <vector>

#include "qgrp/word.hpp"

namespace qgrp::test {

inline Alphabet ab() { return Alphabet("ab"); }
inline Word W(const std::string& s, const Alphabet& a = ab()) { return parse_word(a, s); }
inline std::string S(const Word& w, const Alphabet& a = ab()) { return format_word(a, w); }

/// Freely reduced random word of exactly `len` letters.
inline Word random_word(std::mt19937& rng, std::size_t rank, std::size_t len) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(2 * rank) - 1);
  std::vector<Letter> v;
  while (v.size() < len) {
    int r = pick(rng);
    Letter l = make_letter(r / 2, r % 2 == 1);
    if (!v.empty() && v.back() == -l) continue;
    v.push_back(l);
  }
  return Word(v);
}

inline Word random_word_upto(std::mt19937& rng, std::size_t rank, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  return random_word(rng, rank, len(rng));
}

/// All freely reduced words of length exactly n.
inline std::vector<Word> all_words(std::size_t rank, std::size_t n) {
  std::vector<Word> out{Word()};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const Word& w : out)
      for (int r = 0; r < static_cast<int>(2 * rank); ++r) {
        Letter l = make_letter(r / 2, r % 2 == 1);
        if (!w.empty() && w[w.size() - 1] == -l) continue;
        next.push_back(w * Word({l}));
      }
    out = std::move(next);
  }
  return out;
}

inline std::vector<Word> all_words_upto(std::size_t rank, std::size_t n) {
  std::vector<Word> out;
  for (std::size_t k = 0; k <= n; ++k)
    for (Word& w : all_words(rank, k)) out.push_back(std::move(w));
  return out;
}

}  // namespace qgrp::test
