#include <set>

#include "doctest.h"
#include "qgrp/area.hpp"
#include "support.hpp"

using namespace qgrp;
using namespace qgrp::test;

namespace {

// Oracle: breadth-first over explicit products of conjugates c r^(+-1) c^-1
// with conjugators of length <= cap. Only practical for tiny presentations.
std::optional<std::size_t> area_by_conjugates(const Presentation& p, const Word& w, std::size_t bound,
                                              std::size_t cap) {
  std::vector<Word> factors;
  for (const Word& c : all_words_upto(p.alphabet().size(), cap))
    for (const Word& r : p.relators()) {
      factors.push_back(c * r * c.inverse());
      factors.push_back(c * r.inverse() * c.inverse());
    }
  std::set<Word> level{Word()};
  for (std::size_t n = 0; n <= bound; ++n) {
    if (level.count(w)) return n;
    std::set<Word> next;
    for (const Word& u : level)
      for (const Word& f : factors) next.insert(u * f);
    level = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("dehn_area examples") {
  Alphabet a("a");
  Presentation cyclic3(a, {parse_word(a, "aaa")});
  CHECK(dehn_area(cyclic3, parse_word(a, "aaa"), 4) == std::optional<std::size_t>(1));
  CHECK(dehn_area(cyclic3, parse_word(a, "aaaaaa"), 4) == std::optional<std::size_t>(2));
  Presentation free2(ab());
  CHECK_FALSE(dehn_area(free2, W("abAB"), 4).has_value());
  CHECK(dehn_area(cyclic3, Word(), 4) == std::optional<std::size_t>(0));
}

TEST_CASE("dehn_area agrees with the explicit conjugate-product oracle") {
  Alphabet a("a");
  Presentation cyclic3(a, {parse_word(a, "aaa")});
  for (int k = 1; k <= 3; ++k) {
    Word w = parse_word(a, "aaa").pow(k);
    auto oracle = area_by_conjugates(cyclic3, w, static_cast<std::size_t>(k) + 1, 3);
    REQUIRE(oracle == std::optional<std::size_t>(static_cast<std::size_t>(k)));
    CHECK(dehn_area(cyclic3, w, static_cast<std::size_t>(k) + 1) == oracle);
  }
  // A word not in the normal closure.
  CHECK_FALSE(dehn_area(cyclic3, parse_word(a, "aa"), 3).has_value());
}

TEST_CASE("dehn_area on the commutator presentation of Z^2") {
  Presentation z2(ab(), {W("abAB")});
  CHECK(dehn_area(z2, W("abAB"), 2) == std::optional<std::size_t>(1));
  CHECK(dehn_area(z2, W("aabAAB"), 3) == std::optional<std::size_t>(2));
  auto oracle = area_by_conjugates(z2, W("aabAAB"), 2, 1);
  CHECK(oracle == std::optional<std::size_t>(2));
}

TEST_CASE("presentation rejects trivial relators") {
  CHECK_THROWS(Presentation(ab(), {W("aA")}));
}
