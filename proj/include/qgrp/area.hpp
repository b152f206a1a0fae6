#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "qgrp/word.hpp"

namespace qgrp {

/// A finite presentation <alphabet | relators>. Relators are stored
/// cyclically reduced; identity relators are rejected.
class Presentation {
 public:
  explicit Presentation(Alphabet alphabet, std::vector<Word> relators = {});

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t max_relator_length() const;
  bool is_free() const { return relators_.empty(); }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
};

/// Least n <= bound such that w is a product of n conjugates of relators
/// (or their inverses), or nothing if no such product is found.
///
/// The search is breadth-first over freely reduced words: one step inserts a
/// cyclic permutation of some r^(+-1) anywhere in the current word. Words
/// longer than |w| + bound * max|r| are pruned, so "nothing" means "not found
/// within that cap".
std::optional<std::size_t> dehn_area(const Presentation& p, const Word& w, std::size_t bound);

}  // namespace qgrp
