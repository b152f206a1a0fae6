#include "qgrp/area.hpp"

#include <algorithm>
#include <set>

#include "qgrp/errors.hpp"

namespace qgrp {

Presentation::Presentation(Alphabet alphabet, std::vector<Word> relators) : alphabet_(std::move(alphabet)) {
  for (const Word& r : relators) {
    Word core = cyclic_reduce(r).core;
    if (core.empty()) throw InputError("relator equals the identity");
    for (Letter l : core.letters())
      if (static_cast<std::size_t>(generator_of(l)) >= alphabet_.size())
        throw InputError("relator uses a letter outside the alphabet");
    relators_.push_back(std::move(core));
  }
}

std::size_t Presentation::max_relator_length() const {
  std::size_t m = 0;
  for (const Word& r : relators_) m = std::max(m, r.size());
  return m;
}

std::optional<std::size_t> dehn_area(const Presentation& p, const Word& w, std::size_t bound) {
  if (w.empty()) return 0;
  if (p.is_free()) return std::nullopt;

  std::vector<std::vector<Letter>> pieces;
  for (const Word& r : p.relators()) {
    for (const Word& base : {r, r.inverse()})
      for (std::size_t k = 0; k < base.size(); ++k) {
        Word rot = rotate(base, k);
        if (std::find(pieces.begin(), pieces.end(), rot.letters()) == pieces.end()) pieces.push_back(rot.letters());
      }
  }
  const std::size_t cap = w.size() + bound * p.max_relator_length();

  std::set<Word> seen{w};
  std::vector<Word> frontier{w};
  for (std::size_t depth = 1; depth <= bound && !frontier.empty(); ++depth) {
    std::vector<Word> next;
    for (const Word& u : frontier) {
      for (std::size_t pos = 0; pos <= u.size(); ++pos) {
        for (const auto& piece : pieces) {
          std::vector<Letter> raw(u.letters().begin(), u.letters().begin() + static_cast<std::ptrdiff_t>(pos));
          raw.insert(raw.end(), piece.begin(), piece.end());
          raw.insert(raw.end(), u.letters().begin() + static_cast<std::ptrdiff_t>(pos), u.letters().end());
          Word v(raw);
          if (v.empty()) return depth;
          if (v.size() > cap || !seen.insert(v).second) continue;
          next.push_back(std::move(v));
        }
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

}  // namespace qgrp
