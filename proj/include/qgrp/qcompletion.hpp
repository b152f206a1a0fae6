#pragma once

// Word and conjugacy problems in the Q-completion F^Q of a free group.
//
// Elements are computed in a tower whose lines carry rational exponents, one
// line per class of primitive elements, created on first use. The finite
// tower T_n is used to report the level of an element.

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "qgrp/finite_tower.hpp"
#include "qgrp/qword.hpp"
#include "qgrp/tower.hpp"

namespace qgrp {

class QCompletion {
 public:
  explicit QCompletion(Alphabet base, int max_level = 3, std::filesystem::path cache_dir = {});

  const Alphabet& base() const { return base_; }

  /// Canonical form of the element.
  Elem normalize(const QWord& w);
  Elem normalize(std::string_view text);
  std::string format(const Elem& e);

  bool equal(const QWord& a, const QWord& b);
  /// conjugator^-1 * a * conjugator == b when conjugate.
  ConjugacyResult conjugate(const QWord& a, const QWord& b);

  Elem multiply(const Elem& a, const Elem& b);
  Elem inverse(const Elem& a);
  Elem power(const Elem& g, const Rational& t);

  /// Least n with e in T_n. Throws ResourceError when e is not in T_cap.
  int locate(const Elem& e);
  /// The element as a canonical form of T_n, if it lies there.
  std::optional<Elem> in_level(const Elem& e, int n);
  FiniteTower& levels() { return levels_; }

 private:
  Elem eval(const QWord& w);
  Elem power_locked(const Elem& g, const Rational& t);
  std::optional<Elem> translate(const Elem& e, const Tower& t);

  Alphabet base_;
  Tower model_;
  FiniteTower levels_;
  std::recursive_mutex mu_;
};

}  // namespace qgrp
