#pragma once

// Hyperbolicity checks for HNN-extensions and amalgams of free groups along
// finitely generated subgroups.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrp/stallings.hpp"
#include "qgrp/word.hpp"

namespace qgrp {

/// <F, t | t^-1 u t = iso(u)> for u in U. `iso` sends a basis of U to a basis of V.
struct HNNData {
  Alphabet base;
  std::vector<Word> u_generators;
  std::vector<Word> v_generators;
  std::vector<std::pair<Word, Word>> iso;
  char stable_letter = 't';
};

/// F_left *_{U = V} F_right.
struct AmalgamData {
  Alphabet left;
  Alphabet right;
  std::vector<Word> u_generators;  // over left
  std::vector<Word> v_generators;  // over right
  std::vector<std::pair<Word, Word>> iso;
};

enum class Outcome { hyperbolic, not_hyperbolic, inconclusive };
std::string to_string(Outcome o);

/// Elements x, y of the constructed group with x^-1 y^n x = y^m, together
/// with the chain of equalities that proves it. n = m means x and y^n commute.
struct RelationWitness {
  std::string x;
  std::string y;
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::vector<std::string> steps;
  bool free_abelian = false;  // <x, y^n> is free abelian of rank 2
};

struct Verdict {
  Outcome outcome = Outcome::inconclusive;
  std::string citation;
  bool u_separated = false;
  bool v_separated = false;
  bool intersections_finite = true;  // HNN only
  std::optional<SeparationWitness> u_witness;
  std::optional<SeparationWitness> v_witness;
  std::optional<IntersectionWitness> intersection;
  std::optional<RelationWitness> relation;
  std::vector<std::string> unavailable;
};

bool verify_iso(const HNNData& d);
bool verify_iso(const AmalgamData& d);

/// Throws InputError when the iso is not an isomorphism.
Verdict check_separated_hnn(const HNNData& d);
Verdict check_amalgam(const AmalgamData& d);

/// k with base^k == u, if any.
std::optional<std::int64_t> power_of(const Word& u, const Word& base);

}  // namespace qgrp
