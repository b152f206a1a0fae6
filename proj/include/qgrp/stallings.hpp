#pragma once

// Stallings core graphs of finitely generated subgroups of free groups.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qgrp/word.hpp"

namespace qgrp {

/// Folded, trimmed, basepointed graph labelled by generators. Vertex 0 is the
/// basepoint; vertices are numbered in shortlex order of their geodesic
/// labels, so two graphs for the same subgroup compare equal.
class CoreGraph {
 public:
  struct Edge {
    int source;
    int generator;
    int target;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  CoreGraph(const Alphabet& alphabet, const std::vector<Word>& generators);

  const Alphabet& alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return next_.size(); }
  std::size_t edge_count() const;
  /// Edges with positive labels, sorted.
  std::vector<Edge> edges() const;
  std::optional<int> follow(int vertex, Letter l) const;
  /// Endpoint of reading w from `start`, if the whole word can be read.
  std::optional<int> read(int start, const Word& w) const;

  /// Rank of the subgroup (first Betti number of the graph).
  std::size_t rank() const { return edge_count() + 1 - vertex_count(); }
  /// Shortlex-least word labelling a path from the basepoint to v.
  const Word& geodesic(int v) const { return geodesic_.at(static_cast<std::size_t>(v)); }
  /// A free basis of the subgroup read off a geodesic spanning tree.
  std::vector<Word> basis() const;

  /// "v -x-> w" per line, then "basepoint 0".
  std::string to_text() const;

  friend bool operator==(const CoreGraph& a, const CoreGraph& b) { return a.next_ == b.next_; }

 private:
  Alphabet alphabet_;
  std::vector<std::vector<int>> next_;  // next_[v][letter_rank] or -1
  std::vector<Word> geodesic_;
};

CoreGraph build_core(const Alphabet& alphabet, const std::vector<Word>& generators);
bool contains(const CoreGraph& g, const Word& w);

/// Largest distance from the basepoint to any vertex. Every prefix of a reduced
/// basepoint loop lies within this distance of a subgroup element.
std::size_t quasiconvexity_constant(const CoreGraph& g);

struct FiberComponent {
  std::vector<std::pair<int, int>> vertices;  // sorted
  std::size_t edge_count = 0;
  bool contains_basepoint = false;  // contains (0, 0)
  std::size_t betti() const { return edge_count + 1 - vertices.size(); }
};

/// Connected components of the pullback of two core graphs over the rose.
std::vector<FiberComponent> fiber_product(const CoreGraph& g1, const CoreGraph& g2);

/// x not in U with u and x^-1 u x both nontrivial elements of U.
struct SeparationWitness {
  Word x;
  Word u;
};
/// Malnormality test: U ∩ x U x^-1 trivial for every x outside U.
std::optional<SeparationWitness> conjugate_separation_witness(const CoreGraph& g);
inline bool is_conjugate_separated(const CoreGraph& g) { return !conjugate_separation_witness(g).has_value(); }

/// g and a nontrivial u in U with g u g^-1 in V, i.e. u ∈ U ∩ g^-1 V g.
struct IntersectionWitness {
  Word g;
  Word u;
};
std::optional<IntersectionWitness> infinite_intersection_witness(const CoreGraph& gu, const CoreGraph& gv);
inline bool conjugate_intersections_finite(const CoreGraph& gu, const CoreGraph& gv) {
  return !infinite_intersection_witness(gu, gv).has_value();
}

}  // namespace qgrp
