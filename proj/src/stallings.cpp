#include "qgrp/stallings.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include "qgrp/errors.hpp"

namespace qgrp {

namespace {

Letter letter_of_rank(int rank) { return make_letter(rank / 2, rank % 2 == 1); }

// Union-find folding of a labelled graph.
class Folder {
 public:
  explicit Folder(std::size_t slots) : slots_(slots) {}

  int add_vertex() {
    parent_.push_back(static_cast<int>(parent_.size()));
    next_.emplace_back(slots_, -1);
    return parent_.back();
  }

  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      auto& p = parent_[static_cast<std::size_t>(v)];
      p = parent_[static_cast<std::size_t>(p)];
      v = p;
    }
    return v;
  }

  void add_edge(int u, Letter l, int v) {
    queue_.push_back({u, letter_rank(l), v});
    drain();
  }

  std::vector<std::vector<int>> finish(int basepoint) {
    // Collect live vertices and resolve targets.
    std::map<int, int> index;
    for (std::size_t v = 0; v < parent_.size(); ++v)
      if (find(static_cast<int>(v)) == static_cast<int>(v)) index.emplace(static_cast<int>(v), 0);
    int k = 0;
    for (auto& [v, i] : index) i = k++;
    std::vector<std::vector<int>> out(index.size(), std::vector<int>(slots_, -1));
    for (auto& [v, i] : index)
      for (std::size_t s = 0; s < slots_; ++s) {
        int t = next_[static_cast<std::size_t>(v)][s];
        if (t >= 0) out[static_cast<std::size_t>(i)][s] = index.at(find(t));
      }
    base_ = index.at(find(basepoint));
    return out;
  }

  int base() const { return base_; }

 private:
  struct Pending {
    int u;
    int slot;
    int v;
  };

  void drain() {
    while (!queue_.empty()) {
      Pending e = queue_.front();
      queue_.pop_front();
      int u = find(e.u);
      int v = find(e.v);
      auto slot = static_cast<std::size_t>(e.slot);
      int fwd = next_[static_cast<std::size_t>(u)][slot];
      if (fwd >= 0 && find(fwd) != v) {
        merge(fwd, v);
        queue_.push_back(e);
        continue;
      }
      next_[static_cast<std::size_t>(u)][slot] = v;
      int back = next_[static_cast<std::size_t>(v)][slot ^ 1];
      if (back >= 0 && find(back) != u) {
        merge(back, u);
        queue_.push_back(e);
        continue;
      }
      next_[static_cast<std::size_t>(v)][slot ^ 1] = u;
    }
  }

  void merge(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    auto moved = next_[static_cast<std::size_t>(b)];
    std::fill(next_[static_cast<std::size_t>(b)].begin(), next_[static_cast<std::size_t>(b)].end(), -1);
    for (std::size_t s = 0; s < slots_; ++s) {
      if (moved[s] < 0) continue;
      int x = find(moved[s]);
      auto& back = next_[static_cast<std::size_t>(x)][s ^ 1];
      if (back >= 0 && find(back) == a) back = -1;
      queue_.push_back({a, static_cast<int>(s), x});
    }
  }

  std::size_t slots_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> next_;
  std::deque<Pending> queue_;
  int base_ = 0;
};

std::size_t degree(const std::vector<int>& slots) {
  return static_cast<std::size_t>(std::count_if(slots.begin(), slots.end(), [](int t) { return t >= 0; }));
}

}  // namespace

CoreGraph::CoreGraph(const Alphabet& alphabet, const std::vector<Word>& generators) : alphabet_(alphabet) {
  const std::size_t slots = 2 * alphabet.size();
  Folder f(slots);
  int base = f.add_vertex();
  for (const Word& g : generators) {
    for (Letter l : g.letters())
      if (static_cast<std::size_t>(generator_of(l)) >= alphabet.size())
        throw InputError("subgroup generator uses a letter outside the alphabet");
    if (g.empty()) continue;
    int cur = base;
    for (std::size_t i = 0; i < g.size(); ++i) {
      int nxt = i + 1 == g.size() ? base : f.add_vertex();
      f.add_edge(cur, g[i], nxt);
      cur = nxt;
    }
  }
  auto raw = f.finish(base);
  int bp = f.base();

  // Trim hanging trees away from the basepoint.
  std::vector<bool> alive(raw.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < raw.size(); ++v) {
      if (!alive[v] || static_cast<int>(v) == bp || degree(raw[v]) > 1) continue;
      for (std::size_t s = 0; s < slots; ++s) {
        int t = raw[v][s];
        if (t < 0) continue;
        raw[static_cast<std::size_t>(t)][s ^ 1] = -1;
        raw[v][s] = -1;
      }
      alive[v] = false;
      changed = true;
    }
  }

  // Canonical numbering: breadth-first from the basepoint, letters in rank order.
  std::vector<int> order_of(raw.size(), -1);
  std::vector<int> order{bp};
  std::vector<Word> geo{Word()};
  order_of[static_cast<std::size_t>(bp)] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto v = static_cast<std::size_t>(order[i]);
    for (std::size_t s = 0; s < slots; ++s) {
      int t = raw[v][s];
      if (t < 0 || order_of[static_cast<std::size_t>(t)] >= 0) continue;
      order_of[static_cast<std::size_t>(t)] = static_cast<int>(order.size());
      order.push_back(t);
      geo.push_back(geo[i] * Word({letter_of_rank(static_cast<int>(s))}));
    }
  }
  next_.assign(order.size(), std::vector<int>(slots, -1));
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t s = 0; s < slots; ++s) {
      int t = raw[static_cast<std::size_t>(order[i])][s];
      if (t >= 0) next_[i][s] = order_of[static_cast<std::size_t>(t)];
    }
  geodesic_ = std::move(geo);
}

std::size_t CoreGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& row : next_) n += degree(row);
  return n / 2;
}

std::vector<CoreGraph::Edge> CoreGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < next_.size(); ++v)
    for (std::size_t g = 0; g < alphabet_.size(); ++g)
      if (next_[v][2 * g] >= 0) out.push_back({static_cast<int>(v), static_cast<int>(g), next_[v][2 * g]});
  return out;
}

std::optional<int> CoreGraph::follow(int vertex, Letter l) const {
  auto g = static_cast<std::size_t>(generator_of(l));
  if (g >= alphabet_.size()) return std::nullopt;
  int t = next_.at(static_cast<std::size_t>(vertex))[static_cast<std::size_t>(letter_rank(l))];
  if (t < 0) return std::nullopt;
  return t;
}

std::optional<int> CoreGraph::read(int start, const Word& w) const {
  int cur = start;
  for (Letter l : w.letters()) {
    auto t = follow(cur, l);
    if (!t) return std::nullopt;
    cur = *t;
  }
  return cur;
}

std::vector<Word> CoreGraph::basis() const {
  std::vector<Word> out;
  for (const Edge& e : edges()) {
    Word through = geodesic(e.source) * Word::generator(e.generator);
    if (through == geodesic(e.target)) continue;
    Word back = geodesic(e.target) * Word::generator(e.generator, true);
    if (back == geodesic(e.source)) continue;
    out.push_back(through * geodesic(e.target).inverse());
  }
  return out;
}

std::string CoreGraph::to_text() const {
  std::ostringstream os;
  for (const Edge& e : edges()) os << e.source << " -" << alphabet_.name(e.generator) << "-> " << e.target << "\n";
  os << "basepoint 0\n";
  return os.str();
}

CoreGraph build_core(const Alphabet& alphabet, const std::vector<Word>& generators) {
  return CoreGraph(alphabet, generators);
}

bool contains(const CoreGraph& g, const Word& w) {
  auto end = g.read(0, w);
  return end && *end == 0;
}

std::size_t quasiconvexity_constant(const CoreGraph& g) {
  std::size_t eps = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) eps = std::max(eps, g.geodesic(static_cast<int>(v)).size());
  return eps;
}

namespace {

using Pair = std::pair<int, int>;

std::vector<Pair> neighbours(const CoreGraph& a, const CoreGraph& b, Pair p, std::vector<Letter>* labels) {
  std::vector<Pair> out;
  for (int r = 0; r < static_cast<int>(2 * a.alphabet().size()); ++r) {
    Letter l = letter_of_rank(r);
    auto x = a.follow(p.first, l);
    auto y = b.follow(p.second, l);
    if (x && y) {
      out.emplace_back(*x, *y);
      if (labels) labels->push_back(l);
    }
  }
  return out;
}

// A nontrivial reduced loop at `root` inside its product component, if any.
std::optional<Word> loop_at(const CoreGraph& a, const CoreGraph& b, Pair root) {
  std::map<Pair, Word> geo{{root, Word()}};
  std::deque<Pair> queue{root};
  std::optional<Word> best;
  while (!queue.empty()) {
    Pair p = queue.front();
    queue.pop_front();
    std::vector<Letter> labels;
    auto nb = neighbours(a, b, p, &labels);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      auto it = geo.find(nb[i]);
      if (it == geo.end()) {
        geo.emplace(nb[i], geo.at(p) * Word({labels[i]}));
        queue.push_back(nb[i]);
        continue;
      }
      Word cycle = geo.at(p) * Word({labels[i]}) * it->second.inverse();
      if (!cycle.empty() && (!best || cycle < *best)) best = cycle;
    }
  }
  return best;
}

}  // namespace

std::vector<FiberComponent> fiber_product(const CoreGraph& g1, const CoreGraph& g2) {
  if (!(g1.alphabet() == g2.alphabet())) throw InputError("fiber product of graphs over different alphabets");
  std::map<Pair, bool> seen;
  std::vector<FiberComponent> out;
  for (int p = 0; p < static_cast<int>(g1.vertex_count()); ++p)
    for (int q = 0; q < static_cast<int>(g2.vertex_count()); ++q) {
      Pair start{p, q};
      if (seen.count(start)) continue;
      FiberComponent comp;
      std::deque<Pair> queue{start};
      seen[start] = true;
      std::size_t half_edges = 0;
      while (!queue.empty()) {
        Pair cur = queue.front();
        queue.pop_front();
        comp.vertices.push_back(cur);
        for (const Pair& n : neighbours(g1, g2, cur, nullptr)) {
          ++half_edges;
          if (!seen.count(n)) {
            seen[n] = true;
            queue.push_back(n);
          }
        }
      }
      std::sort(comp.vertices.begin(), comp.vertices.end());
      comp.edge_count = half_edges / 2;
      comp.contains_basepoint = std::binary_search(comp.vertices.begin(), comp.vertices.end(), Pair{0, 0});
      out.push_back(std::move(comp));
    }
  return out;
}

std::optional<SeparationWitness> conjugate_separation_witness(const CoreGraph& g) {
  std::optional<SeparationWitness> best;
  for (const FiberComponent& c : fiber_product(g, g)) {
    if (c.contains_basepoint || c.betti() == 0) continue;
    for (const Pair& v : c.vertices) {
      Word x = g.geodesic(v.first) * g.geodesic(v.second).inverse();
      if (best && !(x < best->x)) continue;
      Word gamma = *loop_at(g, g, v);
      best = SeparationWitness{x, g.geodesic(v.first) * gamma * g.geodesic(v.first).inverse()};
    }
  }
  return best;
}

std::optional<IntersectionWitness> infinite_intersection_witness(const CoreGraph& gu, const CoreGraph& gv) {
  std::optional<IntersectionWitness> best;
  for (const FiberComponent& c : fiber_product(gu, gv)) {
    if (c.betti() == 0) continue;
    for (const Pair& v : c.vertices) {
      Word g = gv.geodesic(v.second) * gu.geodesic(v.first).inverse();
      if (best && !(g < best->g)) continue;
      Word gamma = *loop_at(gu, gv, v);
      best = IntersectionWitness{g, gu.geodesic(v.first) * gamma * gu.geodesic(v.first).inverse()};
    }
  }
  return best;
}

}  // namespace qgrp
