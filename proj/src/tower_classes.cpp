// Conjugacy classes in a tower: cyclic reduction, roots, class
// representatives and conjugacy search.

#include <algorithm>

#include "qgrp/errors.hpp"
#include "qgrp/tower.hpp"

namespace qgrp {

namespace {

Rational abs_value(const Rational& r) { return r < Rational(0) ? -r : r; }

}  // namespace

CyclicElem Tower::cyclic_reduce(const Elem& g) const {
  if (g.layer == 0) {
    CyclicWord cw = qgrp::cyclic_reduce(g.word);
    return {Elem::of(cw.core), Elem::of(cw.conjugator)};
  }
  Elem conj;
  Elem core = g;
  for (;;) {
    if (core.layer < g.layer) {
      CyclicElem sub = cyclic_reduce(core);
      return {sub.core, multiply(conj, sub.conj)};
    }
    if (!core.pieces[0].is_identity()) {
      Elem c0 = core.pieces[0];
      core = multiply(multiply(inverse(c0), core), c0);
      conj = multiply(conj, c0);
      continue;
    }
    int line = core.syllables.back().line;
    if (core.syllables.front().line != line) return {core, conj};
    const LineInfo& info = info_[static_cast<std::size_t>(line)];
    if (!in_cyclic_kind(core.pieces.back(), lines_[static_cast<std::size_t>(line)].v, info.kind, info.sub_line,
                        info.q))
      return {core, conj};
    if (core.syllables.size() == 1) return {core, conj};
    // Move the last syllable to the front, where it merges with the first.
    Elem b = assemble(core.layer, {Elem(), core.pieces.back()}, {core.syllables.back()});
    Elem binv = inverse(b);
    core = multiply(multiply(b, core), binv);
    conj = multiply(conj, binv);
  }
}

bool Tower::is_cyclically_minimal(const Elem& g) const {
  if (g.layer == 0) return is_cyclically_reduced(g.word);
  int line = g.syllables.back().line;
  if (g.syllables.front().line != line) return true;
  const LineInfo& info = info_[static_cast<std::size_t>(line)];
  Elem wrap = multiply(g.pieces.back(), g.pieces.front());
  if (!in_cyclic_kind(wrap, lines_[static_cast<std::size_t>(line)].v, info.kind, info.sub_line, info.q)) return true;
  return g.syllables.size() == 1 && g.pieces[0].is_identity();
}

ElemRoot Tower::root_of_core(const Elem& core) const {
  if (core.layer == 0) {
    Root r = extract_root(core.word);
    return {Elem::of(r.root), r.exponent};
  }
  LineInfo info = classify(core);
  if (info.kind == Kind::elliptic) return {core, 1};
  std::size_t r = core.syllables.size();
  std::size_t len = length(core);
  for (std::size_t e = r; e >= 2; --e) {
    if (r % e != 0) continue;
    std::size_t k = r / e;
    bool periodic = true;
    for (std::size_t i = k; i < r && periodic; ++i) periodic = core.syllables[i] == core.syllables[i - k];
    if (!periodic) continue;
    Elem prefix = assemble(core.layer, std::vector<Elem>(core.pieces.begin(), core.pieces.begin() + static_cast<std::ptrdiff_t>(k) + 1),
                           std::vector<Syllable>(core.syllables.begin(), core.syllables.begin() + static_cast<std::ptrdiff_t>(k)));
    int line = core.syllables[0].line;
    const LineInfo& li = info_[static_cast<std::size_t>(line)];
    const Elem& v = lines_[static_cast<std::size_t>(line)].v;
    // rho has exactly k syllables, which caps |j| for hyperbolic v.
    auto reach = static_cast<std::int64_t>(window(len, v, li.kind, li.q));
    if (li.kind == Kind::hyperbolic)
      reach = static_cast<std::int64_t>((2 * k + 1) / v.syllables.size() + 1);
    Elem vinv = inverse(v);
    Elem up = prefix, down = prefix;
    if (power(prefix, static_cast<std::int64_t>(e)) == core) return {prefix, static_cast<std::int64_t>(e)};
    for (std::int64_t j = 1; j <= reach; ++j) {
      up = multiply(up, v);
      if (power(up, static_cast<std::int64_t>(e)) == core) return {up, static_cast<std::int64_t>(e)};
      down = multiply(down, vinv);
      if (power(down, static_cast<std::int64_t>(e)) == core) return {down, static_cast<std::int64_t>(e)};
    }
  }
  return {core, 1};
}

// Least element over rotations of rho and rho^-1, each conjugated by powers
// of the v of its first syllable.
Tower::ClassRep Tower::hyperbolic_class_rep(const Elem& rho) const {
  std::optional<ClassRep> best;
  for (int sign : {1, -1}) {
    Elem x = rho, outer;
    if (sign < 0) {
      CyclicElem c = cyclic_reduce(inverse(rho));
      x = c.core;
      outer = c.conj;
    }
    std::size_t r = x.syllables.size();
    for (std::size_t i = 0; i < r; ++i) {
      Elem prefix = assemble(x.layer, std::vector<Elem>(x.pieces.begin(), x.pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1),
                             std::vector<Syllable>(x.syllables.begin(), x.syllables.begin() + static_cast<std::ptrdiff_t>(i)));
      Elem rot = multiply(multiply(inverse(prefix), x), prefix);
      int line = rot.syllables[0].line;
      const LineInfo& li = info_[static_cast<std::size_t>(line)];
      const Elem& v = lines_[static_cast<std::size_t>(line)].v;
      auto reach = static_cast<std::int64_t>(window(length(rot), v, li.kind, li.q));
      Elem base = multiply(outer, prefix);
      auto consider = [&](const Elem& cand, const Elem& vj) {
        if (!best || compare(cand, best->rep) < 0) best = ClassRep{cand, multiply(base, vj), sign};
      };
      consider(rot, Elem());
      Elem vinv = inverse(v);
      for (int dir : {1, -1}) {
        const Elem& step = dir > 0 ? v : vinv;
        const Elem& back = dir > 0 ? vinv : v;
        Elem cand = rot, vj;
        for (std::int64_t j = 1; j <= reach; ++j) {
          cand = multiply(multiply(back, cand), step);
          vj = multiply(vj, step);
          consider(cand, vj);
        }
      }
    }
  }
  return *best;
}

Decomposition Tower::decompose(const Elem& g) const {
  if (g.is_identity()) return Decomposition{Elem(), Elem(), Rational(0)};
  CyclicElem c = cyclic_reduce(g);
  const Elem& u = c.core;
  if (u.layer == 0) {
    qgrp::ClassRep cls = conjugacy_class_rep(u.word, true);
    Root root = extract_root(cls.rep);
    std::int64_t e = cls.inverted ? -root.exponent : root.exponent;
    return Decomposition{multiply(c.conj, Elem::of(cls.conjugator.inverse())), Elem::of(root.root), Rational(e)};
  }
  LineInfo info = classify(u);
  if (info.kind == Kind::elliptic) {
    const Decomposition& d = info_[static_cast<std::size_t>(info.sub_line)].decomposition;
    return Decomposition{multiply(c.conj, d.conj), d.base, d.exponent * info.q};
  }
  ElemRoot root = root_of_core(u);
  ClassRep cls = hyperbolic_class_rep(root.root);
  return Decomposition{multiply(c.conj, cls.conj), cls.rep, Rational(cls.sign * root.exponent)};
}

// Smallest exponent e with base^e in the tower; 0 when every rational is.
Rational Tower::chain_unit(const Elem& base) const {
  Rational unit(1);
  while (auto l = find_line(base, unit)) {
    std::int64_t m = lines_[static_cast<std::size_t>(*l)].modulus;
    if (m == 0) return Rational(0);
    unit = unit / Rational(m);
  }
  return unit;
}

bool Tower::is_primitive(const Elem& g) const {
  if (g.is_identity()) return false;
  Decomposition d = decompose(g);
  Rational unit = chain_unit(d.base);
  return !unit.is_zero() && abs_value(d.exponent) == unit;
}

std::optional<Elem> Tower::rational_power(const Elem& g, const Rational& t) const {
  if (t.is_integer()) return power(g, t.num());
  if (g.is_identity()) return Elem();
  Decomposition d = decompose(g);
  Rational x = d.exponent * t;
  Rational unit(1);
  // Walk up the chain of lines over the base until x is a multiple of the
  // line's v-exponent divided by its modulus.
  for (;;) {
    auto l = find_line(d.base, unit);
    if (!l) return std::nullopt;
    const Line& line = lines_[static_cast<std::size_t>(*l)];
    const Decomposition& ld = info_[static_cast<std::size_t>(*l)].decomposition;
    Rational next = line.modulus == 0 ? Rational(0) : unit / Rational(line.modulus);
    if (line.modulus == 0 || (x / next).is_integer()) {
      // base^e_L = y^-1 v y, so base^x = y^-1 v^(x/e_L) y.
      Elem inner = line_power(*l, x / ld.exponent);
      Elem y = ld.conj;
      Elem bx = multiply(multiply(inverse(y), inner), y);
      return multiply(multiply(d.conj, bx), inverse(d.conj));
    }
    unit = next;
  }
}

ConjugacyResult Tower::conjugate_exact(const Elem& f1, const Elem& f2) const {
  if (f1.is_identity() || f2.is_identity()) {
    if (f1.is_identity() && f2.is_identity()) return {ConjStatus::conjugate, Elem()};
    return {ConjStatus::distinct, std::nullopt};
  }
  Decomposition d1 = decompose(f1), d2 = decompose(f2);
  if (d1.base != d2.base || d1.exponent != d2.exponent) return {ConjStatus::distinct, std::nullopt};
  return {ConjStatus::conjugate, multiply(d1.conj, inverse(d2.conj))};
}

ConjugacyResult Tower::conjugate_in_tower(const Elem& f1, const Elem& f2, std::optional<std::size_t> k_bound) const {
  if (f1.is_identity() || f2.is_identity()) {
    if (f1.is_identity() && f2.is_identity()) return {ConjStatus::conjugate, Elem()};
    return {ConjStatus::distinct, std::nullopt};
  }
  CyclicElem c1 = cyclic_reduce(f1), c2 = cyclic_reduce(f2);
  const Elem& u1 = c1.core;
  const Elem& u2 = c2.core;
  // With c^-1 u1 c = u2, the conjugator for f1, f2 is C1 c C2^-1.
  auto finish = [&](const Elem& c) {
    return ConjugacyResult{ConjStatus::conjugate, multiply(multiply(c1.conj, c), inverse(c2.conj))};
  };
  if (u1.layer != u2.layer) return {ConjStatus::distinct, std::nullopt};
  if (u1.layer == 0) {
    auto c = find_conjugator(u1.word, u2.word);
    if (!c) return {ConjStatus::distinct, std::nullopt};
    return finish(Elem::of(*c));
  }
  LineInfo i1 = classify(u1), i2 = classify(u2);
  if (i1.kind != i2.kind) return {ConjStatus::distinct, std::nullopt};
  if (i1.kind == Kind::elliptic) {
    if (i1.sub_line != i2.sub_line || i1.q != i2.q) return {ConjStatus::distinct, std::nullopt};
    return finish(Elem());
  }
  std::size_t r = u1.syllables.size();
  if (u2.syllables.size() != r) return {ConjStatus::distinct, std::nullopt};
  std::size_t bound = k_bound ? *k_bound : length(u1) + length(u2) + 4;
  bool any_rotation = false;
  for (std::size_t i = 0; i < r; ++i) {
    bool match = true;
    for (std::size_t j = 0; j < r && match; ++j) match = u1.syllables[(i + j) % r] == u2.syllables[j];
    if (!match) continue;
    any_rotation = true;
    Elem prefix = assemble(u1.layer, std::vector<Elem>(u1.pieces.begin(), u1.pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1),
                           std::vector<Syllable>(u1.syllables.begin(), u1.syllables.begin() + static_cast<std::ptrdiff_t>(i)));
    Elem rot = multiply(multiply(inverse(prefix), u1), prefix);
    const Elem& v = lines_[static_cast<std::size_t>(rot.syllables[0].line)].v;
    Elem vinv = inverse(v);
    Elem up, down;
    if (rot == u2) return finish(prefix);
    for (std::size_t j = 1; j <= bound; ++j) {
      up = multiply(up, v);
      if (multiply(multiply(inverse(up), rot), up) == u2) return finish(multiply(prefix, up));
      down = multiply(down, vinv);
      if (multiply(multiply(inverse(down), rot), down) == u2) return finish(multiply(prefix, down));
    }
  }
  if (!any_rotation) return {ConjStatus::distinct, std::nullopt};
  return {ConjStatus::unknown, std::nullopt};
}

}  // namespace qgrp
