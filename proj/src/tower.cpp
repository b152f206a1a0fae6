#include "qgrp/tower.hpp"

#include <algorithm>
#include <cctype>
#include <iterator>

#include "qgrp/errors.hpp"

namespace qgrp {

Tower::Tower(Alphabet base) : base_(std::move(base)) {}

int Tower::top_layer() const {
  int top = 0;
  for (const Line& l : lines_) top = std::max(top, l.layer);
  return top;
}

std::string Tower::key(const Elem& base, const Rational& unit) const {
  return format(base) + "|" + unit.str();
}

std::optional<int> Tower::find_line(const Elem& base, const Rational& unit) const {
  auto it = by_key_.find(key(base, unit));
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

int Tower::extend_centralizer(const Elem& v, std::int64_t m, std::string name) {
  if (m < 1) throw DomainError("root order must be positive");
  if (v.is_identity()) throw DomainError("cannot extract roots of the identity");
  if (!is_cyclically_minimal(v)) throw DomainError("v is not cyclically minimal");
  if (!is_primitive(v)) throw DomainError("v is not primitive in the tower");
  if (name.empty()) name = "w" + std::to_string(lines_.size() + renamings_.size() + 1);
  for (const std::string& n : generator_names())
    if (n == name) throw DomainError("root symbol name already in use: " + name);
  for (const Renaming& r : renamings_)
    if (r.name == name) throw DomainError("root symbol name already in use: " + name);
  if (m == 1) {
    renamings_.push_back({v, name});
    return -1;
  }
  LineInfo info = classify(v);
  info.decomposition = decompose(v);
  Rational unit = info.decomposition.exponent;
  if (unit < Rational(0)) unit = -unit;
  std::string k = key(info.decomposition.base, unit);
  lines_.push_back(Line{v, v.layer + 1, m, std::move(name)});
  info_.push_back(std::move(info));
  by_key_[k] = static_cast<int>(lines_.size()) - 1;
  return static_cast<int>(lines_.size()) - 1;
}

int Tower::ensure_q_line(const Elem& base) {
  if (auto l = find_line(base, Rational(1))) return *l;
  LineInfo info = classify(base);
  info.decomposition = Decomposition{Elem(), base, Rational(1)};
  std::string k = key(base, Rational(1));
  lines_.push_back(Line{base, base.layer + 1, 0, "q" + std::to_string(lines_.size() + 1)});
  info_.push_back(std::move(info));
  by_key_[k] = static_cast<int>(lines_.size()) - 1;
  return static_cast<int>(lines_.size()) - 1;
}

// ---- forms -----------------------------------------------------------------

Tower::Form Tower::view(const Elem& e, int layer) const {
  if (e.layer == layer) return Form{e.pieces, e.syllables};
  return Form{{e}, {}};
}

Elem Tower::assemble(int layer, std::vector<Elem> pieces, std::vector<Syllable> syllables) const {
  if (syllables.empty()) return std::move(pieces.front());
  Elem e;
  e.layer = layer;
  e.pieces = std::move(pieces);
  e.syllables = std::move(syllables);
  return e;
}

Elem Tower::multiply(const Elem& a, const Elem& b) const { return mul(a, b, true); }

Elem Tower::mul(const Elem& a, const Elem& b, bool canonical) const {
  if (a.is_identity()) return b;
  if (b.is_identity()) return a;
  int layer = std::max(a.layer, b.layer);
  if (layer == 0) return Elem::of(a.word * b.word);

  Form fa = view(a, layer), fb = view(b, layer);
  std::vector<Elem> pieces(std::make_move_iterator(fa.pieces.begin()),
                           std::make_move_iterator(fa.pieces.end() - 1));
  std::vector<Syllable> syls = std::move(fa.syllables);
  Elem mid = multiply(fa.pieces.back(), fb.pieces.front());
  std::size_t i = 0;
  while (!syls.empty() && i < fb.syllables.size() && syls.back().line == fb.syllables[i].line) {
    int line = syls.back().line;
    const LineInfo& info = info_[static_cast<std::size_t>(line)];
    const Elem& v = lines_[static_cast<std::size_t>(line)].v;
    auto k = in_cyclic_kind(mid, v, info.kind, info.sub_line, info.q);
    if (!k) break;
    Rational total = syls.back().s + Rational(*k) + fb.syllables[i].s;
    Elem vq = power(v, total.floor());
    if (total.frac().is_zero()) {
      syls.pop_back();
      mid = multiply(multiply(pieces.back(), vq), fb.pieces[i + 1]);
      pieces.pop_back();
    } else {
      syls.back().s = total.frac();
      mid = multiply(vq, fb.pieces[i + 1]);
    }
    ++i;
  }
  std::size_t start = pieces.size();
  pieces.push_back(std::move(mid));
  pieces.insert(pieces.end(), fb.pieces.begin() + static_cast<std::ptrdiff_t>(i) + 1, fb.pieces.end());
  syls.insert(syls.end(), fb.syllables.begin() + static_cast<std::ptrdiff_t>(i), fb.syllables.end());
  if (canonical && !syls.empty()) canonicalize(pieces, syls, start, start + 1);
  return assemble(layer, std::move(pieces), std::move(syls));
}

// Pushes each piece to its coset representative and carries the v-power
// through the following syllable.
void Tower::canonicalize(std::vector<Elem>& pieces, const std::vector<Syllable>& syllables, std::size_t start,
                         std::size_t stable_from) const {
  Elem carry;
  for (std::size_t i = start; i < syllables.size(); ++i) {
    if (i >= stable_from && carry.is_identity()) return;
    Elem h = multiply(carry, pieces[i]);
    auto [rep, k] = coset_rep_line(h, syllables[i].line);
    pieces[i] = std::move(rep);
    carry = power(lines_[static_cast<std::size_t>(syllables[i].line)].v, k);
  }
  pieces.back() = multiply(carry, pieces.back());
}

Elem Tower::inverse(const Elem& a) const {
  if (a.layer == 0) return Elem::of(a.word.inverse());
  std::size_t r = a.syllables.size();
  std::vector<Elem> pieces;
  std::vector<Syllable> syls;
  for (std::size_t j = r; j-- > 0;) {
    const Syllable& s = a.syllables[j];
    pieces.push_back(multiply(inverse(a.pieces[j + 1]), power(lines_[static_cast<std::size_t>(s.line)].v, -1)));
    syls.push_back({s.line, Rational(1) - s.s});
  }
  pieces.push_back(inverse(a.pieces[0]));
  canonicalize(pieces, syls, 0, syls.size());
  return assemble(a.layer, std::move(pieces), std::move(syls));
}

Elem Tower::power(const Elem& a, std::int64_t n) const {
  if (n == 0 || a.is_identity()) return Elem();
  if (a.layer == 0) return Elem::of(a.word.pow(n));
  if (n < 0) return power(inverse(a), -n);
  Elem result, base = a;
  while (n > 0) {
    if (n & 1) result = multiply(result, base);
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

Elem Tower::line_power(int line, const Rational& s) const {
  const Line& l = lines_.at(static_cast<std::size_t>(line));
  if (l.modulus != 0 && !(s * Rational(l.modulus)).is_integer())
    throw DomainError("exponent " + s.str() + " is not available on line " + l.name);
  Elem vq = power(l.v, s.floor());
  if (s.frac().is_zero()) return vq;
  return assemble(l.layer, {Elem(), std::move(vq)}, {{line, s.frac()}});
}

Elem Tower::root_symbol(int line) const {
  const Line& l = lines_.at(static_cast<std::size_t>(line));
  if (l.modulus == 0) throw DomainError("line " + l.name + " has no root symbol");
  return line_power(line, Rational(1, l.modulus));
}

// ---- cyclic subgroups and cosets ---------------------------------------------

std::optional<Rational> Tower::line_exponent(const Elem& h, int line) const {
  const Line& l = lines_[static_cast<std::size_t>(line)];
  const LineInfo& info = info_[static_cast<std::size_t>(line)];
  if (h.layer < l.layer) {
    auto k = in_cyclic_kind(h, l.v, info.kind, info.sub_line, info.q);
    if (!k) return std::nullopt;
    return Rational(*k);
  }
  if (h.layer != l.layer || h.syllables.size() != 1 || h.syllables[0].line != line || !h.pieces[0].is_identity())
    return std::nullopt;
  auto k = in_cyclic_kind(h.pieces[1], l.v, info.kind, info.sub_line, info.q);
  if (!k) return std::nullopt;
  return Rational(*k) + h.syllables[0].s;
}

std::optional<std::int64_t> Tower::in_cyclic_kind(const Elem& h, const Elem& v, Kind kind, int sub_line,
                                                  const Rational& q) const {
  if (h.is_identity()) return 0;
  switch (kind) {
    case Kind::word: {
      if (h.layer != 0 || h.word.size() % v.word.size() != 0) return std::nullopt;
      auto k = static_cast<std::int64_t>(h.word.size() / v.word.size());
      if (v.word.pow(k) == h.word) return k;
      if (v.word.pow(-k) == h.word) return -k;
      return std::nullopt;
    }
    case Kind::hyperbolic: {
      if (h.layer != v.layer || h.syllables.size() % v.syllables.size() != 0) return std::nullopt;
      auto k = static_cast<std::int64_t>(h.syllables.size() / v.syllables.size());
      if (power(v, k) == h) return k;
      if (power(v, -k) == h) return -k;
      return std::nullopt;
    }
    case Kind::elliptic: {
      auto t = line_exponent(h, sub_line);
      if (!t) return std::nullopt;
      Rational x = *t / q;
      if (!x.is_integer()) return std::nullopt;
      return x.num();
    }
  }
  return std::nullopt;
}

Tower::LineInfo Tower::classify(const Elem& core) const {
  LineInfo info;
  if (core.layer == 0) return info;
  info.kind = Kind::hyperbolic;
  if (core.syllables.size() == 1 && core.pieces[0].is_identity()) {
    int line = core.syllables[0].line;
    const LineInfo& li = info_[static_cast<std::size_t>(line)];
    auto k = in_cyclic_kind(core.pieces[1], lines_[static_cast<std::size_t>(line)].v, li.kind, li.sub_line, li.q);
    if (k) {
      info.kind = Kind::elliptic;
      info.sub_line = line;
      info.q = Rational(*k) + core.syllables[0].s;
    }
  }
  return info;
}

// Beyond this many steps every element of h<v> is longer than h.
std::size_t Tower::window(std::size_t len, const Elem& v, Kind kind, const Rational& q) const {
  switch (kind) {
    case Kind::word: return 2 * len / v.word.size() + 2;
    case Kind::hyperbolic: return 3 * len + 4;
    case Kind::elliptic: return (3 * len + 4) * static_cast<std::size_t>(q.den());
  }
  return 0;
}

std::pair<Elem, std::int64_t> Tower::coset_rep_kind(const Elem& h, const Elem& v, Kind kind, int sub_line,
                                                    const Rational& q) const {
  if (auto k = in_cyclic_kind(h, v, kind, sub_line, q)) return {Elem(), *k};
  auto reach = static_cast<std::int64_t>(window(length(h), v, kind, q));
  Elem best = h;
  std::int64_t best_j = 0;
  Elem vinv = inverse(v);
  // Lower bound on the length of h v^-j, from cancellation against h alone.
  auto floor_len = [&](std::int64_t j) -> std::int64_t {
    switch (kind) {
      case Kind::word:
        return j * static_cast<std::int64_t>(v.word.size()) - static_cast<std::int64_t>(length(h));
      case Kind::hyperbolic: {
        auto rh = static_cast<std::int64_t>(h.layer == v.layer ? h.syllables.size() : 0);
        return j * static_cast<std::int64_t>(v.syllables.size()) - rh - 1;
      }
      case Kind::elliptic: return 0;
    }
    return 0;
  };
  for (int dir : {1, -1}) {
    Elem cur = h;
    for (std::int64_t j = 1; j <= reach; ++j) {
      if (floor_len(j) > static_cast<std::int64_t>(length(best))) break;
      cur = multiply(cur, dir > 0 ? vinv : v);
      if (compare(cur, best) < 0) {
        best = cur;
        best_j = dir * j;
      }
    }
  }
  return {best, best_j};
}

std::pair<Elem, std::int64_t> Tower::coset_rep_line(const Elem& h, int line) const {
  const LineInfo& info = info_[static_cast<std::size_t>(line)];
  return coset_rep_kind(h, lines_[static_cast<std::size_t>(line)].v, info.kind, info.sub_line, info.q);
}

std::optional<std::int64_t> Tower::is_in_cyclic(const Elem& h, const Elem& v) const {
  if (v.is_identity()) return h.is_identity() ? std::optional<std::int64_t>(0) : std::nullopt;
  CyclicElem c = cyclic_reduce(v);
  LineInfo info = classify(c.core);
  Elem moved = multiply(multiply(inverse(c.conj), h), c.conj);
  return in_cyclic_kind(moved, c.core, info.kind, info.sub_line, info.q);
}

std::pair<Elem, std::int64_t> Tower::coset_rep(const Elem& h, const Elem& v) const {
  if (v.is_identity() || !is_cyclically_minimal(v)) throw DomainError("coset_rep needs a cyclically minimal v");
  LineInfo info = classify(v);
  return coset_rep_kind(h, v, info.kind, info.sub_line, info.q);
}

// ---- order -------------------------------------------------------------------

std::size_t Tower::length(const Elem& e) const {
  if (e.layer == 0) return e.word.size();
  std::size_t n = e.syllables.size();
  for (const Elem& p : e.pieces) n += length(p);
  return n;
}

int Tower::compare_lines(int a, int b) const {
  if (a == b) return 0;
  const Line& la = lines_[static_cast<std::size_t>(a)];
  const Line& lb = lines_[static_cast<std::size_t>(b)];
  if (int c = compare(la.v, lb.v)) return c;
  if (la.modulus != lb.modulus) return la.modulus < lb.modulus ? -1 : 1;
  return a < b ? -1 : 1;
}

int Tower::compare(const Elem& a, const Elem& b) const {
  std::size_t la = length(a), lb = length(b);
  if (la != lb) return la < lb ? -1 : 1;
  if (a.layer != b.layer) return a.layer < b.layer ? -1 : 1;
  if (a.layer == 0) {
    auto c = a.word <=> b.word;
    return c < 0 ? -1 : (c > 0 ? 1 : 0);
  }
  if (a.syllables.size() != b.syllables.size()) return a.syllables.size() < b.syllables.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.syllables.size(); ++i) {
    if (int c = compare(a.pieces[i], b.pieces[i])) return c;
    if (int c = compare_lines(a.syllables[i].line, b.syllables[i].line)) return c;
    if (a.syllables[i].s != b.syllables[i].s) return a.syllables[i].s < b.syllables[i].s ? -1 : 1;
  }
  return compare(a.pieces.back(), b.pieces.back());
}

// ---- raw products ----------------------------------------------------------------

Elem Tower::reduce_to_semicanonical(const std::vector<RawToken>& raw) const {
  Elem out;
  for (const RawToken& t : raw) {
    Elem f = evaluate({t});
    // Lower-layer pieces must be canonical.
    if (f.layer > out.layer) out = canonical_form(out);
    out = mul(out, f, false);
  }
  return out;
}

Elem Tower::canonical_form(const Elem& f) const {
  if (f.layer == 0) return f;
  Elem out = canonical_form(f.pieces[0]);
  for (std::size_t i = 0; i < f.syllables.size(); ++i) {
    out = multiply(out, line_power(f.syllables[i].line, f.syllables[i].s));
    out = multiply(out, canonical_form(f.pieces[i + 1]));
  }
  return out;
}

bool Tower::is_semicanonical(const Elem& f) const {
  if (f.layer == 0) return true;
  if (f.syllables.empty() || f.pieces.size() != f.syllables.size() + 1) return false;
  for (const Elem& p : f.pieces)
    if (p.layer >= f.layer || canonical_form(p) != p) return false;
  for (std::size_t i = 0; i < f.syllables.size(); ++i) {
    const Syllable& s = f.syllables[i];
    if (s.line < 0 || s.line >= static_cast<int>(lines_.size())) return false;
    const Line& l = lines_[static_cast<std::size_t>(s.line)];
    if (l.layer != f.layer || s.s <= Rational(0) || s.s >= Rational(1)) return false;
    if (l.modulus != 0 && !(s.s * Rational(l.modulus)).is_integer()) return false;
    if (i > 0 && f.syllables[i - 1].line == s.line) {
      const LineInfo& info = info_[static_cast<std::size_t>(s.line)];
      if (in_cyclic_kind(f.pieces[i], l.v, info.kind, info.sub_line, info.q)) return false;
    }
  }
  return true;
}

Elem Tower::evaluate(const std::vector<RawToken>& raw) const {
  Elem out;
  for (const RawToken& t : raw) {
    Elem f;
    if (t.line >= 0) {
      const Line& l = lines_.at(static_cast<std::size_t>(t.line));
      f = l.modulus == 0 ? line_power(t.line, Rational(t.exponent)) : line_power(t.line, Rational(t.exponent, l.modulus));
    } else if (t.renaming >= 0) {
      f = power(renamings_.at(static_cast<std::size_t>(t.renaming)).v, t.exponent);
    } else {
      f = Elem::of(t.word.pow(t.exponent));
    }
    out = multiply(out, f);
  }
  return out;
}

// ---- text --------------------------------------------------------------------

std::string Tower::format(const Elem& e) const {
  if (e.layer == 0) return format_word(base_, e.word);
  std::string out;
  for (std::size_t i = 0; i < e.pieces.size(); ++i) {
    if (!e.pieces[i].is_identity()) out += format(e.pieces[i]);
    if (i < e.syllables.size()) {
      const Elem& v = lines_[static_cast<std::size_t>(e.syllables[i].line)].v;
      std::string vt = format(v);
      if (length(v) > 1) vt = "(" + vt + ")";
      out += vt + "^(" + e.syllables[i].s.str() + ")";
    }
  }
  return out.empty() ? "1" : out;
}

std::vector<RawToken> Tower::parse_raw(std::string_view text) const {
  std::vector<RawToken> out;
  std::size_t i = 0;
  auto separator = [&](std::size_t p) {
    unsigned char c = static_cast<unsigned char>(text[p]);
    if (std::isspace(c) || c == '.') return std::size_t{1};
    if (c == 0xC2 && p + 1 < text.size() && static_cast<unsigned char>(text[p + 1]) == 0xB7) return std::size_t{2};
    return std::size_t{0};
  };
  while (i < text.size()) {
    if (std::size_t n = separator(i)) {
      i += n;
      continue;
    }
    std::size_t start = i;
    while (i < text.size() && separator(i) == 0) ++i;
    std::string_view tok = text.substr(start, i - start);
    RawToken t;
    std::string_view name = tok;
    if (auto caret = tok.find('^'); caret != std::string_view::npos) {
      name = tok.substr(0, caret);
      std::string_view ex = tok.substr(caret + 1);
      std::size_t p = 0;
      bool neg = !ex.empty() && ex[0] == '-';
      if (neg) ++p;
      if (p == ex.size()) throw InputError("missing exponent", start + caret + 1);
      std::int64_t value = 0;
      for (; p < ex.size(); ++p) {
        if (!std::isdigit(static_cast<unsigned char>(ex[p]))) throw InputError("bad exponent", start + caret + 1 + p);
        value = detail::checked_add(detail::checked_mul(value, 10), ex[p] - '0');
      }
      t.exponent = neg ? -value : value;
    }
    if (name.empty()) throw InputError("empty token", start);
    bool found = false;
    for (std::size_t l = 0; l < lines_.size() && !found; ++l)
      if (lines_[l].name == name) {
        t.line = static_cast<int>(l);
        found = true;
      }
    for (std::size_t r = 0; r < renamings_.size() && !found; ++r)
      if (renamings_[r].name == name) {
        t.renaming = static_cast<int>(r);
        found = true;
      }
    if (!found) {
      try {
        t.word = parse_word(base_, name);
      } catch (const InputError& e) {
        std::size_t pos = e.position() == InputError::npos ? start : start + e.position();
        throw InputError(std::string("unknown symbol in '") + std::string(name) + "'", pos);
      }
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Elem> Tower::generators() const {
  std::vector<Elem> out;
  for (std::size_t g = 0; g < base_.size(); ++g) out.push_back(Elem::of(Word::generator(static_cast<int>(g))));
  for (std::size_t l = 0; l < lines_.size(); ++l)
    if (lines_[l].modulus != 0) out.push_back(root_symbol(static_cast<int>(l)));
  return out;
}

std::vector<std::string> Tower::generator_names() const {
  std::vector<std::string> out;
  for (char c : base_.names()) out.emplace_back(1, c);
  for (const Line& l : lines_)
    if (l.modulus != 0) out.push_back(l.name);
  return out;
}

std::vector<std::string> Tower::relations() const {
  std::vector<std::string> out;
  for (const Line& l : lines_)
    if (l.modulus != 0) out.push_back(format(l.v) + " = " + l.name + "^" + std::to_string(l.modulus));
  for (const Renaming& r : renamings_) out.push_back(format(r.v) + " = " + r.name);
  return out;
}

}  // namespace qgrp
