#include "qgrp/qcompletion.hpp"

#include "qgrp/errors.hpp"

namespace qgrp {

QCompletion::QCompletion(Alphabet base, int max_level, std::filesystem::path cache_dir)
    : base_(base), model_(base), levels_(std::move(base), max_level, std::move(cache_dir)) {}

Elem QCompletion::eval(const QWord& w) {
  switch (w.kind) {
    case QWord::Kind::letter: return Elem::of(Word({w.letter}));
    case QWord::Kind::product: {
      Elem out;
      for (const QWord& c : w.children) out = model_.multiply(out, eval(c));
      return out;
    }
    case QWord::Kind::power: return power_locked(eval(w.children.front()), w.exponent);
  }
  return Elem();
}

// g = y B^e y^-1 gives g^t = y B^(e t) y^-1.
Elem QCompletion::power_locked(const Elem& g, const Rational& t) {
  if (t.is_integer()) return model_.power(g, t.num());
  if (g.is_identity()) return Elem();
  Decomposition d = model_.decompose(g);
  int line = model_.ensure_q_line(d.base);
  Elem p = model_.line_power(line, d.exponent * t);
  return model_.multiply(model_.multiply(d.conj, p), model_.inverse(d.conj));
}

Elem QCompletion::normalize(const QWord& w) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return eval(w);
}

Elem QCompletion::normalize(std::string_view text) { return normalize(parse_qword(base_, text)); }

std::string QCompletion::format(const Elem& e) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return model_.format(e);
}

bool QCompletion::equal(const QWord& a, const QWord& b) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return eval(a) == eval(b);
}

ConjugacyResult QCompletion::conjugate(const QWord& a, const QWord& b) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return model_.conjugate_exact(eval(a), eval(b));
}

Elem QCompletion::multiply(const Elem& a, const Elem& b) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return model_.multiply(a, b);
}

Elem QCompletion::inverse(const Elem& a) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return model_.inverse(a);
}

Elem QCompletion::power(const Elem& g, const Rational& t) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return power_locked(g, t);
}

std::optional<Elem> QCompletion::translate(const Elem& e, const Tower& t) {
  if (e.layer == 0) return e;
  auto out = translate(e.pieces[0], t);
  if (!out) return std::nullopt;
  for (std::size_t i = 0; i < e.syllables.size(); ++i) {
    const Line& line = model_.lines()[static_cast<std::size_t>(e.syllables[i].line)];
    auto base = translate(line.v, t);
    if (!base) return std::nullopt;
    auto p = t.rational_power(*base, e.syllables[i].s);
    auto next = translate(e.pieces[i + 1], t);
    if (!p || !next) return std::nullopt;
    out = t.multiply(t.multiply(*out, *p), *next);
  }
  return out;
}

std::optional<Elem> QCompletion::in_level(const Elem& e, int n) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  return translate(e, levels_.level(n));
}

int QCompletion::locate(const Elem& e) {
  std::lock_guard<std::recursive_mutex> lock(mu_);
  if (e.layer == 0) return 0;
  for (int n = 1; n <= levels_.max_level(); ++n)
    if (translate(e, levels_.level(n))) return n;
  throw ResourceError("element lies above tower level " + std::to_string(levels_.max_level()));
}

}  // namespace qgrp
