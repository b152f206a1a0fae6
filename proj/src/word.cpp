#include "qgrp/word.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <tuple>

#include "qgrp/errors.hpp"

namespace qgrp {

Alphabet::Alphabet(std::string names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("alphabet must have at least one generator");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    char c = names_[i];
    if (!std::islower(static_cast<unsigned char>(c)))
      throw InputError(std::string("generator names must be lowercase letters: '") + c + "'", i);
    if (names_.find(c) != i) throw InputError(std::string("duplicate generator '") + c + "'", i);
  }
}

Alphabet Alphabet::standard(std::size_t n) {
  if (n == 0 || n > 26) throw InputError("alphabet size must be in 1..26");
  std::string s;
  for (std::size_t i = 0; i < n; ++i) s.push_back(static_cast<char>('a' + i));
  return Alphabet(s);
}

std::optional<int> Alphabet::index_of(char lower) const {
  auto p = names_.find(lower);
  if (p == std::string::npos) return std::nullopt;
  return static_cast<int>(p);
}

Word free_reduce(std::span<const Letter> raw) { return Word(raw); }

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l == 0) throw std::invalid_argument("letter 0 is not a valid letter");
    if (!letters_.empty() && letters_.back() == -l)
      letters_.pop_back();
    else
      letters_.push_back(l);
  }
}

Word Word::inverse() const {
  Word r;
  r.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) r.letters_.push_back(-*it);
  return r;
}

Word Word::pow(std::int64_t n) const {
  if (n < 0) return inverse().pow(-n);
  Word r;
  for (std::int64_t i = 0; i < n; ++i) r = r * *this;
  return r;
}

Word Word::slice(std::size_t pos, std::size_t len) const {
  Word r;
  r.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(pos),
                    letters_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return r;
}

Word operator*(const Word& a, const Word& b) {
  std::size_t k = 0;
  while (k < a.size() && k < b.size() && a.letters_[a.size() - 1 - k] == -b.letters_[k]) ++k;
  Word r;
  r.letters_.reserve(a.size() + b.size() - 2 * k);
  r.letters_.insert(r.letters_.end(), a.letters_.begin(), a.letters_.end() - static_cast<std::ptrdiff_t>(k));
  r.letters_.insert(r.letters_.end(), b.letters_.begin() + static_cast<std::ptrdiff_t>(k), b.letters_.end());
  return r;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() <=> b.size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    int ra = letter_rank(a.letters_[i]);
    int rb = letter_rank(b.letters_[i]);
    if (ra != rb) return ra <=> rb;
  }
  return std::strong_ordering::equal;
}

Word parse_word(const Alphabet& alphabet, std::string_view text) {
  std::vector<Letter> raw;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    if (c == '1') continue;
    char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    auto g = alphabet.index_of(lower);
    if (!std::isalpha(static_cast<unsigned char>(c)) || !g)
      throw InputError(std::string("unknown generator symbol '") + c + "'", i);
    raw.push_back(make_letter(*g, std::isupper(static_cast<unsigned char>(c)) != 0));
  }
  return Word(raw);
}

std::string format_word(const Alphabet& alphabet, const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (Letter l : w.letters()) {
    char c = alphabet.name(generator_of(l));
    s.push_back(l < 0 ? static_cast<char>(std::toupper(static_cast<unsigned char>(c))) : c);
  }
  return s;
}

bool is_cyclically_reduced(const Word& w) {
  return w.size() < 2 || w[0] != -w[w.size() - 1];
}

CyclicWord cyclic_reduce(const Word& w) {
  std::size_t k = 0;
  while (2 * k + 1 < w.size() && w[k] == -w[w.size() - 1 - k]) ++k;
  return {w.slice(k, w.size() - 2 * k), w.slice(0, k)};
}

Word rotate(const Word& w, std::size_t k) {
  if (w.empty()) return w;
  k %= w.size();
  std::vector<Letter> r(w.letters().begin() + static_cast<std::ptrdiff_t>(k), w.letters().end());
  r.insert(r.end(), w.letters().begin(), w.letters().begin() + static_cast<std::ptrdiff_t>(k));
  return Word(r);
}

std::optional<Word> find_conjugator(const Word& u, const Word& v) {
  CyclicWord cu = cyclic_reduce(u);
  CyclicWord cv = cyclic_reduce(v);
  if (cu.core.size() != cv.core.size()) return std::nullopt;
  if (cu.core.empty()) return cu.conjugator * cv.conjugator.inverse();
  std::optional<Word> best;
  for (std::size_t k = 0; k < cu.core.size(); ++k) {
    if (rotate(cu.core, k) != cv.core) continue;
    // rotate(core,k) = x^-1 core x with x the first k letters.
    Word c = cu.conjugator * cu.core.slice(0, k) * cv.conjugator.inverse();
    if (!best || c < *best) best = c;
  }
  return best;
}

bool is_conjugate(const Word& u, const Word& v) { return find_conjugator(u, v).has_value(); }

Root extract_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("extract_root: empty word");
  if (!is_cyclically_reduced(w)) throw std::invalid_argument("extract_root: word is not cyclically reduced");
  const std::size_t n = w.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = w[i] == w[i - d];
    if (periodic) return {w.slice(0, d), static_cast<std::int64_t>(n / d)};
  }
  return {w, 1};
}

bool is_primitive(const Word& w) { return extract_root(w).exponent == 1; }

ClassRep conjugacy_class_rep(const Word& w, bool identify_inverse) {
  CyclicWord cw = cyclic_reduce(w);
  ClassRep best{cw.core, cw.conjugator.inverse(), false};
  if (cw.core.empty()) return best;
  bool first = true;
  auto consider = [&](const Word& core, bool inverted) {
    for (std::size_t k = 0; k < core.size(); ++k) {
      Word rot = rotate(core, k);
      // core = x rot x^-1, x = first k letters; w = p core^(+-1) p^-1.
      Word c = (cw.conjugator * core.slice(0, k)).inverse();
      auto key = std::tie(rot, inverted, c);
      if (first || key < std::tie(best.rep, best.inverted, best.conjugator)) best = {rot, c, inverted};
      first = false;
    }
  };
  consider(cw.core, false);
  if (identify_inverse) consider(cw.core.inverse(), true);
  return best;
}

Rational gromov_product(const Word& x, const Word& y, const Word& o) {
  Word oi = o.inverse();
  auto a = static_cast<std::int64_t>((oi * x).size());
  auto b = static_cast<std::int64_t>((oi * y).size());
  auto c = static_cast<std::int64_t>((x.inverse() * y).size());
  return Rational(a + b - c, 2);
}

std::vector<std::int64_t> exponent_sums(const Word& w, std::size_t rank) {
  std::vector<std::int64_t> s(rank, 0);
  for (Letter l : w.letters()) s.at(static_cast<std::size_t>(generator_of(l))) += l > 0 ? 1 : -1;
  return s;
}

}  // namespace qgrp
