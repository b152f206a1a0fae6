#include "qgrp/qword.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "qgrp/errors.hpp"

namespace qgrp {

namespace {

class Parser {
 public:
  Parser(const Alphabet& a, std::string_view text) : alphabet_(a), text_(text) {}

  QWord parse() {
    QWord w = word();
    skip();
    if (pos_ != text_.size()) throw InputError("unexpected '" + std::string(1, text_[pos_]) + "'", pos_);
    return w;
  }

 private:
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }
  bool at_atom() {
    skip();
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == '1' || std::isalpha(static_cast<unsigned char>(c));
  }

  QWord word() {
    std::vector<QWord> factors;
    if (!at_atom()) throw InputError("expected a letter, '1' or '('", pos_);
    while (at_atom()) factors.push_back(factor());
    if (factors.size() == 1) return std::move(factors.front());
    return QWord::product(std::move(factors));
  }

  QWord factor() {
    QWord a = atom();
    if (at('^')) {
      ++pos_;
      a = QWord::power(std::move(a), rational());
    }
    return a;
  }

  QWord atom() {
    skip();
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      QWord inner = word();
      if (!at(')')) throw InputError("expected ')'", pos_);
      ++pos_;
      return inner;
    }
    if (c == '1') {
      ++pos_;
      return QWord::product({});
    }
    auto g = alphabet_.index_of(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (!g) throw InputError("unknown letter '" + std::string(1, c) + "'", pos_);
    ++pos_;
    return QWord::of_letter(make_letter(*g, std::isupper(static_cast<unsigned char>(c)) != 0));
  }

  std::int64_t digits() {
    skip();
    std::size_t start = pos_;
    std::int64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      try {
        v = detail::checked_add(detail::checked_mul(v, 10), text_[pos_] - '0');
      } catch (const std::overflow_error&) {
        throw InputError("number too large", start);
      }
      ++pos_;
    }
    if (pos_ == start) throw InputError("expected digits", pos_);
    return v;
  }

  Rational rational() {
    bool paren = at('(');
    if (paren) ++pos_;
    bool neg = at('-');
    if (neg) ++pos_;
    std::int64_t num = digits();
    std::int64_t den = 1;
    if (at('/')) {
      ++pos_;
      std::size_t where = pos_;
      den = digits();
      if (den == 0) throw InputError("zero denominator", where);
    }
    if (paren) {
      if (!at(')')) throw InputError("expected ')'", pos_);
      ++pos_;
    }
    return Rational(neg ? -num : num, den);
  }

  const Alphabet& alphabet_;
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

QWord parse_qword(const Alphabet& alphabet, std::string_view text) { return Parser(alphabet, text).parse(); }

Alphabet infer_alphabet(const std::vector<std::string>& texts) {
  std::set<char> letters;
  for (const std::string& t : texts)
    for (char c : t)
      if (std::isalpha(static_cast<unsigned char>(c))) letters.insert(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return Alphabet(std::string(letters.begin(), letters.end()));
}

int depth(const QWord& w) {
  switch (w.kind) {
    case QWord::Kind::letter: return 1;
    case QWord::Kind::product: {
      int d = 1;
      for (const QWord& c : w.children) d = std::max(d, depth(c));
      return d;
    }
    case QWord::Kind::power: return depth(w.children.front()) + (w.exponent.is_integer() ? 0 : 1);
  }
  return 1;
}

std::string to_text(const Alphabet& alphabet, const QWord& w) {
  switch (w.kind) {
    case QWord::Kind::letter: return format_word(alphabet, Word({w.letter}));
    case QWord::Kind::product: {
      if (w.children.empty()) return "1";
      std::string out;
      for (const QWord& c : w.children) out += c.kind == QWord::Kind::product ? "(" + to_text(alphabet, c) + ")" : to_text(alphabet, c);
      return out;
    }
    case QWord::Kind::power: {
      const QWord& b = w.children.front();
      std::string base = to_text(alphabet, b);
      if (b.kind != QWord::Kind::letter) base = "(" + base + ")";
      return base + "^(" + w.exponent.str() + ")";
    }
  }
  return "";
}

}  // namespace qgrp
