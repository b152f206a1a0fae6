#pragma once

// Iterated extensions of centralizers E(H, v, m) = H *_{v = w^m} <w> over a
// free group, with reduced and canonical forms of their elements.
//
// Lines sharing a layer amalgamate over the same lower group, so a layer is a
// star of amalgams; a line's layer is one above the layer of its v. A modulus
// of 0 marks a line whose root symbol admits every rational exponent.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qgrp/rational.hpp"
#include "qgrp/word.hpp"

namespace qgrp {

/// v^s for the line's v, with 0 < s < 1.
struct Syllable {
  int line = 0;
  Rational s;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

/// Layer 0 elements are free words. An element of layer l > 0 is
/// pieces[0] syllables[0] pieces[1] ... syllables[r-1] pieces[r] with pieces of
/// lower layers and syllables of layer-l lines.
struct Elem {
  int layer = 0;
  Word word;
  std::vector<Elem> pieces;
  std::vector<Syllable> syllables;

  static Elem of(Word w) {
    Elem e;
    e.word = std::move(w);
    return e;
  }
  bool is_identity() const { return layer == 0 && word.empty(); }
  friend bool operator==(const Elem&, const Elem&) = default;
};

struct Line {
  Elem v;
  int layer = 1;
  std::int64_t modulus = 0;  // 0: rational exponents
  std::string name;
};

/// g == conj * core * conj^-1
struct CyclicElem {
  Elem core;
  Elem conj;
};

/// g == conj * base^exponent * conj^-1 where base is the canonical
/// representative of a primitive class. A non-integral exponent stands for
/// the corresponding element of the line chain above base.
struct Decomposition {
  Elem conj;
  Elem base;
  Rational exponent;
};

/// Root of a cyclically reduced element at its own layer: core == root^exponent.
struct ElemRoot {
  Elem root;
  std::int64_t exponent = 1;
};

enum class ConjStatus { conjugate, distinct, unknown };

/// For `conjugate`, conjugator^-1 * f1 * conjugator == f2.
/// `unknown` means no conjugator was found within the search bound.
struct ConjugacyResult {
  ConjStatus status = ConjStatus::unknown;
  std::optional<Elem> conjugator;
};

/// One token of a raw product: a base word, a root symbol or a renamed
/// element, to an integer power.
struct RawToken {
  int line = -1;
  int renaming = -1;
  Word word;
  std::int64_t exponent = 1;
};

class Tower {
 public:
  explicit Tower(Alphabet base);

  const Alphabet& base() const { return base_; }
  const std::vector<Line>& lines() const { return lines_; }
  int top_layer() const;

  /// Adjoins an m-th root of v. m == 1 only records the renaming w := v.
  /// Throws DomainError unless v is cyclically minimal and primitive in the
  /// whole tower. Returns the index of the new line, or -1 for a renaming.
  int extend_centralizer(const Elem& v, std::int64_t m, std::string name = "");
  /// Q-line for a canonical class representative (see class_rep); reuses an
  /// existing one.
  int ensure_q_line(const Elem& base);
  std::optional<int> find_line(const Elem& base, const Rational& unit) const;

  // Arithmetic on canonical forms.
  Elem multiply(const Elem& a, const Elem& b) const;
  Elem inverse(const Elem& a) const;
  Elem power(const Elem& a, std::int64_t n) const;
  /// v^s for the line's v; any s when the modulus is 0, else s*m integral.
  Elem line_power(int line, const Rational& s) const;
  Elem root_symbol(int line) const;
  /// g^t if it exists in the tower.
  std::optional<Elem> rational_power(const Elem& g, const Rational& t) const;

  // Normal forms.
  std::size_t length(const Elem& e) const;
  /// Total order: length, then layer, then structure.
  int compare(const Elem& a, const Elem& b) const;
  std::optional<std::int64_t> is_in_cyclic(const Elem& h, const Elem& v) const;
  /// h == rep * v^k with rep minimal in h<v>; v cyclically minimal.
  std::pair<Elem, std::int64_t> coset_rep(const Elem& h, const Elem& v) const;
  /// Reduced form of a raw product: syllables merged, pieces not normalized.
  Elem reduce_to_semicanonical(const std::vector<RawToken>& raw) const;
  Elem canonical_form(const Elem& f) const;
  bool equal(const Elem& a, const Elem& b) const { return canonical_form(a) == canonical_form(b); }
  /// Structural check of the reduced-form invariants.
  bool is_semicanonical(const Elem& f) const;

  // Conjugacy.
  CyclicElem cyclic_reduce(const Elem& g) const;
  bool is_cyclically_minimal(const Elem& g) const;
  ElemRoot root_of_core(const Elem& core) const;
  Decomposition decompose(const Elem& g) const;
  /// Least positive e with base^e in the tower; 0 when every rational is.
  Rational chain_unit(const Elem& base) const;
  /// Primitive in the whole tower: cyclically minimal and not a proper power.
  bool is_primitive(const Elem& g) const;
  /// Rotation and v^j search with |j| <= k_bound (default: total length + 4).
  ConjugacyResult conjugate_in_tower(const Elem& f1, const Elem& f2,
                                     std::optional<std::size_t> k_bound = std::nullopt) const;
  /// Exact test through canonical class representatives.
  ConjugacyResult conjugate_exact(const Elem& f1, const Elem& f2) const;

  // Text.
  /// Q-word syntax: pieces and syllables "(v)^(p/q)".
  std::string format(const Elem& e) const;
  /// Tokens separated by spaces or dots: root symbol names or base words,
  /// each optionally followed by ^integer.
  std::vector<RawToken> parse_raw(std::string_view text) const;
  Elem evaluate(const std::vector<RawToken>& raw) const;
  std::vector<Elem> generators() const;
  std::vector<std::string> generator_names() const;
  /// "v = w^m" per line.
  std::vector<std::string> relations() const;

  struct Renaming {
    Elem v;
    std::string name;
  };
  const std::vector<Renaming>& renamings() const { return renamings_; }

 private:
  struct Form {
    std::vector<Elem> pieces;
    std::vector<Syllable> syllables;
  };
  enum class Kind { word, hyperbolic, elliptic };
  struct LineInfo {
    Kind kind = Kind::word;
    int sub_line = -1;  // elliptic v = sub_line^q
    Rational q;
    Decomposition decomposition;
  };

  Form view(const Elem& e, int layer) const;
  Elem assemble(int layer, std::vector<Elem> pieces, std::vector<Syllable> syllables) const;
  Elem mul(const Elem& a, const Elem& b, bool canonical) const;
  void canonicalize(std::vector<Elem>& pieces, const std::vector<Syllable>& syllables, std::size_t start,
                    std::size_t stable_from) const;
  std::pair<Elem, std::int64_t> coset_rep_line(const Elem& h, int line) const;
  std::pair<Elem, std::int64_t> coset_rep_kind(const Elem& h, const Elem& v, Kind kind, int sub_line,
                                               const Rational& q) const;
  std::optional<std::int64_t> in_cyclic_kind(const Elem& h, const Elem& v, Kind kind, int sub_line,
                                             const Rational& q) const;
  std::optional<Rational> line_exponent(const Elem& h, int line) const;
  LineInfo classify(const Elem& core) const;
  std::size_t window(std::size_t len, const Elem& v, Kind kind, const Rational& q) const;
  int compare_lines(int a, int b) const;
  std::string key(const Elem& base, const Rational& unit) const;
  struct ClassRep {
    Elem rep;
    Elem conj;  // core == conj * rep^sign * conj^-1
    int sign = 1;
  };
  ClassRep hyperbolic_class_rep(const Elem& core) const;

  Alphabet base_;
  std::vector<Line> lines_;
  std::vector<LineInfo> info_;
  std::vector<Renaming> renamings_;
  std::map<std::string, int> by_key_;
};

}  // namespace qgrp
