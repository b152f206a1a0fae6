#include "qgrp/checker.hpp"

#include <cctype>
#include <cstdlib>
#include <numeric>

#include "qgrp/errors.hpp"

namespace qgrp {

namespace {

const char* const kUnavailable = "rectangular-diagram conditions for graphs of groups (not checked)";

std::string piece(const Alphabet& a, const Word& w) { return w.empty() ? "" : format_word(a, w); }

// Generators equal to a basis of size rank, and the mapping is a bijection
// between such bases.
bool iso_ok(const Alphabet& left, const Alphabet& right, const std::vector<Word>& ugens,
            const std::vector<Word>& vgens, const std::vector<std::pair<Word, Word>>& iso) {
  CoreGraph u = build_core(left, ugens);
  CoreGraph v = build_core(right, vgens);
  std::vector<Word> src, dst;
  for (const auto& [a, b] : iso) {
    src.push_back(a);
    dst.push_back(b);
  }
  if (u.rank() != iso.size() || v.rank() != iso.size()) return false;
  // A generating set of a free group whose size is the rank is a basis.
  return build_core(left, src) == u && build_core(right, dst) == v;
}

void check_letters(const Alphabet& a, const std::vector<Word>& ws, const char* what) {
  for (const Word& w : ws)
    for (Letter l : w.letters())
      if (generator_of(l) >= static_cast<int>(a.size()))
        throw InputError(std::string(what) + " uses a letter outside its alphabet");
}

std::int64_t unique_power(const Word& u, const Word& base) {
  auto k = power_of(u, base);
  if (!k) throw std::logic_error("cyclic subgroup element is not a power of its generator");
  return *k;
}

void require_equal(const Word& lhs, const Word& rhs, const char* what) {
  if (lhs != rhs) throw std::logic_error(std::string("witness verification failed: ") + what);
}

// Cyclic HNN case with U ∩ g^-1 V g infinite: x = t g, y = u and
// x^-1 y^q x = y^p where u = alpha^p and g u g^-1 = beta^q.
RelationWitness hnn_intersection_relation(const HNNData& d, const IntersectionWitness& w) {
  const Word& alpha = d.iso.front().first;
  const Word& beta = d.iso.front().second;
  std::int64_t p = unique_power(w.u, alpha);
  std::int64_t q = unique_power(w.g * w.u * w.g.inverse(), beta);
  const std::string t(1, d.stable_letter);
  RelationWitness r;
  r.x = t + piece(d.base, w.g);
  r.y = format_word(d.base, w.u);
  r.n = q;
  r.m = p;
  Word image = beta.pow(p * q);  // t^-1 u^q t
  Word result = w.g.inverse() * image * w.g;
  require_equal(result, w.u.pow(p), "conjugated power");
  r.steps.push_back("relation: " + t + "^-1 (" + format_word(d.base, w.u.pow(q)) + ") " + t + " = " +
                    format_word(d.base, image));
  r.steps.push_back("free: (" + piece(d.base, w.g.inverse()) + ")(" + format_word(d.base, image) + ")(" +
                    piece(d.base, w.g) + ") = " + format_word(d.base, result));
  // x has stable-letter length one, so no power of x lies in the base.
  r.free_abelian = (p == q);
  return r;
}

// Cyclic HNN case with neither side malnormal: x = (t g2^s t^-1 g1^s)^s with
// s = 2 when g1^2 ∉ U and g2^2 ∉ V, else 1; x commutes with c = alpha^L.
RelationWitness hnn_commuting_relation(const HNNData& d, const CoreGraph& cu, const CoreGraph& cv,
                                       const SeparationWitness& wu, const SeparationWitness& wv) {
  const Word& alpha = d.iso.front().first;
  const Word& beta = d.iso.front().second;
  std::int64_t p = std::abs(unique_power(wu.u, alpha));
  std::int64_t q = std::abs(unique_power(wv.u, beta));
  std::int64_t l = std::lcm(p, q);
  Word c = alpha.pow(l), dd = beta.pow(l);
  int s = (!contains(cu, wu.x.pow(2)) && !contains(cv, wv.x.pow(2))) ? 2 : 1;
  Word g1 = wu.x.pow(s), g2 = wv.x.pow(s);
  if (contains(cu, g1) || contains(cv, g2)) throw std::logic_error("degenerate commuting witness");

  const std::string t(1, d.stable_letter);
  const std::string T(1, static_cast<char>(std::toupper(static_cast<unsigned char>(d.stable_letter))));
  RelationWitness r;
  std::string body = t + piece(d.base, g2) + T + piece(d.base, g1);
  r.x = s == 2 ? "(" + body + ")^2" : body;
  r.y = format_word(d.base, c);
  require_equal(g1 * c * g1.inverse(), c, "g1 centralizes c");
  require_equal(g2 * dd * g2.inverse(), dd, "g2 centralizes d");
  r.steps.push_back("free: " + piece(d.base, g1) + " commutes with " + format_word(d.base, c));
  r.steps.push_back("relation: " + t + "^-1 (" + format_word(d.base, c) + ") " + t + " = " +
                    format_word(d.base, dd));
  r.steps.push_back("free: " + piece(d.base, g2) + " commutes with " + format_word(d.base, dd));
  r.steps.push_back("relation: " + t + " (" + format_word(d.base, dd) + ") " + t + "^-1 = " +
                    format_word(d.base, c));
  // x is cyclically reduced in the HNN sense with nonzero stable-letter length.
  r.free_abelian = true;
  return r;
}

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::hyperbolic: return "hyperbolic";
    case Outcome::not_hyperbolic: return "not-hyperbolic";
    case Outcome::inconclusive: return "hypotheses-fail-inconclusive";
  }
  return "";
}

std::optional<std::int64_t> power_of(const Word& u, const Word& base) {
  if (u.empty()) return 0;
  if (base.empty()) return std::nullopt;
  CyclicWord cw = cyclic_reduce(base);
  std::size_t outer = 2 * cw.conjugator.size();
  if (u.size() < outer || (u.size() - outer) % cw.core.size() != 0) return std::nullopt;
  auto k = static_cast<std::int64_t>((u.size() - outer) / cw.core.size());
  if (base.pow(k) == u) return k;
  if (base.pow(-k) == u) return -k;
  return std::nullopt;
}

bool verify_iso(const HNNData& d) {
  return iso_ok(d.base, d.base, d.u_generators, d.v_generators, d.iso);
}

bool verify_iso(const AmalgamData& d) {
  return iso_ok(d.left, d.right, d.u_generators, d.v_generators, d.iso);
}

Verdict check_separated_hnn(const HNNData& d) {
  if (d.base.index_of(d.stable_letter)) throw InputError("stable letter clashes with a base generator");
  check_letters(d.base, d.u_generators, "U generator");
  check_letters(d.base, d.v_generators, "V generator");
  if (!verify_iso(d)) throw DomainError("iso does not extend to an isomorphism U -> V");

  CoreGraph cu = build_core(d.base, d.u_generators);
  CoreGraph cv = build_core(d.base, d.v_generators);
  Verdict v;
  v.u_witness = conjugate_separation_witness(cu);
  v.v_witness = conjugate_separation_witness(cv);
  v.intersection = infinite_intersection_witness(cu, cv);
  v.u_separated = !v.u_witness;
  v.v_separated = !v.v_witness;
  v.intersections_finite = !v.intersection;

  if ((v.u_separated || v.v_separated) && v.intersections_finite) {
    v.outcome = Outcome::hyperbolic;
    v.citation = "Theorem 1; Corollary 5";
    return v;
  }
  if (cu.rank() == 1) {
    v.outcome = Outcome::not_hyperbolic;
    v.citation = "Corollary 1";
    v.relation = v.intersection ? hnn_intersection_relation(d, *v.intersection)
                                : hnn_commuting_relation(d, cu, cv, *v.u_witness, *v.v_witness);
    return v;
  }
  v.outcome = Outcome::inconclusive;
  v.unavailable.push_back(kUnavailable);
  return v;
}

Verdict check_amalgam(const AmalgamData& d) {
  check_letters(d.left, d.u_generators, "U generator");
  check_letters(d.right, d.v_generators, "V generator");
  if (!verify_iso(d)) throw DomainError("iso does not extend to an isomorphism U -> V");

  CoreGraph cu = build_core(d.left, d.u_generators);
  CoreGraph cv = build_core(d.right, d.v_generators);
  Verdict v;
  v.u_witness = conjugate_separation_witness(cu);
  v.v_witness = conjugate_separation_witness(cv);
  v.u_separated = !v.u_witness;
  v.v_separated = !v.v_witness;

  if (cu.rank() == 0) {
    v.outcome = Outcome::hyperbolic;
    v.citation = "Corollary 3";
    return v;
  }
  if (v.u_separated || v.v_separated) {
    v.outcome = Outcome::hyperbolic;
    v.citation = "Theorem 2";
    return v;
  }
  if (cu.rank() == 1) {
    // z = alpha^L = beta^L commutes with g1 and g2, hence with (g1 g2)^2.
    const Word& alpha = d.iso.front().first;
    const Word& beta = d.iso.front().second;
    std::int64_t p = std::abs(unique_power(v.u_witness->u, alpha));
    std::int64_t q = std::abs(unique_power(v.v_witness->u, beta));
    std::int64_t l = std::lcm(p, q);
    Word zl = alpha.pow(l), zr = beta.pow(l);
    const Word& g1 = v.u_witness->x;
    const Word& g2 = v.v_witness->x;
    require_equal(g1 * zl * g1.inverse(), zl, "g1 centralizes z");
    require_equal(g2 * zr * g2.inverse(), zr, "g2 centralizes z");
    RelationWitness r;
    r.x = "(" + format_word(d.left, g1) + "·" + format_word(d.right, g2) + ")^2";
    r.y = format_word(d.left, zl);
    r.steps.push_back("free (left): " + format_word(d.left, g1) + " commutes with " + format_word(d.left, zl));
    r.steps.push_back("relation: " + format_word(d.left, zl) + " = " + format_word(d.right, zr));
    r.steps.push_back("free (right): " + format_word(d.right, g2) + " commutes with " + format_word(d.right, zr));
    // g1 ∉ U and g2 ∉ V, so (g1 g2)^k is a reduced alternating product.
    r.free_abelian = true;
    v.relation = r;
    v.outcome = Outcome::not_hyperbolic;
    v.citation = "Corollary 2";
    return v;
  }
  v.outcome = Outcome::inconclusive;
  v.unavailable.push_back(kUnavailable);
  return v;
}

}  // namespace qgrp
