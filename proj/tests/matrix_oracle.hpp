#pragma once

// Random SU(2) representations of towers. Each base letter goes to a random
// unitary matrix and v^s to the principal power of the image of v, so equal
// elements have equal images and distinct ones almost surely do not.

#include <array>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "qgrp/tower.hpp"

namespace qgrp::test {

using C = std::complex<double>;
using Mat = std::array<C, 4>;  // row major

inline Mat identity_mat() { return {C(1), C(0), C(0), C(1)}; }

inline Mat operator*(const Mat& x, const Mat& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

inline Mat mat_inverse(const Mat& x) {
  C det = x[0] * x[3] - x[1] * x[2];
  return {x[3] / det, -x[1] / det, -x[2] / det, x[0] / det};
}

inline double distance(const Mat& x, const Mat& y) {
  double d = 0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

inline bool close(const Mat& x, const Mat& y, double tol = 1e-7) { return distance(x, y) < tol; }

inline C trace(const Mat& x) { return x[0] + x[3]; }

/// exp(s Log M) by Sylvester's formula; M must have distinct eigenvalues.
inline Mat principal_power(const Mat& m, double s) {
  C tr = m[0] + m[3], det = m[0] * m[3] - m[1] * m[2];
  C disc = std::sqrt(tr * tr / 4.0 - det);
  C l1 = tr / 2.0 + disc, l2 = tr / 2.0 - disc;
  C f1 = std::exp(s * std::log(l1)), f2 = std::exp(s * std::log(l2));
  Mat out;
  Mat id = identity_mat();
  for (int i = 0; i < 4; ++i) out[i] = (f1 * (m[i] - l2 * id[i]) - f2 * (m[i] - l1 * id[i])) / (l1 - l2);
  return out;
}

inline Mat random_su2(std::mt19937& rng) {
  std::normal_distribution<double> n(0, 1);
  double q[4];
  double norm = 0;
  for (double& x : q) {
    x = n(rng);
    norm += x * x;
  }
  norm = std::sqrt(norm);
  C a(q[0] / norm, q[1] / norm), b(q[2] / norm, q[3] / norm);
  return {a, b, -std::conj(b), std::conj(a)};
}

class MatrixRep {
 public:
  MatrixRep(std::size_t rank, unsigned seed) {
    std::mt19937 rng(seed);
    for (std::size_t i = 0; i < rank; ++i) gens_.push_back(random_su2(rng));
  }

  Mat word(const Word& w) const {
    Mat out = identity_mat();
    for (Letter l : w.letters()) {
      const Mat& g = gens_[static_cast<std::size_t>(generator_of(l))];
      out = out * (l > 0 ? g : mat_inverse(g));
    }
    return out;
  }

  Mat elem(const Tower& t, const Elem& e) const {
    if (e.layer == 0) return word(e.word);
    Mat out = elem(t, e.pieces[0]);
    for (std::size_t i = 0; i < e.syllables.size(); ++i) {
      out = out * line_power(t, e.syllables[i].line, e.syllables[i].s);
      out = out * elem(t, e.pieces[i + 1]);
    }
    return out;
  }

  Mat line_power(const Tower& t, int line, const Rational& s) const {
    Mat v = elem(t, t.lines()[static_cast<std::size_t>(line)].v);
    return principal_power(v, static_cast<double>(s.num()) / static_cast<double>(s.den()));
  }

  /// Image of a raw product, independent of any normal form.
  Mat raw(const Tower& t, const std::vector<RawToken>& tokens) const {
    Mat out = identity_mat();
    for (const RawToken& tok : tokens) {
      Mat f;
      if (tok.line >= 0) {
        const Line& l = t.lines()[static_cast<std::size_t>(tok.line)];
        f = line_power(t, tok.line, Rational(tok.exponent, l.modulus == 0 ? 1 : l.modulus));
      } else if (tok.renaming >= 0) {
        Mat v = elem(t, t.renamings()[static_cast<std::size_t>(tok.renaming)].v);
        f = identity_mat();
        Mat step = tok.exponent >= 0 ? v : mat_inverse(v);
        for (std::int64_t k = 0; k < (tok.exponent >= 0 ? tok.exponent : -tok.exponent); ++k) f = f * step;
      } else {
        f = word(tok.word.pow(tok.exponent));
      }
      out = out * f;
    }
    return out;
  }

 private:
  std::vector<Mat> gens_;
};

}  // namespace qgrp::test
