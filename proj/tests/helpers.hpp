#ifndef TTGEO_TESTS_HELPERS_HPP_
#define TTGEO_TESTS_HELPERS_HPP_

#include <random>
#include <vector>

#include "ttgeo/chains.hpp"
#include "ttgeo/functors.hpp"
#include "ttgeo/named.hpp"

namespace ttgeo::testing {

using Rng = std::mt19937;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

inline BitMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (rng() & 1U) m.set(i, j);
  return m;
}

inline BitMatrix random_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    BitMatrix m = random_matrix(rng, n, n);
    if (rank(m) == n) return m;
  }
}

inline IndecLabel random_label(Rng& rng, int max_l, int wlo, int whi) {
  if (uniform(rng, 0, 2) == 0) return IndecLabel::unit(uniform(rng, wlo, whi));
  return IndecLabel::e(uniform(rng, 0, max_l), uniform(rng, wlo, whi));
}

inline FormalSum random_sum(Rng& rng, int max_items, int max_l, int wlo, int whi) {
  FormalSum s;
  int n = uniform(rng, 0, max_items);
  for (int i = 0; i < n; ++i) s.add(random_label(rng, max_l, wlo, whi));
  return s;
}

// Random element of a linear space given by a basis.
inline std::vector<BitMatrix> random_combination(Rng& rng, const std::vector<std::vector<BitMatrix>>& basis,
                                                 std::vector<BitMatrix> zero) {
  for (const auto& b : basis)
    if (rng() & 1U)
      for (std::size_t i = 0; i < zero.size(); ++i) zero[i] += b[i];
  return zero;
}

// Random complex whose terms are given sums, conjugated by random basis changes, with
// differentials drawn uniformly from the allowed maps.
inline Complex random_complex_from(Rng& rng, CellKind kind, int lo, const std::vector<FormalSum>& sums) {
  std::vector<FiltModule> terms;
  for (const auto& s : sums) {
    FiltModule m = realize(s);
    if (kind == CellKind::Filtered && m.dim() > 0) m = transport(m, random_invertible(rng, m.dim()));
    terms.push_back(std::move(m));
  }
  std::vector<BitMatrix> diffs(terms.size() > 0 ? terms.size() - 1 : 0);
  for (std::size_t i = diffs.size(); i-- > 0;) {
    const FiltModule& src = terms[i + 1];
    const FiltModule& tgt = terms[i];
    if (src.dim() == 0 || tgt.dim() == 0) {
      diffs[i] = BitMatrix(tgt.dim(), src.dim());
      continue;
    }
    LinearSystem sys;
    std::size_t u = sys.add_unknown(tgt.dim(), src.dim());
    add_morphism_constraints(sys, u, src, tgt);
    if (i + 1 < diffs.size() && terms[i + 2].dim() > 0)
      sys.add_equation({{u, BitMatrix::identity(tgt.dim()), diffs[i + 1]}});
    diffs[i] = random_combination(rng, sys.kernel(), {BitMatrix(tgt.dim(), src.dim())})[0];
  }
  return Complex(kind, lo, std::move(terms), std::move(diffs));
}

inline Complex random_filtered(Rng& rng, int max_len = 3, int max_items = 3, int max_l = 2, int wlo = -1,
                               int whi = 1) {
  int len = uniform(rng, 1, max_len);
  std::vector<FormalSum> sums;
  for (int i = 0; i < len; ++i) sums.push_back(random_sum(rng, max_items, max_l, wlo, whi));
  return random_complex_from(rng, CellKind::Filtered, uniform(rng, -1, 1), sums);
}

inline Complex random_plain(Rng& rng, int max_len = 3, int max_items = 3) {
  int len = uniform(rng, 1, max_len);
  std::vector<FormalSum> sums;
  for (int i = 0; i < len; ++i) sums.push_back(random_sum(rng, max_items, 0, 0, 0));
  return random_complex_from(rng, CellKind::PlainC2, uniform(rng, -1, 1), sums);
}

// ---- independent oracles

// Tensor of two indecomposables from the closed formula.
inline FormalSum tensor_formula(IndecLabel a, IndecLabel b) {
  if (a.is_unit() && b.is_unit()) return {IndecLabel::unit(a.m + b.m)};
  if (a.is_unit()) return {IndecLabel::e(b.l, b.m + a.m)};
  if (b.is_unit()) return {IndecLabel::e(a.l, a.m + b.m)};
  if (a.l > b.l) std::swap(a, b);
  return {IndecLabel::e(a.l, a.m + b.m), IndecLabel::e(a.l, a.m + b.m + b.l)};
}

inline IndecLabel dual_formula(const IndecLabel& a) {
  return a.is_unit() ? IndecLabel::unit(-a.m) : IndecLabel::e(a.l, -a.m - a.l);
}

// Rank as log2 of the size of the row span, by enumeration.
inline std::size_t rank_by_enumeration(const BitMatrix& m) {
  std::vector<BitVec> span{BitVec(m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BitVec r = m.row_vec(i);
    bool inside = false;
    for (const auto& v : span) inside = inside || v == r;
    if (inside) continue;
    std::size_t k = span.size();
    for (std::size_t j = 0; j < k; ++j) span.push_back(span[j] ^ r);
  }
  std::size_t n = 0;
  while ((std::size_t{1} << n) < span.size()) ++n;
  return n;
}

// dim Hom(a, b) by checking every matrix against the definition.
inline std::size_t hom_dim_by_enumeration(const FiltModule& a, const FiltModule& b) {
  const std::size_t r = b.dim(), c = a.dim(), bits = r * c;
  std::size_t count = 0;
  for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
    BitMatrix x(r, c);
    for (std::size_t k = 0; k < bits; ++k)
      if (code >> k & 1U) x.set(k / c, k % c);
    if (x * a.sigma() != b.sigma() * x) continue;
    bool ok = true;
    for (int w = std::min(a.w_min(), b.w_min()); w <= std::max(a.w_max(), b.w_max()) + 1 && ok; ++w) {
      const Subspace va = a.layer(w), vb = b.layer(w);
      for (std::size_t i = 0; i < va.dim() && ok; ++i) ok = vb.contains(x * va.basis().row_vec(i));
    }
    count += ok;
  }
  std::size_t d = 0;
  while ((std::size_t{1} << d) < count) ++d;
  return d;
}

// Chain homotopy equivalence: minimal forms agree and an explicit iso exists.
inline bool equivalent(const Complex& x, const Complex& y) { return equivalence_certificate(x, y).has_value(); }

}  // namespace ttgeo::testing

#endif  // TTGEO_TESTS_HELPERS_HPP_
