#include "ttgeo/functors.hpp"

#include <algorithm>

#include "ttgeo/named.hpp"

namespace ttgeo {

namespace {

FiltModule plain(const BitMatrix& sigma) {
  if (sigma.rows() == 0) return FiltModule::zero();
  return FiltModule::pure(C2Module(sigma));
}

FiltModule plain_trivial(std::size_t n) {
  if (n == 0) return FiltModule::zero();
  return FiltModule::pure(C2Module::trivial(n));
}

}  // namespace

Complex gr_complex(const Complex& x) {
  if (x.kind() != CellKind::Filtered) return x;
  if (x.is_zero()) return Complex(CellKind::PlainC2);
  auto [wl, wh] = x.weight_range();
  std::map<int, std::vector<Subquotient>> pieces;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    auto& v = pieces[n];
    for (int w = wl; w <= wh; ++w) v.push_back(graded_piece(x.term(n), w));
  }
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    std::vector<BitMatrix> sig;
    for (auto& q : pieces[n]) sig.push_back(q.induced(x.term(n).sigma(), q));
    terms.push_back(plain(block_diag(sig)));
    if (n > x.lo()) {
      std::vector<BitMatrix> blocks;
      const auto& src = pieces[n];
      const auto& tgt = pieces[n - 1];
      for (std::size_t i = 0; i < src.size(); ++i) blocks.push_back(src[i].induced(x.d(n), tgt[i]));
      diffs.push_back(block_diag(blocks));
    }
  }
  return Complex(CellKind::PlainC2, x.lo(), std::move(terms), std::move(diffs), false);
}

Complex graded_piece_complex(const Complex& x, int w) {
  if (x.is_zero()) return Complex(CellKind::PlainC2);
  std::vector<Subquotient> q;
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    q.push_back(graded_piece(x.term(n), w));
    terms.push_back(plain(q.back().induced(x.term(n).sigma(), q.back())));
    if (n > x.lo()) diffs.push_back(q[q.size() - 1].induced(x.d(n), q[q.size() - 2]));
  }
  return Complex(CellKind::PlainC2, x.lo(), std::move(terms), std::move(diffs), false);
}

ChainMap graded_piece(const ChainMap& f, int w) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  Complex gx = graded_piece_complex(x, w);
  Complex gy = graded_piece_complex(y, w);
  std::map<int, BitMatrix> c;
  for (int n = gx.lo(); n <= gx.hi(); ++n) {
    if (gx.dim(n) == 0 || gy.dim(n) == 0) continue;
    Subquotient a = graded_piece(x.term(n), w), b = graded_piece(y.term(n), w);
    c[n] = a.induced(f.at(n), b);
  }
  return ChainMap(std::move(gx), std::move(gy), std::move(c), false);
}

Complex fgt_complex(const Complex& x) {
  if (x.kind() != CellKind::Filtered) return x;
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    terms.push_back(plain(x.term(n).sigma()));
    if (n > x.lo()) diffs.push_back(x.d(n));
  }
  return Complex(CellKind::PlainC2, x.lo(), std::move(terms), std::move(diffs), false);
}

std::map<int, ModuleSplit> homology(const Complex& y) {
  std::map<int, ModuleSplit> out;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    if (y.dim(n) == 0) continue;
    Subspace z = Subspace::kernel(y.d(n));
    Subspace b = Subspace::image(y.d(n + 1));
    Subquotient h(z, b);
    if (h.dim() == 0) continue;
    out[n] = module_split(C2Module(h.induced(y.term(n).sigma(), h)));
  }
  return out;
}

Complex res_complex(const Complex& y) {
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    terms.push_back(plain_trivial(y.dim(n)));
    if (n > y.lo()) diffs.push_back(y.d(n));
  }
  return Complex(CellKind::PlainF2, y.lo(), std::move(terms), std::move(diffs), false);
}

bool is_exact_F2(const Complex& z) {
  for (int n = z.lo(); n <= z.hi(); ++n) {
    if (z.dim(n) == 0) continue;
    if (z.dim(n) - rank(z.d(n)) != rank(z.d(n + 1))) return false;
  }
  return true;
}

Complex sta_complex(const Complex& y) {
  if (y.is_zero()) return Complex(CellKind::PlainF2);
  std::vector<Subquotient> q;
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    BitMatrix nrm = y.term(n).underlying().norm();
    q.emplace_back(Subspace::kernel(nrm), Subspace::image(nrm));
    terms.push_back(plain_trivial(q.back().dim()));
    if (n > y.lo()) diffs.push_back(q[q.size() - 1].induced(y.d(n), q[q.size() - 2]));
  }
  return Complex(CellKind::PlainF2, y.lo(), std::move(terms), std::move(diffs), false);
}

std::size_t tate_dim(const Complex& y) {
  if (y.is_zero()) return 0;
  std::map<int, std::size_t> off;
  std::size_t total = 0;
  for (int n = y.lo(); n <= y.hi(); ++n) {
    off[n] = total;
    total += y.dim(n);
  }
  if (total == 0) return 0;
  BitMatrix op(total, total);
  for (int n = y.lo(); n <= y.hi(); ++n) {
    if (y.dim(n) == 0) continue;
    op.add_block(off[n], off[n], y.term(n).underlying().norm());
    if (n > y.lo() && y.dim(n - 1) > 0) op.add_block(off[n - 1], off[n], y.d(n));
  }
  return total - 2 * rank(op);
}

Complex pwz(const Complex& y) { return with_kind(y, CellKind::Filtered); }

Complex weight_part_complex(const Complex& x, int m) {
  if (x.is_zero()) return Complex(CellKind::PlainC2);
  std::vector<Subspace> v;
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    v.push_back(x.term(n).layer(m));
    terms.push_back(plain(weight_part(x.term(n), m).sigma()));
    if (n > x.lo()) {
      const Subspace& s = v[v.size() - 1];
      const Subspace& t = v[v.size() - 2];
      diffs.push_back(t.coords(x.d(n) * s.basis_cols()));
    }
  }
  return Complex(CellKind::PlainC2, x.lo(), std::move(terms), std::move(diffs), false);
}

Complex rwz(const Complex& x) {
  if (x.is_zero()) return Complex(CellKind::PlainC2);
  int j = x.weight_range().second + 1;
  if (j <= 0) return Complex(CellKind::PlainC2);
  return weight_part_complex(tensor_complex(injres_trunc(j), x), 0);
}

Complex tfgt(const Complex& x) {
  if (x.is_zero()) return Complex(CellKind::PlainC2);
  int n = std::max(0, -x.weight_range().first);
  Complex r = rwz(twist(x, n));
  if (n == 0) return minimize(r).min;
  return minimize(tensor_complex(minimize(r).min, invertpur_pow(n))).min;
}

namespace {

// Hom spaces Hom(X_m, I_{m+k}) for all m, flattened side by side.
struct HomDegree {
  struct Part {
    int m;
    std::size_t off;
    std::size_t rows, cols;
  };
  std::vector<Part> parts;
  std::size_t flat = 0;
  BitMatrix basis;  // rows: basis vectors of the flattened space
};

void flatten_into(BitVec& v, std::size_t off, const BitMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m.get(i, j)) v.flip(off + i * m.cols() + j);
}

}  // namespace

GradedDims hom_DE(const Complex& x, const Complex& y) {
  GradedDims out;
  if (x.is_zero() || y.is_zero()) return out;
  int j = y.weight_range().second - x.weight_range().first + 1;
  if (j <= 0) return out;
  Complex inj = tensor_complex(injres_trunc(j), y);
  if (inj.is_zero()) return out;
  const int kmin = inj.lo() - x.hi() - 1, kmax = inj.hi() - x.lo() + 1;
  std::map<int, HomDegree> hd;
  for (int k = kmin; k <= kmax; ++k) {
    HomDegree h;
    std::vector<BitVec> rows;
    for (int m = x.lo(); m <= x.hi(); ++m) {
      std::size_t r = inj.dim(m + k), c = x.dim(m);
      if (r == 0 || c == 0) continue;
      h.parts.push_back({m, h.flat, r, c});
      h.flat += r * c;
    }
    for (const auto& p : h.parts) {
      for (const auto& b : hom_basis(x.term(p.m), inj.term(p.m + k))) {
        BitVec v(h.flat);
        flatten_into(v, p.off, b);
        rows.push_back(std::move(v));
      }
    }
    h.basis = BitMatrix::from_row_vecs(rows, h.flat);
    hd[k] = std::move(h);
  }
  // D : Hom^k -> Hom^{k-1}, (Df)_m = d^I_{m+k} f_m + f_{m-1} d^X_m
  std::map<int, std::size_t> rk;
  for (int k = kmin + 1; k <= kmax; ++k) {
    const HomDegree& src = hd[k];
    const HomDegree& tgt = hd[k - 1];
    if (src.basis.rows() == 0 || tgt.basis.rows() == 0) {
      rk[k] = 0;
      continue;
    }
    std::vector<BitVec> imgs;
    for (std::size_t b = 0; b < src.basis.rows(); ++b) {
      BitVec f = src.basis.row_vec(b);
      std::map<int, BitMatrix> comp;
      for (const auto& p : src.parts) {
        BitMatrix m(p.rows, p.cols);
        for (std::size_t i = 0; i < p.rows; ++i)
          for (std::size_t c = 0; c < p.cols; ++c)
            if (f.get(p.off + i * p.cols + c)) m.set(i, c);
        comp[p.m] = std::move(m);
      }
      BitVec img(tgt.flat);
      for (const auto& p : tgt.parts) {
        BitMatrix acc(p.rows, p.cols);
        auto a = comp.find(p.m);
        if (a != comp.end()) acc += inj.d(p.m + k) * a->second;
        auto b2 = comp.find(p.m - 1);
        if (b2 != comp.end()) acc += b2->second * x.d(p.m);
        flatten_into(img, p.off, acc);
      }
      imgs.push_back(std::move(img));
    }
    rk[k] = rank(BitMatrix::from_row_vecs(imgs, tgt.flat));
  }
  for (int k = kmin; k <= kmax; ++k) {
    std::size_t dim = hd[k].basis.rows();
    std::size_t out_rank = rk.count(k) ? rk[k] : 0;
    std::size_t in_rank = rk.count(k + 1) ? rk[k + 1] : 0;
    std::size_t h = dim - out_rank - in_rank;
    if (h > 0) out[-k] = h;
  }
  return out;
}

bool is_zero_DE(const Complex& x) { return is_contractible(gr_complex(x)); }

}  // namespace ttgeo
