#include "ttgeo/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace ttgeo {

namespace {

Word tail_mask(std::size_t nbits) {
  std::size_t r = nbits % kWordBits;
  return r == 0 ? ~Word(0) : (Word(1) << r) - 1;
}

// dst[off .. off+nbits) ^= src[0 .. nbits)
void xor_shifted(Word* dst, std::size_t off, const Word* src, std::size_t nbits) {
  std::size_t nw = words_for(nbits);
  std::size_t ws = off / kWordBits;
  std::size_t bs = off % kWordBits;
  for (std::size_t t = 0; t < nw; ++t) {
    Word w = src[t];
    if (t + 1 == nw) w &= tail_mask(nbits);
    if (w == 0) continue;
    dst[ws + t] ^= w << bs;
    if (bs != 0) {
      Word hi = w >> (kWordBits - bs);
      if (hi != 0) dst[ws + t + 1] ^= hi;
    }
  }
}

// dst[0 .. nbits) = src[off .. off+nbits), src has src_words words
void extract_bits(Word* dst, const Word* src, std::size_t src_words, std::size_t off,
                  std::size_t nbits) {
  std::size_t nw = words_for(nbits);
  for (std::size_t t = 0; t < nw; ++t) {
    std::size_t bit = off + t * kWordBits;
    std::size_t wi = bit / kWordBits;
    std::size_t bs = bit % kWordBits;
    Word w = wi < src_words ? src[wi] >> bs : 0;
    if (bs != 0 && wi + 1 < src_words) w |= src[wi + 1] << (kWordBits - bs);
    if (t + 1 == nw) w &= tail_mask(nbits);
    dst[t] = w;
  }
}

template <class F>
void for_each_bit(const Word* w, std::size_t nwords, F&& f) {
  for (std::size_t t = 0; t < nwords; ++t) {
    Word x = w[t];
    while (x) {
      std::size_t b = static_cast<std::size_t>(std::countr_zero(x));
      f(t * kWordBits + b);
      x &= x - 1;
    }
  }
}

// Row reduction restricted to the first ncols columns.
Echelon rref_limited(BitMatrix m, std::size_t ncols) {
  Echelon e;
  std::size_t r = 0;
  const std::size_t rows = m.rows();
  const std::size_t stride = m.stride();
  for (std::size_t c = 0; c < ncols && r < rows; ++c) {
    std::size_t w = c / kWordBits;
    Word bit = Word(1) << (c % kWordBits);
    std::size_t p = r;
    while (p < rows && !(m.row(p)[w] & bit)) ++p;
    if (p == rows) continue;
    if (p != r) m.swap_rows(p, r);
    const Word* pr = m.row(r);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Word* ri = m.row(i);
      if (ri[w] & bit) {
        for (std::size_t t = w; t < stride; ++t) ri[t] ^= pr[t];
      }
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

class EchelonBuilder {
 public:
  explicit EchelonBuilder(std::size_t n) : n_(n) {}
  // Returns true if v was independent of the rows seen so far.
  bool add(BitVec v) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (v.get(piv_[i])) v ^= rows_[i];
    }
    for (std::size_t t = 0; t < v.words(); ++t) {
      if (v.data()[t]) {
        piv_.push_back(t * kWordBits + static_cast<std::size_t>(std::countr_zero(v.data()[t])));
        rows_.push_back(std::move(v));
        return true;
      }
    }
    return false;
  }

 private:
  std::size_t n_;
  std::vector<BitVec> rows_;
  std::vector<std::size_t> piv_;
};

}  // namespace

bool BitVec::any() const {
  for (Word x : w_) if (x) return true;
  return false;
}

std::size_t BitVec::count() const {
  std::size_t c = 0;
  for (Word x : w_) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

bool BitVec::dot(const BitVec& o) const {
  Word acc = 0;
  for (std::size_t t = 0; t < w_.size(); ++t) acc ^= w_[t] & o.w_[t];
  return std::popcount(acc) & 1;
}

BitVec& BitVec::operator^=(const BitVec& o) {
  if (o.n_ != n_) throw std::invalid_argument("BitVec: size mismatch");
  for (std::size_t t = 0; t < w_.size(); ++t) w_[t] ^= o.w_[t];
  return *this;
}

std::string BitVec::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) if (get(i)) s[i] = '1';
  return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i);
  return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r ? rows.begin()->size() : 0;
  BitMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("BitMatrix: ragged rows");
    std::size_t j = 0;
    for (int x : row) { if (x & 1) m.set(i, j); ++j; }
    ++i;
  }
  return m;
}

BitMatrix BitMatrix::from_row_vecs(const std::vector<BitVec>& rows, std::size_t cols) {
  BitMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

BitMatrix BitMatrix::from_col_vecs(const std::vector<BitVec>& cols, std::size_t rows) {
  BitMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_col(j, cols[j]);
  return m;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  Word* a = row(dst);
  const Word* b = row(src);
  for (std::size_t t = 0; t < stride_; ++t) a[t] ^= b[t];
}

void BitMatrix::xor_row_from(std::size_t dst, const BitMatrix& other, std::size_t src) {
  Word* a = row(dst);
  const Word* b = other.row(src);
  for (std::size_t t = 0; t < stride_; ++t) a[t] ^= b[t];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  Word* x = row(a);
  Word* y = row(b);
  for (std::size_t t = 0; t < stride_; ++t) std::swap(x[t], y[t]);
}

bool BitMatrix::row_is_zero(std::size_t i) const {
  const Word* r = row(i);
  for (std::size_t t = 0; t < stride_; ++t) if (r[t]) return false;
  return true;
}

BitVec BitMatrix::row_vec(std::size_t i) const {
  BitVec v(cols_);
  for (std::size_t t = 0; t < stride_; ++t) v.data()[t] = row(i)[t];
  return v;
}

BitVec BitMatrix::col_vec(std::size_t j) const {
  BitVec v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) if (get(i, j)) v.set(i);
  return v;
}

void BitMatrix::set_row(std::size_t i, const BitVec& v) {
  if (v.size() != cols_) throw std::invalid_argument("set_row: size mismatch");
  for (std::size_t t = 0; t < stride_; ++t) row(i)[t] = v.data()[t];
}

void BitMatrix::set_col(std::size_t j, const BitVec& v) {
  if (v.size() != rows_) throw std::invalid_argument("set_col: size mismatch");
  for (std::size_t i = 0; i < rows_; ++i) set(i, j, v.get(i));
}

BitMatrix BitMatrix::transpose() const {
  BitMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for_each_bit(row(i), stride_, [&](std::size_t j) { t.set(j, i); });
  }
  return t;
}

BitMatrix BitMatrix::operator*(const BitMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("BitMatrix product: dimension mismatch");
  BitMatrix c(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Word* ci = c.row(i);
    for_each_bit(row(i), stride_, [&](std::size_t k) {
      const Word* ok = o.row(k);
      for (std::size_t t = 0; t < c.stride_; ++t) ci[t] ^= ok[t];
    });
  }
  return c;
}

BitVec BitMatrix::operator*(const BitVec& v) const {
  if (cols_ != v.size()) throw std::invalid_argument("BitMatrix*BitVec: dimension mismatch");
  BitVec r(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    Word acc = 0;
    const Word* ri = row(i);
    for (std::size_t t = 0; t < stride_; ++t) acc ^= ri[t] & v.data()[t];
    if (std::popcount(acc) & 1) r.set(i);
  }
  return r;
}

BitMatrix& BitMatrix::operator+=(const BitMatrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("BitMatrix sum: dimension mismatch");
  for (std::size_t t = 0; t < d_.size(); ++t) d_[t] ^= o.d_[t];
  return *this;
}

bool BitMatrix::is_zero() const {
  for (Word x : d_) if (x) return false;
  return true;
}

bool BitMatrix::is_identity() const {
  return rows_ == cols_ && *this == identity(rows_);
}

std::size_t BitMatrix::count() const {
  std::size_t c = 0;
  for (Word x : d_) c += static_cast<std::size_t>(std::popcount(x));
  return c;
}

BitMatrix BitMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) throw std::out_of_range("BitMatrix::block");
  BitMatrix b(nr, nc);
  if (nc == 0) return b;
  for (std::size_t i = 0; i < nr; ++i) extract_bits(b.row(i), row(r0 + i), stride_, c0, nc);
  return b;
}

void BitMatrix::set_block(std::size_t r0, std::size_t c0, const BitMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("BitMatrix::set_block");
  if (b.cols_ == 0) return;
  BitMatrix cur = block(r0, c0, b.rows_, b.cols_);
  cur += b;
  for (std::size_t i = 0; i < b.rows_; ++i) xor_shifted(row(r0 + i), c0, cur.row(i), b.cols_);
}

void BitMatrix::add_block(std::size_t r0, std::size_t c0, const BitMatrix& b) {
  if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw std::out_of_range("BitMatrix::add_block");
  if (b.cols_ == 0) return;
  for (std::size_t i = 0; i < b.rows_; ++i) xor_shifted(row(r0 + i), c0, b.row(i), b.cols_);
}

BitMatrix BitMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  BitMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const Word* s = row(idx[i]);
    Word* d = m.row(i);
    for (std::size_t t = 0; t < stride_; ++t) d[t] = s[t];
  }
  return m;
}

BitMatrix BitMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  BitMatrix m(rows_, idx.size());
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) if (get(i, idx[j])) m.set(i, j);
  }
  return m;
}

std::string BitMatrix::str() const {
  std::string s;
  for (std::size_t i = 0; i < rows_; ++i) {
    if (i) s += ';';
    for (std::size_t j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
  }
  return s;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  if (b.cols() == 0) return k;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t r = 0; r < b.rows(); ++r) {
      Word* dst = k.row(i * b.rows() + r);
      for_each_bit(a.row(i), a.stride(), [&](std::size_t j) {
        xor_shifted(dst, j * b.cols(), b.row(r), b.cols());
      });
    }
  }
  return k;
}

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
  BitMatrix m(a.rows(), a.cols() + b.cols());
  m.add_block(0, 0, a);
  m.add_block(0, a.cols(), b);
  return m;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  BitMatrix m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) m.xor_row_from(i, a, i);
  for (std::size_t i = 0; i < b.rows(); ++i) m.xor_row_from(a.rows() + i, b, i);
  return m;
}

BitMatrix block_diag(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix m(a.rows() + b.rows(), a.cols() + b.cols());
  m.add_block(0, 0, a);
  m.add_block(a.rows(), a.cols(), b);
  return m;
}

BitMatrix block_diag(const std::vector<BitMatrix>& blocks) {
  std::size_t r = 0, c = 0;
  for (const auto& b : blocks) { r += b.rows(); c += b.cols(); }
  BitMatrix m(r, c);
  r = c = 0;
  for (const auto& b : blocks) {
    m.add_block(r, c, b);
    r += b.rows();
    c += b.cols();
  }
  return m;
}

Echelon rref(BitMatrix m) {
  std::size_t c = m.cols();
  return rref_limited(std::move(m), c);
}

std::size_t rank(const BitMatrix& m) {
  if (m.rows() > m.cols()) return rref(m.transpose()).rank();
  return rref(m).rank();
}

BitMatrix nullspace(const BitMatrix& m) {
  Echelon e = rref(m);
  std::size_t n = m.cols();
  std::vector<char> is_piv(n, 0);
  for (auto p : e.pivots) is_piv[p] = 1;
  std::size_t nfree = n - e.rank();
  BitMatrix ns(nfree, n);
  std::size_t k = 0;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    ns.set(k, f);
    for (std::size_t i = 0; i < e.rank(); ++i) {
      if (e.reduced.get(i, f)) ns.set(k, e.pivots[i]);
    }
    ++k;
  }
  return ns;
}

std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: dimension mismatch");
  std::size_t n = a.cols();
  Echelon e = rref_limited(hstack(a, b), n);
  for (std::size_t i = e.rank(); i < e.reduced.rows(); ++i) {
    if (!e.reduced.block(i, n, 1, b.cols()).is_zero()) return std::nullopt;
  }
  BitMatrix x(n, b.cols());
  for (std::size_t i = 0; i < e.rank(); ++i) {
    x.add_block(e.pivots[i], 0, e.reduced.block(i, n, 1, b.cols()));
  }
  return x;
}

std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b) {
  if (a.rows() != b.size()) throw std::invalid_argument("solve: dimension mismatch");
  BitMatrix bm(b.size(), 1);
  bm.set_col(0, b);
  auto x = solve(a, bm);
  if (!x) return std::nullopt;
  return x->col_vec(0);
}

std::optional<BitMatrix> inverse(const BitMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  std::size_t n = m.rows();
  Echelon e = rref_limited(hstack(m, BitMatrix::identity(n)), n);
  if (e.rank() != n) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

Coords::Coords(const BitMatrix& basis_rows)
    : n_(basis_rows.cols()), k_(basis_rows.rows()), basis_(basis_rows) {
  Echelon e = rref_limited(hstack(basis_rows, BitMatrix::identity(k_)), n_);
  if (e.rank() != k_) throw std::invalid_argument("Coords: rows are dependent");
  pivots_ = e.pivots;
  xt_ = e.reduced.block(0, n_, k_, k_).transpose();
}

BitMatrix Coords::of(const BitMatrix& v) const {
  if (v.rows() != n_) throw std::invalid_argument("Coords: ambient mismatch");
  return xt_ * v.select_rows(pivots_);
}

BitVec Coords::of(const BitVec& v) const {
  BitMatrix m(v.size(), 1);
  m.set_col(0, v);
  return of(m).col_vec(0);
}

Subspace Subspace::span(const BitMatrix& rows) {
  Echelon e = rref(rows);
  Subspace s(rows.cols());
  s.basis_ = e.reduced.block(0, 0, e.rank(), rows.cols());
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::span(const std::vector<BitVec>& vecs, std::size_t ambient) {
  return span(BitMatrix::from_row_vecs(vecs, ambient));
}

Subspace Subspace::whole(std::size_t n) { return span(BitMatrix::identity(n)); }

Subspace Subspace::kernel(const BitMatrix& m) { return span(nullspace(m)); }

Subspace Subspace::image(const BitMatrix& m) { return span(m.transpose()); }

bool Subspace::contains(const BitVec& v) const {
  if (v.size() != n_) throw std::invalid_argument("Subspace: ambient mismatch");
  BitVec r = v;
  for (std::size_t i = 0; i < pivots_.size(); ++i) {
    if (r.get(pivots_[i])) {
      for (std::size_t t = 0; t < r.words(); ++t) r.data()[t] ^= basis_.row(i)[t];
    }
  }
  return !r.any();
}

bool Subspace::contains(const Subspace& s) const {
  if (s.n_ != n_) throw std::invalid_argument("Subspace: ambient mismatch");
  if (s.dim() > dim()) return false;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (!contains(s.basis_.row_vec(i))) return false;
  }
  return true;
}

Subspace Subspace::sum(const Subspace& o) const {
  if (o.n_ != n_) throw std::invalid_argument("Subspace: ambient mismatch");
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  return span(vstack(basis_, o.basis_));
}

Subspace Subspace::intersect(const Subspace& o) const {
  if (o.n_ != n_) throw std::invalid_argument("Subspace: ambient mismatch");
  if (is_whole()) return o;
  if (o.is_whole()) return *this;
  return annihilator().sum(o.annihilator()).annihilator();
}

Subspace Subspace::complement() const {
  std::vector<char> is_piv(n_, 0);
  for (auto p : pivots_) is_piv[p] = 1;
  BitMatrix rows(n_ - dim(), n_);
  std::size_t k = 0;
  for (std::size_t j = 0; j < n_; ++j) if (!is_piv[j]) rows.set(k++, j);
  return span(rows);
}

Subspace Subspace::annihilator() const { return span(nullspace(basis_)); }

Subspace Subspace::mapped(const BitMatrix& m) const {
  if (m.cols() != n_) throw std::invalid_argument("Subspace::mapped: dimension mismatch");
  if (is_zero()) return Subspace(m.rows());
  return span((m * basis_cols()).transpose());
}

Subspace Subspace::preimage(const BitMatrix& m) const {
  if (m.rows() != n_) throw std::invalid_argument("Subspace::preimage: dimension mismatch");
  if (is_whole()) return whole(m.cols());
  return kernel(annihilator().basis() * m);
}

Subquotient::Subquotient(const Subspace& top, const Subspace& bottom) : top_(top), bottom_(bottom) {
  if (top.ambient() != bottom.ambient() || !top.contains(bottom)) {
    throw std::invalid_argument("Subquotient: bottom not contained in top");
  }
  std::size_t n = top.ambient();
  EchelonBuilder eb(n);
  for (std::size_t i = 0; i < bottom.dim(); ++i) eb.add(bottom.basis().row_vec(i));
  std::vector<BitVec> kept;
  for (std::size_t i = 0; i < top.dim(); ++i) {
    BitVec v = top.basis().row_vec(i);
    if (eb.add(v)) kept.push_back(std::move(v));
  }
  comp_ = BitMatrix::from_row_vecs(kept, n);
  coords_ = Coords(vstack(comp_, bottom.basis()));
}

BitMatrix Subquotient::classes(const BitMatrix& vcols) const {
  BitMatrix c = coords_.of(vcols);
  return c.block(0, 0, dim(), c.cols());
}

BitMatrix Subquotient::induced(const BitMatrix& m, const Subquotient& target) const {
  if (dim() == 0) return BitMatrix(target.dim(), 0);
  return target.classes(m * reps());
}

C2Module::C2Module(BitMatrix sigma) : sigma_(std::move(sigma)) {
  if (sigma_.rows() != sigma_.cols()) throw std::invalid_argument("C2Module: sigma not square");
  if (!(sigma_ * sigma_).is_identity()) throw std::invalid_argument("C2Module: sigma^2 != 1");
}

C2Module C2Module::regular() { return C2Module(BitMatrix::from_rows({{0, 1}, {1, 0}})); }

C2Module C2Module::direct_sum(const C2Module& a, const C2Module& b) {
  return C2Module(block_diag(a.sigma_, b.sigma_));
}

ModuleSplit module_split(const C2Module& m) {
  ModuleSplit s;
  s.free = rank(m.norm());
  s.trivial = m.dim() - 2 * s.free;
  return s;
}

}  // namespace ttgeo

namespace ttgeo {

std::size_t LinearSystem::add_unknown(std::size_t rows, std::size_t cols) {
  if (!rows_.empty()) throw std::logic_error("LinearSystem: unknown added after equations");
  shapes_.emplace_back(rows, cols);
  offsets_.push_back(nvars_);
  nvars_ += rows * cols;
  return shapes_.size() - 1;
}

void LinearSystem::add_equation(const std::vector<Term>& terms) {
  if (terms.empty()) return;
  const auto& t0 = terms.front();
  add_equation(terms, BitMatrix(t0.left.rows(), t0.right.cols()));
}

void LinearSystem::add_equation(const std::vector<Term>& terms, const BitMatrix& rhs) {
  const std::size_t r = rhs.rows();
  const std::size_t c = rhs.cols();
  std::vector<BitMatrix> rts;
  rts.reserve(terms.size());
  for (const auto& t : terms) {
    auto [ur, uc] = shapes_.at(t.unknown);
    if (t.left.rows() != r || t.left.cols() != ur || t.right.rows() != uc || t.right.cols() != c) {
      throw std::invalid_argument("LinearSystem: term shape mismatch");
    }
    rts.push_back(t.right.transpose());
  }
  for (std::size_t p = 0; p < r; ++p) {
    for (std::size_t q = 0; q < c; ++q) {
      BitVec row(nvars_);
      for (std::size_t k = 0; k < terms.size(); ++k) {
        const auto& t = terms[k];
        std::size_t uc = shapes_[t.unknown].second;
        std::size_t off = offsets_[t.unknown];
        const Word* rq = rts[k].row(q);
        if (uc == 0) continue;
        for_each_bit(t.left.row(p), t.left.stride(), [&](std::size_t i) {
          xor_shifted(row.data(), off + i * uc, rq, uc);
        });
      }
      bool b = rhs.get(p, q);
      if (!row.any() && !b) continue;
      rows_.push_back(std::move(row));
      rhs_.push_back(b ? 1 : 0);
    }
  }
}

BitMatrix LinearSystem::matrix() const {
  BitMatrix m(rows_.size(), nvars_ + 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Word* dst = m.row(i);
    for (std::size_t t = 0; t < rows_[i].words(); ++t) dst[t] = rows_[i].data()[t];
    if (rhs_[i]) m.set(i, nvars_);
  }
  return m;
}

std::vector<BitMatrix> LinearSystem::unpack(const BitVec& x) const {
  std::vector<BitMatrix> out;
  out.reserve(shapes_.size());
  for (std::size_t u = 0; u < shapes_.size(); ++u) {
    auto [r, c] = shapes_[u];
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (x.get(offsets_[u] + i * c + j)) m.set(i, j);
    out.push_back(std::move(m));
  }
  return out;
}

std::optional<std::vector<BitMatrix>> LinearSystem::solve() const {
  Echelon e = rref_limited(matrix(), nvars_);
  for (std::size_t i = e.rank(); i < e.reduced.rows(); ++i) {
    if (e.reduced.get(i, nvars_)) return std::nullopt;
  }
  BitVec x(nvars_);
  for (std::size_t i = 0; i < e.rank(); ++i) {
    if (e.reduced.get(i, nvars_)) x.set(e.pivots[i]);
  }
  return unpack(x);
}

std::vector<std::vector<BitMatrix>> LinearSystem::kernel() const {
  BitMatrix m(rows_.size(), nvars_);
  for (std::size_t i = 0; i < rows_.size(); ++i) m.set_row(i, rows_[i]);
  BitMatrix ns = nullspace(m);
  std::vector<std::vector<BitMatrix>> out;
  out.reserve(ns.rows());
  for (std::size_t i = 0; i < ns.rows(); ++i) out.push_back(unpack(ns.row_vec(i)));
  return out;
}

}  // namespace ttgeo
