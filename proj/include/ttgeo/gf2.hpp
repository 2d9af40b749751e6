#ifndef TTGEO_GF2_HPP_
#define TTGEO_GF2_HPP_

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ttgeo {

using Word = std::uint64_t;
constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

  std::size_t size() const { return n_; }
  std::size_t words() const { return w_.size(); }
  const Word* data() const { return w_.data(); }
  Word* data() { return w_.data(); }

  bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1U; }
  void set(std::size_t i, bool v = true) {
    Word m = Word(1) << (i % kWordBits);
    if (v) w_[i / kWordBits] |= m; else w_[i / kWordBits] &= ~m;
  }
  void flip(std::size_t i) { w_[i / kWordBits] ^= Word(1) << (i % kWordBits); }

  bool any() const;
  std::size_t count() const;
  bool dot(const BitVec& o) const;

  BitVec& operator^=(const BitVec& o);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }
  bool operator==(const BitVec& o) const { return n_ == o.n_ && w_ == o.w_; }
  bool operator!=(const BitVec& o) const { return !(*this == o); }

  static BitVec unit(std::size_t n, std::size_t i) { BitVec v(n); v.set(i); return v; }
  std::string str() const;

 private:
  std::size_t n_ = 0;
  std::vector<Word> w_;
};

// Dense matrix over F2, rows packed into 64-bit words.
// A matrix acts on column vectors: (m * v)[i] = <row i, v>.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), stride_(words_for(cols)), d_(rows * words_for(cols), 0) {}

  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
  static BitMatrix from_row_vecs(const std::vector<BitVec>& rows, std::size_t cols);
  static BitMatrix from_col_vecs(const std::vector<BitVec>& cols, std::size_t rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t stride() const { return stride_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Word* row(std::size_t i) { return d_.data() + i * stride_; }
  const Word* row(std::size_t i) const { return d_.data() + i * stride_; }

  bool get(std::size_t i, std::size_t j) const {
    return (row(i)[j / kWordBits] >> (j % kWordBits)) & 1U;
  }
  void set(std::size_t i, std::size_t j, bool v = true) {
    Word m = Word(1) << (j % kWordBits);
    if (v) row(i)[j / kWordBits] |= m; else row(i)[j / kWordBits] &= ~m;
  }
  void flip(std::size_t i, std::size_t j) { row(i)[j / kWordBits] ^= Word(1) << (j % kWordBits); }

  void xor_row(std::size_t dst, std::size_t src);
  void xor_row_from(std::size_t dst, const BitMatrix& other, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t i) const;

  BitVec row_vec(std::size_t i) const;
  BitVec col_vec(std::size_t j) const;
  void set_row(std::size_t i, const BitVec& v);
  void set_col(std::size_t j, const BitVec& v);

  BitMatrix transpose() const;
  BitMatrix operator*(const BitMatrix& o) const;
  BitVec operator*(const BitVec& v) const;
  BitMatrix& operator+=(const BitMatrix& o);
  friend BitMatrix operator+(BitMatrix a, const BitMatrix& b) { return a += b; }
  bool operator==(const BitMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && d_ == o.d_;
  }
  bool operator!=(const BitMatrix& o) const { return !(*this == o); }
  bool is_zero() const;
  bool is_identity() const;
  std::size_t count() const;

  BitMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const BitMatrix& b);
  void add_block(std::size_t r0, std::size_t c0, const BitMatrix& b);
  BitMatrix select_rows(const std::vector<std::size_t>& idx) const;
  BitMatrix select_cols(const std::vector<std::size_t>& idx) const;

  std::string str() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t stride_ = 0;
  std::vector<Word> d_;
};

BitMatrix kron(const BitMatrix& a, const BitMatrix& b);
BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix block_diag(const BitMatrix& a, const BitMatrix& b);
BitMatrix block_diag(const std::vector<BitMatrix>& blocks);

struct Echelon {
  BitMatrix reduced;                // reduced row echelon form, zero rows at the bottom
  std::vector<std::size_t> pivots;  // pivot column of row i, i < rank
  std::size_t rank() const { return pivots.size(); }
};

Echelon rref(BitMatrix m);
std::size_t rank(const BitMatrix& m);
// Rows form a basis of {x : m x = 0}.
BitMatrix nullspace(const BitMatrix& m);
std::optional<BitVec> solve(const BitMatrix& a, const BitVec& b);
// Solves a x = b column by column; none if any column is inconsistent.
std::optional<BitMatrix> solve(const BitMatrix& a, const BitMatrix& b);
std::optional<BitMatrix> inverse(const BitMatrix& m);

// Coordinates with respect to a list of independent vectors (rows of a matrix).
class Coords {
 public:
  Coords() = default;
  explicit Coords(const BitMatrix& basis_rows);
  std::size_t dim() const { return k_; }
  std::size_t ambient() const { return n_; }
  // Columns of v (n x m) in the span; returns k x m coordinate matrix.
  BitMatrix of(const BitMatrix& v) const;
  BitVec of(const BitVec& v) const;
  const BitMatrix& basis() const { return basis_; }

 private:
  std::size_t n_ = 0;
  std::size_t k_ = 0;
  BitMatrix basis_;
  BitMatrix xt_;
  std::vector<std::size_t> pivots_;
};

class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : n_(ambient), basis_(0, ambient) {}
  // Span of the given rows.
  static Subspace span(const BitMatrix& rows);
  static Subspace span(const std::vector<BitVec>& vecs, std::size_t ambient);
  static Subspace whole(std::size_t n);
  static Subspace zero(std::size_t n) { return Subspace(n); }
  static Subspace kernel(const BitMatrix& m);
  static Subspace image(const BitMatrix& m);

  std::size_t ambient() const { return n_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_whole() const { return dim() == n_; }
  const BitMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  // Basis as columns (n x dim).
  BitMatrix basis_cols() const { return basis_.transpose(); }

  bool contains(const BitVec& v) const;
  bool contains(const Subspace& s) const;
  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace complement() const;
  Subspace annihilator() const;
  // Image under m (m has ambient() columns).
  Subspace mapped(const BitMatrix& m) const;
  // {x : m x in this}, m has ambient() rows.
  Subspace preimage(const BitMatrix& m) const;
  // Coordinates in the echelon basis: the pivot entries.
  BitMatrix coords(const BitMatrix& vcols) const { return vcols.select_rows(pivots_); }

  bool operator==(const Subspace& o) const { return n_ == o.n_ && basis_ == o.basis_; }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

 private:
  std::size_t n_ = 0;
  BitMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// A subquotient top/bottom of an ambient space with a chosen complement basis.
class Subquotient {
 public:
  Subquotient() = default;
  Subquotient(const Subspace& top, const Subspace& bottom);
  std::size_t dim() const { return comp_.rows(); }
  const Subspace& top() const { return top_; }
  const Subspace& bottom() const { return bottom_; }
  // Representatives of the basis classes, as columns (ambient x dim).
  BitMatrix reps() const { return comp_.transpose(); }
  // Classes of the columns of v (each column in top); dim x m.
  BitMatrix classes(const BitMatrix& vcols) const;
  // Matrix of the map induced by m from this subquotient to target.
  BitMatrix induced(const BitMatrix& m, const Subquotient& target) const;

 private:
  Subspace top_;
  Subspace bottom_;
  BitMatrix comp_;
  Coords coords_;
};

class C2Module {
 public:
  C2Module() = default;
  explicit C2Module(BitMatrix sigma);
  static C2Module trivial(std::size_t n) { return C2Module(BitMatrix::identity(n)); }
  static C2Module regular();
  static C2Module direct_sum(const C2Module& a, const C2Module& b);

  std::size_t dim() const { return sigma_.rows(); }
  const BitMatrix& sigma() const { return sigma_; }
  // 1 + sigma
  BitMatrix norm() const { return sigma_ + BitMatrix::identity(dim()); }
  bool is_stable(const Subspace& s) const { return s.contains(s.mapped(sigma_)); }
  bool operator==(const C2Module& o) const { return sigma_ == o.sigma_; }

 private:
  BitMatrix sigma_;
};

struct ModuleSplit {
  std::size_t trivial = 0;  // copies of k
  std::size_t free = 0;     // copies of kC2
  bool operator==(const ModuleSplit& o) const { return trivial == o.trivial && free == o.free; }
  bool operator!=(const ModuleSplit& o) const { return !(*this == o); }
};

ModuleSplit module_split(const C2Module& m);

// Linear equations in unknown matrices X_u of the form  sum_k L_k X_{u_k} R_k = C.
// All unknowns must be registered before the first equation.
class LinearSystem {
 public:
  struct Term {
    std::size_t unknown;
    BitMatrix left;
    BitMatrix right;
  };

  std::size_t add_unknown(std::size_t rows, std::size_t cols);
  void add_equation(const std::vector<Term>& terms, const BitMatrix& rhs);
  void add_equation(const std::vector<Term>& terms);

  std::size_t unknowns() const { return shapes_.size(); }
  std::size_t variables() const { return nvars_; }
  std::size_t equations() const { return rows_.size(); }

  std::optional<std::vector<BitMatrix>> solve() const;
  // Basis of the solution space of the homogeneous system.
  std::vector<std::vector<BitMatrix>> kernel() const;
  std::vector<BitMatrix> unpack(const BitVec& x) const;

 private:
  BitMatrix matrix() const;

  std::vector<std::pair<std::size_t, std::size_t>> shapes_;
  std::vector<std::size_t> offsets_;
  std::size_t nvars_ = 0;
  std::vector<BitVec> rows_;
  std::vector<char> rhs_;
};

}  // namespace ttgeo

#endif  // TTGEO_GF2_HPP_
