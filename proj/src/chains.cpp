#include "ttgeo/chains.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

namespace ttgeo {

std::string kind_name(CellKind k) {
  switch (k) {
    case CellKind::Filtered: return "filtered";
    case CellKind::PlainC2: return "plain-c2";
    case CellKind::PlainF2: return "plain-f2";
  }
  return "?";
}

namespace {

const FiltModule& zero_module() {
  static const FiltModule z;
  return z;
}

bool fits_kind(const FiltModule& m, CellKind k) {
  if (k == CellKind::Filtered || m.is_zero()) return true;
  if (m.w_min() != 0 || m.w_max() != 0) return false;
  if (k == CellKind::PlainF2) return m.sigma().is_identity();
  return true;
}

}  // namespace

Complex::Complex(CellKind kind, int lo, std::vector<FiltModule> terms, std::vector<BitMatrix> diffs,
                 bool check)
    : kind_(kind), lo_(lo), terms_(std::move(terms)), diffs_(std::move(diffs)) {
  std::size_t expect = terms_.empty() ? 0 : terms_.size() - 1;
  if (diffs_.size() != expect) throw std::invalid_argument("complex: wrong number of differentials");
  for (std::size_t i = 0; i < diffs_.size(); ++i) {
    if (diffs_[i].rows() != terms_[i].dim() || diffs_[i].cols() != terms_[i + 1].dim()) {
      throw std::invalid_argument("complex: differential has wrong shape");
    }
  }
  if (check) {
    for (const auto& t : terms_) {
      if (!fits_kind(t, kind_)) throw std::invalid_argument("complex: term does not fit the cell kind");
    }
    for (std::size_t i = 0; i < diffs_.size(); ++i) {
      if (!is_morphism(diffs_[i], terms_[i + 1], terms_[i])) {
        throw std::invalid_argument("complex: differential is not a morphism");
      }
      if (i + 1 < diffs_.size() && !(diffs_[i] * diffs_[i + 1]).is_zero()) {
        throw std::invalid_argument("complex: d o d != 0");
      }
    }
  }
  trim();
}

void Complex::trim() {
  std::size_t a = 0, b = terms_.size();
  while (a < b && terms_[a].is_zero()) ++a;
  while (b > a && terms_[b - 1].is_zero()) --b;
  if (a == b) {
    terms_.clear();
    diffs_.clear();
    lo_ = 0;
    return;
  }
  if (a == 0 && b == terms_.size()) return;
  std::vector<FiltModule> t(terms_.begin() + a, terms_.begin() + b);
  std::vector<BitMatrix> d(diffs_.begin() + a, diffs_.begin() + (b - 1));
  terms_ = std::move(t);
  diffs_ = std::move(d);
  lo_ += static_cast<int>(a);
}

Complex Complex::object(const FiltModule& m, int degree, CellKind kind) {
  return Complex(kind, degree, {m}, {});
}

const FiltModule& Complex::term(int n) const {
  if (is_zero() || n < lo_ || n > hi()) return zero_module();
  return terms_[static_cast<std::size_t>(n - lo_)];
}

std::size_t Complex::total_dim() const {
  std::size_t s = 0;
  for (const auto& t : terms_) s += t.dim();
  return s;
}

BitMatrix Complex::d(int n) const {
  if (!is_zero() && n - 1 >= lo_ && n <= hi()) return diffs_[static_cast<std::size_t>(n - 1 - lo_)];
  return BitMatrix(dim(n - 1), dim(n));
}

std::pair<int, int> Complex::weight_range() const {
  bool first = true;
  int lo = 0, hi = -1;
  for (const auto& t : terms_) {
    if (t.is_zero()) continue;
    lo = first ? t.w_min() : std::min(lo, t.w_min());
    hi = first ? t.w_max() : std::max(hi, t.w_max());
    first = false;
  }
  return {lo, hi};
}

bool is_chain_map(const Complex& x, const Complex& y, const std::map<int, BitMatrix>& comps) {
  auto at = [&](int n) {
    auto it = comps.find(n);
    if (it != comps.end()) return it->second;
    return BitMatrix(y.dim(n), x.dim(n));
  };
  for (const auto& [n, m] : comps) {
    if (m.rows() != y.dim(n) || m.cols() != x.dim(n)) return false;
    if (!is_morphism(m, x.term(n), y.term(n))) return false;
  }
  if (x.is_zero() || y.is_zero()) return true;
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    if (y.d(n) * at(n) != at(n - 1) * x.d(n)) return false;
  }
  return true;
}

ChainMap::ChainMap(Complex source, Complex target, std::map<int, BitMatrix> comps, bool check)
    : src_(std::move(source)), tgt_(std::move(target)) {
  for (auto& [n, m] : comps) {
    if (m.rows() != tgt_.dim(n) || m.cols() != src_.dim(n)) {
      throw std::invalid_argument("chain map: component has wrong shape");
    }
    if (m.rows() == 0 || m.cols() == 0) continue;
    comps_.emplace(n, std::move(m));
  }
  if (check && !is_chain_map(src_, tgt_, comps_)) {
    throw std::invalid_argument("chain map: not a chain map");
  }
}

ChainMap ChainMap::identity(const Complex& x) {
  std::map<int, BitMatrix> c;
  for (int n = x.lo(); n <= x.hi(); ++n) c[n] = BitMatrix::identity(x.dim(n));
  return ChainMap(x, x, std::move(c), false);
}

ChainMap ChainMap::zero(const Complex& x, const Complex& y) { return ChainMap(x, y, {}, false); }

BitMatrix ChainMap::at(int n) const {
  auto it = comps_.find(n);
  if (it != comps_.end()) return it->second;
  return BitMatrix(tgt_.dim(n), src_.dim(n));
}

bool ChainMap::is_zero() const {
  for (const auto& [n, m] : comps_)
    if (!m.is_zero()) return false;
  return true;
}

CellKind common_kind(const Complex& x, const Complex& y) {
  if (x.kind() != y.kind()) throw std::invalid_argument("cell kind mismatch");
  return x.kind();
}

namespace {

Complex build(CellKind kind, int lo, int hi, const std::function<FiltModule(int)>& term,
              const std::function<BitMatrix(int)>& diff, bool check = false) {
  if (hi < lo) return Complex(kind);
  std::vector<FiltModule> ts;
  std::vector<BitMatrix> ds;
  for (int n = lo; n <= hi; ++n) ts.push_back(term(n));
  for (int n = lo + 1; n <= hi; ++n) ds.push_back(diff(n));
  return Complex(kind, lo, std::move(ts), std::move(ds), check);
}

}  // namespace

Complex shift(const Complex& x, int k) {
  return build(x.kind(), x.lo() + k, x.hi() + k, [&](int n) { return x.term(n - k); },
               [&](int n) { return x.d(n - k); });
}

Complex twist(const Complex& x, int r) {
  if (x.kind() != CellKind::Filtered && r != 0 && !x.is_zero()) {
    throw std::invalid_argument("twist needs filtered cells");
  }
  return build(x.kind(), x.lo(), x.hi(), [&](int n) { return twist(x.term(n), r); },
               [&](int n) { return x.d(n); });
}

Complex direct_sum(const Complex& x, const Complex& y) {
  CellKind k = common_kind(x, y);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  int lo = std::min(x.lo(), y.lo()), hi = std::max(x.hi(), y.hi());
  return build(k, lo, hi, [&](int n) { return direct_sum(x.term(n), y.term(n)); },
               [&](int n) { return block_diag(x.d(n), y.d(n)); });
}

Complex direct_sum(const std::vector<Complex>& xs) {
  if (xs.empty()) return Complex();
  Complex s = xs[0];
  for (std::size_t i = 1; i < xs.size(); ++i) s = direct_sum(s, xs[i]);
  return s;
}

Complex cone(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  CellKind k = common_kind(x, y);
  if (x.is_zero()) return y;
  if (y.is_zero()) return shift(x, 1);
  int lo = std::min(y.lo(), x.lo() + 1), hi = std::max(y.hi(), x.hi() + 1);
  return build(
      k, lo, hi, [&](int n) { return direct_sum(y.term(n), x.term(n - 1)); },
      [&](int n) {
        std::size_t yr = y.dim(n - 1), xr = x.dim(n - 2), yc = y.dim(n), xc = x.dim(n - 1);
        BitMatrix m(yr + xr, yc + xc);
        m.set_block(0, 0, y.d(n));
        m.set_block(0, yc, f.at(n - 1));
        m.set_block(yr, yc, x.d(n - 1));
        return m;
      });
}

Complex dual_complex(const Complex& x) {
  if (x.is_zero()) return x;
  return build(x.kind(), -x.hi(), -x.lo(), [&](int n) { return dual(x.term(-n)); },
               [&](int n) { return x.d(-n + 1).transpose(); });
}

namespace {

// Block offsets of (X tensor Y)_n, indexed by the X-degree p.
struct TensorLayout {
  std::map<int, std::size_t> off;
  std::size_t total = 0;
};

TensorLayout tensor_layout(const Complex& x, const Complex& y, int n) {
  TensorLayout l;
  if (x.is_zero() || y.is_zero()) return l;
  for (int p = std::max(x.lo(), n - y.hi()); p <= std::min(x.hi(), n - y.lo()); ++p) {
    l.off[p] = l.total;
    l.total += x.dim(p) * y.dim(n - p);
  }
  return l;
}

}  // namespace

Complex tensor_complex(const Complex& x, const Complex& y) {
  CellKind k = common_kind(x, y);
  if (x.is_zero() || y.is_zero()) return Complex(k);
  int lo = x.lo() + y.lo(), hi = x.hi() + y.hi();
  std::map<int, TensorLayout> lay;
  for (int n = lo - 1; n <= hi; ++n) lay[n] = tensor_layout(x, y, n);
  return build(
      k, lo, hi,
      [&](int n) {
        std::vector<FiltModule> parts;
        for (auto [p, o] : lay[n].off) parts.push_back(tensor(x.term(p), y.term(n - p)));
        return direct_sum(parts);
      },
      [&](int n) {
        const auto& src = lay[n];
        const auto& tgt = lay[n - 1];
        BitMatrix m(tgt.total, src.total);
        for (auto [p, o] : src.off) {
          int q = n - p;
          auto it = tgt.off.find(p - 1);
          if (it != tgt.off.end() && x.dim(p - 1) > 0) {
            m.set_block(it->second, o, kron(x.d(p), BitMatrix::identity(y.dim(q))));
          }
          it = tgt.off.find(p);
          if (it != tgt.off.end() && y.dim(q - 1) > 0) {
            m.add_block(it->second, o, kron(BitMatrix::identity(x.dim(p)), y.d(q)));
          }
        }
        return m;
      });
}

Complex with_kind(const Complex& x, CellKind k) {
  return build(k, x.lo(), x.hi(), [&](int n) { return x.term(n); }, [&](int n) { return x.d(n); },
               true);
}

ChainMap shift(const ChainMap& f, int k) {
  std::map<int, BitMatrix> c;
  for (const auto& [n, m] : f.components()) c[n + k] = m;
  return ChainMap(shift(f.source(), k), shift(f.target(), k), std::move(c), false);
}

ChainMap twist(const ChainMap& f, int r) {
  return ChainMap(twist(f.source(), r), twist(f.target(), r), f.components(), false);
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
  std::map<int, BitMatrix> c;
  const Complex& x = f.source();
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) == 0 || g.target().dim(n) == 0) continue;
    c[n] = g.at(n) * f.at(n);
  }
  return ChainMap(x, g.target(), std::move(c), false);
}

ChainMap operator+(const ChainMap& f, const ChainMap& g) {
  std::map<int, BitMatrix> c = f.components();
  for (const auto& [n, m] : g.components()) {
    auto it = c.find(n);
    if (it == c.end()) c[n] = m;
    else it->second += m;
  }
  return ChainMap(f.source(), f.target(), std::move(c), false);
}

ChainMap direct_sum(const ChainMap& f, const ChainMap& g) {
  Complex s = direct_sum(f.source(), g.source());
  Complex t = direct_sum(f.target(), g.target());
  std::map<int, BitMatrix> c;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (s.dim(n) == 0 || t.dim(n) == 0) continue;
    c[n] = block_diag(f.at(n), g.at(n));
  }
  return ChainMap(std::move(s), std::move(t), std::move(c), false);
}

ChainMap tensor(const ChainMap& f, const ChainMap& g) {
  const Complex &x = f.source(), &x2 = f.target(), &y = g.source(), &y2 = g.target();
  Complex s = tensor_complex(x, y);
  Complex t = tensor_complex(x2, y2);
  std::map<int, BitMatrix> c;
  for (int n = s.lo(); n <= s.hi(); ++n) {
    if (s.dim(n) == 0 || t.dim(n) == 0) continue;
    TensorLayout ls = tensor_layout(x, y, n), lt = tensor_layout(x2, y2, n);
    BitMatrix m(lt.total, ls.total);
    for (auto [p, o] : ls.off) {
      auto it = lt.off.find(p);
      if (it == lt.off.end()) continue;
      BitMatrix b = kron(f.at(p), g.at(n - p));
      if (b.rows() && b.cols()) m.set_block(it->second, o, b);
    }
    c[n] = std::move(m);
  }
  return ChainMap(std::move(s), std::move(t), std::move(c), false);
}

ChainMap dual(const ChainMap& f) {
  Complex s = dual_complex(f.target());
  Complex t = dual_complex(f.source());
  std::map<int, BitMatrix> c;
  for (const auto& [n, m] : f.components()) c[-n] = m.transpose();
  return ChainMap(std::move(s), std::move(t), std::move(c), false);
}

ChainMap beta_map(const Complex& x) {
  std::map<int, BitMatrix> c;
  for (int n = x.lo(); n <= x.hi(); ++n) c[n] = BitMatrix::identity(x.dim(n));
  return ChainMap(x, twist(x, 1), std::move(c), false);
}

ChainMap cone_inclusion(const ChainMap& f) {
  Complex c = cone(f);
  std::map<int, BitMatrix> comps;
  const Complex& y = f.target();
  for (int n = y.lo(); n <= y.hi(); ++n) {
    BitMatrix m(c.dim(n), y.dim(n));
    m.set_block(0, 0, BitMatrix::identity(y.dim(n)));
    comps[n] = std::move(m);
  }
  return ChainMap(y, std::move(c), std::move(comps), false);
}

ChainMap cone_projection(const ChainMap& f) {
  Complex c = cone(f);
  Complex x1 = shift(f.source(), 1);
  std::map<int, BitMatrix> comps;
  for (int n = x1.lo(); n <= x1.hi(); ++n) {
    BitMatrix m(x1.dim(n), c.dim(n));
    m.set_block(0, f.target().dim(n), BitMatrix::identity(x1.dim(n)));
    comps[n] = std::move(m);
  }
  return ChainMap(std::move(c), std::move(x1), std::move(comps), false);
}

Complex truncate_ge(const Complex& x, int n) {
  return build(x.kind(), std::max(n, x.lo()), x.hi(), [&](int k) { return x.term(k); },
               [&](int k) { return x.d(k); });
}

Complex truncate_le(const Complex& x, int n) {
  return build(x.kind(), x.lo(), std::min(n, x.hi()), [&](int k) { return x.term(k); },
               [&](int k) { return x.d(k); });
}

Truncation truncation_triangle(const Complex& x, int n) {
  Truncation t;
  t.ge = truncate_ge(x, n + 1);
  t.le = truncate_le(x, n);
  Complex ge1 = shift(t.ge, -1);
  std::map<int, BitMatrix> dc;
  if (ge1.dim(n) > 0 && t.le.dim(n) > 0) dc[n] = x.d(n + 1);
  t.delta = ChainMap(ge1, t.le, std::move(dc), false);
  std::map<int, BitMatrix> a, b;
  for (int k = t.le.lo(); k <= t.le.hi(); ++k) a[k] = BitMatrix::identity(x.dim(k));
  for (int k = t.ge.lo(); k <= t.ge.hi(); ++k) b[k] = BitMatrix::identity(x.dim(k));
  t.to_x = ChainMap(t.le, x, std::move(a), false);
  t.from_x = ChainMap(x, t.ge, std::move(b), false);
  return t;
}

std::optional<Homotopy> is_nullhomotopic(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  if (x.is_zero() || y.is_zero()) return Homotopy{};
  LinearSystem sys;
  std::map<int, std::size_t> hid;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) > 0 && y.dim(n + 1) > 0) hid[n] = sys.add_unknown(y.dim(n + 1), x.dim(n));
  }
  if (hid.empty()) {
    if (f.is_zero()) return Homotopy{};
    return std::nullopt;
  }
  if (x.kind() != CellKind::PlainF2) {
    for (auto [n, u] : hid) add_morphism_constraints(sys, u, x.term(n), y.term(n + 1));
  }
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) == 0 || y.dim(n) == 0) continue;
    std::vector<LinearSystem::Term> terms;
    auto a = hid.find(n);
    if (a != hid.end()) terms.push_back({a->second, y.d(n + 1), BitMatrix::identity(x.dim(n))});
    auto b = hid.find(n - 1);
    if (b != hid.end()) terms.push_back({b->second, BitMatrix::identity(y.dim(n)), x.d(n)});
    BitMatrix rhs = f.at(n);
    if (terms.empty()) {
      if (!rhs.is_zero()) return std::nullopt;
      continue;
    }
    sys.add_equation(terms, rhs);
  }
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Homotopy h;
  for (auto [n, u] : hid) h.h[n] = std::move((*sol)[u]);
  return h;
}

std::vector<ChainMap> chain_map_basis(const Complex& x, const Complex& y) {
  std::vector<ChainMap> out;
  CellKind k = common_kind(x, y);
  if (x.is_zero() || y.is_zero()) return out;
  LinearSystem sys;
  std::map<int, std::size_t> fid;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) > 0 && y.dim(n) > 0) fid[n] = sys.add_unknown(y.dim(n), x.dim(n));
  }
  if (fid.empty()) return out;
  if (k != CellKind::PlainF2) {
    for (auto [n, u] : fid) add_morphism_constraints(sys, u, x.term(n), y.term(n));
  }
  for (int n = x.lo(); n <= x.hi() + 1; ++n) {
    if (x.dim(n) == 0 || y.dim(n - 1) == 0) continue;
    std::vector<LinearSystem::Term> terms;
    auto a = fid.find(n);
    if (a != fid.end()) terms.push_back({a->second, y.d(n), BitMatrix::identity(x.dim(n))});
    auto b = fid.find(n - 1);
    if (b != fid.end()) terms.push_back({b->second, BitMatrix::identity(y.dim(n - 1)), x.d(n)});
    if (!terms.empty()) sys.add_equation(terms);
  }
  for (auto& sol : sys.kernel()) {
    std::map<int, BitMatrix> c;
    for (auto [n, u] : fid) c[n] = std::move(sol[u]);
    out.emplace_back(x, y, std::move(c), false);
  }
  return out;
}

namespace {

struct Block {
  IndecLabel label;
  std::size_t off;
  std::size_t size;
};

std::vector<Block> blocks_of(const FormalSum& s) {
  std::vector<Block> out;
  std::size_t off = 0;
  for (const auto& l : s.items()) {
    out.push_back({l, off, l.dim()});
    off += l.dim();
  }
  return out;
}

bool is_unit_entry(const BitMatrix& d, const Block& r, const Block& c) {
  if (r.label != c.label) return false;
  if (r.size == 1) return d.get(r.off, c.off);
  bool a = d.get(r.off, c.off), b = d.get(r.off, c.off + 1);
  bool e = d.get(r.off + 1, c.off), f = d.get(r.off + 1, c.off + 1);
  return (a && f) != (b && e);
}

// Inverse of a unit block (1x1 or 2x2 with determinant 1).
BitMatrix block_inverse(const BitMatrix& d, const Block& r, const Block& c) {
  if (r.size == 1) return BitMatrix::identity(1);
  BitMatrix m(2, 2);
  m.set(0, 0, d.get(r.off + 1, c.off + 1));
  m.set(0, 1, d.get(r.off, c.off + 1));
  m.set(1, 0, d.get(r.off + 1, c.off));
  m.set(1, 1, d.get(r.off, c.off));
  return m;
}

struct DegreeState {
  std::vector<Block> blocks;
  std::vector<char> alive;
  BitMatrix p;   // std x orig
  BitMatrix it;  // std x orig, transpose of the std -> orig inclusion
};

}  // namespace

Minimized minimize(const Complex& x) {
  Minimized out;
  if (x.is_zero()) {
    out.min = Complex(x.kind());
    out.i = ChainMap::zero(out.min, x);
    out.p = ChainMap::zero(x, out.min);
    return out;
  }
  const int lo = x.lo(), hi = x.hi();
  std::map<int, DegreeState> st;
  std::map<int, BitMatrix> dstd;
  for (int n = lo; n <= hi; ++n) {
    Decomposition dec = decompose(x.term(n));
    DegreeState s;
    s.blocks = blocks_of(dec.sum);
    s.alive.assign(s.blocks.size(), 1);
    if (x.dim(n) > 0) {
      s.p = *inverse(dec.iso);
      s.it = dec.iso.transpose();
    } else {
      s.p = BitMatrix(0, 0);
      s.it = BitMatrix(0, 0);
    }
    st[n] = std::move(s);
  }
  for (int n = lo + 1; n <= hi; ++n) {
    dstd[n] = st[n - 1].p * x.d(n) * st[n].it.transpose();
  }

  for (int n = lo + 1; n <= hi; ++n) {
    DegreeState& src = st[n];
    DegreeState& tgt = st[n - 1];
    BitMatrix& d = dstd[n];
    for (;;) {
      bool found = false;
      for (std::size_t rb = 0; rb < tgt.blocks.size() && !found; ++rb) {
        if (!tgt.alive[rb]) continue;
        for (std::size_t cb = 0; cb < src.blocks.size(); ++cb) {
          if (!src.alive[cb]) continue;
          const Block& r = tgt.blocks[rb];
          const Block& c = src.blocks[cb];
          if (!is_unit_entry(d, r, c)) continue;
          const std::size_t k = r.size;
          BitMatrix phi_inv = block_inverse(d, r, c);
          // M = phi^{-1} D[a', :]
          BitMatrix m(k, d.cols());
          for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
              if (phi_inv.get(i, j)) m.xor_row_from(i, d, r.off + j);
          for (std::size_t ob = 0; ob < tgt.blocks.size(); ++ob) {
            if (!tgt.alive[ob] || ob == rb) continue;
            const Block& o = tgt.blocks[ob];
            for (std::size_t row = o.off; row < o.off + o.size; ++row) {
              std::vector<char> cv(k);
              bool any = false;
              for (std::size_t j = 0; j < k; ++j) {
                cv[j] = d.get(row, c.off + j);
                any = any || cv[j];
              }
              if (!any) continue;
              for (std::size_t j = 0; j < k; ++j) {
                if (cv[j]) d.xor_row_from(row, m, j);
                bool g = false;
                for (std::size_t i = 0; i < k; ++i) g ^= (cv[i] && phi_inv.get(i, j));
                if (g) tgt.p.xor_row(row, r.off + j);
              }
            }
          }
          for (std::size_t ob = 0; ob < src.blocks.size(); ++ob) {
            if (!src.alive[ob] || ob == cb) continue;
            const Block& o = src.blocks[ob];
            for (std::size_t col = o.off; col < o.off + o.size; ++col) {
              for (std::size_t j = 0; j < k; ++j) {
                if (m.get(j, col)) src.it.xor_row(col, c.off + j);
              }
            }
          }
          src.alive[cb] = 0;
          tgt.alive[rb] = 0;
          found = true;
          break;
        }
      }
      if (!found) break;
    }
  }

  std::map<int, std::vector<std::size_t>> keep;
  std::map<int, FormalSum> sig;
  for (int n = lo; n <= hi; ++n) {
    const DegreeState& s = st[n];
    std::vector<std::size_t> idx;
    std::vector<IndecLabel> labels;
    for (std::size_t b = 0; b < s.blocks.size(); ++b) {
      if (!s.alive[b]) continue;
      labels.push_back(s.blocks[b].label);
      for (std::size_t j = 0; j < s.blocks[b].size; ++j) idx.push_back(s.blocks[b].off + j);
    }
    keep[n] = std::move(idx);
    if (!labels.empty()) sig[n] = FormalSum(std::move(labels));
  }
  std::vector<FiltModule> terms;
  std::vector<BitMatrix> diffs;
  for (int n = lo; n <= hi; ++n) {
    auto it = sig.find(n);
    terms.push_back(it == sig.end() ? FiltModule::zero() : realize(it->second));
    if (n > lo) diffs.push_back(dstd[n].select_rows(keep[n - 1]).select_cols(keep[n]));
  }
  Complex mc(x.kind(), lo, std::move(terms), std::move(diffs), false);
  std::map<int, BitMatrix> ic, pc;
  for (int n = lo; n <= hi; ++n) {
    if (keep[n].empty()) continue;
    ic[n] = st[n].it.select_rows(keep[n]).transpose();
    pc[n] = st[n].p.select_rows(keep[n]);
  }
  out.i = ChainMap(mc, x, std::move(ic), false);
  out.p = ChainMap(x, mc, std::move(pc), false);
  out.min = std::move(mc);
  out.signature = std::move(sig);
  return out;
}

std::map<int, FormalSum> signature(const Complex& x) {
  std::map<int, FormalSum> s;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) == 0) continue;
    s[n] = decompose(x.term(n)).sum;
  }
  return s;
}

std::string signature_str(const std::map<int, FormalSum>& sig) {
  if (sig.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = sig.rbegin(); it != sig.rend(); ++it) {
    if (!first) os << "; ";
    first = false;
    os << "d" << it->first << ": " << it->second.str();
  }
  return os.str();
}

bool is_minimal(const Complex& x) {
  if (x.is_zero()) return true;
  std::map<int, Decomposition> dec;
  for (int n = x.lo(); n <= x.hi(); ++n) dec[n] = decompose(x.term(n));
  for (int n = x.lo() + 1; n <= x.hi(); ++n) {
    if (x.dim(n) == 0 || x.dim(n - 1) == 0) continue;
    BitMatrix d = *inverse(dec[n - 1].iso) * x.d(n) * dec[n].iso;
    for (const auto& r : blocks_of(dec[n - 1].sum))
      for (const auto& c : blocks_of(dec[n].sum))
        if (is_unit_entry(d, r, c)) return false;
  }
  return true;
}

bool is_contractible(const Complex& x) { return minimize(x).min.is_zero(); }

bool is_degreewise_iso(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  if (x.is_zero() && y.is_zero()) return true;
  int lo = std::min(x.is_zero() ? y.lo() : x.lo(), y.is_zero() ? x.lo() : y.lo());
  int hi = std::max(x.is_zero() ? y.hi() : x.hi(), y.is_zero() ? x.hi() : y.hi());
  for (int n = lo; n <= hi; ++n) {
    if (x.dim(n) != y.dim(n)) return false;
    if (x.dim(n) == 0) continue;
    if (!is_filtered_iso(f.at(n), x.term(n), y.term(n))) return false;
  }
  return true;
}

namespace {

// Sum of the ranks of the unit parts of f between equal labels, in standard coordinates.
std::size_t top_rank(const std::map<int, BitMatrix>& fstd, const std::map<int, FormalSum>& sx,
                     const std::map<int, FormalSum>& sy) {
  std::size_t total = 0;
  for (const auto& [n, m] : fstd) {
    auto bx = blocks_of(sx.at(n));
    auto by = blocks_of(sy.at(n));
    std::map<IndecLabel, std::pair<std::vector<const Block*>, std::vector<const Block*>>> groups;
    for (const auto& b : bx) groups[b.label].first.push_back(&b);
    for (const auto& b : by) groups[b.label].second.push_back(&b);
    for (const auto& [label, g] : groups) {
      const auto& cols = g.first;
      const auto& rows = g.second;
      if (cols.empty() || rows.empty()) continue;
      BitMatrix t(rows.size(), cols.size());
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) {
          bool u = m.get(rows[i]->off, cols[j]->off);
          if (rows[i]->size == 2) u ^= m.get(rows[i]->off, cols[j]->off + 1);
          t.set(i, j, u);
        }
      total += rank(t);
    }
  }
  return total;
}

}  // namespace

std::optional<ChainMap> iso_certificate(const Complex& x, const Complex& y, unsigned seed) {
  if (x.kind() != y.kind()) return std::nullopt;
  if (x.is_zero() && y.is_zero()) return ChainMap::zero(x, y);
  std::map<int, Decomposition> dx, dy;
  std::map<int, FormalSum> sx, sy;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    if (x.dim(n) == 0) continue;
    dx[n] = decompose(x.term(n));
    sx[n] = dx[n].sum;
  }
  for (int n = y.lo(); n <= y.hi(); ++n) {
    if (y.dim(n) == 0) continue;
    dy[n] = decompose(y.term(n));
    sy[n] = dy[n].sum;
  }
  if (sx != sy) return std::nullopt;
  std::size_t target = 0;
  for (const auto& [n, s] : sx) target += s.size();

  auto basis = chain_map_basis(x, y);
  if (basis.empty()) return std::nullopt;
  std::map<int, BitMatrix> yinv;
  for (const auto& [n, d] : dy) yinv[n] = *inverse(d.iso);
  auto to_std = [&](const std::map<int, BitMatrix>& c) {
    std::map<int, BitMatrix> s;
    for (const auto& [n, m] : c) s[n] = yinv.at(n) * m * dx.at(n).iso;
    return s;
  };
  std::vector<std::map<int, BitMatrix>> bstd;
  for (const auto& b : basis) {
    std::map<int, BitMatrix> full;
    for (const auto& [n, s] : sx) full[n] = b.at(n);
    bstd.push_back(to_std(full));
  }
  auto add_into = [](std::map<int, BitMatrix>& a, const std::map<int, BitMatrix>& b) {
    for (const auto& [n, m] : b) a[n] += m;
  };

  std::mt19937 rng(seed);
  const std::size_t k = basis.size();
  for (int restart = 0; restart < 16; ++restart) {
    std::vector<char> coef(k, 0);
    std::map<int, BitMatrix> cur;
    for (const auto& [n, s] : sx) cur[n] = BitMatrix(s.dim(), s.dim());
    std::size_t r = top_rank(cur, sx, sy);
    int stale = 0;
    while (r < target && stale < 64) {
      std::vector<char> g(k, 0);
      std::map<int, BitMatrix> cand = cur;
      bool any = false;
      for (std::size_t i = 0; i < k; ++i) {
        if (rng() & 1U) {
          g[i] = 1;
          any = true;
          add_into(cand, bstd[i]);
        }
      }
      if (!any) continue;
      std::size_t rc = top_rank(cand, sx, sy);
      if (rc > r) {
        r = rc;
        cur = std::move(cand);
        for (std::size_t i = 0; i < k; ++i) coef[i] ^= g[i];
        stale = 0;
      } else {
        ++stale;
      }
    }
    if (r < target) continue;
    ChainMap f = ChainMap::zero(x, y);
    for (std::size_t i = 0; i < k; ++i)
      if (coef[i]) f = f + basis[i];
    if (is_degreewise_iso(f)) return f;
  }
  return std::nullopt;
}

std::optional<ChainMap> equivalence_certificate(const Complex& x, const Complex& y, unsigned seed) {
  Minimized a = minimize(x), b = minimize(y);
  if (a.signature != b.signature) return std::nullopt;
  return iso_certificate(a.min, b.min, seed);
}

}  // namespace ttgeo
