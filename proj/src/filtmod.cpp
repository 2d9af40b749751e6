#include "ttgeo/filtmod.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace ttgeo {

namespace {

Subspace embed_sum(const Subspace& a, const Subspace& b) {
  return Subspace::span(block_diag(a.basis(), b.basis()));
}

Subspace line_of_norm() { return Subspace::span(BitMatrix::from_rows({{1, 1}})); }

}  // namespace

IndecLabel IndecLabel::e(int l, int m) {
  if (l < 0) throw std::invalid_argument("E(l,m) needs l >= 0");
  return {Kind::E, l, m};
}

std::string IndecLabel::str() const {
  std::ostringstream os;
  if (is_unit()) os << "1(" << m << ")";
  else os << "E(" << l << "," << m << ")";
  return os.str();
}

FormalSum::FormalSum(std::vector<IndecLabel> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
}

std::size_t FormalSum::dim() const {
  std::size_t d = 0;
  for (const auto& x : items_) d += x.dim();
  return d;
}

void FormalSum::add(const IndecLabel& x) {
  items_.insert(std::upper_bound(items_.begin(), items_.end(), x), x);
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
  std::vector<IndecLabel> merged;
  merged.reserve(items_.size() + o.items_.size());
  std::merge(items_.begin(), items_.end(), o.items_.begin(), o.items_.end(),
             std::back_inserter(merged));
  items_ = std::move(merged);
  return *this;
}

std::string FormalSum::str() const {
  if (items_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    if (i) s += " + ";
    s += items_[i].str();
  }
  return s;
}

FiltModule::FiltModule(C2Module u, int w_lo, std::vector<Subspace> layers) : u_(std::move(u)) {
  const std::size_t n = u_.dim();
  for (std::size_t i = 0; i < layers.size(); ++i) {
    if (layers[i].ambient() != n) throw std::invalid_argument("filtration layer has wrong ambient");
    if (!u_.is_stable(layers[i])) throw std::invalid_argument("filtration layer is not sigma-stable");
    if (i > 0 && !layers[i - 1].contains(layers[i])) {
      throw std::invalid_argument("filtration is not decreasing");
    }
  }
  if (n == 0) {
    layers_ = {Subspace(0)};
    return;
  }
  auto at = [&](int w) -> Subspace {
    if (w < w_lo) return Subspace::whole(n);
    std::size_t i = static_cast<std::size_t>(w - w_lo);
    if (i >= layers.size()) return Subspace(n);
    return layers[i];
  };
  int top = w_lo + static_cast<int>(layers.size());
  w_min_ = w_lo - 1;
  w_max_ = w_lo - 1;
  for (int w = w_lo; w < top; ++w) {
    if (at(w).is_whole()) w_min_ = w;
    if (!at(w).is_zero()) w_max_ = w;
  }
  layers_.clear();
  for (int w = w_min_; w <= w_max_ + 1; ++w) layers_.push_back(at(w));
}

FiltModule FiltModule::pure(C2Module u, int w) {
  std::size_t n = u.dim();
  return FiltModule(std::move(u), w, {Subspace::whole(n), Subspace(n)});
}

Subspace FiltModule::layer(int w) const {
  if (w <= w_min_) return Subspace::whole(dim());
  if (w > w_max_) return Subspace(dim());
  return layers_[static_cast<std::size_t>(w - w_min_)];
}

FiltModule realize(const IndecLabel& label) {
  if (label.is_unit()) return FiltModule::pure(C2Module::trivial(1), label.m);
  std::vector<Subspace> layers{Subspace::whole(2)};
  for (int i = 0; i < label.l; ++i) layers.push_back(line_of_norm());
  layers.push_back(Subspace(2));
  return FiltModule(C2Module::regular(), label.m, std::move(layers));
}

FiltModule realize(const FormalSum& sum) {
  std::vector<FiltModule> parts;
  for (const auto& x : sum.items()) parts.push_back(realize(x));
  return direct_sum(parts);
}

FiltModule direct_sum(const FiltModule& a, const FiltModule& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int lo = std::min(a.w_min(), b.w_min());
  int hi = std::max(a.w_max(), b.w_max()) + 1;
  std::vector<Subspace> layers;
  for (int w = lo; w <= hi; ++w) layers.push_back(embed_sum(a.layer(w), b.layer(w)));
  return FiltModule(C2Module::direct_sum(a.underlying(), b.underlying()), lo, std::move(layers));
}

FiltModule direct_sum(const std::vector<FiltModule>& parts) {
  std::vector<const FiltModule*> nz;
  for (const auto& p : parts)
    if (!p.is_zero()) nz.push_back(&p);
  if (nz.empty()) return FiltModule::zero();
  if (nz.size() == 1) return *nz[0];
  int lo = nz[0]->w_min(), hi = nz[0]->w_max();
  std::vector<BitMatrix> sig;
  for (auto* p : nz) {
    lo = std::min(lo, p->w_min());
    hi = std::max(hi, p->w_max());
    sig.push_back(p->sigma());
  }
  std::vector<Subspace> layers;
  for (int w = lo; w <= hi + 1; ++w) {
    std::vector<BitMatrix> bs;
    for (auto* p : nz) bs.push_back(p->layer(w).basis());
    layers.push_back(Subspace::span(block_diag(bs)));
  }
  return FiltModule(C2Module(block_diag(sig)), lo, std::move(layers));
}

bool is_morphism(const BitMatrix& m, const FiltModule& a, const FiltModule& b) {
  if (m.rows() != b.dim() || m.cols() != a.dim()) return false;
  if (m * a.sigma() != b.sigma() * m) return false;
  if (a.is_zero()) return true;
  for (int w = a.w_min(); w <= a.w_max(); ++w) {
    if (!b.layer(w).contains(a.layer(w).mapped(m))) return false;
  }
  return true;
}

void add_morphism_constraints(LinearSystem& sys, std::size_t x, const FiltModule& a,
                              const FiltModule& b) {
  const std::size_t da = a.dim(), db = b.dim();
  if (da == 0 || db == 0) return;
  sys.add_equation({{x, BitMatrix::identity(db), a.sigma()}, {x, b.sigma(), BitMatrix::identity(da)}});
  for (int w = a.w_min(); w <= a.w_max(); ++w) {
    Subspace tgt = b.layer(w);
    if (tgt.is_whole()) continue;
    BitMatrix ann = tgt.annihilator().basis();
    BitMatrix src = a.layer(w).basis_cols();
    if (src.cols() == 0) continue;
    sys.add_equation({{x, ann, src}});
  }
}

std::vector<BitMatrix> hom_basis(const FiltModule& a, const FiltModule& b) {
  if (a.is_zero() || b.is_zero()) return {};
  LinearSystem sys;
  auto x = sys.add_unknown(b.dim(), a.dim());
  add_morphism_constraints(sys, x, a, b);
  std::vector<BitMatrix> out;
  for (auto& sol : sys.kernel()) out.push_back(std::move(sol[0]));
  return out;
}

std::vector<FiltMorphism> hom_morphisms(const FiltModule& a, const FiltModule& b) {
  std::vector<FiltMorphism> out;
  for (auto& m : hom_basis(a, b)) out.push_back({a, b, std::move(m)});
  return out;
}

bool is_filtered_iso(const BitMatrix& m, const FiltModule& a, const FiltModule& b) {
  if (a.dim() != b.dim()) return false;
  if (!is_morphism(m, a, b)) return false;
  auto inv = inverse(m);
  if (!inv) return false;
  return is_morphism(*inv, b, a);
}

FiltModule tensor(const FiltModule& a, const FiltModule& b) {
  if (a.is_zero() || b.is_zero()) return FiltModule::zero();
  C2Module u(kron(a.sigma(), b.sigma()));
  const std::size_t n = u.dim();
  int lo = a.w_min() + b.w_min();
  int hi = a.w_max() + b.w_max() + 1;
  std::vector<Subspace> layers;
  for (int w = lo; w <= hi; ++w) {
    Subspace s(n);
    for (int p = a.w_min(); p <= a.w_max(); ++p) {
      Subspace ap = a.layer(p), bq = b.layer(w - p);
      if (ap.is_zero() || bq.is_zero()) continue;
      s = s.sum(Subspace::span(kron(ap.basis(), bq.basis())));
    }
    layers.push_back(std::move(s));
  }
  return FiltModule(std::move(u), lo, std::move(layers));
}

FiltModule dual(const FiltModule& a) {
  if (a.is_zero()) return FiltModule::zero();
  std::vector<Subspace> layers;
  for (int n = -a.w_max(); n <= -a.w_min() + 1; ++n) layers.push_back(a.layer(1 - n).annihilator());
  return FiltModule(C2Module(a.sigma().transpose()), -a.w_max(), std::move(layers));
}

FiltModule twist(const FiltModule& a, int r) {
  if (a.is_zero()) return a;
  std::vector<Subspace> layers;
  for (int w = a.w_min(); w <= a.w_max() + 1; ++w) layers.push_back(a.layer(w));
  return FiltModule(a.underlying(), a.w_min() + r, std::move(layers));
}

FiltMorphism beta_map(const FiltModule& a) {
  return {a, twist(a, 1), BitMatrix::identity(a.dim())};
}

Subquotient graded_piece(const FiltModule& a, int w) {
  return Subquotient(a.layer(w), a.layer(w + 1));
}

std::vector<std::pair<int, C2Module>> gr(const FiltModule& a) {
  std::vector<std::pair<int, C2Module>> out;
  if (a.is_zero()) return out;
  for (int w = a.w_min(); w <= a.w_max(); ++w) {
    Subquotient q = graded_piece(a, w);
    if (q.dim() == 0) continue;
    out.emplace_back(w, C2Module(q.induced(a.sigma(), q)));
  }
  return out;
}

C2Module fgt(const FiltModule& a) { return a.underlying(); }

C2Module weight_part(const FiltModule& a, int m) {
  Subspace v = a.layer(m);
  if (v.is_zero()) return C2Module();
  return C2Module(v.coords(a.sigma() * v.basis_cols()));
}

FiltModule weight_ge(const FiltModule& a, int m) {
  return restrict_to(a, a.layer(m).basis_cols());
}

bool is_effective(const FiltModule& a) { return a.layer(0).is_whole(); }

FiltModule restrict_to(const FiltModule& a, const BitMatrix& b) {
  if (b.cols() == 0) return FiltModule::zero();
  Coords c(b.transpose());
  Subspace s = Subspace::span(b.transpose());
  C2Module u(c.of(a.sigma() * b));
  std::vector<Subspace> layers;
  for (int w = a.w_min(); w <= a.w_max() + 1; ++w) {
    Subspace v = a.layer(w).intersect(s);
    if (v.is_zero()) layers.push_back(Subspace(b.cols()));
    else layers.push_back(Subspace::span(c.of(v.basis_cols()).transpose()));
  }
  return FiltModule(std::move(u), a.w_min(), std::move(layers));
}

FiltModule transport(const FiltModule& a, const BitMatrix& g) {
  if (a.is_zero()) return a;
  auto gi = inverse(g);
  if (!gi) throw std::invalid_argument("transport: matrix not invertible");
  std::vector<Subspace> layers;
  for (int w = a.w_min(); w <= a.w_max() + 1; ++w) layers.push_back(a.layer(w).mapped(g));
  return FiltModule(C2Module(g * a.sigma() * *gi), a.w_min(), std::move(layers));
}

namespace {

// Multiplicities of the indecomposable summands read off from dimension counts.
// For the norm N = 1 + sigma, r(p, q) = dim(N(V_p) cap V_q) counts the E(l, m) with m >= p and
// m + l >= q; free parts of gr count E(0, m); trivial parts of gr the rest.
FormalSum summand_counts(const FiltModule& a) {
  std::vector<IndecLabel> out;
  if (a.is_zero()) return FormalSum();
  const int lo = a.w_min(), hi = a.w_max();
  const int span = hi - lo + 3;
  BitMatrix nrm = a.underlying().norm();
  std::vector<std::vector<long>> r(span, std::vector<long>(span, 0));
  auto idx = [&](int w) { return static_cast<std::size_t>(w - lo); };
  for (int p = lo; p <= hi + 2; ++p) {
    Subspace np = a.layer(p).mapped(nrm);
    for (int q = lo; q <= hi + 2; ++q) r[idx(p)][idx(q)] = static_cast<long>(np.intersect(a.layer(q)).dim());
  }
  std::map<int, long> ends;
  for (int m = lo; m <= hi; ++m) {
    for (int top = m; top <= hi; ++top) {
      long c = r[idx(m)][idx(top)] - r[idx(m + 1)][idx(top)] - r[idx(m)][idx(top + 1)] +
               r[idx(m + 1)][idx(top + 1)];
      if (c < 0) throw EngineError("negative summand count");
      for (long i = 0; i < c; ++i) out.push_back(IndecLabel::e(top - m, m));
      if (top > m) {
        ends[m] += c;
        ends[top] += c;
      }
    }
  }
  for (auto& [w, piece] : gr(a)) {
    long t = static_cast<long>(module_split(piece).trivial) - ends[w];
    if (t < 0) throw EngineError("negative summand count");
    for (long i = 0; i < t; ++i) out.push_back(IndecLabel::unit(w));
  }
  return FormalSum(std::move(out));
}

struct Peel {
  BitMatrix inclusion;   // label -> current module
  BitMatrix retraction;  // current module -> label, retraction * inclusion = id
};

std::optional<Peel> find_summand(const FiltModule& a, const IndecLabel& label) {
  FiltModule i = realize(label);
  auto fs = hom_basis(i, a);
  if (fs.empty()) return std::nullopt;
  auto rs = hom_basis(a, i);
  for (const auto& r : rs) {
    for (const auto& f : fs) {
      BitMatrix e = r * f;
      auto inv = inverse(e);
      if (!inv) continue;
      return Peel{f * *inv, r};
    }
  }
  return std::nullopt;
}

}  // namespace

Decomposition decompose(const FiltModule& a) {
  Decomposition out;
  if (a.is_zero()) {
    out.iso = BitMatrix(0, 0);
    return out;
  }
  FormalSum expected = summand_counts(a);
  if (expected.dim() != a.dim()) throw EngineError("summand counts do not add up to the dimension");

  FiltModule cur = a;
  BitMatrix embed = BitMatrix::identity(a.dim());  // cur -> a
  std::vector<BitMatrix> columns;
  for (const auto& label : expected.items()) {
    if (cur.is_zero()) throw EngineError("no summand found on nonzero module");
    auto p = find_summand(cur, label);
    if (!p) throw EngineError("no summand found on nonzero module");
    columns.push_back(embed * p->inclusion);
    BitMatrix kb = Subspace::kernel(p->retraction).basis_cols();
    FiltModule next = restrict_to(cur, kb);
    embed = embed * kb;
    cur = std::move(next);
  }
  if (!cur.is_zero()) throw EngineError("no summand found on nonzero module");
  BitMatrix iso(a.dim(), 0);
  for (const auto& c : columns) iso = hstack(iso, c);
  out.sum = expected;
  out.iso = std::move(iso);
  if (!verify_decomposition(out, a)) throw EngineError("decomposition certificate failed");
  return out;
}

bool verify_decomposition(const Decomposition& d, const FiltModule& a) {
  return is_filtered_iso(d.iso, realize(d.sum), a);
}

bool is_admissible(const BitMatrix& f, const BitMatrix& g, const FiltModule& a, const FiltModule& b,
                   const FiltModule& c) {
  if (f.rows() != b.dim() || f.cols() != a.dim() || g.rows() != c.dim() || g.cols() != b.dim()) {
    throw std::invalid_argument("is_admissible: composability mismatch");
  }
  if (!(g * f).is_zero()) return false;
  int lo = 0, hi = -1;
  bool first = true;
  for (const auto* m : {&a, &b, &c}) {
    if (m->is_zero()) continue;
    lo = first ? m->w_min() : std::min(lo, m->w_min());
    hi = first ? m->w_max() : std::max(hi, m->w_max());
    first = false;
  }
  for (int w = lo; w <= hi; ++w) {
    Subquotient qa = graded_piece(a, w), qb = graded_piece(b, w), qc = graded_piece(c, w);
    const std::size_t na = qa.dim(), nb = qb.dim(), nc = qc.dim();
    if (na + nc != nb) return false;
    if (nb == 0) continue;
    BitMatrix sa = qa.induced(a.sigma(), qa), sb = qb.induced(b.sigma(), qb),
              sc = qc.induced(c.sigma(), qc);
    BitMatrix fw = qa.induced(f, qb), gw = qb.induced(g, qc);
    LinearSystem sys;
    auto r = sys.add_unknown(na, nb);
    auto s = sys.add_unknown(nb, nc);
    if (na > 0) {
      sys.add_equation({{r, BitMatrix::identity(na), sb}, {r, sa, BitMatrix::identity(nb)}});
      sys.add_equation({{r, BitMatrix::identity(na), fw}}, BitMatrix::identity(na));
    }
    if (nc > 0) {
      sys.add_equation({{s, BitMatrix::identity(nb), sc}, {s, sb, BitMatrix::identity(nc)}});
      sys.add_equation({{s, gw, BitMatrix::identity(nc)}}, BitMatrix::identity(nc));
    }
    std::vector<LinearSystem::Term> split;
    if (na > 0) split.push_back({r, fw, BitMatrix::identity(nb)});
    if (nc > 0) split.push_back({s, BitMatrix::identity(nb), gw});
    sys.add_equation(split, BitMatrix::identity(nb));
    if (!sys.solve()) return false;
  }
  return true;
}

bool is_admissible(const FiltMorphism& f, const FiltMorphism& g) {
  if (f.target != g.source) throw std::invalid_argument("is_admissible: composability mismatch");
  return is_admissible(f.matrix, g.matrix, f.source, f.target, g.target);
}

bool is_projective(const FiltModule& a) {
  FormalSum s = decompose(a).sum;
  for (const auto& x : s.items()) {
    if (x.is_unit() || x.l > 1) return false;
  }
  return true;
}

}  // namespace ttgeo
