#include "ttgeo/named.hpp"

#include <algorithm>
#include <stdexcept>

namespace ttgeo {

namespace {

FiltModule k_mod(int w = 0) { return realize(IndecLabel::unit(w)); }
FiltModule kc2_mod(int w = 0) { return realize(IndecLabel::e(0, w)); }

// Terms listed from the top degree down to `bottom`; diffs[i] leaves terms[i].
Complex descending(CellKind kind, int bottom, std::vector<FiltModule> terms,
                   std::vector<BitMatrix> diffs) {
  std::reverse(terms.begin(), terms.end());
  std::reverse(diffs.begin(), diffs.end());
  return Complex(kind, bottom, std::move(terms), std::move(diffs));
}

BitMatrix norm_matrix() { return BitMatrix::from_rows({{1, 1}, {1, 1}}); }

ChainMap single(const Complex& x, const Complex& y, int n, BitMatrix m) {
  return ChainMap(x, y, {{n, std::move(m)}});
}

}  // namespace

BitMatrix eta_matrix() { return BitMatrix::from_rows({{1}, {1}}); }
BitMatrix eps_matrix() { return BitMatrix::from_rows({{1, 1}}); }

Complex unit_complex(CellKind kind) { return trivial_line(kind, 0); }

Complex trivial_line(CellKind kind, int degree) {
  if (kind == CellKind::PlainF2) return Complex::object(FiltModule::pure(C2Module::trivial(1)), degree, kind);
  return Complex::object(k_mod(), degree, kind);
}

Complex free_line(CellKind kind, int degree) {
  if (kind == CellKind::PlainF2) throw std::invalid_argument("free_line needs a sigma action");
  return Complex::object(kc2_mod(), degree, kind);
}

Complex fundpur() { return fundpur_power(1); }

Complex fund0() { return with_kind(fundpur(), CellKind::Filtered); }

Complex fundl(int l) {
  if (l < 0) throw std::invalid_argument("fundl needs l >= 0");
  return descending(CellKind::Filtered, 0, {k_mod(l), realize(IndecLabel::e(l, 0)), k_mod(0)},
                    {eta_matrix(), eps_matrix()});
}

Complex fundpur_power(int m) {
  if (m < 0) throw std::invalid_argument("fundpur_power needs m >= 0");
  if (m == 0) return Complex(CellKind::PlainC2);
  std::vector<FiltModule> t{k_mod()};
  std::vector<BitMatrix> d{eta_matrix()};
  for (int i = 0; i < m; ++i) {
    t.push_back(kc2_mod());
    d.push_back(i + 1 < m ? norm_matrix() : eps_matrix());
  }
  t.push_back(k_mod());
  return descending(CellKind::PlainC2, 0, std::move(t), std::move(d));
}

Complex invertpur_pow(int n) {
  if (n == 0) return unit_complex(CellKind::PlainC2);
  std::vector<FiltModule> t;
  std::vector<BitMatrix> d;
  const int c = n > 0 ? n : -n;
  if (n > 0) {
    t.push_back(k_mod());
    d.push_back(eta_matrix());
    for (int i = 0; i < c; ++i) {
      t.push_back(kc2_mod());
      if (i + 1 < c) d.push_back(norm_matrix());
    }
    return descending(CellKind::PlainC2, 0, std::move(t), std::move(d));
  }
  for (int i = 0; i < c; ++i) {
    t.push_back(kc2_mod());
    d.push_back(i + 1 < c ? norm_matrix() : eps_matrix());
  }
  t.push_back(k_mod());
  return descending(CellKind::PlainC2, n, std::move(t), std::move(d));
}

Complex injres_trunc(int j) {
  if (j <= 0) return Complex(CellKind::Filtered);
  std::vector<FiltModule> t;
  std::vector<BitMatrix> d;
  for (int i = 1; i <= j; ++i) {
    t.push_back(realize(IndecLabel::e(1, -i)));
    if (i < j) d.push_back(norm_matrix());
  }
  return descending(CellKind::Filtered, -j + 1, std::move(t), std::move(d));
}

Complex koszul_T() {
  return descending(CellKind::Filtered, 0, {realize(IndecLabel::e(1, 0)), realize(IndecLabel::e(1, 1))},
                    {BitMatrix::identity(2)});
}

Complex cone_beta() { return cone(unit_beta()); }

Complex cone_rho() { return Complex::object(realize(IndecLabel::e(1, 0)), 1); }

Complex cone_omega() { return cone(iota1()); }

ChainMap unit_beta() {
  Complex one = unit_complex();
  return beta_map(one);
}

ChainMap eps_tilde() {
  return single(invertpur_pow(1), unit_complex(CellKind::PlainC2), 0, eps_matrix());
}

ChainMap eta_tilde() {
  return single(unit_complex(CellKind::PlainC2), invertpur_pow(-1), 0, eta_matrix());
}

ChainMap upsilon() {
  return single(unit_complex(CellKind::PlainC2), shift(invertpur_pow(-1), 1), 0,
                BitMatrix::identity(1));
}

ChainMap iota0() {
  return single(Complex::object(realize(IndecLabel::e(0, 0))),
                Complex::object(realize(IndecLabel::e(1, 0))), 0, BitMatrix::identity(2));
}

ChainMap iota1() {
  return single(Complex::object(realize(IndecLabel::e(1, 0))),
                Complex::object(realize(IndecLabel::e(0, 1))), 0, BitMatrix::identity(2));
}

namespace {

Complex rho_source() {
  return descending(CellKind::Filtered, 0, {k_mod(1), realize(IndecLabel::e(1, 0))}, {eta_matrix()});
}

}  // namespace

ChainMap rho_map() {
  return single(rho_source(), Complex::object(k_mod(1), 1), 1, BitMatrix::identity(1));
}

ChainMap rho_resolution() {
  return single(rho_source(), unit_complex(), 0, eps_matrix());
}

ChainMap beta_rho() {
  ChainMap b = shift(beta_map(Complex::object(k_mod(1))), 1);
  return compose(b, rho_map());
}

Complex koszul_cone(const std::string& point) {
  if (point == "Ls") return with_kind(cone(upsilon()), CellKind::Filtered);
  if (point == "Ns") return with_kind(cone(eta_tilde()), CellKind::Filtered);
  if (point == "L") return cone(rho_map());
  if (point == "N") return cone_beta();
  if (point == "M") return cone(beta_rho());
  if (point == "Ms") {
    ChainMap u = upsilon();
    ChainMap e = shift(tensor(eta_tilde(), ChainMap::identity(invertpur_pow(-1))), 1);
    // eta_tilde tensor id has source 1 tensor L^{-1}, which is L^{-1} with the same bases.
    ChainMap e2(u.target(), e.target(), e.components());
    return with_kind(cone(compose(e2, u)), CellKind::Filtered);
  }
  throw std::invalid_argument("unknown prime: " + point);
}

}  // namespace ttgeo
