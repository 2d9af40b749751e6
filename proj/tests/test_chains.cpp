#include "doctest.h"
#include "helpers.hpp"

using namespace ttgeo;
using namespace ttgeo::testing;

namespace {

Complex obj(const IndecLabel& l, int deg = 0) { return Complex::object(realize(l), deg); }

// Nullhomotopy by trying every family of matrices h_n : X_n -> Y_{n+1}.
bool nullhomotopic_by_enumeration(const ChainMap& f) {
  const Complex& x = f.source();
  const Complex& y = f.target();
  struct Slot {
    int n;
    std::size_t r, c;
  };
  std::vector<Slot> slots;
  std::size_t bits = 0;
  for (int n = x.lo(); n <= x.hi(); ++n) {
    std::size_t r = y.dim(n + 1), c = x.dim(n);
    if (r && c) {
      slots.push_back({n, r, c});
      bits += r * c;
    }
  }
  REQUIRE(bits <= 20);
  for (std::size_t code = 0; code < (std::size_t{1} << bits); ++code) {
    std::map<int, BitMatrix> h;
    std::size_t k = 0;
    bool ok = true;
    for (const auto& s : slots) {
      BitMatrix m(s.r, s.c);
      for (std::size_t i = 0; i < s.r; ++i)
        for (std::size_t j = 0; j < s.c; ++j, ++k)
          if (code >> k & 1U) m.set(i, j);
      ok = ok && is_morphism(m, x.term(s.n), y.term(s.n + 1));
      h[s.n] = std::move(m);
    }
    if (!ok) continue;
    auto get = [&](int n) {
      auto it = h.find(n);
      return it == h.end() ? BitMatrix(y.dim(n + 1), x.dim(n)) : it->second;
    };
    for (int n = x.lo(); n <= x.hi() && ok; ++n)
      ok = y.d(n + 1) * get(n) + get(n - 1) * x.d(n) == f.at(n);
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("chains") {
  TEST_CASE("cone of an identity is contractible") {
    Complex u = unit_complex();
    CHECK(minimize(cone(ChainMap::identity(u))).min.is_zero());
    Rng rng(3);
    for (int t = 0; t < 10; ++t) {
      Complex x = random_filtered(rng);
      CHECK(is_contractible(cone(ChainMap::identity(x))));
    }
  }

  TEST_CASE("truncation triangle") {
    Rng rng(31);
    for (int t = 0; t < 20; ++t) {
      Complex x = random_filtered(rng, 4);
      for (int n = x.lo() - 1; n <= x.hi(); ++n) {
        Truncation tr = truncation_triangle(x, n);
        Complex c = cone(tr.delta);
        auto iso = iso_certificate(c, x);
        REQUIRE(iso);
        CHECK(is_degreewise_iso(*iso));
        CHECK(is_chain_map(tr.le, x, tr.to_x.components()));
        CHECK(is_chain_map(x, tr.ge, tr.from_x.components()));
      }
    }
  }

  TEST_CASE("unit laws and shapes") {
    CHECK(tensor_complex(fundpur(), unit_complex(CellKind::PlainC2)) == fundpur());
    CHECK(tensor_complex(unit_complex(), fund0()) == fund0());
    Complex m1 = invertpur_pow(-1);
    CHECK(m1.lo() == -1);
    CHECK(m1.hi() == 0);
    CHECK(decompose(m1.term(0)).sum == FormalSum{IndecLabel::e(0, 0)});
    CHECK(decompose(m1.term(-1)).sum == FormalSum{IndecLabel::unit(0)});
    CHECK(m1.d(0) == eps_matrix());
  }

  TEST_CASE("beta on cone beta is nullhomotopic") {
    Complex c = cone_beta();
    ChainMap b = beta_map(twist(c, -1));
    auto h = is_nullhomotopic(b);
    REQUIRE(h);
    CHECK(nullhomotopic_by_enumeration(b));
    CHECK_FALSE(is_nullhomotopic(unit_beta()));
  }

  TEST_CASE("identity of a minimal complex is not nullhomotopic") {
    for (Complex x : {fund0(), cone_beta(), koszul_T(), unit_complex()}) {
      CHECK(is_minimal(x));
      CHECK_FALSE(is_nullhomotopic(ChainMap::identity(x)));
    }
  }

  TEST_CASE("nullhomotopy agrees with enumeration") {
    Rng rng(37);
    int tried = 0;
    for (int t = 0; t < 200 && tried < 40; ++t) {
      Complex x = random_filtered(rng, 2, 2, 1, 0, 1);
      Complex y = random_filtered(rng, 2, 2, 1, 0, 1);
      auto basis = chain_map_basis(x, y);
      if (basis.empty()) continue;
      std::size_t bits = 0;
      for (int n = x.lo(); n <= x.hi(); ++n) bits += y.dim(n + 1) * x.dim(n);
      if (bits > 16) continue;
      ++tried;
      ChainMap f = basis[rng() % basis.size()];
      for (const auto& g : basis)
        if (rng() & 1U) f = f + g;
      CHECK(is_nullhomotopic(f).has_value() == nullhomotopic_by_enumeration(f));
    }
    CHECK(tried >= 20);
  }

  TEST_CASE("epstilde is tensor nilpotent on fundpur") {
    Complex m = fundpur();
    ChainMap f = tensor(eps_tilde(), ChainMap::identity(m));
    int found = 0;
    for (int l = 1; l <= m.width() + 1; ++l) {
      if (is_nullhomotopic(f)) {
        found = l;
        break;
      }
      f = tensor(eps_tilde(), f);
    }
    CHECK(found >= 1);
  }

  TEST_CASE("minimize") {
    Minimized m = minimize(tensor_complex(invertpur_pow(1), invertpur_pow(-1)));
    CHECK(m.min == unit_complex(CellKind::PlainC2));
    CHECK(minimize(gr_complex(fundl(1))).min.is_zero());
    CHECK(signature_str(minimize(fund0()).signature) == "d2: 1(0); d1: E(0,0); d0: 1(0)");
  }

  TEST_CASE("minimize produces a homotopy equivalence") {
    Rng rng(41);
    for (int t = 0; t < 40; ++t) {
      Complex x = random_filtered(rng, 3, 3);
      Minimized m = minimize(x);
      CHECK(is_minimal(m.min));
      CHECK(is_chain_map(m.min, x, m.i.components()));
      CHECK(is_chain_map(x, m.min, m.p.components()));
      ChainMap pi = compose(m.p, m.i);
      CHECK(is_nullhomotopic(pi + ChainMap::identity(m.min)));
      ChainMap ip = compose(m.i, m.p);
      CHECK(is_nullhomotopic(ip + ChainMap::identity(x)));
      CHECK(m.signature == signature(m.min));
    }
  }

  TEST_CASE("minimal forms are stable under basis changes") {
    Rng rng(43);
    for (int t = 0; t < 30; ++t) {
      Complex x = random_filtered(rng, 3, 3);
      Complex y = tensor_complex(x, unit_complex());
      auto a = minimize(x), b = minimize(direct_sum(y, cone(ChainMap::identity(x))));
      CHECK(a.signature == b.signature);
      CHECK(iso_certificate(a.min, b.min).has_value());
    }
  }

  TEST_CASE("contractible and zero in the derived category") {
    CHECK(is_contractible(Complex()));
    CHECK_FALSE(is_zero_DE(fund0()));
    CHECK(is_zero_DE(fundl(1)));
    CHECK(is_zero_DE(fundl(3)));
  }

  TEST_CASE("named objects") {
    CHECK(equivalent(cone(rho_map()), cone_rho()));
    CHECK(cone_rho() == obj(IndecLabel::e(1, 0), 1));
    for (int l = 0; l <= 3; ++l) CHECK(fgt_complex(fundl(l)) == fundpur());
    CHECK(is_chain_map(rho_map().source(), rho_map().target(), rho_map().components()));
    CHECK(is_chain_map(beta_rho().source(), beta_rho().target(), beta_rho().components()));
    CHECK(equivalent(cone(iota0()), cone(iota0())));
  }

  TEST_CASE("dual and shift laws") {
    Rng rng(47);
    for (int t = 0; t < 20; ++t) {
      Complex x = random_filtered(rng);
      CHECK(signature(minimize(dual_complex(dual_complex(x))).min) == minimize(x).signature);
      int k = uniform(rng, -2, 2);
      CHECK(shift(shift(x, k), -k) == x);
      Complex y = random_filtered(rng, 2, 2);
      CHECK(minimize(tensor_complex(x, y)).signature == minimize(tensor_complex(y, x)).signature);
    }
  }

  TEST_CASE("iso certificates") {
    Rng rng(53);
    for (int t = 0; t < 20; ++t) {
      Complex x = minimize(random_filtered(rng, 3, 3)).min;
      std::vector<FiltModule> terms;
      std::vector<BitMatrix> diffs;
      std::map<int, BitMatrix> g;
      for (int n = x.lo(); n <= x.hi(); ++n) {
        g[n] = x.dim(n) ? random_invertible(rng, x.dim(n)) : BitMatrix();
        terms.push_back(x.dim(n) ? transport(x.term(n), g[n]) : x.term(n));
      }
      for (int n = x.lo() + 1; n <= x.hi(); ++n) {
        if (x.dim(n) && x.dim(n - 1)) diffs.push_back(g[n - 1] * x.d(n) * *inverse(g[n]));
        else diffs.push_back(BitMatrix(x.dim(n - 1), x.dim(n)));
      }
      Complex y(CellKind::Filtered, x.lo(), terms, diffs);
      auto c = iso_certificate(x, y, static_cast<unsigned>(t));
      REQUIRE(c);
      CHECK(is_degreewise_iso(*c));
    }
  }
}
