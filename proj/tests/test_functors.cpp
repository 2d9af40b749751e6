#include "doctest.h"
#include "helpers.hpp"

using namespace ttgeo;
using namespace ttgeo::testing;

namespace {

Complex obj(const IndecLabel& l, int deg = 0) { return Complex::object(realize(l), deg); }
Complex plain_k(int deg = 0) { return trivial_line(CellKind::PlainC2, deg); }
Complex plain_kc2(int deg = 0) { return free_line(CellKind::PlainC2, deg); }

}  // namespace

TEST_SUITE("functors") {
  TEST_CASE("gr") {
    CHECK(gr_complex(fund0()) == fundpur());
    Complex g = gr_complex(obj(IndecLabel::e(1, 0)));
    CHECK(g.lo() == 0);
    CHECK(g.hi() == 0);
    CHECK(module_split(g.term(0).underlying()) == ModuleSplit{2, 0});
    Rng rng(61);
    for (int t = 0; t < 20; ++t) {
      Complex y = random_plain(rng);
      CHECK(gr_complex(pwz(y)) == y);
    }
  }

  TEST_CASE("fgt and homology") {
    CHECK(fgt_complex(fund0()) == fundpur());
    CHECK(homology(fundpur()).empty());
    auto h = homology(plain_kc2());
    REQUIRE(h.size() == 1);
    CHECK(h[0] == ModuleSplit{0, 1});
  }

  TEST_CASE("restriction and stable functors") {
    CHECK(is_exact_F2(res_complex(fundpur())));
    CHECK_FALSE(is_exact_F2(res_complex(plain_k())));
    CHECK(is_exact_F2(Complex(CellKind::PlainF2)));
    CHECK(sta_complex(plain_kc2()).is_zero());
    Complex s = sta_complex(plain_k());
    CHECK(s.total_dim() == 1);
    Complex sf = sta_complex(fundpur());
    // the free middle term is stably zero
    CHECK(sf.total_dim() == 2);
    CHECK(sf.dim(2) == 1);
    CHECK(sf.dim(1) == 0);
    CHECK(sf.dim(0) == 1);
    CHECK_FALSE(is_exact_F2(sf));
  }

  TEST_CASE("tate dimension") {
    CHECK(tate_dim(plain_k()) == 1);
    CHECK(tate_dim(plain_kc2()) == 0);
    CHECK(tate_dim(fundpur()) == 0);
  }

  TEST_CASE("pure weight zero") {
    CHECK(pwz(fundpur()) == fund0());
    CHECK(pwz(Complex(CellKind::PlainC2)).is_zero());
  }

  TEST_CASE("rwz") {
    CHECK(equivalent(rwz(unit_complex()), plain_k()));
    CHECK(rwz(obj(IndecLabel::unit(-1))).is_zero());
    for (int l = 1; l <= 3; ++l) {
      Complex expect = direct_sum(plain_kc2(), shift(fundpur_power(l - 1), -l));
      CHECK(equivalent(rwz(obj(IndecLabel::e(l, 0))), expect));
    }
  }

  TEST_CASE("tfgt values") {
    for (int n = -3; n <= 3; ++n) CHECK(equivalent(tfgt(obj(IndecLabel::unit(n))), invertpur_pow(-n)));
    CHECK(equivalent(tfgt(cone_beta()), shift(fundpur(), -1)));
    CHECK(equivalent(tfgt(fund0()), fundpur()));
  }

  TEST_CASE("tfgt inverts pwz") {
    Rng rng(67);
    for (int t = 0; t < 15; ++t) {
      Complex y = random_plain(rng);
      CHECK(equivalent(tfgt(pwz(y)), y));
    }
  }

  TEST_CASE("hom in the derived category") {
    GradedDims h = hom_DE(unit_complex(), unit_complex());
    CHECK(h == GradedDims{{0, 1}});
    CHECK(hom_DE(unit_complex(), obj(IndecLabel::unit(1))) == GradedDims{{0, 1}, {1, 1}});
    GradedDims h3 = hom_DE(unit_complex(), obj(IndecLabel::unit(3)));
    CHECK(h3 == GradedDims{{0, 1}, {1, 1}, {2, 1}, {3, 1}});
    CHECK(hom_DE(unit_complex(), obj(IndecLabel::unit(-1))).empty());
  }

  TEST_CASE("hom is invariant under resolution by admissible sequences") {
    // fund_1 is zero in the derived category, so all its homs vanish
    for (int m = 0; m <= 2; ++m) CHECK(hom_DE(unit_complex(), twist(fundl(1), m)).empty());
    // rho_resolution is a quasi-isomorphism R -> 1
    Complex r = rho_resolution().source();
    for (int m = 0; m <= 2; ++m)
      CHECK(hom_DE(r, obj(IndecLabel::unit(m))) == hom_DE(unit_complex(), obj(IndecLabel::unit(m))));
  }
}
