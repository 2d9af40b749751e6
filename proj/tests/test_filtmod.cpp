#include "doctest.h"
#include "helpers.hpp"

using namespace ttgeo;
using namespace ttgeo::testing;

namespace {

FiltModule E(int l, int m) { return realize(IndecLabel::e(l, m)); }
FiltModule U(int n) { return realize(IndecLabel::unit(n)); }

std::map<int, std::size_t> gr_dims(const FiltModule& a) {
  std::map<int, std::size_t> d;
  for (const auto& [w, m] : gr(a))
    if (m.dim()) d[w] = m.dim();
  return d;
}

}  // namespace

TEST_SUITE("filtmod") {
  TEST_CASE("realize") {
    FiltModule u = U(0);
    CHECK(u.dim() == 1);
    CHECK(u.w_min() == 0);
    CHECK(u.w_max() == 0);
    FiltModule e0 = E(0, 3);
    CHECK(e0.w_min() == 3);
    CHECK(e0.w_max() == 3);
    CHECK(e0.sigma() == C2Module::regular().sigma());
    FiltModule e2 = E(2, 0);
    CHECK(e2.layer(-5).is_whole());
    CHECK(e2.layer(0).is_whole());
    Subspace fixed = Subspace::span(BitMatrix::from_rows({{1, 1}}));
    CHECK(e2.layer(1) == fixed);
    CHECK(e2.layer(2) == fixed);
    CHECK(e2.layer(3).is_zero());
  }

  TEST_CASE("label rendering") {
    CHECK(IndecLabel::unit(-2).str() == "1(-2)");
    CHECK(IndecLabel::e(1, 2).str() == "E(1,2)");
    CHECK(FormalSum{IndecLabel::e(1, 2), IndecLabel::unit(0)}.str() == "1(0) + E(1,2)");
    CHECK(FormalSum{}.str() == "0");
  }

  TEST_CASE("hom dimensions") {
    CHECK(hom_basis(E(1, 0), E(1, 0)).size() == 2);
    CHECK(hom_basis(U(0), U(1)).size() == 1);
    CHECK(hom_basis(U(1), U(0)).empty());
    auto b = beta_map(U(0));
    CHECK(b.matrix == hom_basis(U(0), U(1)).front());
  }

  TEST_CASE("hom dimensions agree with enumeration") {
    Rng rng(21);
    for (int t = 0; t < 60; ++t) {
      FiltModule a = realize(random_sum(rng, 2, 2, -1, 1));
      FiltModule b = realize(random_sum(rng, 2, 2, -1, 1));
      if (a.dim() * b.dim() > 16) continue;
      CHECK(hom_basis(a, b).size() == hom_dim_by_enumeration(a, b));
    }
  }

  TEST_CASE("tensor examples") {
    CHECK(decompose(tensor(U(2), U(-5))).sum == FormalSum{IndecLabel::unit(-3)});
    CHECK(decompose(tensor(E(1, 0), E(2, 0))).sum == FormalSum{IndecLabel::e(1, 0), IndecLabel::e(1, 2)});
    CHECK(decompose(tensor(E(0, 0), E(0, 0))).sum == FormalSum{IndecLabel::e(0, 0), IndecLabel::e(0, 0)});
  }

  TEST_CASE("tensor matches the closed formula") {
    Rng rng(4);
    for (int t = 0; t < 80; ++t) {
      IndecLabel a = random_label(rng, 4, -3, 3), b = random_label(rng, 4, -3, 3);
      Decomposition d = decompose(tensor(realize(a), realize(b)));
      CHECK(d.sum == tensor_formula(a, b));
      CHECK(verify_decomposition(d, tensor(realize(a), realize(b))));
    }
  }

  TEST_CASE("dual") {
    CHECK(decompose(dual(U(4))).sum == FormalSum{IndecLabel::unit(-4)});
    CHECK(decompose(dual(E(3, 1))).sum == FormalSum{IndecLabel::e(3, -4)});
    for (int l = 0; l <= 4; ++l)
      for (int m = -2; m <= 2; ++m)
        CHECK(decompose(dual(E(l, m))).sum == FormalSum{dual_formula(IndecLabel::e(l, m))});
    FiltModule a = realize(FormalSum{IndecLabel::e(2, 1), IndecLabel::unit(3)});
    auto g = gr_dims(a), gd = gr_dims(dual(a));
    for (auto [w, d] : g) CHECK(gd[-w] == d);
  }

  TEST_CASE("twist and beta") {
    CHECK(twist(U(0), 1) == U(1));
    Rng rng(9);
    for (int t = 0; t < 20; ++t) {
      FiltModule a = realize(random_sum(rng, 3, 3, -2, 2));
      int r = uniform(rng, -3, 3);
      CHECK(twist(twist(a, r), -r) == a);
      FiltMorphism b = beta_map(a);
      CHECK(is_morphism(b.matrix, a, twist(a, 1)));
    }
  }

  TEST_CASE("graded pieces and weight parts") {
    auto g = gr(E(1, 0));
    std::size_t total = 0;
    for (const auto& [w, m] : g) {
      if (!m.dim()) continue;
      CHECK((w == 0 || w == 1));
      CHECK(module_split(m) == ModuleSplit{1, 0});
      total += m.dim();
    }
    CHECK(total == 2);
    for (const auto& [w, m] : gr(E(0, 2)))
      if (m.dim()) {
        CHECK(w == 2);
        CHECK(module_split(m) == ModuleSplit{0, 1});
      }
    for (int m = -3; m <= 2; ++m) {
      ModuleSplit s = module_split(weight_part(twist(E(1, 0), m), 0));
      if (m >= 0) CHECK(s == ModuleSplit{0, 1});
      else if (m == -1) CHECK(s == ModuleSplit{1, 0});
      else CHECK(s == ModuleSplit{0, 0});
    }
    CHECK(is_effective(E(2, 0)));
    CHECK_FALSE(is_effective(U(-1)));
    CHECK(weight_ge(E(2, 0), 1).dim() == 1);
  }

  TEST_CASE("gr is multiplicative, fgt is a tensor functor") {
    Rng rng(13);
    for (int t = 0; t < 30; ++t) {
      FiltModule a = realize(random_sum(rng, 2, 3, -2, 2));
      FiltModule b = realize(random_sum(rng, 2, 3, -2, 2));
      auto ga = gr_dims(a), gb = gr_dims(b), gab = gr_dims(tensor(a, b));
      std::map<int, std::size_t> expect;
      for (auto [p, x] : ga)
        for (auto [q, y] : gb) expect[p + q] += x * y;
      CHECK(gab == expect);
      CHECK(fgt(tensor(a, b)).dim() == fgt(a).dim() * fgt(b).dim());
    }
  }

  TEST_CASE("decompose round trips and is additive") {
    Rng rng(17);
    for (int t = 0; t < 40; ++t) {
      FormalSum s = random_sum(rng, 4, 3, -2, 2);
      CHECK(decompose(realize(s)).sum == s);
      FormalSum r = random_sum(rng, 3, 3, -2, 2);
      CHECK(decompose(direct_sum(realize(s), realize(r))).sum == s + r);
    }
    FiltModule x = direct_sum(E(2, 0), U(1));
    Rng g(1);
    FiltModule y = transport(x, random_invertible(g, x.dim()));
    Decomposition d = decompose(y);
    CHECK(d.sum == FormalSum{IndecLabel::e(2, 0), IndecLabel::unit(1)});
    CHECK(verify_decomposition(d, y));
  }

  TEST_CASE("duality laws") {
    Rng rng(19);
    for (int t = 0; t < 30; ++t) {
      FiltModule a = realize(random_sum(rng, 2, 2, -2, 2));
      FiltModule b = realize(random_sum(rng, 2, 2, -2, 2));
      CHECK(decompose(dual(dual(a))).sum == decompose(a).sum);
      CHECK(hom_basis(a, b).size() == hom_basis(dual(b), dual(a)).size());
    }
  }

  TEST_CASE("admissible sequences") {
    CHECK(is_admissible(eta_matrix(), eps_matrix(), U(1), E(1, 0), U(0)));
    CHECK_FALSE(is_admissible(eta_matrix(), eps_matrix(), U(0), E(0, 0), U(0)));
    FiltModule a = E(2, 0), c = U(1);
    FiltModule ac = direct_sum(a, c);
    BitMatrix inc(3, 2), proj(1, 3);
    inc.set(0, 0);
    inc.set(1, 1);
    proj.set(0, 2);
    CHECK(is_admissible(inc, proj, a, ac, c));
    // flatness: tensoring the fundamental sequence with a module keeps it admissible
    Rng rng(23);
    for (int t = 0; t < 10; ++t) {
      FiltModule m = realize(random_sum(rng, 2, 2, -1, 1));
      if (m.dim() == 0) continue;
      BitMatrix id = BitMatrix::identity(m.dim());
      CHECK(is_admissible(kron(eta_matrix(), id), kron(eps_matrix(), id), tensor(U(1), m),
                          tensor(E(1, 0), m), tensor(U(0), m)));
    }
  }

  TEST_CASE("projectives") {
    CHECK(is_projective(E(1, 5)));
    CHECK(is_projective(E(0, -2)));
    CHECK_FALSE(is_projective(U(3)));
    CHECK_FALSE(is_projective(E(2, 0)));
  }

  TEST_CASE("invalid filtrations are rejected") {
    // a line that is not sigma-stable
    Subspace line = Subspace::span(BitMatrix::from_rows({{1, 0}}));
    CHECK_THROWS_AS(FiltModule(C2Module::regular(), 0, {Subspace::whole(2), line}), std::invalid_argument);
    // increasing layers
    Subspace fixed = Subspace::span(BitMatrix::from_rows({{1, 1}}));
    CHECK_THROWS_AS(FiltModule(C2Module::regular(), 0, {fixed, Subspace::whole(2)}), std::invalid_argument);
  }
}
