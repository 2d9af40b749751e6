#ifndef TTGEO_FILTMOD_HPP_
#define TTGEO_FILTMOD_HPP_

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ttgeo/gf2.hpp"

namespace ttgeo {

// Raised when an internal consistency check fails.
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndecLabel {
  enum class Kind { Unit = 0, E = 1 };
  Kind kind = Kind::Unit;
  int l = 0;  // E only
  int m = 0;  // weight n for Unit, base weight m for E

  static IndecLabel unit(int n) { return {Kind::Unit, 0, n}; }
  static IndecLabel e(int l, int m);

  bool is_unit() const { return kind == Kind::Unit; }
  std::size_t dim() const { return is_unit() ? 1 : 2; }
  int min_weight() const { return m; }
  int max_weight() const { return is_unit() ? m : m + l; }
  std::string str() const;

  auto operator<=>(const IndecLabel&) const = default;
};

class FormalSum {
 public:
  FormalSum() = default;
  explicit FormalSum(std::vector<IndecLabel> items);
  FormalSum(std::initializer_list<IndecLabel> items) : FormalSum(std::vector<IndecLabel>(items)) {}

  const std::vector<IndecLabel>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t dim() const;
  void add(const IndecLabel& x);
  FormalSum& operator+=(const FormalSum& o);
  friend FormalSum operator+(FormalSum a, const FormalSum& b) { return a += b; }
  bool operator==(const FormalSum& o) const { return items_ == o.items_; }
  bool operator!=(const FormalSum& o) const { return !(*this == o); }
  bool operator<(const FormalSum& o) const { return items_ < o.items_; }
  // "0", "1(2)", "E(1,0) + E(1,2)"
  std::string str() const;

 private:
  std::vector<IndecLabel> items_;
};

// A finite-dimensional kC2-module with a finite decreasing filtration by
// sigma-stable subspaces V_w. V_w is everything for w <= w_min and zero for
// w > w_max; the range is kept tight.
class FiltModule {
 public:
  FiltModule() : layers_{Subspace(0)} {}
  // layers[i] = V_{w_lo + i}; everything below w_lo, zero past the last entry.
  FiltModule(C2Module u, int w_lo, std::vector<Subspace> layers);
  static FiltModule pure(C2Module u, int w = 0);
  static FiltModule zero() { return FiltModule(); }

  const C2Module& underlying() const { return u_; }
  const BitMatrix& sigma() const { return u_.sigma(); }
  std::size_t dim() const { return u_.dim(); }
  bool is_zero() const { return dim() == 0; }
  int w_min() const { return w_min_; }
  int w_max() const { return w_max_; }
  Subspace layer(int w) const;

  bool operator==(const FiltModule& o) const {
    return u_ == o.u_ && w_min_ == o.w_min_ && w_max_ == o.w_max_ && layers_ == o.layers_;
  }
  bool operator!=(const FiltModule& o) const { return !(*this == o); }

 private:
  C2Module u_;
  int w_min_ = 0;
  int w_max_ = -1;
  std::vector<Subspace> layers_;  // V_{w_min} .. V_{w_max + 1}
};

struct FiltMorphism {
  FiltModule source;
  FiltModule target;
  BitMatrix matrix;
};

FiltModule realize(const IndecLabel& label);
FiltModule realize(const FormalSum& sum);
FiltModule direct_sum(const FiltModule& a, const FiltModule& b);
FiltModule direct_sum(const std::vector<FiltModule>& parts);

bool is_morphism(const BitMatrix& m, const FiltModule& a, const FiltModule& b);
// Adds the equations "X is sigma-linear and filtration preserving" for an unknown X: a -> b.
void add_morphism_constraints(LinearSystem& sys, std::size_t unknown, const FiltModule& a,
                              const FiltModule& b);
std::vector<BitMatrix> hom_basis(const FiltModule& a, const FiltModule& b);
std::vector<FiltMorphism> hom_morphisms(const FiltModule& a, const FiltModule& b);
// Invertible morphism whose inverse is again a morphism.
bool is_filtered_iso(const BitMatrix& m, const FiltModule& a, const FiltModule& b);

FiltModule tensor(const FiltModule& a, const FiltModule& b);
FiltModule dual(const FiltModule& a);
FiltModule twist(const FiltModule& a, int r);
FiltMorphism beta_map(const FiltModule& a);

std::vector<std::pair<int, C2Module>> gr(const FiltModule& a);
Subquotient graded_piece(const FiltModule& a, int w);
C2Module fgt(const FiltModule& a);
C2Module weight_part(const FiltModule& a, int m);
FiltModule weight_ge(const FiltModule& a, int m);
bool is_effective(const FiltModule& a);

// Submodule spanned by the columns of b (assumed sigma-stable), with induced filtration.
FiltModule restrict_to(const FiltModule& a, const BitMatrix& b);
// The module transported along an invertible basis change g: g is an iso a -> result.
FiltModule transport(const FiltModule& a, const BitMatrix& g);

struct Decomposition {
  FormalSum sum;
  BitMatrix iso;  // realize(sum) -> a
};

Decomposition decompose(const FiltModule& a);
bool verify_decomposition(const Decomposition& d, const FiltModule& a);

bool is_admissible(const BitMatrix& f, const BitMatrix& g, const FiltModule& a, const FiltModule& b,
                   const FiltModule& c);
bool is_admissible(const FiltMorphism& f, const FiltMorphism& g);
bool is_projective(const FiltModule& a);

}  // namespace ttgeo

#endif  // TTGEO_FILTMOD_HPP_
