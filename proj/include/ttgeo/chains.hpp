#ifndef TTGEO_CHAINS_HPP_
#define TTGEO_CHAINS_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ttgeo/filtmod.hpp"

namespace ttgeo {

// Filtered cells, plain kC2-modules (pure weight 0), or plain vector spaces (sigma = 1).
enum class CellKind { Filtered, PlainC2, PlainF2 };

std::string kind_name(CellKind k);

// Bounded complex, homological indexing: d_n : X_n -> X_{n-1}.
class Complex {
 public:
  Complex() = default;
  explicit Complex(CellKind kind) : kind_(kind) {}
  // terms[i] sits in degree lo + i; diffs[i] = d_{lo+i+1} : terms[i+1] -> terms[i].
  Complex(CellKind kind, int lo, std::vector<FiltModule> terms, std::vector<BitMatrix> diffs,
          bool check = true);
  // A single module in one degree.
  static Complex object(const FiltModule& m, int degree = 0, CellKind kind = CellKind::Filtered);

  CellKind kind() const { return kind_; }
  bool is_zero() const { return terms_.empty(); }
  // Degree range of nonzero terms; lo() > hi() when zero.
  int lo() const { return lo_; }
  int hi() const { return lo_ + static_cast<int>(terms_.size()) - 1; }
  int width() const { return is_zero() ? 0 : hi() - lo(); }
  const FiltModule& term(int n) const;
  std::size_t dim(int n) const { return term(n).dim(); }
  std::size_t total_dim() const;
  // d_n : X_n -> X_{n-1}, zero matrix of the right shape outside the range.
  BitMatrix d(int n) const;
  // Smallest and largest weight occurring in any term (0, -1 if all terms are zero).
  std::pair<int, int> weight_range() const;

  bool operator==(const Complex& o) const {
    return kind_ == o.kind_ && lo_ == o.lo_ && terms_ == o.terms_ && diffs_ == o.diffs_;
  }
  bool operator!=(const Complex& o) const { return !(*this == o); }

 private:
  void trim();

  CellKind kind_ = CellKind::Filtered;
  int lo_ = 0;
  std::vector<FiltModule> terms_;
  std::vector<BitMatrix> diffs_;
};

class ChainMap {
 public:
  ChainMap() = default;
  ChainMap(Complex source, Complex target, std::map<int, BitMatrix> comps, bool check = true);
  static ChainMap identity(const Complex& x);
  static ChainMap zero(const Complex& x, const Complex& y);

  const Complex& source() const { return src_; }
  const Complex& target() const { return tgt_; }
  // Component X_n -> Y_n (zero of the right shape where not stored).
  BitMatrix at(int n) const;
  const std::map<int, BitMatrix>& components() const { return comps_; }
  bool is_zero() const;

 private:
  Complex src_;
  Complex tgt_;
  std::map<int, BitMatrix> comps_;
};

// h_n : X_n -> Y_{n+1}
struct Homotopy {
  std::map<int, BitMatrix> h;
};

CellKind common_kind(const Complex& x, const Complex& y);

Complex shift(const Complex& x, int k);
Complex twist(const Complex& x, int r);
Complex direct_sum(const Complex& x, const Complex& y);
Complex direct_sum(const std::vector<Complex>& xs);
Complex cone(const ChainMap& f);
Complex dual_complex(const Complex& x);
Complex tensor_complex(const Complex& x, const Complex& y);
// Change of cell kind without touching the data (plain cells are pure weight 0).
Complex with_kind(const Complex& x, CellKind k);

ChainMap shift(const ChainMap& f, int k);
ChainMap twist(const ChainMap& f, int r);
ChainMap compose(const ChainMap& g, const ChainMap& f);
ChainMap operator+(const ChainMap& f, const ChainMap& g);
ChainMap direct_sum(const ChainMap& f, const ChainMap& g);
ChainMap tensor(const ChainMap& f, const ChainMap& g);
ChainMap dual(const ChainMap& f);
ChainMap beta_map(const Complex& x);
// Y -> cone(f) and cone(f) -> X[1].
ChainMap cone_inclusion(const ChainMap& f);
ChainMap cone_projection(const ChainMap& f);

struct Truncation {
  Complex ge;       // x_{>= n+1}
  Complex le;       // x_{<= n}
  ChainMap delta;   // x_{>= n+1}[-1] -> x_{<= n}
  ChainMap to_x;    // x_{<= n} -> x
  ChainMap from_x;  // x -> x_{>= n+1}
};
Complex truncate_ge(const Complex& x, int n);
Complex truncate_le(const Complex& x, int n);
Truncation truncation_triangle(const Complex& x, int n);

std::optional<Homotopy> is_nullhomotopic(const ChainMap& f);
bool is_chain_map(const Complex& x, const Complex& y, const std::map<int, BitMatrix>& comps);

struct Minimized {
  Complex min;
  ChainMap i;  // min -> x
  ChainMap p;  // x -> min
  std::map<int, FormalSum> signature;
};

Minimized minimize(const Complex& x);
std::map<int, FormalSum> signature(const Complex& x);
std::string signature_str(const std::map<int, FormalSum>& sig);
// True if no differential entry is an isomorphism between matching indecomposable summands.
bool is_minimal(const Complex& x);
bool is_contractible(const Complex& x);

// A chain map x -> y that is a filtered isomorphism in every degree, if one is found.
std::optional<ChainMap> iso_certificate(const Complex& x, const Complex& y, unsigned seed = 1);
bool is_degreewise_iso(const ChainMap& f);
// Minimal forms of x and y with equal signatures and an iso certificate between them.
std::optional<ChainMap> equivalence_certificate(const Complex& x, const Complex& y, unsigned seed = 1);

// Basis of the space of chain maps x -> y.
std::vector<ChainMap> chain_map_basis(const Complex& x, const Complex& y);

}  // namespace ttgeo

#endif  // TTGEO_CHAINS_HPP_
