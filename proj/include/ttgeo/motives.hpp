#ifndef TTGEO_MOTIVES_HPP_
#define TTGEO_MOTIVES_HPP_

#include <map>
#include <memory>
#include <string>

#include "ttgeo/spectrum.hpp"

namespace ttgeo {

// Expressions over the motives of Spec R and Spec C.
class MotiveExpr {
 public:
  enum class Op { MotR, MotC, Fund0, ConeBeta, ConeRho, ConeEta, ConeEps, Twist, Shift, Sum, Tensor };

  static MotiveExpr mot_r() { return MotiveExpr(Op::MotR); }
  static MotiveExpr mot_c() { return MotiveExpr(Op::MotC); }
  static MotiveExpr fund0() { return MotiveExpr(Op::Fund0); }
  static MotiveExpr cone_of(const std::string& map);  // beta, rho, eta, eps
  static MotiveExpr twist(MotiveExpr e, int i);
  static MotiveExpr shift(MotiveExpr e, int n);
  static MotiveExpr sum(MotiveExpr a, MotiveExpr b);
  static MotiveExpr tensor(MotiveExpr a, MotiveExpr b);

  Op op() const { return op_; }
  int amount() const { return amount_; }
  const MotiveExpr& lhs() const { return *a_; }
  const MotiveExpr& rhs() const { return *b_; }
  // M(R), M(C)(2)[1], (M(C) + fund0) * cone(rho)
  std::string str() const;

 private:
  explicit MotiveExpr(Op op) : op_(op) {}
  Op op_;
  int amount_ = 0;
  std::shared_ptr<const MotiveExpr> a_, b_;
};

Complex to_filtered(const MotiveExpr& e);

// dim Hom(1, 1(m)[n]) in the derived category of admissible sequences.
std::size_t motivic_cohomology(int n, int m);

struct Realization {
  std::string name;
  std::map<int, std::string> homology;  // degree -> decomposition of the homology module
  std::map<int, std::size_t> dims;      // degree -> dimension of the homology
  SupportSet shadow;                    // points of the support the realization sees
};

// name in {etale, base_change, real}
Realization realization(const std::string& name, const MotiveExpr& e);
Realization realization(const std::string& name, const Complex& x);

}  // namespace ttgeo

#endif  // TTGEO_MOTIVES_HPP_
