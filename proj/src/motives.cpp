#include "ttgeo/motives.hpp"

#include <stdexcept>

#include "ttgeo/functors.hpp"
#include "ttgeo/named.hpp"

namespace ttgeo {

MotiveExpr MotiveExpr::cone_of(const std::string& map) {
  if (map == "beta") return MotiveExpr(Op::ConeBeta);
  if (map == "rho") return MotiveExpr(Op::ConeRho);
  if (map == "eta") return MotiveExpr(Op::ConeEta);
  if (map == "eps") return MotiveExpr(Op::ConeEps);
  throw std::invalid_argument("unknown map: " + map);
}

MotiveExpr MotiveExpr::twist(MotiveExpr e, int i) {
  MotiveExpr r(Op::Twist);
  r.amount_ = i;
  r.a_ = std::make_shared<const MotiveExpr>(std::move(e));
  return r;
}

MotiveExpr MotiveExpr::shift(MotiveExpr e, int n) {
  MotiveExpr r(Op::Shift);
  r.amount_ = n;
  r.a_ = std::make_shared<const MotiveExpr>(std::move(e));
  return r;
}

MotiveExpr MotiveExpr::sum(MotiveExpr a, MotiveExpr b) {
  MotiveExpr r(Op::Sum);
  r.a_ = std::make_shared<const MotiveExpr>(std::move(a));
  r.b_ = std::make_shared<const MotiveExpr>(std::move(b));
  return r;
}

MotiveExpr MotiveExpr::tensor(MotiveExpr a, MotiveExpr b) {
  MotiveExpr r(Op::Tensor);
  r.a_ = std::make_shared<const MotiveExpr>(std::move(a));
  r.b_ = std::make_shared<const MotiveExpr>(std::move(b));
  return r;
}

std::string MotiveExpr::str() const {
  auto atom = [](const MotiveExpr& e) {
    return e.op_ == Op::Sum || e.op_ == Op::Tensor ? "(" + e.str() + ")" : e.str();
  };
  switch (op_) {
    case Op::MotR: return "M(R)";
    case Op::MotC: return "M(C)";
    case Op::Fund0: return "fund0";
    case Op::ConeBeta: return "cone(beta)";
    case Op::ConeRho: return "cone(rho)";
    case Op::ConeEta: return "cone(eta)";
    case Op::ConeEps: return "cone(eps)";
    case Op::Twist: return atom(*a_) + "(" + std::to_string(amount_) + ")";
    case Op::Shift: return atom(*a_) + "[" + std::to_string(amount_) + "]";
    case Op::Sum: return a_->str() + " + " + b_->str();
    case Op::Tensor: {
      auto side = [](const MotiveExpr& e) { return e.op_ == Op::Sum ? "(" + e.str() + ")" : e.str(); };
      return side(*a_) + " * " + side(*b_);
    }
  }
  return {};
}

Complex to_filtered(const MotiveExpr& e) {
  using Op = MotiveExpr::Op;
  switch (e.op()) {
    case Op::MotR: return unit_complex();
    case Op::MotC: return Complex::object(realize(IndecLabel::e(0, 0)));
    case Op::Fund0: return fund0();
    case Op::ConeBeta: return cone_beta();
    case Op::ConeRho: return cone_rho();
    case Op::ConeEta: {
      Complex one = unit_complex(), c = Complex::object(realize(IndecLabel::e(0, 0)));
      return cone(ChainMap(one, c, {{0, eta_matrix()}}));
    }
    case Op::ConeEps: {
      Complex one = unit_complex(), c = Complex::object(realize(IndecLabel::e(0, 0)));
      return cone(ChainMap(c, one, {{0, eps_matrix()}}));
    }
    case Op::Twist: return twist(to_filtered(e.lhs()), e.amount());
    case Op::Shift: return shift(to_filtered(e.lhs()), e.amount());
    case Op::Sum: return direct_sum(to_filtered(e.lhs()), to_filtered(e.rhs()));
    case Op::Tensor: return tensor_complex(to_filtered(e.lhs()), to_filtered(e.rhs()));
  }
  throw std::invalid_argument("malformed motive expression");
}

std::size_t motivic_cohomology(int n, int m) {
  GradedDims h = hom_DE(unit_complex(), twist(unit_complex(), m));
  auto it = h.find(n);
  return it == h.end() ? 0 : it->second;
}

Realization realization(const std::string& name, const Complex& x) {
  Realization r;
  r.name = name;
  if (name == "etale") {
    for (const auto& [n, s] : homology(fgt_complex(x))) {
      FormalSum f;
      for (std::size_t i = 0; i < s.trivial; ++i) f.add(IndecLabel::unit(0));
      for (std::size_t i = 0; i < s.free; ++i) f.add(IndecLabel::e(0, 0));
      r.homology[n] = f.str();
      r.dims[n] = s.trivial + 2 * s.free;
    }
    r.shadow = supp(x) & SupportSet{Prime::M, Prime::N};
  } else if (name == "base_change") {
    Complex z = res_complex(fgt_complex(x));
    for (int n = z.lo(); n <= z.hi(); ++n) {
      std::size_t h = z.dim(n) - rank(z.d(n)) - rank(z.d(n + 1));
      if (h > 0) r.dims[n] = h;
    }
    r.shadow = supp(x) & SupportSet{Prime::N, Prime::Ns};
  } else if (name == "real") {
    r.shadow = supp(x) & SupportSet{Prime::L, Prime::M};
  } else {
    throw std::invalid_argument("unknown realization: " + name);
  }
  return r;
}

Realization realization(const std::string& name, const MotiveExpr& e) {
  return realization(name, to_filtered(e));
}

}  // namespace ttgeo
