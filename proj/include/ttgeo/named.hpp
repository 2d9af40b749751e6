#ifndef TTGEO_NAMED_HPP_
#define TTGEO_NAMED_HPP_

#include <string>

#include "ttgeo/chains.hpp"

namespace ttgeo {

// eta = (1,1)^T : k -> kC2 and eps = (1 1) : kC2 -> k in the standard basis {1, sigma}.
BitMatrix eta_matrix();
BitMatrix eps_matrix();

Complex unit_complex(CellKind kind = CellKind::Filtered);
Complex trivial_line(CellKind kind, int degree = 0);  // k[degree]
Complex free_line(CellKind kind, int degree = 0);     // kC2[degree]

// k -> kC2 -> k in degrees 2, 1, 0, unfiltered.
Complex fundpur();
// pure weight zero version
Complex fund0();
// 1(l) -> E(l,0) -> 1(0) in degrees 2, 1, 0
Complex fundl(int l);
// k -> kC2 -> ... -> kC2 -> k in degrees m+1, ..., 0 with m copies of kC2; zero for m = 0
Complex fundpur_power(int m);
// Invertible complexes of plain kC2-modules; n = 1 is k -> kC2 in degrees 1, 0.
Complex invertpur_pow(int n);
// E1(-1) -> E1(-2) -> ... -> E1(-j) in degrees 0, -1, ..., -j+1.
Complex injres_trunc(int j);
// E(1,0) -> E(1,1) in degrees 1, 0 with identity differential.
Complex koszul_T();
Complex cone_beta();
Complex cone_rho();
Complex cone_omega();

ChainMap unit_beta();                 // 1 -> 1(1)
ChainMap eps_tilde();                 // invertpur_pow(1) -> 1
ChainMap eta_tilde();                 // 1 -> invertpur_pow(-1)
ChainMap upsilon();                   // 1 -> invertpur_pow(-1)[1]
ChainMap iota0();                     // E(0,0) -> E(1,0)
ChainMap iota1();                     // E(1,0) -> E(0,1)
// rho, on the resolution R = [1(1) -> E(1,0)] of 1: R -> 1(1)[1]
ChainMap rho_map();
// R -> 1, a quasi-isomorphism in the derived category of admissible sequences
ChainMap rho_resolution();
ChainMap beta_rho();                  // R -> 1(2)[1]

// The six Koszul complexes, one for each prime: "L", "Ls", "M", "Ms", "N", "Ns".
Complex koszul_cone(const std::string& point);

}  // namespace ttgeo

#endif  // TTGEO_NAMED_HPP_
