#ifndef TTGEO_FUNCTORS_HPP_
#define TTGEO_FUNCTORS_HPP_

#include <map>

#include "ttgeo/chains.hpp"

namespace ttgeo {

using GradedDims = std::map<int, std::size_t>;

// Total graded complex, weights in ascending order inside each degree.
Complex gr_complex(const Complex& x);
Complex graded_piece_complex(const Complex& x, int w);
ChainMap graded_piece(const ChainMap& f, int w);
Complex fgt_complex(const Complex& x);
// Homology with induced sigma, per degree (nonzero degrees only).
std::map<int, ModuleSplit> homology(const Complex& y);
Complex res_complex(const Complex& y);
bool is_exact_F2(const Complex& z);
Complex sta_complex(const Complex& y);
std::size_t tate_dim(const Complex& y);
Complex pwz(const Complex& y);
Complex weight_part_complex(const Complex& x, int m);
Complex rwz(const Complex& x);
// Minimized.
Complex tfgt(const Complex& x);
// dims of Hom(x, y[n]) in the derived category of admissible sequences, keyed by n.
GradedDims hom_DE(const Complex& x, const Complex& y);
bool is_zero_DE(const Complex& x);

}  // namespace ttgeo

#endif  // TTGEO_FUNCTORS_HPP_
