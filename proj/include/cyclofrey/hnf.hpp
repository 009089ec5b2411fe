#ifndef CYCLOFREY_HNF_HPP
#define CYCLOFREY_HNF_HPP

#include <vector>

#include "cyclofrey/field.hpp"

namespace cyclofrey {

// Hermite normal form of the Z-module spanned by the given rows in Z^d
// (upper triangular, non-negative pivots, entries above a pivot reduced).
// Rows of zeros are dropped; the result has one row per pivot column.
std::vector<std::vector<Z>> hnf_rows(std::vector<std::vector<Z>> rows, long d);

// Index [Z^d : L] of the lattice L spanned by the rows; 0 if rank < d.
Z lattice_index(const std::vector<std::vector<Z>> &rows, long d);

// Norm of the O_K-ideal generated by the given integral elements,
// computed as the index of the Z-lattice spanned by x*theta^i in O_K = Z[theta].
Z ideal_norm(const std::vector<FieldElement> &gens);

}  // namespace cyclofrey

#endif
