#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace biheig {

/// Symmetric sparse matrix in CSR layout. Both triangles are stored so that
/// row-parallel products need no scatter; symmetry is exact by construction
/// because entry (i,j) and entry (j,i) accumulate the same element
/// contributions in the same order.
struct SymmetricSparse {
    int n = 0;
    std::vector<int> row_ptr;   // size n+1
    std::vector<int> col;       // column indices, ascending within a row
    std::vector<double> val;

    int nnz() const { return static_cast<int>(col.size()); }

    /// Value at (i,j); zero outside the pattern. Linear scan, test use only.
    double at(int i, int j) const;
};

/// Coordinate-format text dump `i j value`, one entry per line sorted by
/// (i,j), for cross-validation against external tools.
void dump_coo(const SymmetricSparse& m, std::ostream& os);

}  // namespace biheig
