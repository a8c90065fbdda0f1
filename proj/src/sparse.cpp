#include "biheig/sparse.hpp"

#include <cstdio>
#include <ostream>

namespace biheig {

double SymmetricSparse::at(int i, int j) const {
    for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) {
        if (col[k] == j) return val[k];
    }
    return 0.0;
}

void dump_coo(const SymmetricSparse& m, std::ostream& os) {
    char line[64];
    for (int i = 0; i < m.n; ++i) {
        for (int k = m.row_ptr[i]; k < m.row_ptr[i + 1]; ++k) {
            std::snprintf(line, sizeof line, "%d %d %.17g\n", i, m.col[k], m.val[k]);
            os << line;
        }
    }
}

}  // namespace biheig
