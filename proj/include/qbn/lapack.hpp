#ifndef QBN_LAPACK_HPP
#define QBN_LAPACK_HPP

#include <string>
#include <vector>

#include "qbn/errors.hpp"

namespace qbn {

// dense symmetric eigensolve (row-major, full matrix); returns eigenvalues
// ascending, optionally overwrites a with orthonormal eigenvectors (rows in
// column j convention of LAPACK, exposed here as vectors[j][i])
struct eigen_result {
    std::vector<double> values;
    std::vector<std::vector<double>> vectors; // empty when not requested
};

eigen_result sym_eigen(std::vector<double>& a, int n, bool want_vectors);

// symmetric tridiagonal eigenvalues (and optional vectors)
eigen_result sym_tridiag_eigen(std::vector<double> diag, std::vector<double> offdiag,
                               bool want_vectors);

} // namespace qbn

#endif
