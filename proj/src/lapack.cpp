#include "qbn/lapack.hpp"

#include <lapacke.h>

namespace qbn {

eigen_result sym_eigen(std::vector<double>& a, int n, bool want_vectors) {
    eigen_result out;
    out.values.resize(n);
    const char jobz = want_vectors ? 'V' : 'N';
    const lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, jobz, 'L', n, a.data(), n,
                                           out.values.data());
    if (info != 0)
        throw numerical_error("dsyevd failed, info = " + std::to_string(info));
    if (want_vectors) {
        out.vectors.assign(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.vectors[j][i] = a[static_cast<size_t>(i) * n + j];
    }
    return out;
}

eigen_result sym_tridiag_eigen(std::vector<double> diag, std::vector<double> offdiag,
                               bool want_vectors) {
    const int n = static_cast<int>(diag.size());
    eigen_result out;
    std::vector<double> z(static_cast<size_t>(n) * n);
    const char jobz = want_vectors ? 'V' : 'N';
    const lapack_int info = LAPACKE_dstev(LAPACK_ROW_MAJOR, jobz, n, diag.data(),
                                          offdiag.data(), z.data(), n);
    if (info != 0)
        throw numerical_error("dstev failed, info = " + std::to_string(info));
    out.values = std::move(diag);
    if (want_vectors) {
        out.vectors.assign(n, std::vector<double>(n));
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i)
                out.vectors[j][i] = z[static_cast<size_t>(i) * n + j];
    }
    return out;
}

} // namespace qbn
