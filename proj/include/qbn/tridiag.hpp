#ifndef QBN_TRIDIAG_HPP
#define QBN_TRIDIAG_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "qbn/errors.hpp"

namespace qbn {

using cplx = std::complex<double>;

// thrown when E lands exactly on an unbroadened pole; callers treat it as a
// refine-energy signal rather than a failure
struct singular_energy : numerical_error {
    using numerical_error::numerical_error;
};

// Solves A = diag(a_i) with constant off-diagonal b (symmetric) for the pieces
// of A^{-1} the transport formulas need: first and last columns and the full
// diagonal. Riccati-style partial-inverse recursions, O(N), no overflow for
// chains of this length.
struct tridiag_inverse {
    std::vector<cplx> col_first; // G_{i,0}
    std::vector<cplx> col_last;  // G_{i,N-1}
    std::vector<cplx> diag;      // G_{i,i}
    std::vector<cplx> g_left;    // left partial surface functions (kept for full rows)
    std::vector<cplx> g_right;

    cplx corner() const { return col_last.front(); } // G_{0,N-1}
};

inline tridiag_inverse tridiag_invert(const std::vector<cplx>& a, double b) {
    const int n = static_cast<int>(a.size());
    tridiag_inverse r;
    r.g_left.resize(n);
    r.g_right.resize(n);
    const double b2 = b * b;

    r.g_left[0] = 1.0 / a[0];
    for (int i = 1; i < n; ++i) r.g_left[i] = 1.0 / (a[i] - b2 * r.g_left[i - 1]);
    r.g_right[n - 1] = 1.0 / a[n - 1];
    for (int i = n - 2; i >= 0; --i) r.g_right[i] = 1.0 / (a[i] - b2 * r.g_right[i + 1]);

    r.diag.resize(n);
    for (int i = 0; i < n; ++i) {
        cplx d = a[i];
        if (i > 0) d -= b2 * r.g_left[i - 1];
        if (i < n - 1) d -= b2 * r.g_right[i + 1];
        r.diag[i] = 1.0 / d;
    }

    // column N-1 upward, column 0 downward
    r.col_last.resize(n);
    r.col_last[n - 1] = r.diag[n - 1];
    for (int i = n - 2; i >= 0; --i) r.col_last[i] = -b * r.g_left[i] * r.col_last[i + 1];
    r.col_first.resize(n);
    r.col_first[0] = r.diag[0];
    for (int i = 1; i < n; ++i) r.col_first[i] = -b * r.g_right[i] * r.col_first[i - 1];

    for (int i = 0; i < n; ++i) {
        if (!std::isfinite(r.diag[i].real()) || !std::isfinite(r.diag[i].imag()))
            throw singular_energy("tridiagonal solve hit an unbroadened pole");
    }
    return r;
}

// full row i of the inverse, reconstructed from the partial fractions
inline void tridiag_row(const tridiag_inverse& r, double b, int i, std::vector<cplx>& row) {
    const int n = static_cast<int>(r.diag.size());
    row.resize(n);
    row[i] = r.diag[i];
    for (int j = i - 1; j >= 0; --j) row[j] = -b * r.g_left[j] * row[j + 1];
    for (int j = i + 1; j < n; ++j) row[j] = -b * r.g_right[j] * row[j - 1];
}

// real symmetric tridiagonal solve (Thomas algorithm) for the Poisson operator
inline std::vector<double> thomas_solve(std::vector<double> diag,
                                        const std::vector<double>& sub,
                                        const std::vector<double>& sup,
                                        std::vector<double> rhs) {
    const int n = static_cast<int>(diag.size());
    for (int i = 1; i < n; ++i) {
        const double m = sub[i - 1] / diag[i - 1];
        diag[i] -= m * sup[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (int i = n - 2; i >= 0; --i) x[i] = (rhs[i] - sup[i] * x[i + 1]) / diag[i];
    return x;
}

} // namespace qbn

#endif
