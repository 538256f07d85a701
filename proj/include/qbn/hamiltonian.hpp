#ifndef QBN_HAMILTONIAN_HPP
#define QBN_HAMILTONIAN_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "qbn/constants.hpp"
#include "qbn/errors.hpp"
#include "qbn/tridiag.hpp"

namespace qbn {

// Per-mode axial tight-binding Hamiltonian: tridiagonal with diagonal
// 2t + E_sub_n(z_i) and off-diagonal -t. Mode blocks are independent; the
// inter-mode coupling hook of the coupled-mode expansion is identically zero
// in the z-independent cross-section regime and kept only as a placeholder.
struct mode_hamiltonian {
    double t = 0.0;                          // hopping, eV
    std::vector<std::vector<double>> diag;   // [mode][site] = 2t + E_sub
    std::vector<double> lead_band_bottom;    // per mode, lead chain band bottom (eV)
    // off-diagonal mode-coupling blocks H_{n,m}(z); empty == zero
    std::vector<double> mode_coupling;

    int n_modes() const { return static_cast<int>(diag.size()); }
    int n_sites() const { return diag.empty() ? 0 : static_cast<int>(diag[0].size()); }
};

inline double hopping_energy(double m_star, double a_nm) {
    return c::hbar2_2m0 / (m_star * a_nm * a_nm);
}

// Surface self-energy of a semi-infinite homogeneous chain with hopping t and
// band bottom e_b: retarded branch inside the band, decaying real branch
// outside, continuous across the band edges.
inline cplx lead_self_energy(double e, double e_b, double t) {
    const double x = (e - e_b - 2.0 * t) / (2.0 * t);
    if (x >= -1.0 && x <= 1.0) {
        return cplx(t * x, -t * std::sqrt(1.0 - x * x));
    }
    const double s = x > 1.0 ? -1.0 : 1.0;
    return cplx(t * (x + s * std::sqrt(x * x - 1.0)), 0.0);
}

inline double broadening(cplx sigma) { return -2.0 * sigma.imag(); }

} // namespace qbn

#endif
