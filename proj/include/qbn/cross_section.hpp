#ifndef QBN_CROSS_SECTION_HPP
#define QBN_CROSS_SECTION_HPP

#include <vector>

#include "qbn/constants.hpp"
#include "qbn/errors.hpp"

namespace qbn {

// 2D Cartesian grid over the nanowire cross-section disk, hard wall at r = R.
// Built centered on the axis so the interior mask is symmetric under x<->y and
// sign flips.
struct cross_section_grid {
    double a = 0.0;
    double radius = 0.0;
    int half = 0;                       // points span [-half..half] per axis
    std::vector<double> x, y;           // coordinates of interior points
    std::vector<int> index;             // (2*half+1)^2 map, -1 outside disk
    int n_interior = 0;

    int side() const { return 2 * half + 1; }
    int at(int ix, int iy) const { return index[static_cast<size_t>(ix) * side() + iy]; }
};

cross_section_grid make_cross_section_grid(double radius_nm, double a_nm);

struct transverse_modes {
    std::vector<double> energy;              // eV, ascending
    std::vector<std::vector<double>> chi;    // [mode][interior point], orthonormal
};

// M lowest eigenpairs of the 5-point finite-difference transverse Hamiltonian
// with Dirichlet walls. Degenerate pairs are oriented against x- then y-dipole
// patterns so the output is reproducible across eigensolver backends.
transverse_modes solve_transverse_modes(const cross_section_grid& grid, double m_star,
                                        int n_modes);

// analytic rectangular-box level, paper constant hbar^2 pi^2 / m0 = 0.7525 eV nm^2
inline double box_level(int n1, int n2, int n3, double l1, double l2, double l3,
                        double m_star) {
    if (n1 < 1 || n2 < 1 || n3 < 1) throw config_error("box_level: quantum numbers >= 1");
    if (!(l1 > 0 && l2 > 0 && l3 > 0)) throw config_error("box_level: box sides > 0");
    const double s = double(n1) * n1 / (l1 * l1) + double(n2) * n2 / (l2 * l2) +
                     double(n3) * n3 / (l3 * l3);
    return c::box_prefactor / (2.0 * m_star) * s;
}

// lowest k eigenvalues of the 3D finite-difference Dirichlet box; per-axis
// spacing is fitted to the exact box sides near the requested spacing
std::vector<double> box_fd_levels(double l1, double l2, double l3, double a_nm,
                                  double m_star, int k);

} // namespace qbn

#endif
