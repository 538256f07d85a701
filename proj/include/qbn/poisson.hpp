#ifndef QBN_POISSON_HPP
#define QBN_POISSON_HPP

#include <cmath>
#include <vector>

#include "qbn/constants.hpp"
#include "qbn/grid.hpp"
#include "qbn/params.hpp"
#include "qbn/tridiag.hpp"

namespace qbn {

// Omega-gate 1D Poisson operator:
//   [d^2/dz^2 - kappa^2(z)](phi - V_G(z)) = e/(eps_nw (pi-theta) R^2) n(z)
// solved for the difference u = phi - V_G(z) with Dirichlet phi = 0 at both
// contacts. The operator acts on the difference as written, so at zero charge
// phi follows the gate profile exactly and the oxide coupling kappa^2 governs
// the boundary layers and the charge response. kappa^2 is zero on ungated
// points (no electrode there) unless screen_ungated adds a grounded screen.
struct poisson_operator {
    std::vector<double> kappa2; // 1/nm^2 per point
    std::vector<double> vg;     // gate potential profile, V
    double rhs_coeff = 0.0;     // V*nm per unit line density
    double theta = 0.0;         // rad
    double a = 0.0;
    int n = 0;
};

inline poisson_operator make_poisson_operator(const axial_grid& grid, const device_spec& spec,
                                              const material_params& mat, const bias_point& bias,
                                              bool screen_ungated = false) {
    poisson_operator op;
    op.a = grid.a;
    op.n = grid.n;
    const double r = spec.radius;
    op.theta = std::acos(r / (r + spec.oxide_thickness));
    const double k2 = (2.0 / (r * r)) * (mat.eps_ox_rel / mat.eps_nw_rel) /
                      std::log(1.0 + spec.oxide_thickness / r);
    op.rhs_coeff = (1.0 / c::eps0) / (mat.eps_nw_rel * (M_PI - op.theta) * r * r);
    op.kappa2.assign(grid.n, 0.0);
    op.vg.assign(grid.n, 0.0);
    for (int i = 0; i < grid.n; ++i) {
        switch (grid.label[i]) {
            case region::gate1:
                op.kappa2[i] = k2;
                op.vg[i] = bias.vg1;
                break;
            case region::gate2:
                op.kappa2[i] = k2;
                op.vg[i] = bias.vg2_total();
                break;
            default:
                if (screen_ungated) op.kappa2[i] = k2;
                break;
        }
    }
    return op;
}

// exact tridiagonal solve; n_line is the electron line density in 1/nm
inline std::vector<double> poisson_solve(const poisson_operator& op,
                                         const std::vector<double>& n_line) {
    const int n = op.n;
    const double ia2 = 1.0 / (op.a * op.a);
    std::vector<double> diag(n), sub(n - 1, ia2), sup(n - 1, ia2), rhs(n);
    for (int i = 0; i < n; ++i) {
        diag[i] = -2.0 * ia2 - op.kappa2[i];
        rhs[i] = op.rhs_coeff * n_line[i];
    }
    // Dirichlet contacts: phi = 0, so u = -V_G there
    diag[0] = diag[n - 1] = 1.0;
    sup[0] = sub[n - 2] = 0.0;
    rhs[0] = -op.vg[0];
    rhs[n - 1] = -op.vg[n - 1];
    std::vector<double> u = thomas_solve(std::move(diag), sub, sup, std::move(rhs));
    for (int i = 0; i < n; ++i) u[i] += op.vg[i];
    return u; // phi
}

// residual of the discrete operator applied to phi (for validation)
inline double poisson_residual(const poisson_operator& op, const std::vector<double>& phi,
                               const std::vector<double>& n_line) {
    const double ia2 = 1.0 / (op.a * op.a);
    double worst = 0.0;
    auto u = [&](int i) { return phi[i] - op.vg[i]; };
    for (int i = 1; i + 1 < op.n; ++i) {
        const double lhs = (u(i - 1) - 2.0 * u(i) + u(i + 1)) * ia2 - op.kappa2[i] * u(i);
        const double rhs = op.rhs_coeff * n_line[i];
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    worst = std::max(worst, std::abs(phi[0]));
    worst = std::max(worst, std::abs(phi[op.n - 1]));
    return worst;
}

} // namespace qbn

#endif
