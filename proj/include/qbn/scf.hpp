#ifndef QBN_SCF_HPP
#define QBN_SCF_HPP

#include <optional>
#include <vector>

#include "qbn/grid.hpp"
#include "qbn/negf.hpp"
#include "qbn/params.hpp"
#include "qbn/poisson.hpp"
#include "qbn/subbands.hpp"

namespace qbn {

struct scf_result {
    std::vector<double> phi;       // V
    std::vector<double> n_line;    // 1/nm
    std::vector<double> residuals; // max|phi_out - phi_in| per iteration
    bool converged = false;
    int iterations = 0;
    contacts ct;
    subband_ladder ladder;         // at the converged potential
    mode_hamiltonian hmat;
    spectrum final_spectrum;       // evaluated at the converged potential
    warning_log warnings;

    double last_residual() const { return residuals.empty() ? 0.0 : residuals.back(); }
};

// shared per-device context so sweeps do not redo the transverse solve
struct device_context {
    axial_grid grid;
    cross_section_grid cs;
    transverse_modes modes;
    contact_level contact;
    run_params params;
};

device_context make_device_context(const run_params& p);

// NEGF <-> Poisson fixed point with simple under-relaxation mixing.
// final_opt controls what the converged-potential spectrum retains.
scf_result scf_iterate(const device_context& ctx, const bias_point& bias,
                       const engine_options& final_opt,
                       const std::vector<double>* phi_init = nullptr);

// carrier density helpers: line density integrated over the spectrum is
// produced by the engine; volumetric density divides by the cross-section area
inline std::vector<double> volumetric_density_cm3(const std::vector<double>& n_line,
                                                  double radius_nm) {
    std::vector<double> out(n_line.size());
    const double area = M_PI * radius_nm * radius_nm; // nm^2
    for (size_t i = 0; i < out.size(); ++i) out[i] = n_line[i] / area * 1e21;
    return out;
}

} // namespace qbn

#endif
