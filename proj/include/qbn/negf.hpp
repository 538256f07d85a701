#ifndef QBN_NEGF_HPP
#define QBN_NEGF_HPP

#include <complex>
#include <functional>
#include <vector>

#include "qbn/errors.hpp"
#include "qbn/fermi.hpp"
#include "qbn/hamiltonian.hpp"
#include "qbn/tridiag.hpp"

namespace qbn {

struct contacts {
    double mu_s = 0.0;       // eV
    double mu_d = 0.0;       // eV, mu_s - e*vd
    double temperature = 300.0;

    double f_s(double e) const { return fermi_dirac(e, mu_s, temperature); }
    double f_d(double e) const { return fermi_dirac(e, mu_d, temperature); }
};

struct resonance_info {
    double center = 0.0; // eV, coupling-shifted level position
    double width = 0.0;  // eV, broadening estimate (full width)
    int mode = 0;
};

// Adaptive energy grid with trapezoid weights on the non-uniform points.
struct energy_grid {
    std::vector<double> e;
    std::vector<double> w;
    std::vector<resonance_info> resonances;
    bool budget_exhausted = false;

    void compute_weights();
    double min_spacing_near(double center, double halfwidth) const;
};

// diagonal (site-local) self-energy shared by all modes, defined on an energy
// grid with linear interpolation between points
struct diagonal_self_energy {
    std::vector<double> e;
    std::vector<std::vector<cplx>> sigma; // [energy][site]

    cplx at(double energy, int site) const;
    bool empty() const { return e.empty(); }
};

struct engine_options {
    bool parallel = true;
    bool keep_ldos = false;      // retain D(E,z) rows
    bool keep_mode_t = false;    // retain per-mode transmission
    bool keep_gdiag = false;     // retain mode-summed diagonal of G
    bool kernels = false;        // time-domain contact kernels (needs G_iso)
    double eta_iso = 1e-10;      // eV
    bool bloch = false;
    int bloch_site_left = 0;
    int bloch_site_right = 0;
    const diagonal_self_energy* sigma_ph = nullptr;
};

// everything the engine produces on one energy grid at fixed potential
struct spectrum {
    energy_grid grid;
    std::vector<double> t_total;               // transmission summed over modes
    std::vector<std::vector<double>> t_mode;   // optional
    std::vector<std::vector<double>> ldos;     // optional, [energy][site]
    std::vector<double> n_line;                // 1/nm
    double i0 = 0.0;                           // A
    std::vector<cplx> k_s, k_d;                // optional reduced kernels
    std::vector<std::vector<cplx>> g_diag;     // optional, mode-summed [energy][site]
    cplx g_occ_left{}, g_occ_right{};          // optional occupied local G at dot sites
};

// single-energy evaluation products
struct energy_point {
    double t_total = 0.0;
    std::vector<double> t_mode;
    std::vector<double> d;        // occupied LDOS over sites, 1/(eV nm)
    std::vector<cplx> g_diag;     // mode-summed diagonal (optional)
    cplx k_s{}, k_d{};
    cplx g_diag_left{}, g_diag_right{};
};

energy_point eval_energy(const mode_hamiltonian& h, double e, const contacts& ct,
                         double a_nm, const engine_options& opt);

// Builds the adaptive grid: thermal backbone, band-edge clusters and
// per-resonance clusters seeded from the isolated-chain eigenvalues with
// first-order coupling shifts, then bisection refinement on T and the LDOS
// until neighbor variations drop below threshold or the budget is reached.
energy_grid build_energy_grid(const mode_hamiltonian& h, const contacts& ct, double a_nm,
                              long budget, const engine_options& opt, warning_log* warn,
                              const std::vector<resonance_info>* extra_seeds = nullptr);

// serial reference sweep and the OpenMP sweep; identical results by
// construction (per-point slots, fixed-order reduction)
spectrum negf_sweep_serial(const mode_hamiltonian& h, const energy_grid& g,
                           const contacts& ct, double a_nm, const engine_options& opt);
spectrum negf_sweep(const mode_hamiltonian& h, const energy_grid& g, const contacts& ct,
                    double a_nm, const engine_options& opt);

// I0 = g0 * sum w T (f_S - f_D); throws if the grid does not cover the window
double current_amplitude(const energy_grid& g, const std::vector<double>& t_total,
                         const contacts& ct);

// isolated-chain eigenvalues and first-order contact shifts, used for grid
// seeding and for the spectral splitting extraction
struct level_estimate {
    double e_iso;   // isolated eigenvalue
    cplx shift;     // <psi| Sigma_S + Sigma_D |psi>
    int mode;
};
std::vector<level_estimate> estimate_levels(const mode_hamiltonian& h, double e_lo,
                                            double e_hi);

} // namespace qbn

#endif
