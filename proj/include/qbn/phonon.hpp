#ifndef QBN_PHONON_HPP
#define QBN_PHONON_HPP

#include <vector>

#include "qbn/negf.hpp"
#include "qbn/params.hpp"
#include "qbn/scf.hpp"

namespace qbn {

// One Einstein-Debye phonon branch of the deformation-potential interaction.
struct phonon_branch {
    enum class kind { acoustic, optical };
    kind type = kind::acoustic;
    double hw = 0.0;           // eV
    double deformation = 0.0;  // eV
    double mass_density = 0.0; // kg/m^3
    double volume_nm3 = 0.0;   // normalization volume (device channel)
    double beta_nm = 0.0;      // strain wavevector, 1/nm
    bool quasi_elastic = false;
};

phonon_branch make_acoustic_branch(const material_params& mat, double volume_nm3);
phonon_branch make_optical_branch(const material_params& mat, double volume_nm3);

// tau = D * Xi with the Einstein-Debye displacement amplitude of A2-4 (the
// Bose factor rides inside the thermal displacement)
double coupling_strength(const phonon_branch& branch, double temperature_k);

struct born_result {
    diagonal_self_energy sigma;
    int iterations = 0;
    bool converged = false;
    std::vector<double> residual_trace;
};

// Self-consistent Born loop: site-local self-energy from the mode-summed
// diagonal of G at the emission/absorption replicas, iterated until
// max|dSigma| < tol. real_part=false keeps the pure-broadening model.
born_result born_self_energy(const mode_hamiltonian& h, const energy_grid& g,
                             const contacts& ct, double a_nm,
                             const std::vector<phonon_branch>& branches,
                             double temperature_k, bool real_part = false,
                             double tol = 1e-10, int max_iter = 200, bool parallel = true);

// D_sc(E,z) = (i/2 pi a) [G (Sigma_ph - Sigma_ph^+) G^+]_zz with Kramers weight
std::vector<std::vector<double>> scattered_ldos(const mode_hamiltonian& h,
                                                const energy_grid& g, const contacts& ct,
                                                double a_nm,
                                                const diagonal_self_energy& sigma_ph,
                                                bool parallel = true);

struct gap_scan_row {
    double gap_ev = 0.0;
    double i_phonon = 0.0;
    double i_free = 0.0;
    double rel_change = 0.0;
};

// Current vs (virtually scaled) sub-band gap: the transverse ladder above the
// ground mode is compressed so E2 - E1 equals each requested gap, the device is
// converged phonon-free, and the phonon current is evaluated at that potential.
std::vector<gap_scan_row> gap_scan(const device_context& ctx, const bias_point& bias,
                                   const std::vector<double>& gaps_ev, bool parallel = true);

} // namespace qbn

#endif
