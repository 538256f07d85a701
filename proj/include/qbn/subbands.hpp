#ifndef QBN_SUBBANDS_HPP
#define QBN_SUBBANDS_HPP

#include <vector>

#include "qbn/cross_section.hpp"
#include "qbn/grid.hpp"
#include "qbn/hamiltonian.hpp"

namespace qbn {

// Sub-band ladder along the axis. With the 1D electrostatics the cross-section
// potential is z-independent, so the transverse eigenproblem is solved once and
// the ladder is E_n - e*phi(z) + band offset at every axial point.
struct subband_ladder {
    std::vector<double> mode_energy;           // transverse eigenvalues, eV
    std::vector<std::vector<double>> e_sub;    // [mode][z]
    double contact_band_offset = 0.0;
};

inline subband_ladder make_subband_ladder(const transverse_modes& modes,
                                          const std::vector<double>& phi,
                                          double contact_band_offset = 0.0) {
    subband_ladder lad;
    lad.mode_energy = modes.energy;
    lad.contact_band_offset = contact_band_offset;
    lad.e_sub.resize(modes.energy.size());
    for (size_t m = 0; m < modes.energy.size(); ++m) {
        lad.e_sub[m].resize(phi.size());
        for (size_t i = 0; i < phi.size(); ++i)
            lad.e_sub[m][i] = modes.energy[m] - phi[i] + contact_band_offset;
    }
    return lad;
}

// Assemble per-mode chains. The leads are semi-infinite ideal chains whose band
// bottom sits at the bulk contact conduction-band edge: the reservoirs are
// degenerately doped bulk, not quantized, so every mode injects from the bulk
// band edge (plus the contact band offset) rather than from its confined
// sub-band floor.
inline mode_hamiltonian build_hamiltonian(const subband_ladder& ladder, double m_star,
                                          double a_nm) {
    mode_hamiltonian h;
    h.t = hopping_energy(m_star, a_nm);
    h.diag.resize(ladder.e_sub.size());
    h.lead_band_bottom.assign(ladder.e_sub.size(), ladder.contact_band_offset);
    for (size_t m = 0; m < ladder.e_sub.size(); ++m) {
        h.diag[m].resize(ladder.e_sub[m].size());
        for (size_t i = 0; i < ladder.e_sub[m].size(); ++i)
            h.diag[m][i] = 2.0 * h.t + ladder.e_sub[m][i];
    }
    return h;
}

} // namespace qbn

#endif
