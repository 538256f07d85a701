#ifndef QBN_CONSTANTS_HPP
#define QBN_CONSTANTS_HPP

// Global unit system: energies in eV, lengths in nm, times in fs,
// potentials in V, currents in A. Hamiltonian entries stay O(1)-O(10) eV.

namespace qbn {
namespace c {

constexpr double hbar        = 0.6582119569;    // eV fs
constexpr double hbar2_2m0   = 0.0380998212;    // hbar^2/(2 m0), eV nm^2
constexpr double kB          = 8.617333e-5;     // eV/K
constexpr double g0          = 7.7481e-5;       // 2e/h conductance prefactor, A/V (factor 2 = Kramers)
constexpr double e_charge    = 1.602176634e-19; // C
constexpr double eps0        = 0.05526349406;   // e/(V nm)
constexpr double spin_deg    = 2.0;             // Kramers degeneracy of every orbital level

// hbar^2 pi^2 / m0 in eV nm^2 (box-level prefactor)
constexpr double box_prefactor = 0.7525;

} // namespace c
} // namespace qbn

#endif
