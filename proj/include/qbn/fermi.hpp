#ifndef QBN_FERMI_HPP
#define QBN_FERMI_HPP

#include <cmath>

#include "qbn/constants.hpp"
#include "qbn/errors.hpp"

namespace qbn {

// occupancy in [0,1]; overflow-safe for |E-mu| >> kBT
inline double fermi_dirac(double e_ev, double mu_ev, double temperature_k) {
    const double x = (e_ev - mu_ev) / (c::kB * temperature_k);
    if (x >= 0.0) {
        const double ex = std::exp(-x);
        return ex / (1.0 + ex);
    }
    return 1.0 / (1.0 + std::exp(x));
}

inline double bose_einstein(double hw_ev, double temperature_k) {
    const double x = hw_ev / (c::kB * temperature_k);
    return 1.0 / std::expm1(x);
}

// complete Fermi-Dirac integral F_{1/2}(eta) = int_0^inf sqrt(x)/(1+exp(x-eta)) dx,
// evaluated with the x = u^2 substitution (analytic, Gaussian-decaying integrand)
inline double fermi_integral_half(double eta) {
    const double umax = std::sqrt(std::max(eta, 0.0) + 60.0);
    const int n = 4000;
    const double du = umax / n;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double u = i * du;
        const double x = u * u;
        double f;
        const double arg = x - eta;
        if (arg >= 0.0) {
            const double ex = std::exp(-arg);
            f = ex / (1.0 + ex);
        } else {
            f = 1.0 / (1.0 + std::exp(arg));
        }
        const double val = 2.0 * u * u * f;
        sum += (i == 0 || i == n) ? 0.5 * val : val;
    }
    return sum * du;
}

// effective conduction-band density of states, 1/nm^3
inline double effective_dos_nc(double m_star, double temperature_k) {
    const double kt = c::kB * temperature_k;
    const double q = m_star * kt / (4.0 * M_PI * c::hbar2_2m0); // 1/nm^2
    return 2.0 * q * std::sqrt(q);
}

// bulk 3D electron density at chemical potential mu (relative to band edge), 1/nm^3
inline double bulk_density(double mu_ev, double m_star, double temperature_k) {
    const double eta = mu_ev / (c::kB * temperature_k);
    return effective_dos_nc(m_star, temperature_k) * (2.0 / std::sqrt(M_PI)) *
           fermi_integral_half(eta);
}

struct contact_level {
    double mu = 0.0;        // eV relative to contact conduction-band edge
    bool degenerate = true; // mu at or above the band edge
};

// Fermi level of the doped source/drain reservoirs from bulk Fermi-Dirac
// statistics. donor_density in 1/cm^3. Bisection to |n(mu)-N_d|/N_d < 1e-10.
inline contact_level contact_fermi_level(double donor_density_cm3, double m_star,
                                         double temperature_k) {
    if (!(donor_density_cm3 > 0.0))
        throw config_error("contact_fermi_level: donor density must be > 0");
    const double nd = donor_density_cm3 * 1e-21; // 1/nm^3
    double lo = -5.0, hi = 5.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double n = bulk_density(mid, m_star, temperature_k);
        if (std::abs(n - nd) / nd < 1e-10) { lo = hi = mid; break; }
        if (n < nd) lo = mid; else hi = mid;
    }
    contact_level out;
    out.mu = 0.5 * (lo + hi);
    out.degenerate = out.mu >= 0.0;
    return out;
}

} // namespace qbn

#endif
