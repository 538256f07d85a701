#ifndef QBN_TIME_DOMAIN_HPP
#define QBN_TIME_DOMAIN_HPP

#include <vector>

#include "qbn/negf.hpp"

namespace qbn {

// Drain-current pulse in the time domain: direct non-uniform Fourier transform
// of the contact-reduced retarded kernels, amplitude carried by I0.
struct time_trace {
    std::vector<double> t_fs;
    std::vector<cplx> f_s, f_d;     // reduced transforms of the source/drain terms
    std::vector<double> current;    // A, I0 * Re f_D(t) / Re f_D(0)
    double i0 = 0.0;
    double t_rep_fs = 0.0;
    double t_dephase_fs = 0.0;
    double f_osc_mhz = 0.0;
    bool f_osc_present = false;

    double t_rep_ns() const { return t_rep_fs * 1e-6; }
    double t_dephase_ns() const { return t_dephase_fs * 1e-6; }
};

// f(t) = sum_k w_k k(E_k) exp(i E_k t / hbar); refuses under-resolved grids
std::vector<cplx> energy_to_time(const energy_grid& g, const std::vector<cplx>& kernel,
                                 const std::vector<double>& t_fs, bool parallel = true);

// norm-weighted time averages and the dominant oscillation frequency of the
// mean-removed real drain trace
struct extraction {
    double t_rep_fs = 0.0;
    double t_dephase_fs = 0.0;
    double f_osc_mhz = 0.0;
    bool f_osc_present = false;
};
extraction extract_times(const std::vector<double>& t_fs, const std::vector<cplx>& f_s,
                         const std::vector<cplx>& f_d);

// full pipeline from a converged spectrum carrying kernels; the window starts
// at 1.5x the width-based repetition estimate and is extended once if short
time_trace pulse_current_trace(const spectrum& sp, int n_time, double tmax_fs_hint = 0.0,
                               bool parallel = true);

} // namespace qbn

#endif
