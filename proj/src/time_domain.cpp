#include "qbn/time_domain.hpp"

#include <algorithm>
#include <cmath>

#include "qbn/constants.hpp"

namespace qbn {

std::vector<cplx> energy_to_time(const energy_grid& g, const std::vector<cplx>& kernel,
                                 const std::vector<double>& t_fs, bool parallel) {
    if (g.budget_exhausted)
        throw numerical_error("energy_to_time: refusing under-resolved energy grid "
                              "(budget exhausted with unresolved resonances)");
    if (kernel.size() != g.e.size())
        throw numerical_error("energy_to_time: kernel/grid size mismatch");
    std::vector<cplx> f(t_fs.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(static) if (parallel)
#endif
    for (long j = 0; j < static_cast<long>(t_fs.size()); ++j) {
        const double t = t_fs[j];
        cplx acc = 0.0;
        for (size_t k = 0; k < g.e.size(); ++k) {
            const double ph = g.e[k] * t / c::hbar;
            acc += g.w[k] * kernel[k] * cplx(std::cos(ph), std::sin(ph));
        }
        f[j] = acc;
    }
    return f;
}

namespace {

double weighted_mean_time(const std::vector<double>& t, const std::vector<cplx>& f,
                          double t_cut) {
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
        if (t[i] > t_cut) break;
        const double a = std::abs(f[i]);
        num += t[i] * a;
        den += a;
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

extraction extract_times(const std::vector<double>& t_fs, const std::vector<cplx>& f_s,
                         const std::vector<cplx>& f_d) {
    extraction out;
    const size_t n = t_fs.size();
    out.t_rep_fs = weighted_mean_time(t_fs, f_s, t_fs.back() + 1.0);
    out.t_dephase_fs = weighted_mean_time(t_fs, f_d, out.t_rep_fs);

    // dominant spectral peak of the mean-removed real drain trace
    std::vector<double> x(n);
    double mean = 0.0;
    for (size_t i = 0; i < n; ++i) mean += f_d[i].real();
    mean /= static_cast<double>(n);
    for (size_t i = 0; i < n; ++i) x[i] = f_d[i].real() - mean;

    const size_t nf = n / 2;
    std::vector<double> amp(nf, 0.0);
    const double dphi = 2.0 * M_PI / static_cast<double>(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long m = 1; m < static_cast<long>(nf); ++m) {
        double re = 0.0, im = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double ph = dphi * m * i;
            re += x[i] * std::cos(ph);
            im -= x[i] * std::sin(ph);
        }
        amp[m] = std::hypot(re, im);
    }
    size_t best = 1;
    for (size_t m = 2; m < nf; ++m)
        if (amp[m] > amp[best]) best = m;

    std::vector<double> sorted(amp.begin() + 1, amp.end());
    std::sort(sorted.begin(), sorted.end());
    const double median = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
    out.f_osc_present = amp[best] > 5.0 * median && amp[best] > 0.0;
    if (out.f_osc_present) {
        // sub-bin refinement by log-parabolic interpolation around the peak
        double mstar = static_cast<double>(best);
        if (best + 1 < nf && best >= 2 && amp[best - 1] > 0 && amp[best + 1] > 0) {
            const double l0 = std::log(amp[best - 1]);
            const double l1 = std::log(amp[best]);
            const double l2 = std::log(amp[best + 1]);
            const double den = l0 - 2.0 * l1 + l2;
            if (std::abs(den) > 1e-12) mstar += 0.5 * (l0 - l2) / den;
        }
        const double span_fs = t_fs.back() - t_fs.front() + (t_fs[1] - t_fs[0]);
        out.f_osc_mhz = mstar / span_fs * 1e9; // 1/fs = 1e9 MHz
    }
    return out;
}

time_trace pulse_current_trace(const spectrum& sp, int n_time, double tmax_fs_hint,
                               bool parallel) {
    if (sp.k_s.empty() || sp.k_d.empty())
        throw numerical_error("pulse_current_trace: spectrum carries no contact kernels");
    n_time = std::max(n_time, 4096);

    // width-based first repetition-time estimate
    double wmin = 1e300;
    for (const auto& r : sp.grid.resonances) wmin = std::min(wmin, std::max(r.width, 1e-12));
    double tmax = tmax_fs_hint > 0.0 ? tmax_fs_hint : 1.5 * (c::hbar / wmin);
    tmax = std::clamp(tmax, 1e4, 2e10); // 10 ps .. 20 us

    time_trace tr;
    for (int pass = 0;; ++pass) {
        tr.t_fs.resize(n_time);
        for (int i = 0; i < n_time; ++i)
            tr.t_fs[i] = tmax * static_cast<double>(i) / (n_time - 1);
        tr.f_s = energy_to_time(sp.grid, sp.k_s, tr.t_fs, parallel);
        tr.f_d = energy_to_time(sp.grid, sp.k_d, tr.t_fs, parallel);
        const extraction ex = extract_times(tr.t_fs, tr.f_s, tr.f_d);
        tr.t_rep_fs = ex.t_rep_fs;
        tr.t_dephase_fs = ex.t_dephase_fs;
        tr.f_osc_mhz = ex.f_osc_mhz;
        tr.f_osc_present = ex.f_osc_present;
        if (pass > 0 || tmax_fs_hint > 0.0 || 1.5 * tr.t_rep_fs <= tmax) break;
        tmax = std::min(1.5 * tr.t_rep_fs, 2e10);
    }

    tr.i0 = sp.i0;
    const double norm = tr.f_d.front().real();
    double peak = 0.0;
    for (const auto& v : tr.f_d) peak = std::max(peak, std::abs(v.real()));
    if (std::abs(norm) < 1e-300 * peak || peak == 0.0)
        throw numerical_error("pulse_current_trace: degenerate normalization, Re f_D(0) ~ 0");
    tr.current.resize(tr.t_fs.size());
    for (size_t i = 0; i < tr.current.size(); ++i)
        tr.current[i] = tr.i0 * tr.f_d[i].real() / norm;
    return tr;
}

} // namespace qbn
