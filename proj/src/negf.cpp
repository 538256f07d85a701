#include "qbn/negf.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qbn/constants.hpp"
#include "qbn/lapack.hpp"

namespace qbn {

void energy_grid::compute_weights() {
    const size_t n = e.size();
    w.assign(n, 0.0);
    if (n < 2) return;
    w[0] = 0.5 * (e[1] - e[0]);
    w[n - 1] = 0.5 * (e[n - 1] - e[n - 2]);
    for (size_t k = 1; k + 1 < n; ++k) w[k] = 0.5 * (e[k + 1] - e[k - 1]);
}

double energy_grid::min_spacing_near(double center, double halfwidth) const {
    double m = 1e300;
    auto lo = std::lower_bound(e.begin(), e.end(), center - halfwidth);
    auto hi = std::upper_bound(e.begin(), e.end(), center + halfwidth);
    for (auto it = lo; it != hi && it + 1 != e.end(); ++it) m = std::min(m, *(it + 1) - *it);
    return m;
}

cplx diagonal_self_energy::at(double energy, int site) const {
    if (e.empty()) return {};
    auto it = std::lower_bound(e.begin(), e.end(), energy);
    if (it == e.begin()) return sigma.front()[site];
    if (it == e.end()) return sigma.back()[site];
    const size_t k = static_cast<size_t>(it - e.begin());
    const double t = (energy - e[k - 1]) / (e[k] - e[k - 1]);
    return sigma[k - 1][site] * (1.0 - t) + sigma[k][site] * t;
}

namespace {

// one mode at one energy, with retry nudges around exact poles
tridiag_inverse invert_mode(const std::vector<double>& diag, double t, double e, cplx ss,
                            cplx sd, const diagonal_self_energy* ph) {
    const int n = static_cast<int>(diag.size());
    std::vector<cplx> a(n);
    for (int i = 0; i < n; ++i) a[i] = e - diag[i];
    a[0] -= ss;
    a[n - 1] -= sd;
    if (ph)
        for (int i = 0; i < n; ++i) a[i] -= ph->at(e, i);
    return tridiag_invert(a, t);
}

} // namespace

energy_point eval_energy(const mode_hamiltonian& h, double e, const contacts& ct,
                         double a_nm, const engine_options& opt) {
    energy_point out;
    const int n = h.n_sites();
    out.d.assign(n, 0.0);
    if (opt.keep_gdiag) out.g_diag.assign(n, cplx{});
    if (opt.keep_mode_t) out.t_mode.assign(h.n_modes(), 0.0);
    const double pref = c::spin_deg / (2.0 * M_PI * a_nm);
    const double fs = ct.f_s(e), fd = ct.f_d(e);

    for (int m = 0; m < h.n_modes(); ++m) {
        const double eb = h.lead_band_bottom[m];
        const cplx ss = lead_self_energy(e, eb, h.t);
        const cplx sd = lead_self_energy(e, eb, h.t);
        const double gs = broadening(ss), gd = broadening(sd);

        tridiag_inverse g;
        double ee = e;
        for (int attempt = 0;; ++attempt) {
            try {
                g = invert_mode(h.diag[m], h.t, ee, ss, sd, opt.sigma_ph);
                break;
            } catch (const singular_energy&) {
                if (attempt >= 3) throw;
                ee += std::max(std::abs(e) * 1e-13, 1e-15);
            }
        }

        const double tm = gs * gd * std::norm(g.corner());
        out.t_total += tm;
        if (opt.keep_mode_t) out.t_mode[m] = tm;

        for (int i = 0; i < n; ++i)
            out.d[i] += pref * (gs * std::norm(g.col_first[i]) * fs +
                                gd * std::norm(g.col_last[i]) * fd);

        if (opt.kernels) {
            // isolated-channel Green's function, +i eta regularized
            std::vector<cplx> aiso(n);
            for (int i = 0; i < n; ++i) aiso[i] = cplx(e - h.diag[m][i], opt.eta_iso);
            const tridiag_inverse giso = tridiag_invert(aiso, h.t);
            cplx acc_s = 0.0, acc_d = 0.0;
            for (int i = 0; i < n; ++i) {
                acc_s += giso.col_first[i] * g.col_first[i];
                acc_d += giso.col_last[i] * g.col_last[i];
            }
            out.k_s += ss * acc_s;
            out.k_d += sd * acc_d;
        }
        if (opt.keep_gdiag)
            for (int i = 0; i < n; ++i) out.g_diag[i] += g.diag[i];
        if (opt.bloch) {
            out.g_diag_left += g.diag[opt.bloch_site_left];
            out.g_diag_right += g.diag[opt.bloch_site_right];
        }
    }
    return out;
}

std::vector<level_estimate> estimate_levels(const mode_hamiltonian& h, double e_lo,
                                            double e_hi) {
    std::vector<level_estimate> out;
    const int n = h.n_sites();
    for (int m = 0; m < h.n_modes(); ++m) {
        std::vector<double> off(n - 1, -h.t);
        auto ev = sym_tridiag_eigen(h.diag[m], off, true);
        for (int j = 0; j < n; ++j) {
            const double ej = ev.values[j];
            if (ej < e_lo || ej > e_hi) continue;
            const double p0 = ev.vectors[j][0], pn = ev.vectors[j][n - 1];
            const cplx sh = p0 * p0 * lead_self_energy(ej, h.lead_band_bottom[m], h.t) +
                            pn * pn * lead_self_energy(ej, h.lead_band_bottom[m], h.t);
            out.push_back({ej, sh, m});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const level_estimate& a, const level_estimate& b) { return a.e_iso < b.e_iso; });
    return out;
}

namespace {

void add_cluster(std::vector<double>& pts, double center, double width, double lo, double hi,
                 double reach) {
    // staggered fine sampling at width/8 inside +-6 widths, then geometric
    const double h0 = width / 8.0;
    for (int k = 0; k < 48; ++k) {
        const double off = (k + 0.5) * h0;
        if (center + off < hi) pts.push_back(center + off);
        if (center - off > lo) pts.push_back(center - off);
    }
    double off = 48.5 * h0;
    while (off < reach) {
        off *= 1.25;
        if (center + off < hi) pts.push_back(center + off);
        if (center - off > lo) pts.push_back(center - off);
    }
}

} // namespace

energy_grid build_energy_grid(const mode_hamiltonian& h, const contacts& ct, double a_nm,
                              long budget, const engine_options& opt, warning_log* warn,
                              const std::vector<resonance_info>* extra_seeds) {
    energy_grid g;
    const double kt = c::kB * ct.temperature;
    double e_floor = 1e300;
    for (int m = 0; m < h.n_modes(); ++m) {
        e_floor = std::min(e_floor, h.lead_band_bottom[m]);
        for (double d : h.diag[m]) e_floor = std::min(e_floor, d - 2.0 * h.t);
    }
    const double e_lo = std::min(e_floor - 0.1, std::min(ct.mu_s, ct.mu_d) - 20.0 * kt - 0.05);
    const double e_hi = std::max(ct.mu_s, ct.mu_d) + 20.0 * kt + 0.1;

    std::vector<double> pts;
    // thermal backbone
    const double de = std::min(kt / 6.0, (e_hi - e_lo) / 400.0);
    for (double e = e_lo; e <= e_hi; e += de) pts.push_back(e);
    pts.push_back(e_hi);
    // band-bottom clusters (sqrt(E) onset of the lead broadening)
    for (int m = 0; m < h.n_modes(); ++m) {
        const double eb = h.lead_band_bottom[m];
        for (double off = 1e-7; off < 0.05; off *= 1.6) {
            if (eb + off < e_hi) pts.push_back(eb + off);
            if (eb - off > e_lo) pts.push_back(eb - off);
        }
    }
    // resonance clusters
    auto levels = estimate_levels(h, e_lo - 0.05, e_hi + 0.05);
    for (const auto& lv : levels) {
        const double width = std::max(-2.0 * lv.shift.imag(), 1e-12);
        const double center = lv.e_iso + lv.shift.real();
        if (width > 0.05) continue; // broad continuum states, backbone covers them
        g.resonances.push_back({center, width, lv.mode});
        add_cluster(pts, center, width, e_lo, e_hi, 0.2);
    }
    if (extra_seeds)
        for (const auto& r : *extra_seeds) {
            if (r.center < e_lo || r.center > e_hi) continue;
            g.resonances.push_back(r);
            add_cluster(pts, r.center, std::max(r.width, 1e-12), e_lo, e_hi, 0.2);
        }

    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](double x, double y) { return y - x < 1e-16; }),
              pts.end());

    // bisection refinement on transmission and total LDOS
    std::vector<double> tval(pts.size(), -1.0), dval(pts.size(), -1.0);
    engine_options scan = opt;
    scan.kernels = false;
    scan.bloch = false;
    auto eval_metrics = [&](double e, double& tv, double& dv) {
        const energy_point p = eval_energy(h, e, ct, a_nm, scan);
        tv = p.t_total;
        dv = 0.0;
        for (double x : p.d) dv += x;
    };
    for (size_t k = 0; k < pts.size(); ++k) eval_metrics(pts[k], tval[k], dval[k]);

    const double t_floor = 1e-9;
    auto need_split = [&](size_t k) {
        const double dt = std::abs(tval[k + 1] - tval[k]);
        const double dd = std::abs(dval[k + 1] - dval[k]);
        const double tref = std::max({tval[k], tval[k + 1], t_floor});
        const double dref = std::max({dval[k], dval[k + 1], 1e-12});
        if (pts[k + 1] - pts[k] < 4e-16 * std::max(1.0, std::abs(pts[k]))) return false;
        return dt > 0.1 * tref || dd > 0.1 * dref;
    };

    for (int round = 0; round < 64; ++round) {
        std::vector<double> fresh;
        for (size_t k = 0; k + 1 < pts.size(); ++k)
            if (need_split(k)) fresh.push_back(0.5 * (pts[k] + pts[k + 1]));
        if (fresh.empty()) break;
        if (static_cast<long>(pts.size() + fresh.size()) > budget) {
            g.budget_exhausted = true;
            if (warn) {
                std::string info = "energy grid budget exhausted";
                for (const auto& r : g.resonances)
                    if (g.min_spacing_near(r.center, 4 * r.width) > r.width / 8.0)
                        info += "; unresolved resonance at " + std::to_string(r.center) +
                                " eV (width <= " + std::to_string(r.width) + " eV)";
                warn->add(info);
            }
            break;
        }
        std::vector<double> ft(fresh.size()), fd(fresh.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) if (opt.parallel)
#endif
        for (long k = 0; k < static_cast<long>(fresh.size()); ++k)
            eval_metrics(fresh[k], ft[k], fd[k]);

        std::vector<double> np, nt, nd;
        np.reserve(pts.size() + fresh.size());
        size_t j = 0;
        for (size_t k = 0; k < pts.size(); ++k) {
            while (j < fresh.size() && fresh[j] < pts[k]) {
                np.push_back(fresh[j]);
                nt.push_back(ft[j]);
                nd.push_back(fd[j]);
                ++j;
            }
            np.push_back(pts[k]);
            nt.push_back(tval[k]);
            nd.push_back(dval[k]);
        }
        pts.swap(np);
        tval.swap(nt);
        dval.swap(nd);
    }

    g.e = std::move(pts);
    g.compute_weights();
    return g;
}

namespace {

spectrum assemble(const mode_hamiltonian& h, const energy_grid& g, const contacts& ct,
                  double a_nm, const engine_options& opt,
                  std::vector<energy_point>& slots) {
    spectrum s;
    s.grid = g;
    const size_t nk = g.e.size();
    const int n = h.n_sites();
    s.t_total.resize(nk);
    if (opt.keep_mode_t) s.t_mode.resize(nk);
    if (opt.keep_ldos) s.ldos.resize(nk);
    if (opt.kernels) {
        s.k_s.resize(nk);
        s.k_d.resize(nk);
    }
    if (opt.keep_gdiag) s.g_diag.resize(nk);
    s.n_line.assign(n, 0.0);
    // fixed-order reduction: results are identical for any worker count
    for (size_t k = 0; k < nk; ++k) {
        energy_point& p = slots[k];
        s.t_total[k] = p.t_total;
        for (int i = 0; i < n; ++i) s.n_line[i] += g.w[k] * p.d[i];
        if (opt.keep_mode_t) s.t_mode[k] = std::move(p.t_mode);
        if (opt.keep_ldos) s.ldos[k] = std::move(p.d);
        if (opt.kernels) {
            s.k_s[k] = p.k_s;
            s.k_d[k] = p.k_d;
        }
        if (opt.keep_gdiag) s.g_diag[k] = std::move(p.g_diag);
        if (opt.bloch) {
            const double f = ct.f_s(g.e[k]); // occupied weight (vd = 0 workflows)
            s.g_occ_left += g.w[k] * f * p.g_diag_left;
            s.g_occ_right += g.w[k] * f * p.g_diag_right;
        }
    }
    s.i0 = current_amplitude(g, s.t_total, ct);
    return s;
}

} // namespace

spectrum negf_sweep_serial(const mode_hamiltonian& h, const energy_grid& g,
                           const contacts& ct, double a_nm, const engine_options& opt) {
    std::vector<energy_point> slots(g.e.size());
    for (size_t k = 0; k < g.e.size(); ++k) slots[k] = eval_energy(h, g.e[k], ct, a_nm, opt);
    return assemble(h, g, ct, a_nm, opt, slots);
}

spectrum negf_sweep(const mode_hamiltonian& h, const energy_grid& g, const contacts& ct,
                    double a_nm, const engine_options& opt) {
    if (!opt.parallel) return negf_sweep_serial(h, g, ct, a_nm, opt);
    std::vector<energy_point> slots(g.e.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 32)
#endif
    for (long k = 0; k < static_cast<long>(g.e.size()); ++k)
        slots[k] = eval_energy(h, g.e[k], ct, a_nm, opt);
    return assemble(h, g, ct, a_nm, opt, slots);
}

double current_amplitude(const energy_grid& g, const std::vector<double>& t_total,
                         const contacts& ct) {
    if (ct.mu_s == ct.mu_d) return 0.0;
    const double kt = c::kB * ct.temperature;
    const double need_lo = std::min(ct.mu_s, ct.mu_d) - 20.0 * kt;
    const double need_hi = std::max(ct.mu_s, ct.mu_d) + 20.0 * kt;
    if (g.e.empty() || g.e.front() > need_lo || g.e.back() < need_hi)
        throw numerical_error("current_amplitude: energy grid does not cover the bias window");
    double acc = 0.0;
    for (size_t k = 0; k < g.e.size(); ++k)
        acc += g.w[k] * t_total[k] * (ct.f_s(g.e[k]) - ct.f_d(g.e[k]));
    return c::g0 * acc;
}

} // namespace qbn
