#include "qbn/phonon.hpp"

#include <algorithm>
#include <cmath>

#include "qbn/constants.hpp"

namespace qbn {

namespace {
constexpr double hbar_si = 1.054571817e-34; // J s
constexpr double gaas_lattice_nm = 0.5653;
} // namespace

phonon_branch make_acoustic_branch(const material_params& mat, double volume_nm3) {
    phonon_branch b;
    b.type = phonon_branch::kind::acoustic;
    b.hw = mat.phonon_energy_acoustic;
    b.deformation = mat.deformation_potential;
    b.mass_density = mat.mass_density;
    b.volume_nm3 = volume_nm3;
    const double omega = b.hw * c::e_charge / hbar_si;       // 1/s
    b.beta_nm = omega / mat.sound_velocity * 1e-9;           // 1/nm
    return b;
}

phonon_branch make_optical_branch(const material_params& mat, double volume_nm3) {
    phonon_branch b;
    b.type = phonon_branch::kind::optical;
    b.hw = mat.phonon_energy_optical;
    b.deformation = mat.deformation_potential;
    b.mass_density = mat.mass_density;
    b.volume_nm3 = volume_nm3;
    b.beta_nm = M_PI / gaas_lattice_nm; // zone-characteristic wavevector
    return b;
}

double coupling_strength(const phonon_branch& branch, double temperature_k) {
    if (branch.deformation == 0.0) return 0.0;
    const double f = bose_einstein(branch.hw, temperature_k);
    const double hw_joule = branch.hw * c::e_charge;
    const double mass = branch.mass_density * branch.volume_nm3 * 1e-27; // kg
    // |u0|^2 = hbar^2 f / (2 rho Omega hbar w), in m^2
    const double u0sq_m2 = hbar_si * hbar_si * f / (2.0 * mass * hw_joule);
    const double u0_nm = std::sqrt(u0sq_m2) * 1e9;
    return branch.deformation * branch.beta_nm * u0_nm; // D * |div u|
}

born_result born_self_energy(const mode_hamiltonian& h, const energy_grid& g,
                             const contacts& ct, double a_nm,
                             const std::vector<phonon_branch>& branches,
                             double temperature_k, bool real_part, double tol, int max_iter,
                             bool parallel) {
    const int n = h.n_sites();
    const size_t nk = g.e.size();

    struct term {
        double tau2, f, hw;
        bool quasi;
    };
    std::vector<term> terms;
    for (const auto& b : branches) {
        const double tau = coupling_strength(b, temperature_k);
        terms.push_back({tau * tau, bose_einstein(b.hw, temperature_k), b.hw, b.quasi_elastic});
    }

    born_result out;
    out.sigma.e = g.e;
    out.sigma.sigma.assign(nk, std::vector<cplx>(n, cplx{}));

    engine_options opt;
    opt.parallel = parallel;
    opt.keep_gdiag = true;

    for (int it = 0; it < max_iter; ++it) {
        engine_options o = opt;
        diagonal_self_energy current = out.sigma;
        const bool have_sigma = it > 0;
        if (have_sigma) o.sigma_ph = &current;
        const spectrum sp = negf_sweep(h, g, ct, a_nm, o);

        diagonal_self_energy gd;
        gd.e = g.e;
        gd.sigma = sp.g_diag;

        double res = 0.0;
        for (size_t k = 0; k < nk; ++k) {
            for (int i = 0; i < n; ++i) {
                cplx acc = 0.0;
                for (const auto& t : terms) {
                    if (t.quasi) {
                        acc += t.tau2 * (2.0 * t.f + 1.0) * gd.sigma[k][i];
                    } else {
                        acc += t.tau2 * ((t.f + 1.0) * gd.at(g.e[k] - t.hw, i) +
                                         t.f * gd.at(g.e[k] + t.hw, i));
                    }
                }
                if (!real_part) acc = cplx(0.0, std::min(acc.imag(), 0.0));
                else if (acc.imag() > 0.0) acc = cplx(acc.real(), 0.0);
                res = std::max(res, std::abs(acc - out.sigma.sigma[k][i]));
                out.sigma.sigma[k][i] = acc;
            }
        }
        out.residual_trace.push_back(res);
        out.iterations = it + 1;
        if (res < tol) {
            out.converged = true;
            break;
        }
    }
    if (!out.converged) {
        std::string msg = "born loop did not converge; residual trace:";
        for (double r : out.residual_trace) msg += " " + std::to_string(r);
        throw numerical_error(msg);
    }
    return out;
}

std::vector<std::vector<double>> scattered_ldos(const mode_hamiltonian& h,
                                                const energy_grid& g, const contacts& ct,
                                                double a_nm,
                                                const diagonal_self_energy& sigma_ph,
                                                bool parallel) {
    const int n = h.n_sites();
    const size_t nk = g.e.size();
    std::vector<std::vector<double>> dsc(nk, std::vector<double>(n, 0.0));
    const double pref = c::spin_deg / (2.0 * M_PI * a_nm);

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
#endif
    for (long k = 0; k < static_cast<long>(nk); ++k) {
        const double e = g.e[k];
        std::vector<double> gamma(n);
        for (int i = 0; i < n; ++i)
            gamma[i] = -2.0 * sigma_ph.sigma[k][i].imag();
        std::vector<cplx> row;
        for (int m = 0; m < h.n_modes(); ++m) {
            const cplx ss = lead_self_energy(e, h.lead_band_bottom[m], h.t);
            std::vector<cplx> a(n);
            for (int i = 0; i < n; ++i) a[i] = e - h.diag[m][i] - sigma_ph.sigma[k][i];
            a[0] -= ss;
            a[n - 1] -= ss;
            const tridiag_inverse inv = tridiag_invert(a, h.t);
            for (int i = 0; i < n; ++i) {
                tridiag_row(inv, h.t, i, row);
                double acc = 0.0;
                for (int j = 0; j < n; ++j) acc += std::norm(row[j]) * gamma[j];
                dsc[k][i] += pref * acc;
            }
        }
    }
    return dsc;
}

std::vector<gap_scan_row> gap_scan(const device_context& ctx, const bias_point& bias,
                                   const std::vector<double>& gaps_ev, bool parallel) {
    std::vector<gap_scan_row> rows;
    const auto& mat = ctx.params.material;
    const double volume = M_PI * ctx.params.device.radius * ctx.params.device.radius *
                          ctx.params.device.channel_length;
    const double gap0 = ctx.modes.energy[1] - ctx.modes.energy[0];

    for (double gap : gaps_ev) {
        if (!(gap > 0.0)) throw config_error("gap_scan: gaps must be positive");
        device_context vctx = ctx;
        const double scale = gap / gap0;
        for (size_t m = 1; m < vctx.modes.energy.size(); ++m)
            vctx.modes.energy[m] =
                ctx.modes.energy[0] + (ctx.modes.energy[m] - ctx.modes.energy[0]) * scale;

        engine_options fin;
        fin.parallel = parallel;
        const scf_result scf = scf_iterate(vctx, bias, fin);

        // extend the grid with phonon replica clusters so both currents are
        // integrated on the same points
        std::vector<phonon_branch> branches = {make_acoustic_branch(mat, volume),
                                               make_optical_branch(mat, volume)};
        std::vector<resonance_info> extra;
        for (const auto& r : scf.final_spectrum.grid.resonances)
            for (const auto& b : branches) {
                extra.push_back({r.center - b.hw, std::max(r.width, 1e-9), r.mode});
                extra.push_back({r.center + b.hw, std::max(r.width, 1e-9), r.mode});
            }
        warning_log wl;
        const energy_grid eg = build_energy_grid(scf.hmat, scf.ct, ctx.grid.a,
                                                 ctx.params.numerics.grid_budget, fin, &wl,
                                                 &extra);
        const spectrum sp_free = negf_sweep(scf.hmat, eg, scf.ct, ctx.grid.a, fin);

        const born_result born =
            born_self_energy(scf.hmat, eg, scf.ct, ctx.grid.a, branches, mat.temperature,
                             ctx.params.numerics.phonon_real_part, 1e-10, 200, parallel);
        engine_options dressed = fin;
        dressed.sigma_ph = &born.sigma;
        const spectrum sp_ph = negf_sweep(scf.hmat, eg, scf.ct, ctx.grid.a, dressed);

        gap_scan_row row;
        row.gap_ev = gap;
        row.i_free = sp_free.i0;
        row.i_phonon = sp_ph.i0;
        row.rel_change = std::abs(sp_ph.i0 - sp_free.i0) / std::max(std::abs(sp_free.i0), 1e-300);
        rows.push_back(row);
    }
    return rows;
}

} // namespace qbn
