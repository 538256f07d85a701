#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbn/constants.hpp"
#include "qbn/negf.hpp"
#include "qbn/subbands.hpp"

using namespace qbn;

namespace {

// single-mode chain: sub-band floor `barrier` outside, `floor_in` inside the
// central well; lead band bottom at 0
mode_hamiltonian well_chain(int n, double barrier, double floor_in, int well_sites,
                            double m_star = 0.06, double a = 0.28265) {
    transverse_modes tm;
    tm.energy = {0.0};
    tm.chi = {{1.0}};
    std::vector<double> phi(n, -barrier); // E_sub = barrier everywhere
    const int w0 = (n - well_sites) / 2;
    for (int i = w0; i < w0 + well_sites; ++i) phi[i] = -floor_in;
    const subband_ladder lad = make_subband_ladder(tm, phi);
    return build_hamiltonian(lad, m_star, a);
}

} // namespace

TEST_CASE("engine Breit-Wigner: single site with constant wide-band leads to 1e-10") {
    // the transmission path (tridiagonal inverse + corner formula) against the
    // closed-form Lorentzian, constant self-energies
    const double eps = 0.07, gs = 3e-4, gd = 1.2e-4;
    const cplx ss(0.0, -0.5 * gs), sd(0.0, -0.5 * gd);
    for (int k = -50; k <= 50; ++k) {
        const double e = eps + k * 0.5 * (gs + gd) * 0.999;
        std::vector<cplx> a = {e - eps - ss - sd};
        const tridiag_inverse g = tridiag_invert(a, 0.0);
        const double t_negf = gs * gd * std::norm(g.corner());
        const double t_bw =
            gs * gd / (std::pow(e - eps, 2) + std::pow(0.5 * (gs + gd), 2));
        CHECK(std::abs(t_negf - t_bw) / t_bw < 1e-10);
    }
}

TEST_CASE("spectral identity i(G-G+) = G Gamma G+ at 100 random energies of a device") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ue(1e-3, 0.8);
    for (int rep = 0; rep < 100; ++rep) {
        const double e = ue(rng);
        const cplx ss = lead_self_energy(e, 0.0, h.t);
        const double gs = broadening(ss);
        std::vector<cplx> a(h.n_sites());
        for (int i = 0; i < h.n_sites(); ++i) a[i] = e - h.diag[0][i];
        a.front() -= ss;
        a.back() -= ss;
        const tridiag_inverse g = tridiag_invert(a, h.t);
        for (int i = 0; i < h.n_sites(); ++i) {
            const double lhs = -2.0 * g.diag[i].imag();
            const double rhs = gs * std::norm(g.col_first[i]) + gs * std::norm(g.col_last[i]);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max({std::abs(lhs), std::abs(rhs), 1e-30}));
        }
    }
}

TEST_CASE("transmission symmetry under contact swap") {
    const mode_hamiltonian h = well_chain(61, 0.5, -0.35, 9);
    for (double e : {0.01, 0.05, 0.12, 0.31}) {
        const cplx ss = lead_self_energy(e, 0.0, h.t);
        std::vector<cplx> a(h.n_sites());
        for (int i = 0; i < h.n_sites(); ++i) a[i] = e - h.diag[0][i];
        a.front() -= ss;
        a.back() -= ss;
        const tridiag_inverse g = tridiag_invert(a, h.t);
        // reversed chain
        std::vector<cplx> ar(a.rbegin(), a.rend());
        const tridiag_inverse gr = tridiag_invert(ar, h.t);
        const double t1 = broadening(ss) * broadening(ss) * std::norm(g.corner());
        const double t2 = broadening(ss) * broadening(ss) * std::norm(gr.corner());
        CHECK(t1 == doctest::Approx(t2).epsilon(1e-12));
        CHECK(0.0 <= t1);
        CHECK(t1 <= 1.0 + 1e-12);
    }
}

TEST_CASE("occupied LDOS limits: full and empty reservoirs") {
    const mode_hamiltonian h = well_chain(41, 0.4, -0.25, 7);
    contacts ct;
    ct.temperature = 300.0;
    const double e = 0.05;
    // f_S = f_D = 1 limit: D equals the full spectral density
    ct.mu_s = ct.mu_d = 50.0; // occupancies are exactly 1 (overflow-safe clamp)
    engine_options opt;
    opt.parallel = false;
    const energy_point p_full = eval_energy(h, e, ct, 0.28265, opt);
    const cplx ss = lead_self_energy(e, 0.0, h.t);
    std::vector<cplx> a(h.n_sites());
    for (int i = 0; i < h.n_sites(); ++i) a[i] = e - h.diag[0][i];
    a.front() -= ss;
    a.back() -= ss;
    const tridiag_inverse g = tridiag_invert(a, h.t);
    const double pref = c::spin_deg / (2.0 * M_PI * 0.28265);
    for (int i = 0; i < h.n_sites(); ++i) {
        const double spectral = pref * (-2.0) * g.diag[i].imag();
        CHECK(p_full.d[i] == doctest::Approx(spectral).epsilon(1e-9));
    }
    // f_S = f_D = 0 limit: empty reservoirs
    ct.mu_s = ct.mu_d = -50.0;
    const energy_point p_empty = eval_energy(h, e, ct, 0.28265, opt);
    for (double d : p_empty.d) CHECK(d == 0.0);
}

TEST_CASE("one-site half-weight: source-only filling carries half the spectral weight") {
    // symmetric couplings, f_S = 1, f_D = 0: exactly half of the full weight
    const double eps = 0.0, gamma = 1e-3;
    const cplx sig(0.0, -0.5 * gamma);
    double w_occ = 0.0, w_full = 0.0;
    const int nk = 20001;
    for (int k = 0; k < nk; ++k) {
        const double e = eps - 50 * gamma + 100.0 * gamma * k / (nk - 1);
        std::vector<cplx> a = {e - eps - sig - sig};
        const tridiag_inverse g = tridiag_invert(a, 0.0);
        const double de = 100.0 * gamma / (nk - 1);
        w_occ += gamma * std::norm(g.diag[0]) * de;          // Gamma_S |G|^2 f_S
        w_full += -2.0 * g.diag[0].imag() * de;              // i(G - G+)
    }
    CHECK(w_occ / w_full == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("Kramers weight: isolated filled level integrates to 2 electrons") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    contacts ct;
    ct.temperature = 300.0;
    ct.mu_s = ct.mu_d = 0.36; // well level ~0.10 eV sits ~10 kT below mu, inside the lead band
    engine_options opt;
    opt.parallel = false;
    warning_log wl;
    const energy_grid g = build_energy_grid(h, ct, 0.28265, 200000, opt, &wl);
    const spectrum sp = negf_sweep(h, g, ct, 0.28265, opt);
    double q = 0.0;
    for (int i = 18; i < 54; ++i) q += sp.n_line[i] * 0.28265; // well neighborhood
    CHECK(q == doctest::Approx(2.0).epsilon(0.005));
}

TEST_CASE("zero bias current is identically zero") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    contacts ct;
    ct.temperature = 300.0;
    ct.mu_s = ct.mu_d = 0.02;
    engine_options opt;
    opt.parallel = false;
    warning_log wl;
    const energy_grid g = build_energy_grid(h, ct, 0.28265, 100000, opt, &wl);
    const spectrum sp = negf_sweep(h, g, ct, 0.28265, opt);
    CHECK(sp.i0 == 0.0);
}

TEST_CASE("current antisymmetry for a particle-hole-symmetric toy") {
    // symmetric chain, level pinned at mu: I(-V) = -I(V)
    const mode_hamiltonian h = well_chain(71, 0.55, -0.20, 9);
    // locate the well resonance: lowest isolated level
    const auto levels = estimate_levels(h, 0.005, 0.4);
    REQUIRE(!levels.empty());
    const double mu0 = levels[0].e_iso + levels[0].shift.real();
    engine_options opt;
    opt.parallel = false;
    auto current_at = [&](double vd) {
        contacts ct;
        ct.temperature = 300.0;
        ct.mu_s = mu0;
        ct.mu_d = mu0 - vd;
        warning_log wl;
        const energy_grid g = build_energy_grid(h, ct, 0.28265, 100000, opt, &wl);
        const spectrum sp = negf_sweep(h, g, ct, 0.28265, opt);
        return sp.i0;
    };
    const double ip = current_at(0.02);
    const double im = current_at(-0.02);
    CHECK(ip > 0.0);
    CHECK(im == doctest::Approx(-ip).epsilon(5e-3));
}

TEST_CASE("current grows with drain bias at fixed gates") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    const auto levels = estimate_levels(h, 0.005, 0.4);
    REQUIRE(!levels.empty());
    const double mu0 = levels[0].e_iso + 0.005;
    engine_options opt;
    opt.parallel = false;
    double prev = -1.0;
    for (double vd : {0.0, 0.01, 0.02, 0.03, 0.05}) {
        contacts ct;
        ct.temperature = 300.0;
        ct.mu_s = mu0;
        ct.mu_d = mu0 - vd;
        warning_log wl;
        const energy_grid g = build_energy_grid(h, ct, 0.28265, 100000, opt, &wl);
        const spectrum sp = negf_sweep(h, g, ct, 0.28265, opt);
        CHECK(sp.i0 >= prev);
        prev = sp.i0;
    }
}

TEST_CASE("serial and parallel sweeps produce identical results") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    contacts ct;
    ct.temperature = 300.0;
    ct.mu_s = 0.02;
    ct.mu_d = -0.02;
    engine_options opt;
    opt.parallel = false;
    warning_log wl;
    const energy_grid g = build_energy_grid(h, ct, 0.28265, 100000, opt, &wl);
    const spectrum s1 = negf_sweep_serial(h, g, ct, 0.28265, opt);
    engine_options popt = opt;
    popt.parallel = true;
    const spectrum s2 = negf_sweep(h, g, ct, 0.28265, popt);
    CHECK(s1.i0 == s2.i0);
    for (size_t i = 0; i < s1.n_line.size(); ++i) CHECK(s1.n_line[i] == s2.n_line[i]);
    for (size_t k = 0; k < s1.t_total.size(); ++k) CHECK(s1.t_total[k] == s2.t_total[k]);
}

TEST_CASE("adaptive grid: flat transmission needs no refinement, narrow peaks get spacing <= width/8") {
    const mode_hamiltonian h = well_chain(72, 0.55, -0.20, 9);
    contacts ct;
    ct.temperature = 300.0;
    ct.mu_s = 0.02;
    ct.mu_d = 0.02;
    engine_options opt;
    opt.parallel = false;
    warning_log wl;
    const energy_grid g = build_energy_grid(h, ct, 0.28265, 200000, opt, &wl);
    CHECK(!g.budget_exhausted);
    CHECK(std::is_sorted(g.e.begin(), g.e.end()));
    double wsum = 0.0;
    for (double w : g.w) {
        CHECK(w > 0.0);
        wsum += w;
    }
    CHECK(wsum == doctest::Approx(g.e.back() - g.e.front()).epsilon(1e-12));
    for (const auto& r : g.resonances) {
        if (r.center < g.e.front() || r.center > g.e.back()) continue;
        CHECK(g.min_spacing_near(r.center, 4 * r.width) <= r.width / 8.0 * (1 + 1e-9));
    }
}

TEST_CASE("grid coverage violation raises an explicit error") {
    energy_grid g;
    g.e = {0.0, 0.1, 0.2};
    g.compute_weights();
    contacts ct;
    ct.mu_s = 0.05;
    ct.mu_d = 0.0;
    ct.temperature = 300.0;
    std::vector<double> t = {0.1, 0.1, 0.1};
    CHECK_THROWS_AS(current_amplitude(g, t, ct), numerical_error);
}
