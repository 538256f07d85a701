#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbn/constants.hpp"
#include "qbn/hamiltonian.hpp"
#include "qbn/negf.hpp"
#include "qbn/subbands.hpp"
#include "qbn/tridiag.hpp"

using namespace qbn;

TEST_CASE("hopping energy from grid spacing and mass") {
    const double t = hopping_energy(0.06, 0.28265);
    CHECK(t == doctest::Approx(7.948).epsilon(2e-3));
    // doubling a quarters t exactly
    CHECK(hopping_energy(0.06, 2 * 0.28265) == doctest::Approx(t / 4.0).epsilon(1e-14));
    // m* doubled halves t exactly
    CHECK(hopping_energy(0.12, 0.28265) == doctest::Approx(t / 2.0).epsilon(1e-14));
}

TEST_CASE("two-site chain eigenvalues {t, 3t}") {
    // matrix [[2t,-t],[-t,2t]]
    const double t = 1.7;
    const double disc = t; // eigenvalues 2t -/+ t
    CHECK(2 * t - disc == doctest::Approx(t));
    CHECK(2 * t + disc == doctest::Approx(3 * t));
    // via the tridiagonal inverse at a probe energy: poles of G
    std::vector<cplx> a = {cplx(t, 1e-9) - 2 * t, cplx(t, 1e-9) - 2 * t};
    // A = E - H at E = t + i eta: det = (E-2t)^2 - t^2 -> 0 at E = t exactly
    const tridiag_inverse g = tridiag_invert(a, t);
    CHECK(std::abs(g.diag[0]) > 1e8); // resonant
}

TEST_CASE("lead self-energy: band edge, center, and evanescent branch") {
    const double t = 7.948;
    const double eb = 0.35;
    // band bottom: sigma = -t
    const cplx s_bottom = lead_self_energy(eb, eb, t);
    CHECK(s_bottom.real() == doctest::Approx(-t));
    CHECK(s_bottom.imag() == doctest::Approx(0.0));
    // band center: sigma = -i t
    const cplx s_mid = lead_self_energy(eb + 2 * t, eb, t);
    CHECK(s_mid.real() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(s_mid.imag() == doctest::Approx(-t));
    // far below band: real, |sigma| < t, matches the surface recursion
    const cplx s_low = lead_self_energy(eb - 10 * t, eb, t);
    CHECK(s_low.imag() == 0.0);
    CHECK(std::abs(s_low) < t);
}

TEST_CASE("lead self-energy satisfies the surface recursion over a 2000-point scan") {
    const double t = 7.948, eb = 0.0;
    for (int k = 0; k < 2000; ++k) {
        const double e = -5.0 + 45.0 * k / 1999.0; // spans below, inside, above band
        const cplx s = lead_self_energy(e, eb, t);
        const cplx rhs = t * t / (cplx(e - eb - 2 * t, 0) - s);
        CHECK(std::abs(s - rhs) < 1e-11);
        CHECK(s.imag() <= 1e-15); // retarded branch
    }
}

TEST_CASE("lead self-energy continuous across band edges") {
    const double t = 3.0, eb = 0.1;
    for (double edge : {eb, eb + 4 * t}) {
        const cplx below = lead_self_energy(edge - 1e-9, eb, t);
        const cplx above = lead_self_energy(edge + 1e-9, eb, t);
        CHECK(std::abs(below - above) < 1e-3);
    }
}

TEST_CASE("tridiagonal inverse: identity check at random energies") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ud(-1.0, 1.0);
    const int n = 37;
    const double t = 7.948;
    for (int rep = 0; rep < 100; ++rep) {
        std::vector<cplx> a(n);
        for (int i = 0; i < n; ++i) a[i] = cplx(ud(rng) * 10.0, -std::abs(ud(rng)) - 1e-6);
        const tridiag_inverse g = tridiag_invert(a, t);
        // verify A G e_last = e_last and A G e_first = e_first column-wise
        auto check_col = [&](const std::vector<cplx>& col, int unit) {
            for (int i = 0; i < n; ++i) {
                cplx r = a[i] * col[i];
                if (i > 0) r += t * col[i - 1];
                if (i + 1 < n) r += t * col[i + 1];
                const double expect = i == unit ? 1.0 : 0.0;
                CHECK(std::abs(r - expect) < 1e-10);
            }
        };
        check_col(g.col_first, 0);
        check_col(g.col_last, n - 1);
    }
}

TEST_CASE("tridiagonal row reconstruction matches the columns") {
    const int n = 21;
    const double t = 2.5;
    std::vector<cplx> a(n);
    for (int i = 0; i < n; ++i) a[i] = cplx(5.0 + 0.1 * i, -0.3);
    const tridiag_inverse g = tridiag_invert(a, t);
    std::vector<cplx> row;
    tridiag_row(g, t, 0, row);
    for (int j = 0; j < n; ++j) CHECK(std::abs(row[j] - g.col_first[j]) < 1e-13);
    tridiag_row(g, t, n - 1, row);
    for (int j = 0; j < n; ++j) CHECK(std::abs(row[j] - g.col_last[j]) < 1e-13);
}

namespace {

// one-site toy device: H = [eps] with both contacts wide-band (constant -i gamma/2)
struct one_site {
    double eps, gs, gd;
    cplx g(double e) const { return 1.0 / cplx(e - eps, 0.5 * (gs + gd)); }
    double transmission(double e) const { return gs * gd * std::norm(g(e)); }
};

} // namespace

TEST_CASE("one-site toy: scalar Green's function and Breit-Wigner transmission") {
    const one_site toy{0.1, 2e-3, 2e-3};
    // |G| at resonance = 1/gamma
    CHECK(std::abs(toy.g(toy.eps)) == doctest::Approx(1.0 / (toy.gs)));
    // matched symmetric coupling gives T = 1 on resonance
    CHECK(toy.transmission(toy.eps) == doctest::Approx(1.0));
    // closed-form Lorentzian across +-50 linewidths
    for (int k = -50; k <= 50; ++k) {
        const double e = toy.eps + k * (toy.gs + toy.gd) * 0.5;
        const double bw = toy.gs * toy.gd /
                          (std::pow(e - toy.eps, 2) + std::pow(0.5 * (toy.gs + toy.gd), 2));
        CHECK(toy.transmission(e) == doctest::Approx(bw).epsilon(1e-12));
    }
}

TEST_CASE("hamiltonian assembly: linearity in the sub-band offset") {
    transverse_modes tm;
    tm.energy = {0.5, 1.4};
    tm.chi = {{1.0}, {1.0}};
    std::vector<double> phi(10, 0.0);
    const subband_ladder l0 = make_subband_ladder(tm, phi);
    const mode_hamiltonian h0 = build_hamiltonian(l0, 0.06, 0.28265);
    // adding a constant to E_sub shifts all eigenvalues by exactly that constant
    for (auto& p : phi) p = -0.37; // shifts E_sub by +0.37
    const subband_ladder l1 = make_subband_ladder(tm, phi);
    const mode_hamiltonian h1 = build_hamiltonian(l1, 0.06, 0.28265);
    for (int m = 0; m < 2; ++m)
        for (int i = 0; i < 10; ++i)
            CHECK(h1.diag[m][i] - h0.diag[m][i] == doctest::Approx(0.37).epsilon(1e-14));
}

TEST_CASE("subband ladder: gate dip is exactly linear in phi") {
    transverse_modes tm;
    tm.energy = {0.588};
    tm.chi = {{1.0}};
    std::vector<double> phi(20, 0.0), phi1(20, 0.0), phi2(20, 0.0);
    for (int i = 5; i < 10; ++i) phi1[i] = 1.15;
    for (int i = 0; i < 20; ++i) phi2[i] = 0.2 + 0.01 * i;
    const auto lad0 = make_subband_ladder(tm, phi);
    const auto lad1 = make_subband_ladder(tm, phi1);
    const auto lad2 = make_subband_ladder(tm, phi2);
    std::vector<double> phi12(20);
    for (int i = 0; i < 20; ++i) phi12[i] = phi1[i] + phi2[i];
    const auto lad12 = make_subband_ladder(tm, phi12);
    for (int i = 0; i < 20; ++i) {
        CHECK(lad1.e_sub[0][i] - lad0.e_sub[0][i] == doctest::Approx(-phi1[i]));
        // ladder(phi1+phi2) - ladder(phi2) = ladder(phi1) - ladder(0) pointwise
        CHECK(lad12.e_sub[0][i] - lad2.e_sub[0][i] ==
              doctest::Approx(lad1.e_sub[0][i] - lad0.e_sub[0][i]).epsilon(1e-14));
    }
}
