#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qbn/constants.hpp"
#include "qbn/cross_section.hpp"

using namespace qbn;

namespace {
constexpr double j01 = 2.404825557695773; // first zero of J0
constexpr double j11 = 3.831705970207512; // first zero of J1

double bessel_ground(double m_star, double radius) {
    return c::hbar2_2m0 * j01 * j01 / (m_star * radius * radius);
}
} // namespace

TEST_CASE("cross-section grid: symmetric mask, positive interior count") {
    const cross_section_grid g = make_cross_section_grid(2.5, 0.28265);
    CHECK(g.n_interior > 0);
    const int side = g.side();
    for (int ix = 0; ix < side; ++ix)
        for (int iy = 0; iy < side; ++iy) {
            const bool in1 = g.at(ix, iy) >= 0;
            CHECK(in1 == (g.at(iy, ix) >= 0));                  // x <-> y
            CHECK(in1 == (g.at(side - 1 - ix, iy) >= 0));       // x -> -x
            CHECK(in1 == (g.at(ix, side - 1 - iy) >= 0));       // y -> -y
        }
}

TEST_CASE("transverse solver: circular-well Bessel oracle within 3% at default spacing") {
    const cross_section_grid g = make_cross_section_grid(2.5, 0.28265);
    const transverse_modes tm = solve_transverse_modes(g, 0.06, 4);
    const double exact = bessel_ground(0.06, 2.5);
    CHECK(exact == doctest::Approx(0.588).epsilon(2e-3));
    CHECK(tm.energy[0] == doctest::Approx(exact).epsilon(0.03));
    // first excited transverse level doubly degenerate (j11 modes)
    CHECK(std::abs(tm.energy[1] - tm.energy[2]) < 1e-6);
    const double exact2 = c::hbar2_2m0 * j11 * j11 / (0.06 * 2.5 * 2.5);
    CHECK(tm.energy[1] == doctest::Approx(exact2).epsilon(0.05));
}

TEST_CASE("transverse solver: error strictly decreases as a -> a/2 -> a/4") {
    const double exact = bessel_ground(0.06, 2.5);
    double prev_err = 1e9;
    for (double a : {0.28265, 0.28265 / 2, 0.28265 / 4}) {
        const cross_section_grid g = make_cross_section_grid(2.5, a);
        const transverse_modes tm = solve_transverse_modes(g, 0.06, 1);
        const double err = std::abs(tm.energy[0] - exact);
        CHECK(err < prev_err);
        prev_err = err;
    }
}

TEST_CASE("transverse solver: orthonormal eigenvectors, doubled mass halves energies") {
    const cross_section_grid g = make_cross_section_grid(2.5, 0.28265);
    const transverse_modes tm = solve_transverse_modes(g, 0.06, 4);
    for (int m = 0; m < 4; ++m)
        for (int n = 0; n < 4; ++n) {
            double dot = 0.0;
            for (int i = 0; i < g.n_interior; ++i) dot += tm.chi[m][i] * tm.chi[n][i];
            CHECK(std::abs(dot - (m == n ? 1.0 : 0.0)) < 1e-10);
        }
    const transverse_modes tm2 = solve_transverse_modes(g, 0.12, 4);
    for (int m = 0; m < 4; ++m)
        CHECK(tm2.energy[m] == doctest::Approx(tm.energy[m] / 2.0).epsilon(1e-12));
}

TEST_CASE("transverse solver: deterministic orientation of the degenerate pair") {
    const cross_section_grid g = make_cross_section_grid(2.5, 0.28265);
    const transverse_modes t1 = solve_transverse_modes(g, 0.06, 4);
    const transverse_modes t2 = solve_transverse_modes(g, 0.06, 4);
    for (int m = 0; m < 4; ++m)
        for (int i = 0; i < g.n_interior; ++i)
            CHECK(t1.chi[m][i] == t2.chi[m][i]);
    // the oriented pair is x-like then y-like
    double dx1 = 0, dy1 = 0, dx2 = 0, dy2 = 0;
    for (int i = 0; i < g.n_interior; ++i) {
        dx1 += g.x[i] * t1.chi[1][i];
        dy1 += g.y[i] * t1.chi[1][i];
        dx2 += g.x[i] * t1.chi[2][i];
        dy2 += g.y[i] * t1.chi[2][i];
    }
    CHECK(std::abs(dy1) < 1e-8);
    CHECK(std::abs(dx2) < 1e-8);
    CHECK(dx1 > 0.1);
    CHECK(dy2 > 0.1);
}

TEST_CASE("box formula: paper constant and limits") {
    // (2,1,1)-(1,1,1) for 5x5x3 nm^3 at m*=0.06 equals 0.7525 eV exactly
    const double gap = box_level(2, 1, 1, 5, 5, 3, 0.06) - box_level(1, 1, 1, 5, 5, 3, 0.06);
    CHECK(gap == doctest::Approx(0.7525).epsilon(1e-12));
    // free-particle limit
    CHECK(box_level(1, 1, 1, 1e6, 1e6, 1e6, 0.06) == doctest::Approx(0.0).epsilon(1e-9));
    // spacing scales as 0.06/m*
    const double gap2 = box_level(2, 1, 1, 5, 5, 3, 0.12) - box_level(1, 1, 1, 5, 5, 3, 0.12);
    CHECK(gap2 == doctest::Approx(0.7525 * 0.06 / 0.12).epsilon(1e-12));
}

TEST_CASE("3D finite-difference box solver matches the analytic formula within 2%") {
    const auto levels = box_fd_levels(5.0, 5.0, 3.0, 0.28265, 0.06, 4);
    const double e111 = box_level(1, 1, 1, 5, 5, 3, 0.06);
    const double e211 = box_level(2, 1, 1, 5, 5, 3, 0.06);
    CHECK(levels[0] == doctest::Approx(e111).epsilon(0.02));
    // second and third are the degenerate (2,1,1)/(1,2,1) pair
    CHECK(levels[1] == doctest::Approx(e211).epsilon(0.02));
    CHECK((levels[1] - levels[0]) == doctest::Approx(0.7525).epsilon(0.02));
}
