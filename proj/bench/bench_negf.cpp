// Serial vs OpenMP comparison of the energy-sweep kernel on the default
// device at a representative biased potential.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qbn/scf.hpp"

using namespace qbn;

namespace {

double wall(const std::function<void()>& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double>(t1 - t0).count();
}

} // namespace

int main() {
    run_params p;
    p.bias.vg1 = 1.15;
    p.bias.vg2 = 1.342;
    p.bias.vd = 0.042;
    const device_context ctx = make_device_context(p);

    // representative potential: one damped Poisson pass from zero density
    const poisson_operator pop = make_poisson_operator(ctx.grid, p.device, p.material, p.bias);
    const std::vector<double> phi = poisson_solve(pop, std::vector<double>(ctx.grid.n, 0.0));
    const subband_ladder lad = make_subband_ladder(ctx.modes, phi);
    const mode_hamiltonian h = build_hamiltonian(lad, p.material.m_star, ctx.grid.a);

    contacts ct;
    ct.mu_s = ctx.contact.mu;
    ct.mu_d = ct.mu_s - p.bias.vd;
    ct.temperature = p.material.temperature;

    engine_options opt;
    opt.parallel = false;
    warning_log wl;
    const energy_grid eg = build_energy_grid(h, ct, ctx.grid.a, p.numerics.grid_budget, opt, &wl);
    std::printf("energy grid: %zu points, %zu tracked resonances\n", eg.e.size(),
                eg.resonances.size());

    spectrum s_serial, s_par;
    const int reps = 5;
    double t_serial = 1e300, t_par = 1e300;
    for (int r = 0; r < reps; ++r) {
        t_serial = std::min(t_serial, wall([&] {
            s_serial = negf_sweep_serial(h, eg, ct, ctx.grid.a, opt);
        }));
    }
    engine_options popt = opt;
    popt.parallel = true;
    for (int r = 0; r < reps; ++r) {
        t_par = std::min(t_par, wall([&] { s_par = negf_sweep(h, eg, ct, ctx.grid.a, popt); }));
    }

    double dmax = 0.0;
    for (size_t i = 0; i < s_serial.n_line.size(); ++i)
        dmax = std::max(dmax, std::abs(s_serial.n_line[i] - s_par.n_line[i]));

    int threads = 1;
#ifdef _OPENMP
    threads = omp_get_max_threads();
#endif
    std::printf("serial sweep:   %.4f s  (%.0f points/s)\n", t_serial, eg.e.size() / t_serial);
    std::printf("openmp sweep:   %.4f s  (%.0f points/s, %d threads)\n", t_par,
                eg.e.size() / t_par, threads);
    std::printf("speedup:        %.2fx\n", t_serial / t_par);
    std::printf("max |n_serial - n_parallel|: %.3e (must be 0)\n", dmax);
    std::printf("I0 serial = %.12e A, parallel = %.12e A\n", s_serial.i0, s_par.i0);
    return dmax == 0.0 && s_serial.i0 == s_par.i0 ? 0 : 1;
}
