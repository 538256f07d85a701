#include "qbn/scf.hpp"

#include <algorithm>
#include <cmath>

namespace qbn {

device_context make_device_context(const run_params& p) {
    p.validate();
    device_context ctx;
    ctx.params = p;
    ctx.grid = build_axial_grid(p.device);
    ctx.cs = make_cross_section_grid(p.device.radius, p.device.grid_spacing_a);
    ctx.modes = solve_transverse_modes(ctx.cs, p.material.m_star, p.numerics.n_modes);
    ctx.contact = contact_fermi_level(p.material.donor_density, p.material.m_star,
                                      p.material.temperature);
    return ctx;
}

scf_result scf_iterate(const device_context& ctx, const bias_point& bias,
                       const engine_options& final_opt,
                       const std::vector<double>* phi_init) {
    const auto& num = ctx.params.numerics;
    const auto& mat = ctx.params.material;
    const double a = ctx.grid.a;

    scf_result r;
    r.ct.mu_s = ctx.contact.mu;
    r.ct.mu_d = ctx.contact.mu - bias.vd;
    r.ct.temperature = mat.temperature;
    if (bias.out_of_regime())
        r.warnings.add("drain bias outside the small-bias measurement regime");

    const poisson_operator pop = make_poisson_operator(ctx.grid, ctx.params.device, mat, bias);

    r.phi = phi_init ? *phi_init : std::vector<double>(ctx.grid.n, 0.0);

    engine_options sweep_opt; // lean options inside the loop
    sweep_opt.parallel = final_opt.parallel;

    for (int it = 0; it < num.scf_max_iter; ++it) {
        const subband_ladder lad = make_subband_ladder(ctx.modes, r.phi);
        const mode_hamiltonian h = build_hamiltonian(lad, mat.m_star, a);
        const energy_grid eg =
            build_energy_grid(h, r.ct, a, num.grid_budget, sweep_opt, &r.warnings);
        const spectrum sp = negf_sweep(h, eg, r.ct, a, sweep_opt);
        const std::vector<double> phi_new = poisson_solve(pop, sp.n_line);

        double res = 0.0;
        for (int i = 0; i < ctx.grid.n; ++i)
            res = std::max(res, std::abs(phi_new[i] - r.phi[i]));
        r.residuals.push_back(res);
        for (int i = 0; i < ctx.grid.n; ++i)
            r.phi[i] = (1.0 - num.scf_beta) * r.phi[i] + num.scf_beta * phi_new[i];
        r.iterations = it + 1;
        if (res < num.scf_tol) {
            r.converged = true;
            break;
        }
    }
    if (!r.converged)
        r.warnings.add("scf did not converge in " + std::to_string(num.scf_max_iter) +
                       " iterations, last residual " + std::to_string(r.last_residual()) + " V");

    r.ladder = make_subband_ladder(ctx.modes, r.phi);
    r.hmat = build_hamiltonian(r.ladder, mat.m_star, a);
    const energy_grid eg =
        build_energy_grid(r.hmat, r.ct, a, num.grid_budget, final_opt, &r.warnings);
    r.final_spectrum = negf_sweep(r.hmat, eg, r.ct, a, final_opt);
    r.n_line = r.final_spectrum.n_line;
    return r;
}

} // namespace qbn
