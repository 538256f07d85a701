#include "qbn/qubit.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qbn {

namespace {

int argmax_range(const std::vector<double>& v, int lo, int hi) {
    int best = lo;
    for (int i = lo; i < hi; ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

} // namespace

dot_regions find_dot_regions(const axial_grid& grid, const subband_ladder& ladder) {
    const auto& e1 = ladder.e_sub[0];
    const int c1 = (grid.first(region::gate1) + grid.end(region::gate1)) / 2;
    const int c2 = (grid.first(region::gate2) + grid.end(region::gate2)) / 2;
    dot_regions d;
    d.b0 = argmax_range(e1, 0, c1);
    d.b1 = argmax_range(e1, c1, c2);
    d.b2 = argmax_range(e1, c2, grid.n);
    return d;
}

positional_probability dot_probability(const std::vector<double>& n_line,
                                       const axial_grid& grid, const dot_regions& dots) {
    positional_probability out;
    out.p.assign(grid.n, 0.0);
    double left = 0.0, right = 0.0;
    for (int i = dots.b0; i < dots.b1; ++i) left += n_line[i] * grid.a;
    for (int i = dots.b1; i <= dots.b2; ++i) right += n_line[i] * grid.a;
    out.dot_charge = left + right;
    if (out.dot_charge < 1e-3) return out; // empty-dot regime: no initialization
    out.initialized = true;
    out.p_left = left / out.dot_charge;
    out.p_right = right / out.dot_charge;
    for (int i = dots.b0; i <= dots.b2; ++i)
        out.p[i] = n_line[i] / out.dot_charge;
    return out;
}

qubit_state bloch_angles(const device_context& ctx, const bias_point& bias, dot_site site,
                         bool parallel) {
    // first a lean pass to locate the barrier maxima at this bias
    engine_options lean;
    lean.parallel = parallel;
    scf_result scf = scf_iterate(ctx, bias, lean);
    const dot_regions dots = find_dot_regions(ctx.grid, scf.ladder);

    auto pick = [&](int lo, int hi) {
        switch (site) {
            case dot_site::start: return lo;
            case dot_site::end: return hi;
            default: return (lo + hi) / 2;
        }
    };
    engine_options opt;
    opt.parallel = parallel;
    opt.bloch = true;
    opt.bloch_site_left = pick(dots.b0 + 1, dots.b1 - 1);
    opt.bloch_site_right = pick(dots.b1 + 1, dots.b2 - 1);
    warning_log wl;
    const energy_grid eg = build_energy_grid(scf.hmat, scf.ct, ctx.grid.a,
                                             ctx.params.numerics.grid_budget, opt, &wl);
    const spectrum sp = negf_sweep(scf.hmat, eg, scf.ct, ctx.grid.a, opt);

    qubit_state q;
    q.bias = bias;
    const positional_probability pp = dot_probability(sp.n_line, ctx.grid, dots);
    if (!pp.initialized) return q; // empty dots: angles undefined
    q.defined = true;
    q.p_left = pp.p_left;
    q.p_right = pp.p_right;
    q.theta = 2.0 * std::acos(std::sqrt(std::clamp(pp.p_left, 0.0, 1.0)));
    q.phi = std::arg(sp.g_occ_right) - std::arg(sp.g_occ_left);
    return q;
}

namespace {

struct charge_probe {
    double dot1_charge = 0.0;
    double p_right = 0.0;
};

charge_probe probe(const device_context& ctx, double vg1, double vg2, bool parallel) {
    bias_point b;
    b.vg1 = vg1;
    b.vg2 = vg2;
    engine_options lean;
    lean.parallel = parallel;
    const scf_result scf = scf_iterate(ctx, b, lean);
    const dot_regions dots = find_dot_regions(ctx.grid, scf.ladder);
    charge_probe out;
    for (int i = dots.b0; i < dots.b1; ++i) out.dot1_charge += scf.n_line[i] * ctx.grid.a;
    const positional_probability pp = dot_probability(scf.n_line, ctx.grid, dots);
    out.p_right = pp.p_right;
    return out;
}

double bisect_onset(const device_context& ctx, double lo, double hi,
                    const std::function<double(double)>& f, double target,
                    const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (!(flo < target && fhi > target))
        throw numerical_error(std::string("occupancy_thresholds: ") + what +
                              " does not bracket the crossing (" + std::to_string(flo) + ", " +
                              std::to_string(fhi) + ")");
    for (int it = 0; it < 24 && hi - lo > 2e-4; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm < target) { lo = mid; flo = fm; }
        else { hi = mid; fhi = fm; }
    }
    return 0.5 * (lo + hi);
}

} // namespace

occupancy_onsets occupancy_thresholds(const device_context& ctx, bool parallel) {
    occupancy_onsets out;
    const double vg2_base = 1.0; // below the delocalization regime
    out.vg1_ground = bisect_onset(
        ctx, 0.8, 1.45,
        [&](double v) { return probe(ctx, v, vg2_base, parallel).dot1_charge; }, 0.5,
        "ground-state onset scan");
    out.vg1_excited = bisect_onset(
        ctx, out.vg1_ground + 0.05, 2.1,
        [&](double v) { return probe(ctx, v, vg2_base, parallel).dot1_charge; }, 1.5,
        "first-excited onset scan");
    const double vg1_fix = out.vg1_ground + 0.05;
    out.vg2_deloc = bisect_onset(
        ctx, 0.9, 1.7,
        [&](double v) { return probe(ctx, vg1_fix, v, parallel).p_right; }, 0.05,
        "delocalization onset scan");
    return out;
}

stability_map stability_diagram(const device_context& ctx, std::vector<double> vg1_axis,
                                std::vector<double> vg2_axis, double vd, warning_log* warn) {
    stability_map map;
    map.vg1 = std::move(vg1_axis);
    map.vg2 = std::move(vg2_axis);
    const size_t n1 = map.vg1.size(), n2 = map.vg2.size();
    map.i0.assign(n1 * n2, 0.0);
    std::vector<char> hole(n1 * n2, 0);

    // map points are independent cold SCF runs; the inner engine stays serial
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) collapse(2)
#endif
    for (long i1 = 0; i1 < static_cast<long>(n1); ++i1) {
        for (long i2 = 0; i2 < static_cast<long>(n2); ++i2) {
            bias_point b;
            b.vg1 = map.vg1[i1];
            b.vg2 = map.vg2[i2];
            b.vd = vd;
            engine_options lean;
            lean.parallel = false;
            try {
                const scf_result scf = scf_iterate(ctx, b, lean);
                if (!scf.converged) {
                    hole[i1 * n2 + i2] = 1;
                } else {
                    map.i0[i1 * n2 + i2] = scf.final_spectrum.i0;
                }
            } catch (const std::exception&) {
                hole[i1 * n2 + i2] = 1;
            }
        }
    }

    for (size_t k = 0; k < hole.size(); ++k)
        if (hole[k]) map.holes.push_back(static_cast<int>(k));
    if (warn && !map.holes.empty())
        warn->add("stability map: " + std::to_string(map.holes.size()) +
                  " non-converged points recorded as holes");

    // strict 8-neighbor local maxima
    for (size_t i1 = 0; i1 < n1; ++i1)
        for (size_t i2 = 0; i2 < n2; ++i2) {
            const double v = map.at(i1, i2);
            if (v <= 0.0) continue;
            bool top = true;
            for (int d1 = -1; d1 <= 1 && top; ++d1)
                for (int d2 = -1; d2 <= 1 && top; ++d2) {
                    if (d1 == 0 && d2 == 0) continue;
                    const long j1 = static_cast<long>(i1) + d1;
                    const long j2 = static_cast<long>(i2) + d2;
                    if (j1 < 0 || j2 < 0 || j1 >= static_cast<long>(n1) ||
                        j2 >= static_cast<long>(n2))
                        continue;
                    if (map.at(j1, j2) >= v) top = false;
                }
            if (top) map.maxima.push_back({map.vg1[i1], map.vg2[i2], v});
        }
    std::sort(map.maxima.begin(), map.maxima.end(),
              [](const auto& a, const auto& b) { return a.i0 > b.i0; });

    // ridge: per-vg1 argmax over vg2
    for (size_t i1 = 0; i1 < n1; ++i1) {
        size_t best = 0;
        for (size_t i2 = 1; i2 < n2; ++i2)
            if (map.at(i1, i2) > map.at(i1, best)) best = i2;
        map.ridge.emplace_back(map.vg1[i1], map.vg2[best]);
    }
    return map;
}

} // namespace qbn
