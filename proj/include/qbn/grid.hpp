#ifndef QBN_GRID_HPP
#define QBN_GRID_HPP

#include <array>
#include <string>
#include <vector>

#include "qbn/params.hpp"

namespace qbn {

enum class region : int { source_ext = 0, gate1 = 1, gap = 2, gate2 = 3, drain_ext = 4 };

inline const char* region_name(region r) {
    switch (r) {
        case region::source_ext: return "source-ext";
        case region::gate1:      return "gate1";
        case region::gap:        return "gap";
        case region::gate2:      return "gate2";
        case region::drain_ext:  return "drain-ext";
    }
    return "?";
}

// Axial grid: N = round(L/a) + 1 points, each labeled with the device region
// it falls in. Nominal region boundaries snap to the nearest grid point; the
// offsets introduced by snapping are kept for reporting.
struct axial_grid {
    double a = 0.0;
    int n = 0;
    std::vector<double> z;       // positions, nm
    std::vector<region> label;   // per point
    // first point index of each region (source_ext starts at 0); bound[5] = n
    std::array<int, 6> bound{};
    std::array<double, 5> snap_offset{}; // snapped minus nominal start, nm

    int first(region r) const { return bound[static_cast<int>(r)]; }
    int end(region r) const { return bound[static_cast<int>(r) + 1]; }
    int count(region r) const { return end(r) - first(r); }
};

inline axial_grid build_axial_grid(const device_spec& spec) {
    spec.validate();
    const double a = spec.grid_spacing_a;
    const double L = spec.channel_length;
    const int n = static_cast<int>(std::lround(L / a)) + 1;

    // nominal region start positions
    const double z_g1  = spec.source_to_gate1;
    const double z_gap = z_g1 + spec.gate1_length;
    const double z_g2  = z_gap + spec.inter_gate_gap();
    const double z_de  = z_g2 + spec.gate2_length;

    axial_grid g;
    g.a = a;
    g.n = n;
    g.z.resize(n);
    for (int i = 0; i < n; ++i) g.z[i] = i * a;

    auto snap = [&](double znom) { return static_cast<int>(std::lround(znom / a)); };
    g.bound = {0, snap(z_g1), snap(z_gap), snap(z_g2), snap(z_de), n};
    const double nominal[5] = {0.0, z_g1, z_gap, z_g2, z_de};
    for (int r = 0; r < 5; ++r) {
        g.snap_offset[r] = g.bound[r] * a - nominal[r];
        if (g.bound[r + 1] - g.bound[r] < 2)
            throw geometry_error(std::string("degenerate geometry: region ") +
                                 region_name(static_cast<region>(r)) +
                                 " shorter than 2 grid cells");
    }

    g.label.resize(n);
    for (int r = 0; r < 5; ++r)
        for (int i = g.bound[r]; i < g.bound[r + 1]; ++i)
            g.label[i] = static_cast<region>(r);
    return g;
}

} // namespace qbn

#endif
