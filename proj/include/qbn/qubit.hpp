#ifndef QBN_QUBIT_HPP
#define QBN_QUBIT_HPP

#include <vector>

#include "qbn/scf.hpp"

namespace qbn {

// dot regions bounded by the potential-barrier maxima flanking each gate,
// recomputed per bias from the converged ground-mode sub-band profile
struct dot_regions {
    int b0 = 0; // barrier between source and QD-1
    int b1 = 0; // inter-dot barrier
    int b2 = 0; // barrier between QD-2 and drain
};

dot_regions find_dot_regions(const axial_grid& grid, const subband_ladder& ladder);

struct positional_probability {
    std::vector<double> p;    // normalized over both dots, zero outside
    double p_left = 0.0;
    double p_right = 0.0;
    double dot_charge = 0.0;  // electrons inside the two dots
    bool initialized = false; // false = empty-dot regime, not an error
};

positional_probability dot_probability(const std::vector<double>& n_line,
                                       const axial_grid& grid, const dot_regions& dots);

enum class dot_site { start, central, end };

struct qubit_state {
    double p_left = 0.0, p_right = 0.0;
    double theta = 0.0; // rad, polar
    double phi = 0.0;   // rad, azimuthal (Green's-phase difference)
    bias_point bias;
    bool defined = false;
};

// converged SCF at vd = 0 -> Bloch angles; phi from the phase difference of the
// energy-integrated occupied local Green's function at analogous dot points
qubit_state bloch_angles(const device_context& ctx, const bias_point& bias,
                         dot_site site = dot_site::central, bool parallel = true);

struct occupancy_onsets {
    double vg1_ground = 0.0;   // dot-1 charge crosses 0.5 e
    double vg1_excited = 0.0;  // dot-1 charge crosses 1.5 e
    double vg2_deloc = 0.0;    // p_right crosses 0.05
};

occupancy_onsets occupancy_thresholds(const device_context& ctx, bool parallel = true);

struct stability_map {
    std::vector<double> vg1, vg2; // axes
    std::vector<double> i0;       // row-major [i1 * vg2.size() + i2], A
    std::vector<int> holes;       // flat indices of non-converged points
    struct maximum {
        double vg1, vg2, i0;
    };
    std::vector<maximum> maxima;             // sorted by current, descending
    std::vector<std::pair<double, double>> ridge; // per-vg1 argmax trace

    double at(size_t i1, size_t i2) const { return i0[i1 * vg2.size() + i2]; }
};

stability_map stability_diagram(const device_context& ctx, std::vector<double> vg1_axis,
                                std::vector<double> vg2_axis, double vd,
                                warning_log* warn = nullptr);

} // namespace qbn

#endif
