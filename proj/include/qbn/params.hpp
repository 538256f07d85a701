#ifndef QBN_PARAMS_HPP
#define QBN_PARAMS_HPP

#include <cmath>
#include <string>

#include "qbn/errors.hpp"

namespace qbn {

// Geometry of one simulated device. All lengths in nm.
// The inter-gate gap is derived from the total channel length.
struct device_spec {
    double channel_length = 20.0;
    double radius         = 2.5;
    double gate1_length   = 3.0;
    double gate2_length   = 3.0;
    double source_to_gate1 = 3.0;
    double gate2_to_drain  = 8.0;
    double oxide_thickness = 2.0;
    double grid_spacing_a  = 0.28265; // half the GaAs lattice constant 0.5653 nm

    double inter_gate_gap() const {
        return channel_length - source_to_gate1 - gate1_length - gate2_length - gate2_to_drain;
    }

    void validate() const {
        auto pos = [](double v, const char* name) {
            if (!(v > 0.0)) throw geometry_error(std::string("device_spec: ") + name + " must be > 0");
        };
        pos(channel_length, "channel_length");
        pos(radius, "radius");
        pos(gate1_length, "gate1_length");
        pos(gate2_length, "gate2_length");
        pos(source_to_gate1, "source_to_gate1");
        pos(gate2_to_drain, "gate2_to_drain");
        pos(oxide_thickness, "oxide_thickness");
        pos(grid_spacing_a, "grid_spacing_a");
        if (!(inter_gate_gap() > 0.0))
            throw geometry_error("device_spec: derived inter_gate_gap must be > 0");
    }
};

struct material_params {
    double m_star      = 0.06;   // effective mass ratio
    double eps_nw_rel  = 12.9;   // GaAs
    double eps_ox_rel  = 3.9;    // SiO2
    double donor_density = 5e17; // 1/cm^3, source/drain doping
    double temperature = 300.0;  // K

    // electron-phonon parameters (GaAs literature values: acoustic deformation
    // potential |a_c| ~ 7 eV, rho = 5317 kg/m^3, LA sound velocity 4730 m/s,
    // LO phonon 35 meV; the acoustic energy is a zone-characteristic scale)
    double deformation_potential   = 7.0;    // eV
    double mass_density            = 5317.0; // kg/m^3
    double phonon_energy_acoustic  = 0.010;  // eV
    double phonon_energy_optical   = 0.035;  // eV
    double sound_velocity          = 4730.0; // m/s

    void validate() const {
        if (!(m_star > 0.0)) throw config_error("material_params: m_star must be > 0");
        if (eps_nw_rel < 1.0 || eps_ox_rel < 1.0)
            throw config_error("material_params: relative permittivities must be >= 1");
        if (!(temperature > 0.0)) throw config_error("material_params: temperature must be > 0");
        if (!(donor_density > 0.0)) throw config_error("material_params: donor_density must be > 0");
    }
};

struct bias_point {
    double vg1 = 0.0;       // V, gate-1
    double vg2 = 0.0;       // V, gate-2
    double delta_vg2 = 0.0; // V, pulse increment on gate-2
    double vd  = 0.0;       // V, drain

    // |vd| above the small-bias measurement regime is flagged, not rejected
    static constexpr double vd_regime_limit = 0.2;

    bool out_of_regime() const { return std::abs(vd) > vd_regime_limit; }

    void validate() const {
        if (!std::isfinite(vg1) || !std::isfinite(vg2) || !std::isfinite(delta_vg2) || !std::isfinite(vd))
            throw config_error("bias_point: all voltages must be finite");
    }

    double vg2_total() const { return vg2 + delta_vg2; }
};

struct numerics_params {
    int    n_modes       = 4;      // transverse modes kept
    double scf_tol       = 1e-6;   // V
    double scf_beta      = 0.2;    // under-relaxation mixing
    int    scf_max_iter  = 300;
    long   grid_budget   = 200000; // adaptive energy grid point budget
    double eta_iso       = 1e-10;  // eV, regularization of the isolated Green's function
    int    n_time        = 4096;   // time samples per trace
    int    stability_n1  = 21;     // stability map default grid
    int    stability_n2  = 21;
    bool   phonons       = false;  // electron-phonon self-energy off by default
    bool   phonon_real_part = false; // Hilbert real part of phonon self-energy (pure broadening when off)
    int    threads       = 0;      // 0 = hardware default / QBITNEGF_THREADS

    void validate() const {
        if (n_modes < 1) throw config_error("numerics: n_modes must be >= 1");
        if (!(scf_tol > 0.0)) throw config_error("numerics: scf_tol must be > 0");
        if (!(scf_beta > 0.0 && scf_beta <= 1.0)) throw config_error("numerics: scf_beta in (0,1]");
        if (scf_max_iter < 1) throw config_error("numerics: scf_max_iter must be >= 1");
        if (grid_budget < 100) throw config_error("numerics: grid_budget too small");
    }
};

struct run_params {
    device_spec device;
    material_params material;
    bias_point bias;
    numerics_params numerics;

    void validate() const {
        device.validate();
        material.validate();
        bias.validate();
        numerics.validate();
    }
};

} // namespace qbn

#endif
