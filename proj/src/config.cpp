#include "qbn/config.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace qbn {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_num(const std::string& v, const std::string& key) {
    try {
        size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw config_error("config: bad numeric value '" + v + "' for key " + key);
    }
}

bool to_bool(const std::string& v, const std::string& key) {
    if (v == "true" || v == "1" || v == "on") return true;
    if (v == "false" || v == "0" || v == "off") return false;
    throw config_error("config: bad boolean value '" + v + "' for key " + key);
}

} // namespace

run_params parse_config_text(const std::string& text) {
    run_params p;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw config_error("config: malformed section at line " +
                                                       std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (section != "geometry" && section != "materials" && section != "bias" &&
                section != "numerics")
                throw config_error("config: unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("config: expected key = value at line " + std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        auto num = [&] { return to_num(val, key); };

        if (section == "geometry") {
            if (key == "channel_length") p.device.channel_length = num();
            else if (key == "radius") p.device.radius = num();
            else if (key == "gate1_length") p.device.gate1_length = num();
            else if (key == "gate2_length") p.device.gate2_length = num();
            else if (key == "source_to_gate1") p.device.source_to_gate1 = num();
            else if (key == "gate2_to_drain") p.device.gate2_to_drain = num();
            else if (key == "oxide_thickness") p.device.oxide_thickness = num();
            else if (key == "grid_spacing_a") p.device.grid_spacing_a = num();
            else throw config_error("config: unknown key '" + key + "' in [geometry]");
        } else if (section == "materials") {
            if (key == "m_star") p.material.m_star = num();
            else if (key == "eps_nw_rel") p.material.eps_nw_rel = num();
            else if (key == "eps_ox_rel") p.material.eps_ox_rel = num();
            else if (key == "donor_density") p.material.donor_density = num();
            else if (key == "temperature") p.material.temperature = num();
            else if (key == "deformation_potential") p.material.deformation_potential = num();
            else if (key == "mass_density") p.material.mass_density = num();
            else if (key == "phonon_energy_acoustic") p.material.phonon_energy_acoustic = num();
            else if (key == "phonon_energy_optical") p.material.phonon_energy_optical = num();
            else if (key == "sound_velocity") p.material.sound_velocity = num();
            else throw config_error("config: unknown key '" + key + "' in [materials]");
        } else if (section == "bias") {
            if (key == "vg1") p.bias.vg1 = num();
            else if (key == "vg2") p.bias.vg2 = num();
            else if (key == "delta_vg2") p.bias.delta_vg2 = num();
            else if (key == "vd") p.bias.vd = num();
            else throw config_error("config: unknown key '" + key + "' in [bias]");
        } else if (section == "numerics") {
            if (key == "n_modes") p.numerics.n_modes = static_cast<int>(num());
            else if (key == "scf_tol") p.numerics.scf_tol = num();
            else if (key == "scf_beta") p.numerics.scf_beta = num();
            else if (key == "scf_max_iter") p.numerics.scf_max_iter = static_cast<int>(num());
            else if (key == "grid_budget") p.numerics.grid_budget = static_cast<long>(num());
            else if (key == "eta_iso") p.numerics.eta_iso = num();
            else if (key == "n_time") p.numerics.n_time = static_cast<int>(num());
            else if (key == "stability_n1") p.numerics.stability_n1 = static_cast<int>(num());
            else if (key == "stability_n2") p.numerics.stability_n2 = static_cast<int>(num());
            else if (key == "phonons") p.numerics.phonons = to_bool(val, key);
            else if (key == "phonon_real_part") p.numerics.phonon_real_part = to_bool(val, key);
            else if (key == "threads") p.numerics.threads = static_cast<int>(num());
            else throw config_error("config: unknown key '" + key + "' in [numerics]");
        } else {
            throw config_error("config: key '" + key + "' outside any section");
        }
    }
    p.validate();
    return p;
}

run_params load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw config_error("config: cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_config_text(ss.str());
}

std::string resolved_config_text(const run_params& p) {
    char buf[64];
    std::string s;
    auto kv = [&](const char* k, double v) {
        std::snprintf(buf, sizeof buf, "%s = %.17g\n", k, v);
        s += buf;
    };
    s += "[geometry]\n";
    kv("channel_length", p.device.channel_length);
    kv("radius", p.device.radius);
    kv("gate1_length", p.device.gate1_length);
    kv("gate2_length", p.device.gate2_length);
    kv("source_to_gate1", p.device.source_to_gate1);
    kv("gate2_to_drain", p.device.gate2_to_drain);
    kv("oxide_thickness", p.device.oxide_thickness);
    kv("grid_spacing_a", p.device.grid_spacing_a);
    s += "[materials]\n";
    kv("m_star", p.material.m_star);
    kv("eps_nw_rel", p.material.eps_nw_rel);
    kv("eps_ox_rel", p.material.eps_ox_rel);
    kv("donor_density", p.material.donor_density);
    kv("temperature", p.material.temperature);
    kv("deformation_potential", p.material.deformation_potential);
    kv("mass_density", p.material.mass_density);
    kv("phonon_energy_acoustic", p.material.phonon_energy_acoustic);
    kv("phonon_energy_optical", p.material.phonon_energy_optical);
    kv("sound_velocity", p.material.sound_velocity);
    s += "[bias]\n";
    kv("vg1", p.bias.vg1);
    kv("vg2", p.bias.vg2);
    kv("delta_vg2", p.bias.delta_vg2);
    kv("vd", p.bias.vd);
    s += "[numerics]\n";
    kv("n_modes", p.numerics.n_modes);
    kv("scf_tol", p.numerics.scf_tol);
    kv("scf_beta", p.numerics.scf_beta);
    kv("scf_max_iter", p.numerics.scf_max_iter);
    kv("grid_budget", static_cast<double>(p.numerics.grid_budget));
    kv("eta_iso", p.numerics.eta_iso);
    kv("n_time", p.numerics.n_time);
    kv("stability_n1", p.numerics.stability_n1);
    kv("stability_n2", p.numerics.stability_n2);
    kv("phonons", p.numerics.phonons ? 1 : 0);
    kv("phonon_real_part", p.numerics.phonon_real_part ? 1 : 0);
    return s;
}

std::string config_hash(const run_params& p) {
    const std::string text = resolved_config_text(p);
    uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace qbn
