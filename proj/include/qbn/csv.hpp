#ifndef QBN_CSV_HPP
#define QBN_CSV_HPP

#include <chrono>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "qbn/config.hpp"
#include "qbn/errors.hpp"

namespace qbn {

inline std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline std::string format_num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// CSV with a manifest-hash comment line; the timestamp lives only in the
// header so bodies stay byte-identical across reruns and worker counts
class csv_writer {
public:
    csv_writer(const std::string& path, const std::string& subcommand,
               const std::string& manifest_hash, const std::string& columns)
        : out_(path) {
        if (!out_) throw config_error("cannot open output file " + path);
        out_ << "# qbitnegf " << subcommand << " manifest=" << manifest_hash
             << " generated=" << iso_timestamp() << "\n";
        out_ << columns << "\n";
    }

    void row(const std::vector<double>& vals) {
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) out_ << ",";
            out_ << format_num(vals[i]);
        }
        out_ << "\n";
    }

    void comment(const std::string& text) { out_ << "# " << text << "\n"; }

private:
    std::ofstream out_;
};

struct stage_time {
    std::string name;
    double seconds;
};

// one manifest per run; every CSV references it through the hash
inline void write_manifest(const std::string& dir, const std::string& hash,
                           const run_params& params, const std::string& subcommand,
                           const std::vector<stage_time>& stages,
                           const std::vector<std::string>& warnings) {
    std::ofstream out(dir + "/manifest-" + hash + ".txt");
    if (!out) throw config_error("cannot write manifest in " + dir);
    out << "qbitnegf run manifest\n";
    out << "version = 0.1.0\n";
    out << "subcommand = " << subcommand << "\n";
    out << "hash = " << hash << "\n";
    out << "timestamp = " << iso_timestamp() << "\n\n";
    out << resolved_config_text(params);
    out << "\n[timings]\n";
    for (const auto& s : stages) out << s.name << " = " << format_num(s.seconds) << " s\n";
    out << "\n[warnings]\n";
    if (warnings.empty()) out << "none\n";
    for (const auto& w : warnings) out << w << "\n";
}

} // namespace qbn

#endif
