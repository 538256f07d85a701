#ifndef QBN_CONFIG_HPP
#define QBN_CONFIG_HPP

#include <string>

#include "qbn/params.hpp"

namespace qbn {

// Sectioned key-value config file ([geometry], [materials], [bias], [numerics]).
// Unknown sections or keys fail fast.
run_params parse_config_text(const std::string& text);
run_params load_config(const std::string& path);

// canonical dump of every resolved field, used for the manifest and its hash
std::string resolved_config_text(const run_params& p);

// FNV-1a 64-bit over the resolved config; identical configs hash identically
std::string config_hash(const run_params& p);

} // namespace qbn

#endif
