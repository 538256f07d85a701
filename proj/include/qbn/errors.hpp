#ifndef QBN_ERRORS_HPP
#define QBN_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace qbn {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct geometry_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// accumulated non-fatal diagnostics; every warning must surface in the run manifest
class warning_log {
public:
    void add(std::string msg) { msgs_.push_back(std::move(msg)); }
    void merge(const warning_log& other) {
        msgs_.insert(msgs_.end(), other.msgs_.begin(), other.msgs_.end());
    }
    const std::vector<std::string>& messages() const { return msgs_; }
    bool empty() const { return msgs_.empty(); }

private:
    std::vector<std::string> msgs_;
};

} // namespace qbn

#endif
