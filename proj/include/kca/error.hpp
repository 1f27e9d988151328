#ifndef KCA_ERROR_HPP
#define KCA_ERROR_HPP

#include <stdexcept>
#include <string>

namespace kca {

// Bad user input: malformed files, out-of-domain parameters, size limits.
// The CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Broken internal invariant: a structural property that must hold by
// construction failed. The CLI maps this to exit code 3.
struct InvariantError : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require_config(bool cond, const std::string& msg) {
    if (!cond) throw ConfigError(msg);
}

inline void require_invariant(bool cond, const std::string& msg) {
    if (!cond) throw InvariantError(msg);
}

}  // namespace kca

#endif
