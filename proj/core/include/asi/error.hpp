#pragma once

#include <stdexcept>
#include <string>

namespace asi {

/// Violated precondition or broken internal contract (dimension mismatches,
/// missing history, indices out of range).
struct ContractViolation : std::logic_error {
    explicit ContractViolation(const std::string& what) : std::logic_error(what) {}
};

/// A parameter outside its documented domain (relaxation weight, block count, ...).
struct InvalidParameter : std::invalid_argument {
    explicit InvalidParameter(const std::string& what) : std::invalid_argument(what) {}
};

/// An update was produced from an iterate older than the configured cap.
struct StalenessViolation : std::runtime_error {
    explicit StalenessViolation(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {
inline void require(bool cond, const char* msg) {
    if (!cond) throw ContractViolation(msg);
}
inline void require_param(bool cond, const char* msg) {
    if (!cond) throw InvalidParameter(msg);
}
} // namespace detail

} // namespace asi
