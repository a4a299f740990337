#pragma once

#include <stdexcept>
#include <string>

namespace balcert {

// Certification still failed after escalating to the precision cap.
// The CLI maps this to exit code 2.
struct precision_cap_error : std::runtime_error {
    explicit precision_cap_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A precondition or domain restriction was violated (bad argument, log of a
// non-positive interval, division by an interval containing zero, ...).
struct domain_error : std::runtime_error {
    explicit domain_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A reduction or verification step failed in a way that leaves the overall
// claim unproven (e.g. no convergent certifies epsilon > 0).
struct reduction_failure : std::runtime_error {
    explicit reduction_failure(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace balcert
