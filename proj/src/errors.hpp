#pragma once

#include <stdexcept>
#include <string>

namespace rbc {

// Malformed external input (edge lists, certificates, CLI values).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A documented precondition failed; `detail` carries a JSON payload
// (typically a density witness) for the caller to surface.
struct precondition_error : std::runtime_error {
    std::string detail;
    precondition_error(const std::string& msg, std::string detail_json = "{}")
        : std::runtime_error(msg), detail(std::move(detail_json)) {}
};

// The case analysis reached a state the proof says cannot happen.
// `detail` serializes the offending component so the report is actionable.
struct dead_end_error : std::runtime_error {
    std::string detail;
    dead_end_error(const std::string& msg, std::string detail_json = "{}")
        : std::runtime_error(msg), detail(std::move(detail_json)) {}
};

}  // namespace rbc
