#pragma once

#include <stdexcept>
#include <string>

namespace cubization {

// Bad user input: malformed JSON, non-generating sets, unknown presets, k < 2.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Enumeration would exceed a configured cap (group closure, mult table).
struct SizeLimitError : std::runtime_error {
    explicit SizeLimitError(const std::string& what) : std::runtime_error(what) {}
};

// A stage refused to materialize something above its cap (cover vertices,
// wall count, dual vertices). Caller may retry in an implicit regime.
struct CapExceeded : std::runtime_error {
    explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

// The base graph has a separating edge; the wall construction must be routed
// through the bridge branch instead.
struct BridgePresent : std::runtime_error {
    explicit BridgePresent(const std::string& what) : std::runtime_error(what) {}
};

// Conditions that are mathematically impossible when the implementation is
// correct. Violations are bugs, never input errors.
[[noreturn]] inline void structural_failure(const std::string& what) {
    throw std::logic_error("structural check failed: " + what);
}

inline void structural_require(bool cond, const std::string& what) {
    if (!cond) structural_failure(what);
}

}  // namespace cubization
