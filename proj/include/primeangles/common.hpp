#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace primeangles {

// Thrown when a requested computation would exceed the configured memory /
// enumeration budget (see PRIME_ANGLES_BUDGET_MB).  CLI maps it to exit 3.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

// Budget in megabytes, from env PRIME_ANGLES_BUDGET_MB (default 4096).
std::uint64_t budget_mb();

// Bytes available under the budget.
inline std::uint64_t budget_bytes() { return budget_mb() << 20; }

inline constexpr const char* kVersion = "prime-angles 0.1.0";

} // namespace primeangles
