#include "primeangles/common.hpp"

#include <cstdlib>

namespace primeangles {

std::uint64_t budget_mb() {
    if (const char* env = std::getenv("PRIME_ANGLES_BUDGET_MB")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && v > 0) return v;
    }
    return 4096;
}

} // namespace primeangles
