#include "primeangles/rng.hpp"

#include <cmath>
#include <numbers>

namespace primeangles {

void CounterRng::next_gaussian_pair(double& g1, double& g2) {
    double u1 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    const double u2 = next_double();
    const double r = std::sqrt(-2.0 * std::log(u1));
    g1 = r * std::cos(2.0 * std::numbers::pi * u2);
    g2 = r * std::sin(2.0 * std::numbers::pi * u2);
}

} // namespace primeangles
