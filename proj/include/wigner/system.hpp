#ifndef WIGNER_SYSTEM_HPP
#define WIGNER_SYSTEM_HPP

#include <optional>
#include <string>

#include "wigner/errors.hpp"

namespace wigner {

/// N particles in a unit harmonic trap, pair repulsion g/|x_i - x_j|^d.
struct SystemSpec {
    int n = 2;
    double d = 1.0;
    std::optional<double> g;

    void validate() const
    {
        if (n < 2)
            throw InvalidArgument("particle count must be >= 2, got " + std::to_string(n));
        if (!(d > 0.0))
            throw InvalidArgument("interaction exponent d must be > 0");
        if (g && !(*g > 0.0))
            throw InvalidArgument("interaction strength g must be > 0");
    }
};

} // namespace wigner

#endif // WIGNER_SYSTEM_HPP
