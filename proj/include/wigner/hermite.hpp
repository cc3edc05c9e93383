#ifndef WIGNER_HERMITE_HPP
#define WIGNER_HERMITE_HPP

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace wigner {

/// Orthonormal Hermite polynomials h_l(u) = H_l(u) / (pi^{1/4} sqrt(2^l l!)),
/// so that h_l(u) exp(-u^2/2) are the harmonic-oscillator eigenfunctions.
/// Fills out[0..out.size()-1]; no factorials are formed.
inline void hermite_polynomials(double u, std::span<double> out)
{
    if (out.empty())
        return;
    out[0] = 1.0 / std::pow(std::numbers::pi, 0.25);
    if (out.size() == 1)
        return;
    out[1] = std::numbers::sqrt2 * u * out[0];
    for (std::size_t l = 1; l + 1 < out.size(); ++l) {
        const double lf = static_cast<double>(l);
        out[l + 1] = std::sqrt(2.0 / (lf + 1.0)) * u * out[l] - std::sqrt(lf / (lf + 1.0)) * out[l - 1];
    }
}

/// Single normalized oscillator eigenfunction psi_l(u) = h_l(u) exp(-u^2/2).
///
/// The Gaussian is folded into the seed of the recurrence, which keeps the
/// values finite for large l where H_l(u) alone would overflow.
inline double hermite_function(int level, double u)
{
    double prev = 0.0;
    double cur = std::exp(-0.5 * u * u) / std::pow(std::numbers::pi, 0.25);
    for (int l = 0; l < level; ++l) {
        const double lf = static_cast<double>(l);
        const double next = std::sqrt(2.0 / (lf + 1.0)) * u * cur - std::sqrt(lf / (lf + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// <psi_l(x) | psi_l(x - delta)> for unit-width oscillator functions:
/// exp(-delta^2/4) L_l(delta^2/2).
inline double hermite_shift_overlap(int level, double delta)
{
    const double t = 0.5 * delta * delta;
    double lm1 = 1.0;
    double lcur = 1.0 - t;
    if (level == 0)
        lcur = 1.0;
    for (int k = 1; k < level; ++k) {
        const double kf = static_cast<double>(k);
        const double next = ((2.0 * kf + 1.0 - t) * lcur - kf * lm1) / (kf + 1.0);
        lm1 = lcur;
        lcur = next;
    }
    return std::exp(-0.5 * t) * lcur;
}

} // namespace wigner

#endif // WIGNER_HERMITE_HPP
