#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <utility>

#include "qhr/complex_matrix.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

namespace detail {

// Portable uniform in (0,1): mt19937_64 output mapped through a fixed bit
// recipe; std::*_distribution is implementation-defined, so not used here.
inline double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

inline std::pair<double, double> gaussian_pair(std::mt19937_64& gen) {
    const double u = uniform01(gen);
    const double v = uniform01(gen);
    const double r = std::sqrt(-2.0 * std::log(u));
    return {r * std::cos(2.0 * pi * v), r * std::sin(2.0 * pi * v)};
}

}  // namespace detail

/// Haar-like random unitary: a seeded complex Gaussian matrix orthonormalized
/// with this library's own Householder reflections (QR with the diagonal
/// phases folded back in, so Q^dag G is upper triangular with positive
/// diagonal). Deterministic per (n, seed).
inline CMatrix random_unitary(std::size_t n, std::uint64_t seed) {
    detail::require(n >= 1, "random_unitary: n must be >= 1");
    std::mt19937_64 gen(seed);
    CMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto [re, im] = detail::gaussian_pair(gen);
            g(i, j) = Complex(re, im);
        }

    CMatrix w = g;
    CMatrix q = CMatrix::identity(n);
    PhaseGate column_phases{std::vector<double>(n, 0.0)};
    for (std::size_t k = 0; k < n; ++k) {
        CVector x(n);
        for (std::size_t i = k; i < n; ++i) x[i] = w(i, k);
        const double colnorm = x.norm();
        if (colnorm < 1e-300) throw std::runtime_error("random_unitary: degenerate Gaussian column");

        // alpha = -e^{i arg x_k} ||x||: the numerically stable sign choice
        const Complex xk = x[k];
        const Complex phase = std::abs(xk) > 0.0 ? xk / std::abs(xk) : Complex(1.0, 0.0);
        const Complex alpha = -phase * colnorm;

        CVector d = x;
        d[k] -= alpha;
        const double dn = d.norm();
        if (dn < 1e-300) {
            // column already aligned with e_k; nothing to reflect
            continue;
        }
        for (std::size_t i = 0; i < n; ++i) d[i] /= dn;
        const HouseholderFactor f(d, pi);

        const CMatrix m = reflection_matrix(f);
        w = mat_mul(m, w);
        q = mat_mul(q, m);
    }
    // read the phases off the triangular diagonal (alpha up to roundoff)
    for (std::size_t k = 0; k < n; ++k) column_phases.phases[k] = std::arg(w(k, k));
    return mat_mul(q, phase_gate_matrix(column_phases));
}

}  // namespace qhr
