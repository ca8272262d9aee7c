#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "qhr/complex_matrix.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

namespace detail {

// Lanczos, g = 7, 9 terms; ~1e-13 relative over the needed strip.
inline constexpr std::array<double, 9> lanczos_coeffs = {
    0.99999999999980993,    676.5203681218851,     -1259.1392167224028,
    771.32342877765313,     -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,   9.9843695780195716e-6, 1.5056327351493116e-7};

inline Complex gamma_core(Complex z) {
    // valid for Re z >= 0.5
    z -= 1.0;
    Complex x = lanczos_coeffs[0];
    for (std::size_t i = 1; i < lanczos_coeffs.size(); ++i)
        x += lanczos_coeffs[i] / (z + static_cast<double>(i));
    const Complex t = z + 7.5;
    return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * x;
}

inline bool near_gamma_pole(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::round(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

}  // namespace detail

/// Euler gamma for complex argument: Lanczos with the reflection formula for
/// Re z < 1/2. Non-positive integers are poles and rejected.
inline Complex complex_gamma(Complex z) {
    if (detail::near_gamma_pole(z, 0.0)) throw std::domain_error("complex_gamma: pole at non-positive integer");
    if (z.real() < 0.5) return pi / (std::sin(pi * z) * detail::gamma_core(1.0 - z));
    return detail::gamma_core(z);
}

}  // namespace qhr
