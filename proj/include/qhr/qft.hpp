#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

#include "qhr/complex_matrix.hpp"
#include "qhr/decompose.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

/// Quantum Fourier transform: entry (k, m) = e^{2 pi i k m / n} / sqrt(n)
/// (zero-based indices).
inline CMatrix qft_matrix(std::size_t n) {
    detail::require(n >= 1, "qft_matrix: n must be >= 1");
    CMatrix m(n, n);
    const double s = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t j = 0; j < n; ++j) {
            // reduce k*j mod n before the trig call; exact phases on the unit circle
            const double ang = 2.0 * pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
            m(k, j) = std::polar(s, ang);
        }
    return m;
}

/// Reference factor data for the QFT at n = 2, 3, 4, stored as exact
/// surd expressions (not rounded decimals).
struct QftFixture {
    std::size_t n = 0;
    std::optional<StandardDecomposition> standard;
    GeneralizedDecomposition generalized;
};

namespace detail {

inline CVector fixture_v1_qft3() {
    const double c = 0.5 * std::sqrt(1.0 + 1.0 / std::sqrt(3.0));
    CVector v(3);
    v[0] = c * (1.0 - std::sqrt(3.0));
    v[1] = c;
    v[2] = c;
    return v;
}

inline CVector fixture_v2_qft3_standard() {
    const double c = std::sqrt((1.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(2.0)));
    CVector v(3);
    v[1] = c * (1.0 - std::sqrt(2.0));
    v[2] = Complex(0.0, -c);
    return v;
}

inline CVector fixture_v1_qft4() {
    CVector v(4);
    v[0] = -0.5;
    v[1] = 0.5;
    v[2] = 0.5;
    v[3] = 0.5;
    return v;
}

inline CVector fixture_v2_qft4_standard() {
    const double c = std::sqrt((1.0 + std::sqrt(2.0)) / (2.0 * std::sqrt(2.0)));
    CVector v(4);
    v[1] = c * (1.0 - std::sqrt(2.0));
    v[3] = Complex(0.0, -c);
    return v;
}

}  // namespace detail

/// The reference decompositions; n = 2 is the Hadamard single-reflection
/// case, n = 3 and 4 each take two nontrivial reflections in the generalized
/// form. Missing positions are filled with identity skips so the counts match
/// the decomposition contracts (N-1 standard factors, N generalized factors).
inline QftFixture qft_fixture(std::size_t n) {
    QftFixture fx;
    fx.n = n;
    switch (n) {
        case 2: {
            CVector v(2);
            v[0] = -0.5 * std::sqrt(2.0 - std::sqrt(2.0));
            v[1] = 0.5 * std::sqrt(2.0 + std::sqrt(2.0));
            StandardDecomposition sd;
            sd.factors.emplace_back(v, pi);
            sd.gate.phases = {0.0, 0.0};
            fx.standard = sd;
            fx.generalized.factors.emplace_back(v, pi);
            fx.generalized.factors.push_back(HouseholderFactor::skip(2, 1));
            return fx;
        }
        case 3: {
            const CVector v1 = detail::fixture_v1_qft3();
            StandardDecomposition sd;
            sd.factors.emplace_back(v1, pi);
            sd.factors.emplace_back(detail::fixture_v2_qft3_standard(), pi);
            sd.gate.phases = {0.0, pi / 4.0, -3.0 * pi / 4.0};
            fx.standard = sd;

            CVector v2(3);
            v2[1] = 1.0 / std::sqrt(2.0);
            v2[2] = -1.0 / std::sqrt(2.0);
            fx.generalized.factors.emplace_back(v1, pi);
            fx.generalized.factors.emplace_back(v2, pi / 2.0);
            fx.generalized.factors.push_back(HouseholderFactor::skip(3, 2));
            return fx;
        }
        case 4: {
            const CVector v1 = detail::fixture_v1_qft4();
            StandardDecomposition sd;
            sd.factors.emplace_back(v1, pi);
            sd.factors.emplace_back(detail::fixture_v2_qft4_standard(), pi);
            sd.factors.push_back(HouseholderFactor::skip(4, 2));
            sd.gate.phases = {0.0, pi / 4.0, 0.0, -3.0 * pi / 4.0};
            fx.standard = sd;

            CVector v2(4);
            v2[1] = 1.0 / std::sqrt(2.0);
            v2[3] = -1.0 / std::sqrt(2.0);
            fx.generalized.factors.emplace_back(v1, pi);
            fx.generalized.factors.emplace_back(v2, pi / 2.0);
            fx.generalized.factors.push_back(HouseholderFactor::skip(4, 2));
            fx.generalized.factors.push_back(HouseholderFactor::skip(4, 3));
            return fx;
        }
        default:
            throw std::invalid_argument(
                "qft_fixture: only n in {2,3,4} carry reference factor data; use decompose_*");
    }
}

}  // namespace qhr
