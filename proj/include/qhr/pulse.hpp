#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhr/complex_matrix.hpp"
#include "qhr/gamma.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

/// One sech pulse driving the N-pod: peak couplings chi_n >= 0 (units 1/T),
/// field phases beta_n, constant detuning delta0, width T, center tau.
/// area_index is k for resonant pulses (area 2(2k+1)pi) and l for
/// Rosen-Zener pulses (chi T = 2l). The envelope is always sech(t/T).
struct PulseStep {
    std::vector<double> chi;
    std::vector<double> beta;
    double delta0 = 0.0;
    double width = 1.0;   // T
    double center = 0.0;  // tau
    int area_index = 0;
};

inline double rms_coupling(const PulseStep& s) {
    double q = 0.0;
    for (double c : s.chi) q += c * c;
    return std::sqrt(q);
}

/// Pulses ordered as applied in time (the earliest pulse realizes the
/// rightmost matrix factor). A trailing phase gate from the standard
/// factorization is carried symbolically; it is never mapped to fields.
struct PulseSchedule {
    std::vector<PulseStep> steps;
    double spacing = 10.0;  // nominal center-to-center distance, units of T
    std::optional<PhaseGate> gate;
};

/// Effective two-level propagator parameters; |a|^2 + |b|^2 = 1. On the
/// Rosen-Zener path only |b| is known, so b_phase_known is false there and
/// b must not be consumed unless |b| is negligible.
struct CayleyKlein {
    Complex a;
    Complex b;
    bool b_phase_known = true;
};

inline CayleyKlein cayley_klein_resonant(double area) {
    return {std::cos(area / 2.0), Complex(0.0, -std::sin(area / 2.0)), true};
}

/// |a|^2 for the Rosen-Zener model in closed form,
/// 1 - sin^2(pi chi T / 2) / cosh^2(pi delta0 T / 2); valid everywhere,
/// including the gamma-pole lines.
inline double rz_abs_a_squared(double chi_t, double delta_t) {
    const double s = std::sin(0.5 * pi * chi_t);
    const double c = std::cosh(0.5 * pi * delta_t);
    return 1.0 - (s * s) / (c * c);
}

/// Rosen-Zener Cayley-Klein parameter from the gamma-function form
/// a = Gamma^2(1/2 + i dT/2) / [Gamma(1/2 + cT/2 + i dT/2) Gamma(1/2 - cT/2 + i dT/2)].
inline CayleyKlein cayley_klein_rz(double chi_t, double delta_t) {
    const Complex half_idt(0.5, 0.5 * delta_t);  // 1/2 + i delta_t / 2
    const Complex zp = half_idt + 0.5 * chi_t;
    const Complex zm = half_idt - 0.5 * chi_t;
    if (detail::near_gamma_pole(zp, 1e-8) || detail::near_gamma_pole(zm, 1e-8))
        throw std::domain_error(
            "cayley_klein_rz: argument within 1e-8 of a Gamma pole; use rz_abs_a_squared");
    const Complex num = complex_gamma(half_idt);
    const Complex a = num * num / (complex_gamma(zp) * complex_gamma(zm));
    const double b_mag = std::sqrt(std::max(0.0, 1.0 - std::norm(a)));
    return {a, Complex(b_mag, 0.0), false};
}

namespace detail {

// phi(x) = 2 sum_k atan2(2k+1, x), the detuning-to-phase map for chi T = 2l;
// strictly decreasing from 2 l pi (x -> -inf) to 0 (x -> +inf).
inline double rz_phase_of_detuning(double x, int l) {
    double s = 0.0;
    for (int k = 0; k < l; ++k) s += std::atan2(2.0 * k + 1.0, x);
    return 2.0 * s;
}

inline double fold_positive(double phi) {
    double p = std::fmod(phi, 2.0 * pi);
    if (p < 0.0) p += 2.0 * pi;
    return p;
}

}  // namespace detail

enum class DetuningBranch { largest, smallest };

/// Solve 2 sum_{k<l} atan2(2k+1, x) = phi (mod 2 pi) for x = delta0 T.
/// The map is monotone onto (0, 2 l pi), so the l branches are the unwrapped
/// targets phi + 2 pi m; each is bisected on [-1e6, 1e6]. The branch picks
/// the root of largest or smallest magnitude (largest detuning minimizes the
/// transient ancilla population).
inline double solve_detuning(double phi, int l, DetuningBranch branch = DetuningBranch::largest) {
    detail::require(l >= 1, "solve_detuning: l must be >= 1");
    const double p = detail::fold_positive(phi);
    if (p <= 0.0 || p >= 2.0 * pi)
        throw std::invalid_argument("solve_detuning: phi folds to 0 (identity factor has no detuning)");

    std::vector<double> roots;
    roots.reserve(static_cast<std::size_t>(l));
    for (int m = 0; m < l; ++m) {
        const double target = p + 2.0 * pi * m;
        double lo = -1e6, hi = 1e6;
        if (detail::rz_phase_of_detuning(lo, l) < target || detail::rz_phase_of_detuning(hi, l) > target)
            throw std::runtime_error("solve_detuning: target phase not bracketed on [-1e6, 1e6]");
        while (hi - lo > 1e-12) {
            const double mid = 0.5 * (lo + hi);
            if (mid == lo || mid == hi) break;
            if (detail::rz_phase_of_detuning(mid, l) > target)
                lo = mid;
            else
                hi = mid;
        }
        const double x = 0.5 * (lo + hi);
        const double residual = std::abs(fold_angle(detail::rz_phase_of_detuning(x, l) - target));
        if (residual > 1e-10)
            throw std::runtime_error("solve_detuning: bisection residual " + std::to_string(residual) +
                                     " exceeds 1e-10 for branch " + std::to_string(m));
        roots.push_back(x);
    }

    auto better = [&](double a, double b) {
        const double ma = std::abs(a), mb = std::abs(b);
        if (branch == DetuningBranch::largest) return ma > mb || (ma == mb && a > b);
        return ma < mb || (ma == mb && a > b);
    };
    double best = roots.front();
    for (double r : roots)
        if (better(r, best)) best = r;
    return best;
}

/// Resonant realization of a standard reflection: area 2(2k+1)pi, so
/// chi = 2(2k+1)/T, detuning zero, couplings chi |v_n| with phases arg v_n.
inline PulseStep factor_to_resonant_pulse(const HouseholderFactor& f, double width, int k = 0) {
    detail::require(width > 0.0, "factor_to_resonant_pulse: width must be positive");
    detail::require(k >= 0, "factor_to_resonant_pulse: k must be >= 0");
    if (std::abs(fold_angle(f.phi() - pi)) > 1e-12)
        throw std::invalid_argument(
            "factor_to_resonant_pulse: factor phase is not pi; use the Rosen-Zener path");
    const double chi = 2.0 * (2.0 * k + 1.0) / width;
    PulseStep s;
    s.chi.resize(f.dim());
    s.beta.resize(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        const double m = std::abs(f.v()[i]);
        s.chi[i] = chi * m;
        s.beta[i] = m > 0.0 ? std::arg(f.v()[i]) : 0.0;
    }
    s.delta0 = 0.0;
    s.width = width;
    s.area_index = k;
    return s;
}

/// Rosen-Zener realization of a generalized reflection: chi T = 2l keeps
/// |a| = 1 and the detuning selects the phase.
inline PulseStep factor_to_rz_pulse(const HouseholderFactor& f, double width, int l = 1,
                                    DetuningBranch branch = DetuningBranch::largest) {
    detail::require(width > 0.0, "factor_to_rz_pulse: width must be positive");
    detail::require(l >= 1, "factor_to_rz_pulse: l must be >= 1");
    if (f.is_identity())
        throw std::invalid_argument("factor_to_rz_pulse: identity factor emits no pulse");
    const double chi = 2.0 * l / width;
    PulseStep s;
    s.chi.resize(f.dim());
    s.beta.resize(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        const double m = std::abs(f.v()[i]);
        s.chi[i] = chi * m;
        s.beta[i] = m > 0.0 ? std::arg(f.v()[i]) : 0.0;
    }
    s.delta0 = solve_detuning(f.phi(), l, branch) / width;
    s.width = width;
    s.area_index = l;
    return s;
}

}  // namespace qhr
