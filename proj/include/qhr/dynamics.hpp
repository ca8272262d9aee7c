#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <iostream>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qhr/complex_matrix.hpp"
#include "qhr/pulse.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

/// Integrator controls. window_half_width is in units of the pulse width T;
/// dt is an absolute time step (non-positive means width/200 per step).
struct SimConfig {
    double window_half_width = 10.0;
    double dt = -1.0;
    bool renormalize_area = true;
    std::size_t record_stride = 10;
};

/// Time series of the deviation observable and the ancilla population, plus
/// the realized qunit-block operator at the end of the run.
struct PropagatorTrace {
    std::vector<double> times;
    std::vector<double> deviation;
    std::vector<double> ancilla_population;
    CMatrix final_propagator{1, 1};
};

namespace detail {

inline void validate_step(const PulseStep& s, const char* who) {
    require(!s.chi.empty() && s.chi.size() == s.beta.size(),
            std::string(who) + ": chi/beta must be non-empty and equal length");
    require(s.width > 0.0, std::string(who) + ": width must be positive");
    for (double c : s.chi)
        require(c >= 0.0 && std::isfinite(c), std::string(who) + ": chi must be finite and >= 0");
}

inline void validate_config(const SimConfig& c, const char* who) {
    require(c.window_half_width >= 3.0, std::string(who) + ": window_half_width must be >= 3");
    require(c.record_stride >= 1, std::string(who) + ": record_stride must be >= 1");
}

// Fraction of the full-line sech area captured by the symmetric window
// [-w, w] (units of T) is 2 atan(sinh w) / pi; scaling chi by the inverse
// makes the truncated area match the nominal one exactly.
inline double area_renorm_factor(double window_half_width) {
    return pi / (2.0 * std::atan(std::sinh(window_half_width)));
}

inline void fill_hamiltonian(const PulseStep& s, double t, CMatrix& h) {
    const std::size_t n = s.chi.size();
    const double f = 1.0 / std::cosh((t - s.center) / s.width);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, n) = std::polar(0.5 * s.chi[i] * f, s.beta[i]);
        h(n, i) = std::conj(h(i, n));
    }
    h(n, n) = s.delta0;
}

}  // namespace detail

/// RWA Hamiltonian of the driven N-pod at time t, (N+1)x(N+1), hbar = 1:
/// coupling Omega_n(t)/2 on the ancilla column (conjugates on the row),
/// the shared detuning on the corner, zeros across the qunit block.
inline CMatrix hamiltonian(const PulseStep& step, double t) {
    detail::validate_step(step, "hamiltonian");
    CMatrix h(step.chi.size() + 1, step.chi.size() + 1);
    detail::fill_hamiltonian(step, t, h);
    return h;
}

namespace detail {

// Fixed-step RK4 for i dU/dt = H(t) U over the step's symmetric window.
// Propagators are reported with the ancilla's free detuning phase
// e^{-i delta0 (t - t0)} removed, the frame in which a completed pulse has
// the constant block form (corner a*).
inline CMatrix integrate_pulse(const PulseStep& step, const SimConfig& cfg,
                               const std::function<void(double, const CMatrix&)>& on_record) {
    validate_step(step, "propagate_step");
    validate_config(cfg, "propagate_step");

    PulseStep s = step;
    if (cfg.renormalize_area) {
        const double mu = area_renorm_factor(cfg.window_half_width);
        for (double& c : s.chi) c *= mu;
    }

    const std::size_t dim = s.chi.size() + 1;
    const double t0 = s.center - cfg.window_half_width * s.width;
    const double t1 = s.center + cfg.window_half_width * s.width;
    const double dt_request = cfg.dt > 0.0 ? cfg.dt : s.width / 200.0;
    const auto nsteps = static_cast<std::size_t>(std::max(1.0, std::round((t1 - t0) / dt_request)));
    const double h = (t1 - t0) / static_cast<double>(nsteps);

    CMatrix ht(dim, dim);
    auto rhs = [&](double t, const CMatrix& u) {
        fill_hamiltonian(s, t, ht);
        CMatrix d = mat_mul(ht, u);
        for (auto& z : d.entries()) z *= Complex(0.0, -1.0);
        return d;
    };
    auto axpy = [](const CMatrix& u, double c, const CMatrix& k) {
        CMatrix r = u;
        for (std::size_t i = 0; i < r.entries().size(); ++i) r.entries()[i] += c * k.entries()[i];
        return r;
    };

    CMatrix u = CMatrix::identity(dim);
    auto record = [&](double t, const CMatrix& raw) {
        if (!on_record) return;
        CMatrix framed = raw;
        const Complex strip = std::polar(1.0, s.delta0 * (t - t0));
        for (std::size_t j = 0; j < dim; ++j) framed(dim - 1, j) *= strip;
        on_record(t, framed);
    };

    record(t0, u);
    double t = t0;
    for (std::size_t i = 1; i <= nsteps; ++i) {
        const CMatrix k1 = rhs(t, u);
        const CMatrix k2 = rhs(t + 0.5 * h, axpy(u, 0.5 * h, k1));
        const CMatrix k3 = rhs(t + 0.5 * h, axpy(u, 0.5 * h, k2));
        const CMatrix k4 = rhs(t + h, axpy(u, h, k3));
        for (std::size_t m = 0; m < u.entries().size(); ++m)
            u.entries()[m] += (h / 6.0) * (k1.entries()[m] + 2.0 * k2.entries()[m] +
                                           2.0 * k3.entries()[m] + k4.entries()[m]);
        t = t0 + static_cast<double>(i) * h;
        if (i % cfg.record_stride == 0 || i == nsteps) record(t, u);
    }

    const double drift = unitarity_residual(u);
    if (drift > 1e-6)
        throw std::runtime_error("propagate_step: unitarity drift " + std::to_string(drift) +
                                 " exceeds 1e-6; reduce dt");

    const Complex strip = std::polar(1.0, s.delta0 * (t1 - t0));
    for (std::size_t j = 0; j < dim; ++j) u(dim - 1, j) *= strip;
    return u;
}

}  // namespace detail

/// Numeric (N+1)-level propagator of one pulse over its symmetric window.
inline CMatrix propagate_step(const PulseStep& step, const SimConfig& cfg = {}) {
    return detail::integrate_pulse(step, cfg, nullptr);
}

/// Closed-form (N+1)-level propagator: qunit block I + (a-1)|v><v| with
/// v_n = (chi_n / chi) e^{i beta_n}, ancilla column b v, row -b* v^dag,
/// corner a*. Supported where (a, b) are known: resonant pulses at any
/// area, and Rosen-Zener pulses with chi T = 2l, where b vanishes and
/// a = prod_k (dT + i(2k+1)) / (dT - i(2k+1)).
inline CMatrix analytic_step_propagator(const PulseStep& step) {
    detail::validate_step(step, "analytic_step_propagator");
    const std::size_t n = step.chi.size();
    const double chi = rms_coupling(step);
    detail::require(chi > 0.0, "analytic_step_propagator: all couplings vanish");

    Complex a, b;
    if (step.delta0 == 0.0) {
        const CayleyKlein ck = cayley_klein_resonant(pi * chi * step.width);
        a = ck.a;
        b = ck.b;
    } else {
        const double l_real = chi * step.width / 2.0;
        const int l = static_cast<int>(std::lround(l_real));
        if (l < 1 || std::abs(l_real - l) > 1e-9)
            throw std::invalid_argument(
                "analytic_step_propagator: off-resonant step needs chi T = 2l (so |b| = 0); "
                "the b phase is unknown elsewhere");
        const double dt = step.delta0 * step.width;
        a = 1.0;
        for (int k = 0; k < l; ++k)
            a *= Complex(dt, 2.0 * k + 1.0) / Complex(dt, -(2.0 * k + 1.0));
        b = 0.0;
    }

    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = std::polar(step.chi[i] / chi, step.beta[i]);

    CMatrix u = CMatrix::identity(n + 1);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) u(i, j) += (a - 1.0) * v[i] * std::conj(v[j]);
    for (std::size_t i = 0; i < n; ++i) {
        u(i, n) = b * v[i];
        u(n, i) = -std::conj(b) * std::conj(v[i]);
    }
    u(n, n) = std::conj(a);
    return u;
}

/// Integrate a schedule pulse by pulse against a target unitary, recording
/// the l1 deviation of the realized qunit block and the ancilla population.
///
/// Each pulse runs on its own symmetric window; windows may overlap in
/// absolute time (the staggered-center geometry) and compose sequentially, with the
/// recorded trace handed off at center midpoints so the time axis stays
/// monotone. The symbolic phase gate, the rightmost factor of the standard
/// form, is applied as an exact diagonal at the start of the run.
inline PropagatorTrace simulate_schedule(const PulseSchedule& schedule, const CMatrix& target,
                                         const SimConfig& cfg = {}) {
    detail::require(target.square(), "simulate_schedule: target must be square");
    detail::validate_config(cfg, "simulate_schedule");
    const std::size_t n = target.rows();
    for (const auto& s : schedule.steps)
        detail::require(s.chi.size() == n, "simulate_schedule: schedule/target dimension mismatch");
    if (schedule.gate)
        detail::require(schedule.gate->phases.size() == n,
                        "simulate_schedule: gate/target dimension mismatch");

    bool warned_spacing = false;
    for (std::size_t i = 1; i < schedule.steps.size(); ++i) {
        const auto& prev = schedule.steps[i - 1];
        const auto& cur = schedule.steps[i];
        const double gap = cur.center - prev.center;
        const double wmax = std::max(prev.width, cur.width);
        detail::require(gap > 0.0, "simulate_schedule: pulse centers must be strictly increasing");
        if (gap < 4.0 * wmax)
            throw std::invalid_argument(
                "simulate_schedule: pulses separated by less than 4T overlap materially; "
                "co-integration is not supported");
        if (gap < 2.0 * cfg.window_half_width * wmax && !warned_spacing) {
            std::cerr << "note: pulse spacing " << gap << " is below 2 x window ("
                      << 2.0 * cfg.window_half_width * wmax
                      << "); trace recording hands off at window midpoints\n";
            warned_spacing = true;
        }
    }

    CMatrix prefix = CMatrix::identity(n + 1);
    if (schedule.gate)
        for (std::size_t i = 0; i < n; ++i) prefix(i, i) = std::polar(1.0, schedule.gate->phases[i]);

    PropagatorTrace trace;
    trace.final_propagator = CMatrix(n, n);

    auto observe = [&](double t, const CMatrix& p) {
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) dev += std::abs(p(i, j) - target(i, j));
        double pop = 0.0;
        for (std::size_t j = 0; j < n; ++j) pop = std::max(pop, std::norm(p(n, j)));
        trace.times.push_back(t);
        trace.deviation.push_back(dev);
        trace.ancilla_population.push_back(pop);
    };

    if (schedule.steps.empty()) {
        observe(0.0, prefix);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) trace.final_propagator(i, j) = prefix(i, j);
        return trace;
    }

    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < schedule.steps.size(); ++k) {
        const auto& step = schedule.steps[k];
        const double lo = k == 0 ? -inf : 0.5 * (schedule.steps[k - 1].center + step.center);
        const double hi =
            k + 1 == schedule.steps.size() ? inf : 0.5 * (step.center + schedule.steps[k + 1].center);
        const CMatrix done = detail::integrate_pulse(step, cfg, [&](double t, const CMatrix& u) {
            if (t < lo || t > hi) return;
            observe(t, mat_mul(u, prefix));
        });
        prefix = mat_mul(done, prefix);
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) trace.final_propagator(i, j) = prefix(i, j);
    return trace;
}

inline double peak_ancilla_population(const PropagatorTrace& trace) {
    detail::require(!trace.ancilla_population.empty(), "peak_ancilla_population: empty trace");
    return *std::max_element(trace.ancilla_population.begin(), trace.ancilla_population.end());
}

}  // namespace qhr
