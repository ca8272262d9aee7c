// Acceptance suite: one line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "qhr/qhr.hpp"

using namespace qhr;

namespace {

int failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("%s  %d. %s  [%s]\n", ok ? "PASS" : "FAIL", index, name.c_str(), detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Complex pol(double r, double t) { return std::polar(r, t * pi); }

CMatrix su3_example() {
    CMatrix u(3, 3);
    u(0, 0) = pol(0.864, -2.0 / 3.0);
    u(0, 1) = pol(0.282, 15.0 / 19.0);
    u(0, 2) = pol(0.416, -7.0 / 8.0);
    u(1, 0) = pol(0.382, 0.140);
    u(1, 1) = pol(0.902, 7.0 / 11.0);
    u(1, 2) = pol(0.203, 0.808);
    u(2, 0) = pol(0.327, -0.789);
    u(2, 1) = pol(0.328, 4.0 / 5.0);
    u(2, 2) = pol(0.886, 0.035);
    return u;
}

double projector_distance(const CVector& a, const CVector& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            m = std::max(m, std::abs(a[i] * std::conj(a[j]) - b[i] * std::conj(b[j])));
    return m;
}

CVector vec3(Complex a, Complex b, Complex c) {
    CVector v(3);
    v[0] = a;
    v[1] = b;
    v[2] = c;
    return v;
}

CVector random_unit_vector(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    CVector v(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [re, im] = detail::gaussian_pair(gen);
        v[i] = Complex(re, im);
    }
    const double nn = v.norm();
    for (std::size_t i = 0; i < n; ++i) v[i] /= nn;
    return v;
}

// --- criterion 1: reconstruction property over 200 seeds per dimension ---
void criterion_reconstruction() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool counts_ok = true;
    for (std::size_t n = 2; n <= 8; ++n)
        for (std::uint64_t s = 0; s < 200; ++s) {
            const CMatrix u = random_unitary(n, 10000 * n + s);
            const auto sd = decompose_standard(u);
            const auto gd = decompose_generalized(u);
            counts_ok = counts_ok && sd.factors.size() == n - 1 && sd.gate.phases.size() == n &&
                        gd.factors.size() == n;
            worst = std::max(worst, max_abs_diff(reconstruct_standard(sd), u));
            worst = std::max(worst, max_abs_diff(reconstruct_generalized(gd), u));
        }
    const double dt = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, "worst residual %.2e, counts %s, %.1f s", worst,
                  counts_ok ? "exact" : "WRONG", dt);
    report(1, "reconstruction of 200 random unitaries per N in 2..8", worst < 1e-10 && counts_ok && dt < 10.0,
           buf);
}

// --- criterion 2: the SU(3) worked example ---
void criterion_su3() {
    const CMatrix u = su3_example();
    const auto sd = decompose_standard(u, 5e-3);
    const auto gd = decompose_generalized(u, 5e-3);

    const double dv1 = projector_distance(
        sd.factors[0].v(), vec3(pol(0.260, 1.0 / 3.0), pol(0.734, 0.140), pol(0.628, -0.789)));
    const double dv2 = projector_distance(sd.factors[1].v(),
                                          vec3(0.0, pol(0.651, -0.134), pol(0.759, 0.710)));
    const double dphi = std::max({std::abs(sd.gate.phases[0] / pi + 0.667),
                                  std::abs(sd.gate.phases[1] / pi - 0.866),
                                  std::abs(sd.gate.phases[2] / pi + 0.199)});
    const double dgen = std::max({std::abs(gd.factors[0].phi() / pi + 0.693),
                                  std::abs(gd.factors[1].phi() / pi - 0.653),
                                  std::abs(gd.factors[2].phi() / pi - 0.04)});
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "standard |dP(v1)|=%.1e |dP(v2)|=%.1e |dPhi|=%.1e pi, generalized |dphi|=%.1e pi",
                  dv1, dv2, dphi, dgen);
    report(2, "SU(3) worked example to 2e-3 (projector comparison)",
           dv1 < 2e-3 && dv2 < 2e-3 && dphi < 2e-3 && dgen < 2e-3, buf);
}

// --- criterion 3: QFT fixtures reconstruct, N=4 uses two reflections ---
void criterion_qft_fixtures() {
    double worst = 0.0;
    for (std::size_t n : {2, 3, 4}) {
        const QftFixture fx = qft_fixture(n);
        worst = std::max(worst, max_abs_diff(reconstruct_standard(*fx.standard), qft_matrix(n)));
        worst = std::max(worst, max_abs_diff(reconstruct_generalized(fx.generalized), qft_matrix(n)));
    }
    std::size_t nontrivial = 0;
    for (const auto& f : qft_fixture(4).generalized.factors)
        if (!f.is_identity()) ++nontrivial;
    char buf[120];
    std::snprintf(buf, sizeof buf, "worst fixture residual %.2e, N=4 nontrivial factors %zu", worst,
                  nontrivial);
    report(3, "QFT fixtures for N=2,3,4 reconstruct to 1e-10", worst < 1e-10 && nontrivial == 2, buf);
}

// --- criterion 4: Rosen-Zener cross-checks ---
void criterion_rz() {
    double grid_err = 0.0;
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j) {
            const double chit = 0.5 + 3.5 * i / 19.0;
            const double dt = -3.0 + 6.0 * j / 19.0;
            grid_err = std::max(grid_err,
                                std::abs(std::norm(cayley_klein_rz(chit, dt).a) - rz_abs_a_squared(chit, dt)));
        }
    const double root_err = std::abs(solve_detuning(pi / 2.0, 1) - 1.0);
    double phase_err = 0.0;
    for (int i = 1; i <= 15; ++i) {
        const double phi = 2.0 * pi * i / 16.0;
        const double dt = solve_detuning(phi, 1);
        phase_err = std::max(phase_err, std::abs(fold_angle(std::arg(cayley_klein_rz(2.0, dt).a) - phi)));
    }
    char buf[140];
    std::snprintf(buf, sizeof buf, "grid |a|^2 err %.1e, cot root err %.1e, arg a err %.1e", grid_err,
                  root_err, phase_err);
    report(4, "gamma form vs closed form, detuning solver consistency",
           grid_err < 1e-10 && root_err < 1e-12 && phase_err < 1e-9, buf);
}

// --- criterion 5: numeric propagators vs the analytic solution ---
void criterion_numeric_vs_analytic() {
    double worst_diff = 0.0, worst_drift = 0.0, worst_halving = 0.0;
    const SimConfig cfg;
    int count = 0;
    for (std::size_t n = 2; n <= 6; ++n)
        for (std::uint64_t s = 0; s < 10; ++s) {
            const PulseStep step =
                factor_to_resonant_pulse({random_unit_vector(n, 777 * n + s), pi}, 1.0, 0);
            double drift = 0.0;
            const CMatrix numeric = detail::integrate_pulse(step, cfg, [&](double, const CMatrix& u) {
                drift = std::max(drift, unitarity_residual(u));
            });
            worst_diff = std::max(worst_diff, max_abs_diff(numeric, analytic_step_propagator(step)));
            worst_drift = std::max(worst_drift, drift);
            if (++count % 5 == 0) {
                SimConfig half = cfg;
                half.dt = step.width / 400.0;
                worst_halving = std::max(worst_halving, max_abs_diff(numeric, propagate_step(step, half)));
            }
        }
    char buf[140];
    std::snprintf(buf, sizeof buf, "max |num-ana| %.1e, drift %.1e, halving shift %.1e", worst_diff,
                  worst_drift, worst_halving);
    report(5, "50 random resonant steps match the closed-form propagator",
           worst_diff < 1e-6 && worst_drift < 1e-8 && worst_halving < 1e-8, buf);
}

// --- criterion 6: the reference deviation-vs-time runs ---
void criterion_deviation_runs() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst_final = 0.0;
    bool tails_ok = true;
    for (std::size_t n : {2, 3, 4}) {
        const QftFixture fx = qft_fixture(n);
        PulseSchedule sched;
        PulseStep first = factor_to_resonant_pulse(fx.generalized.factors[0], 1.0, 0);
        first.center = -5.0;
        sched.steps.push_back(first);
        if (n > 2) {
            PulseStep second = factor_to_rz_pulse(fx.generalized.factors[1], 1.0, 1);
            second.center = 5.0;
            sched.steps.push_back(second);
        }
        const PropagatorTrace tr = simulate_schedule(sched, qft_matrix(n));
        worst_final = std::max(worst_final, tr.deviation.back());
        // non-increasing up to a 1e-6 per-sample slack: the truncated tails
        // crawl at the 5e-8 level around the asymptote, far below the 1e-2
        // scale of the criterion
        for (std::size_t i = tr.times.size() - 1;
             i > 0 && tr.times[i - 1] >= tr.times.back() - 2.0; --i)
            tails_ok = tails_ok && tr.deviation[i] <= tr.deviation[i - 1] + 1e-6;
    }
    const double dt = seconds_since(t0);
    char buf[140];
    std::snprintf(buf, sizeof buf, "worst final deviation %.2e, tails %s, %.1f s", worst_final,
                  tails_ok ? "non-increasing" : "NOT MONOTONE", dt);
    report(6, "deviation runs for N=2,3,4 end below 1e-2", worst_final < 1e-2 && tails_ok && dt < 30.0,
           buf);
}

// --- criterion 7: at most N interaction steps per U(N) ---
void criterion_step_count() {
    bool ok = true;
    for (std::size_t n = 2; n <= 8; ++n)
        for (std::uint64_t s = 0; s < 3; ++s) {
            const CMatrix u = random_unitary(n, 31337 * n + s);
            const auto gd = decompose_generalized(u);
            std::size_t pulses = 0;
            for (const auto& f : gd.factors)
                if (!f.is_identity()) ++pulses;
            ok = ok && gd.factors.size() == n && pulses <= n;
            const auto sd = decompose_standard(u);
            std::size_t reflections = 0;
            for (const auto& f : sd.factors)
                if (!f.is_identity()) ++reflections;
            ok = ok && sd.factors.size() == n - 1 && reflections + 1 <= n;  // + the phase gate
        }
    report(7, "synthesized pipelines use at most N interaction steps", ok,
           ok ? "generalized: N factors; standard: N-1 reflections + gate" : "count violation");
}

// --- criterion 8: transient population falls with detuning ---
void criterion_transient_population() {
    std::vector<double> peaks;
    for (double dt : {0.5, 1.0, 2.0, 4.0, 8.0}) {
        PulseStep s;
        s.chi = {std::sqrt(2.0), std::sqrt(2.0)};  // chi T = 2
        s.beta = {0.0, 0.0};
        s.delta0 = dt;
        s.width = 1.0;
        SimConfig cfg;
        cfg.record_stride = 1;
        double peak = 0.0;
        detail::integrate_pulse(s, cfg, [&](double, const CMatrix& u) {
            for (std::size_t j = 0; j < 2; ++j) peak = std::max(peak, std::norm(u(2, j)));
        });
        peaks.push_back(peak);
    }
    bool decreasing = true;
    for (std::size_t i = 1; i < peaks.size(); ++i) decreasing = decreasing && peaks[i] < peaks[i - 1];
    char buf[160];
    std::snprintf(buf, sizeof buf, "peaks %.3f %.3f %.3f %.3f %.3f", peaks[0], peaks[1], peaks[2],
                  peaks[3], peaks[4]);
    report(8, "peak ancilla population decreases over delta0 T in {0.5,1,2,4,8}", decreasing, buf);
}

}  // namespace

int main() {
    criterion_reconstruction();
    criterion_su3();
    criterion_qft_fixtures();
    criterion_rz();
    criterion_numeric_vs_analytic();
    criterion_deviation_runs();
    criterion_step_count();
    criterion_transient_population();
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures == 0 ? 0 : 1;
}
