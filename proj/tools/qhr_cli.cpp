// qhr: decompose unitaries into quantum Householder reflections, map the
// factors to sech-pulse parameters for the driven N-pod, and verify the
// synthesis by time-domain simulation.
//
// Exit codes: 0 success, 1 input error, 2 numerical-check failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "qhr/qhr.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input_error = 1;
constexpr int exit_numerical_failure = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot open input file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
}

qhr::json parse_json_file(const std::string& path) {
    try {
        return qhr::json::parse(read_file(path));
    } catch (const qhr::json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
}

// FNV-1a 64, recorded in manifests so reruns can confirm identical inputs.
std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
    return buf;
}

struct ManifestInfo {
    std::string command;
    std::vector<std::string> argv;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    qhr::json parameters;
};

std::uint64_t g_seed = 0;

void write_manifest(const ManifestInfo& info) {
    qhr::json inputs = qhr::json::object();
    for (const auto& p : info.inputs) inputs[p] = fnv1a_hex(read_file(p));
    const qhr::json m{{"tool", "qhr"},
                      {"version", qhr::version},
                      {"command", info.command},
                      {"command_line", info.argv},
                      {"seed", g_seed},
                      {"inputs", inputs},
                      {"outputs", info.outputs},
                      {"parameters", info.parameters}};
    for (const auto& out : info.outputs) write_file(out + ".manifest.json", m.dump(2) + "\n");
}

struct DecomposeArgs {
    std::string matrix_path;
    std::string out_path;
    std::string mode = "standard";
    double tol = qhr::default_tol;
};

int run_decompose(const DecomposeArgs& a, const std::vector<std::string>& argv) {
    const qhr::CMatrix u = qhr::matrix_from_json(parse_json_file(a.matrix_path));
    qhr::json out;
    double residual = 0.0;
    if (a.mode == "standard") {
        const auto d = qhr::decompose_standard(u, a.tol);
        residual = qhr::max_abs_diff(qhr::reconstruct_standard(d), u);
        out = qhr::decomposition_to_json(d);
    } else {
        const auto d = qhr::decompose_generalized(u, a.tol);
        residual = qhr::max_abs_diff(qhr::reconstruct_generalized(d), u);
        out = qhr::decomposition_to_json(d);
    }
    write_file(a.out_path, out.dump(2) + "\n");
    write_manifest({"decompose", argv, {a.matrix_path}, {a.out_path},
                    {{"mode", a.mode}, {"tol", a.tol}}});
    std::cout << "reconstruction residual = " << residual << "\n";
    // the gate widens with --tol so inputs printed at low precision can still
    // round-trip (an exactly unitary product cannot beat the input's rounding)
    const double gate = std::max(1e-9, a.tol);
    if (residual >= gate) {
        std::cerr << "error: reconstruction residual " << residual << " exceeds " << gate << "\n";
        return exit_numerical_failure;
    }
    return exit_ok;
}

struct QftArgs {
    std::size_t n = 0;
    std::string out_path;
    std::string mode = "generalized";
    double tol = qhr::default_tol;
};

int run_qft(const QftArgs& a, const std::vector<std::string>& argv) {
    const qhr::CMatrix m = qhr::qft_matrix(a.n);
    qhr::json out{{"n", a.n}, {"matrix", qhr::matrix_to_json(m)}};
    qhr::CMatrix computed = qhr::CMatrix::identity(a.n);
    if (a.mode == "standard") {
        const auto d = qhr::decompose_standard(m, a.tol);
        computed = qhr::reconstruct_standard(d);
        out["decomposition"] = qhr::decomposition_to_json(d);
    } else {
        const auto d = qhr::decompose_generalized(m, a.tol);
        computed = qhr::reconstruct_generalized(d);
        out["decomposition"] = qhr::decomposition_to_json(d);
    }
    if (a.n >= 2 && a.n <= 4) {
        const qhr::QftFixture fx = qhr::qft_fixture(a.n);
        const qhr::CMatrix fixture_matrix = a.mode == "standard"
                                                ? qhr::reconstruct_standard(*fx.standard)
                                                : qhr::reconstruct_generalized(fx.generalized);
        out["fixture"] = a.mode == "standard" ? qhr::decomposition_to_json(*fx.standard)
                                              : qhr::decomposition_to_json(fx.generalized);
        out["fixture_report"] = {
            {"fixture_vs_qft_maxnorm", qhr::max_abs_diff(fixture_matrix, m)},
            {"computed_vs_qft_maxnorm", qhr::max_abs_diff(computed, m)},
            {"fixture_vs_computed_maxnorm", qhr::max_abs_diff(fixture_matrix, computed)},
            {"products_equal_within_1e-10", qhr::max_abs_diff(fixture_matrix, computed) < 1e-10}};
    }
    write_file(a.out_path, out.dump(2) + "\n");
    write_manifest({"qft", argv, {}, {a.out_path}, {{"n", a.n}, {"mode", a.mode}, {"tol", a.tol}}});
    std::cout << "wrote qft(" << a.n << ") and its " << a.mode << " decomposition\n";
    return exit_ok;
}

struct PulsesArgs {
    std::string decomposition_path;
    std::string out_path;
    double width = 1.0;
    int k = 0;
    int l = 1;
    std::string branch = "largest";
};

int run_pulses(const PulsesArgs& a, const std::vector<std::string>& argv) {
    const qhr::Decomposition dec = qhr::decomposition_from_json(parse_json_file(a.decomposition_path));
    const auto branch =
        a.branch == "largest" ? qhr::DetuningBranch::largest : qhr::DetuningBranch::smallest;

    std::vector<const qhr::HouseholderFactor*> factors;
    qhr::PulseSchedule schedule;
    schedule.spacing = 10.0;
    if (std::holds_alternative<qhr::StandardDecomposition>(dec)) {
        const auto& d = std::get<qhr::StandardDecomposition>(dec);
        for (const auto& f : d.factors) factors.push_back(&f);
        schedule.gate = d.gate;
    } else {
        for (const auto& f : std::get<qhr::GeneralizedDecomposition>(dec).factors)
            factors.push_back(&f);
    }

    // earliest pulse realizes the rightmost factor
    double center = -5.0 * a.width;
    for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
        const qhr::HouseholderFactor& f = **it;
        if (f.is_identity()) {
            std::cout << "notice: identity factor skipped (no pulse)\n";
            continue;
        }
        qhr::PulseStep step = std::abs(qhr::fold_angle(f.phi() - qhr::pi)) <= 1e-12
                                  ? qhr::factor_to_resonant_pulse(f, a.width, a.k)
                                  : qhr::factor_to_rz_pulse(f, a.width, a.l, branch);
        step.center = center;
        center += schedule.spacing * a.width;
        schedule.steps.push_back(std::move(step));
    }

    for (std::size_t i = 0; i < schedule.steps.size(); ++i) {
        const auto& s = schedule.steps[i];
        std::cout << "step " << i + 1 << ": tau = " << s.center << ", delta0 = " << s.delta0
                  << ", chi = [";
        for (std::size_t j = 0; j < s.chi.size(); ++j)
            std::cout << (j ? ", " : "") << s.chi[j];
        std::cout << "], beta = [";
        for (std::size_t j = 0; j < s.beta.size(); ++j)
            std::cout << (j ? ", " : "") << s.beta[j];
        std::cout << "]\n";
    }
    if (schedule.steps.empty()) std::cout << "notice: schedule is empty (identity decomposition)\n";

    write_file(a.out_path, qhr::schedule_to_json(schedule).dump(2) + "\n");
    write_manifest({"pulses", argv, {a.decomposition_path}, {a.out_path},
                    {{"T", a.width}, {"k", a.k}, {"l", a.l}, {"branch", a.branch}}});
    return exit_ok;
}

struct SimulateArgs {
    std::string schedule_path;
    std::string target_path;
    std::string trace_path;
    double tol = 1e-2;
    double dt = -1.0;
    double window = 10.0;
    std::size_t stride = 10;
    bool no_renormalize = false;
};

int run_simulate(const SimulateArgs& a, const std::vector<std::string>& argv) {
    const qhr::PulseSchedule schedule = qhr::schedule_from_json(parse_json_file(a.schedule_path));
    const qhr::CMatrix target = qhr::matrix_from_json(parse_json_file(a.target_path));

    qhr::SimConfig cfg;
    cfg.dt = a.dt;
    cfg.window_half_width = a.window;
    cfg.record_stride = a.stride;
    cfg.renormalize_area = !a.no_renormalize;

    const qhr::PropagatorTrace trace = qhr::simulate_schedule(schedule, target, cfg);

    std::ostringstream csv;
    qhr::write_trace_csv(csv, trace);
    write_file(a.trace_path, csv.str());
    write_manifest({"simulate", argv, {a.schedule_path, a.target_path}, {a.trace_path},
                    {{"tol", a.tol},
                     {"dt", a.dt},
                     {"window", a.window},
                     {"stride", a.stride},
                     {"renormalize_area", cfg.renormalize_area}}});

    const double final_dev = trace.deviation.back();
    std::cout << "final deviation = " << final_dev << "\n";
    std::cout << "peak ancilla population = " << qhr::peak_ancilla_population(trace) << "\n";
    if (final_dev >= a.tol) {
        std::cerr << "error: final deviation " << final_dev << " exceeds tolerance " << a.tol << "\n";
        return exit_numerical_failure;
    }
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"unitary synthesis by quantum Householder reflections"};
    app.require_subcommand(1);
    app.add_option("--seed", g_seed, "seed echoed into manifests (no command draws randomness)");

    DecomposeArgs da;
    auto* dec = app.add_subcommand("decompose", "factor a unitary matrix into reflections");
    dec->add_option("matrix", da.matrix_path, "matrix JSON file")->required();
    dec->add_option("--out", da.out_path, "decomposition JSON output")->required();
    dec->add_option("--mode", da.mode, "standard|generalized")
        ->check(CLI::IsMember({"standard", "generalized"}));
    dec->add_option("--tol", da.tol, "unitarity tolerance (also widens the residual gate)");

    QftArgs qa;
    auto* qft = app.add_subcommand("qft", "emit the QFT matrix, its decomposition, and fixtures");
    qft->add_option("-n,--n", qa.n, "dimension")->required();
    qft->add_option("--out", qa.out_path, "output JSON")->required();
    qft->add_option("--mode", qa.mode, "standard|generalized")
        ->check(CLI::IsMember({"standard", "generalized"}));
    qft->add_option("--tol", qa.tol, "decomposition tolerance");

    PulsesArgs pa;
    auto* pul = app.add_subcommand("pulses", "map a decomposition to a pulse schedule");
    pul->add_option("decomposition", pa.decomposition_path, "decomposition JSON file")->required();
    pul->add_option("--out", pa.out_path, "schedule JSON output")->required();
    pul->add_option("--T", pa.width, "pulse width T");
    pul->add_option("--k", pa.k, "resonant area index (area 2(2k+1)pi)");
    pul->add_option("--l", pa.l, "Rosen-Zener area index (chi T = 2l)");
    pul->add_option("--branch", pa.branch, "largest|smallest detuning root")
        ->check(CLI::IsMember({"largest", "smallest"}));

    SimulateArgs sa;
    auto* sim = app.add_subcommand("simulate", "integrate a schedule and compare to a target");
    sim->add_option("schedule", sa.schedule_path, "schedule JSON file")->required();
    sim->add_option("target", sa.target_path, "target matrix JSON file")->required();
    sim->add_option("--out", sa.trace_path, "trace CSV output")->required();
    sim->add_option("--tol", sa.tol, "final-deviation pass threshold");
    sim->add_option("--dt", sa.dt, "integrator step (default T/200)");
    sim->add_option("--window", sa.window, "half window in units of T");
    sim->add_option("--stride", sa.stride, "record every Nth step");
    sim->add_flag("--no-renormalize", sa.no_renormalize, "skip truncated-area renormalization");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_input_error;
    }

    std::vector<std::string> args(argv, argv + argc);
    try {
        if (*dec) return run_decompose(da, args);
        if (*qft) return run_qft(qa, args);
        if (*pul) return run_pulses(pa, args);
        if (*sim) return run_simulate(sa, args);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical_failure;
    }
    return exit_input_error;
}
