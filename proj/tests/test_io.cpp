#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "qhr/io.hpp"
#include "qhr/qft.hpp"
#include "qhr/random_unitary.hpp"

using namespace qhr;

TEST_CASE("matrix JSON round trip") {
    const CMatrix u = random_unitary(3, 17);
    const CMatrix back = matrix_from_json(matrix_to_json(u));
    CHECK(max_abs_diff(u, back) == 0.0);
}

TEST_CASE("matrix JSON validation") {
    json j = matrix_to_json(CMatrix::identity(2));
    j["entries"].erase(3);
    CHECK_THROWS_WITH(matrix_from_json(j), Catch::Matchers::ContainsSubstring("entry count"));

    json bad = {{"rows", 0}, {"cols", 2}, {"entries", json::array()}};
    CHECK_THROWS_AS(matrix_from_json(bad), std::invalid_argument);

    json shape = matrix_to_json(CMatrix::identity(2));
    shape["entries"][0] = {1.0, 0.0, 0.0};
    CHECK_THROWS_AS(matrix_from_json(shape), std::invalid_argument);
}

TEST_CASE("factor and gate round trips") {
    const QftFixture fx = qft_fixture(3);
    const HouseholderFactor f = fx.generalized.factors[1];
    const HouseholderFactor back = factor_from_json(factor_to_json(f));
    CHECK(back.phi() == f.phi());
    for (std::size_t i = 0; i < f.dim(); ++i) CHECK(back.v()[i] == f.v()[i]);

    // off-unit vectors are rejected at parse time
    json j = factor_to_json(f);
    j["v"][1][0] = 0.9;
    CHECK_THROWS_AS(factor_from_json(j), std::invalid_argument);

    const PhaseGate g{{0.1, -0.2, 0.3}};
    CHECK(gate_from_json(gate_to_json(g)).phases == g.phases);
}

TEST_CASE("decomposition JSON round trip preserves the product") {
    const CMatrix u = random_unitary(4, 55);

    const auto sd = decompose_standard(u);
    const auto sj = decomposition_to_json(sd);
    CHECK(sj.at("kind") == "standard");
    const auto sback = std::get<StandardDecomposition>(decomposition_from_json(sj));
    CHECK(max_abs_diff(reconstruct_standard(sback), u) < 1e-10);

    const auto gd = decompose_generalized(u);
    const auto gj = decomposition_to_json(gd);
    CHECK(gj.at("kind") == "generalized");
    CHECK(gj.at("gate").is_null());
    const auto gback = std::get<GeneralizedDecomposition>(decomposition_from_json(gj));
    CHECK(max_abs_diff(reconstruct_generalized(gback), u) < 1e-10);

    json bad = gj;
    bad["kind"] = "other";
    CHECK_THROWS_AS(decomposition_from_json(bad), std::invalid_argument);

    json short_factors = sj;
    short_factors["factors"].erase(0);
    CHECK_THROWS_AS(decomposition_from_json(short_factors), std::invalid_argument);
}

TEST_CASE("pulse step and schedule round trips") {
    PulseStep s;
    s.chi = {1.0, 0.5};
    s.beta = {0.0, pi};
    s.delta0 = 0.25;
    s.width = 2.0;
    s.center = -10.0;
    s.area_index = 1;

    const json j = pulse_step_to_json(s);
    CHECK(j.at("envelope") == "sech");
    const PulseStep back = pulse_step_from_json(j);
    CHECK(back.chi == s.chi);
    CHECK(back.beta == s.beta);
    CHECK(back.delta0 == s.delta0);
    CHECK(back.width == s.width);
    CHECK(back.center == s.center);
    CHECK(back.area_index == s.area_index);

    json wrong_env = j;
    wrong_env["envelope"] = "gauss";
    CHECK_THROWS_AS(pulse_step_from_json(wrong_env), std::invalid_argument);

    PulseSchedule sched;
    sched.steps = {s};
    sched.spacing = 10.0;
    sched.gate = PhaseGate{{0.0, 0.5}};
    const PulseSchedule sback = schedule_from_json(schedule_to_json(sched));
    REQUIRE(sback.steps.size() == 1);
    CHECK(sback.spacing == 10.0);
    REQUIRE(sback.gate.has_value());
    CHECK(sback.gate->phases == sched.gate->phases);

    PulseSchedule nogate;
    nogate.steps = {s};
    CHECK_FALSE(schedule_from_json(schedule_to_json(nogate)).gate.has_value());
}

TEST_CASE("trace CSV format") {
    PropagatorTrace tr;
    tr.times = {0.0, 0.1};
    tr.deviation = {1.234567890123456, 0.5};
    tr.ancilla_population = {0.0, 0.25};

    std::ostringstream os;
    write_trace_csv(os, tr);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line);
    CHECK(line == "t,deviation,ancilla_pop");
    std::getline(is, line);
    CHECK(line.find("1.2345678901234") != std::string::npos);  // >= 12 significant digits
    std::getline(is, line);
    CHECK(line == "0.1,0.5,0.25");
}
