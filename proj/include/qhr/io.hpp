#pragma once

#include <iomanip>
#include <ostream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "qhr/complex_matrix.hpp"
#include "qhr/decompose.hpp"
#include "qhr/dynamics.hpp"
#include "qhr/pulse.hpp"
#include "qhr/reflection.hpp"

namespace qhr {

using json = nlohmann::json;

// ----- matrices: {"rows": R, "cols": C, "entries": [[re, im], ...]} -----

inline json matrix_to_json(const CMatrix& m) {
    json entries = json::array();
    for (const auto& z : m.entries()) entries.push_back({z.real(), z.imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline CMatrix matrix_from_json(const json& j) {
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    const auto& entries = j.at("entries");
    if (rows < 1 || cols < 1) throw std::invalid_argument("matrix: rows and cols must be >= 1");
    if (!entries.is_array() || entries.size() != rows * cols)
        throw std::invalid_argument("matrix: entry count does not match rows*cols");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        const auto& e = entries[i];
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("matrix: each entry must be [re, im]");
        m.entries()[i] = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return m;
}

// ----- factors and gates -----

inline json factor_to_json(const HouseholderFactor& f) {
    json v = json::array();
    for (std::size_t i = 0; i < f.dim(); ++i) v.push_back({f.v()[i].real(), f.v()[i].imag()});
    return json{{"phi", f.phi()}, {"v", std::move(v)}};
}

inline HouseholderFactor factor_from_json(const json& j) {
    const auto& ventries = j.at("v");
    if (!ventries.is_array() || ventries.empty())
        throw std::invalid_argument("factor: v must be a non-empty array of [re, im]");
    CVector v(ventries.size());
    for (std::size_t i = 0; i < ventries.size(); ++i) {
        const auto& e = ventries[i];
        if (!e.is_array() || e.size() != 2)
            throw std::invalid_argument("factor: each v entry must be [re, im]");
        v[i] = Complex(e[0].get<double>(), e[1].get<double>());
    }
    return HouseholderFactor(std::move(v), j.at("phi").get<double>());
}

inline json gate_to_json(const PhaseGate& g) { return json{{"phases", g.phases}}; }

inline PhaseGate gate_from_json(const json& j) {
    PhaseGate g{j.at("phases").get<std::vector<double>>()};
    if (g.phases.empty()) throw std::invalid_argument("gate: phases must be non-empty");
    return g;
}

// ----- decompositions -----

inline json decomposition_to_json(const StandardDecomposition& d) {
    json factors = json::array();
    for (const auto& f : d.factors) factors.push_back(factor_to_json(f));
    return json{{"kind", "standard"}, {"factors", std::move(factors)}, {"gate", gate_to_json(d.gate)}};
}

inline json decomposition_to_json(const GeneralizedDecomposition& d) {
    json factors = json::array();
    for (const auto& f : d.factors) factors.push_back(factor_to_json(f));
    return json{{"kind", "generalized"}, {"factors", std::move(factors)}, {"gate", nullptr}};
}

using Decomposition = std::variant<StandardDecomposition, GeneralizedDecomposition>;

inline Decomposition decomposition_from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    std::vector<HouseholderFactor> factors;
    for (const auto& fj : j.at("factors")) factors.push_back(factor_from_json(fj));
    if (kind == "standard") {
        StandardDecomposition d;
        d.factors = std::move(factors);
        d.gate = gate_from_json(j.at("gate"));
        if (d.factors.size() + 1 != d.gate.phases.size())
            throw std::invalid_argument("decomposition: standard form needs N-1 factors and N phases");
        return d;
    }
    if (kind == "generalized") {
        GeneralizedDecomposition d;
        d.factors = std::move(factors);
        if (d.factors.empty() || d.factors.size() != d.factors.front().dim())
            throw std::invalid_argument("decomposition: generalized form needs N factors of dimension N");
        return d;
    }
    throw std::invalid_argument("decomposition: kind must be \"standard\" or \"generalized\"");
}

// ----- pulses -----

inline json pulse_step_to_json(const PulseStep& s) {
    return json{{"chi", s.chi},     {"beta", s.beta},          {"delta0", s.delta0},
                {"T", s.width},     {"tau", s.center},         {"envelope", "sech"},
                {"area_index", s.area_index}};
}

inline PulseStep pulse_step_from_json(const json& j) {
    PulseStep s;
    s.chi = j.at("chi").get<std::vector<double>>();
    s.beta = j.at("beta").get<std::vector<double>>();
    s.delta0 = j.at("delta0").get<double>();
    s.width = j.at("T").get<double>();
    s.center = j.at("tau").get<double>();
    s.area_index = j.at("area_index").get<int>();
    if (j.at("envelope").get<std::string>() != "sech")
        throw std::invalid_argument("pulse step: only the sech envelope is supported");
    if (s.chi.empty() || s.chi.size() != s.beta.size())
        throw std::invalid_argument("pulse step: chi/beta must be non-empty and equal length");
    return s;
}

inline json schedule_to_json(const PulseSchedule& s) {
    json steps = json::array();
    for (const auto& st : s.steps) steps.push_back(pulse_step_to_json(st));
    json g = s.gate ? gate_to_json(*s.gate) : json(nullptr);
    return json{{"steps", std::move(steps)}, {"spacing", s.spacing}, {"gate", std::move(g)}};
}

inline PulseSchedule schedule_from_json(const json& j) {
    PulseSchedule s;
    for (const auto& sj : j.at("steps")) s.steps.push_back(pulse_step_from_json(sj));
    s.spacing = j.at("spacing").get<double>();
    if (!j.at("gate").is_null()) s.gate = gate_from_json(j.at("gate"));
    return s;
}

// ----- trace CSV: header t,deviation,ancilla_pop -----

inline void write_trace_csv(std::ostream& os, const PropagatorTrace& trace) {
    os << "t,deviation,ancilla_pop\n";
    os << std::setprecision(15);
    for (std::size_t i = 0; i < trace.times.size(); ++i)
        os << trace.times[i] << ',' << trace.deviation[i] << ',' << trace.ancilla_population[i]
           << '\n';
}

}  // namespace qhr
