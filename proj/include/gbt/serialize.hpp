// JSON serialization for protocol inputs and reports, plus ket-notation
// text rendering for humans.
//
// Complex numbers serialize as two-element arrays [re, im]; doubles use
// the shortest representation that round-trips losslessly. Object keys are
// emitted in sorted order, so equal values always produce identical bytes.

#pragma once

#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "gbt/teleport.hpp"
#include "gbt/verify.hpp"

namespace gbt {

using json = nlohmann::json;

// ── Complex numbers and states ───────────────────────────────────────────

inline json to_json(cnum z) { return json::array({z.real(), z.imag()}); }

inline cnum cnum_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("complex value must be a [re, im] pair");
    return cnum{j[0].get<double>(), j[1].get<double>()};
}

inline json amps_to_json(const std::vector<cnum>& amps) {
    json a = json::array();
    for (cnum z : amps) a.push_back(to_json(z));
    return a;
}

inline std::vector<cnum> amps_from_json(const json& j) {
    std::vector<cnum> amps;
    amps.reserve(j.size());
    for (const auto& e : j) amps.push_back(cnum_from_json(e));
    return amps;
}

inline json to_json(const StateVec& s) {
    return json{{"dims", s.dims}, {"amps", amps_to_json(s.amps)}};
}

inline StateVec state_from_json(const json& j) {
    return StateVec(j.at("dims").get<std::vector<std::size_t>>(), amps_from_json(j.at("amps")));
}

// ── Protocol structures ──────────────────────────────────────────────────

inline json to_json(const WeylWord& w) {
    return json{{"d", w.d}, {"x_pow", w.x_pow}, {"z_pow", w.z_pow}, {"phase_pow", w.phase_pow}};
}

inline WeylWord weyl_word_from_json(const json& j) {
    return WeylWord(j.at("d").get<std::size_t>(), j.at("x_pow").get<std::size_t>(),
                    j.at("z_pow").get<std::size_t>(), j.at("phase_pow").get<std::size_t>());
}

inline json to_json(const ProtocolConfig& cfg) {
    return json{{"dim", cfg.d},
                {"input", amps_to_json(cfg.input_amps)},
                {"resource", json{{"m", cfg.resource.m}, {"n", cfg.resource.n}}},
                {"observable_eigenvalues", cfg.observable.eigenvalues},
                {"seed", cfg.seed}};
}

inline ProtocolConfig config_from_json(const json& j) {
    const std::size_t d = j.at("dim").get<std::size_t>();
    return ProtocolConfig{
        d, amps_from_json(j.at("input")),
        BellIndex(d, j.at("resource").at("m").get<std::size_t>(),
                  j.at("resource").at("n").get<std::size_t>()),
        ObservableSpec(d, j.at("observable_eigenvalues").get<std::vector<double>>()),
        j.at("seed").get<std::uint64_t>()};
}

inline json to_json(const MeasurementOutcome& o) {
    return json{{"eigenvalue", o.eigenvalue},
                {"probability", o.probability},
                {"degenerate", o.degenerate},
                {"post_state", to_json(o.post_state)}};
}

inline MeasurementOutcome outcome_from_json(const json& j) {
    return MeasurementOutcome{j.at("eigenvalue").get<double>(), j.at("probability").get<double>(),
                              state_from_json(j.at("post_state")), j.at("degenerate").get<bool>()};
}

inline json to_json(const TeleportReport& r) {
    return json{{"config", to_json(r.config)},   {"outcome", to_json(r.outcome)},
                {"message", r.message.bell_flat_index}, {"correction", to_json(r.correction)},
                {"bob_state", to_json(r.bob_state)},    {"fidelity", r.fidelity},
                {"success", r.success}};
}

inline TeleportReport report_from_json(const json& j) {
    return TeleportReport{config_from_json(j.at("config")),
                          outcome_from_json(j.at("outcome")),
                          ClassicalMessage{j.at("message").get<std::size_t>()},
                          weyl_word_from_json(j.at("correction")),
                          state_from_json(j.at("bob_state")),
                          j.at("fidelity").get<double>(),
                          j.at("success").get<bool>()};
}

inline json to_json(const OutcomeAnalysis& o) {
    return json{{"eigenvalue", o.eigenvalue},
                {"probability", o.probability},
                {"degenerate", o.degenerate},
                {"bell_cluster", o.bell_cluster},
                {"bob_purity", o.bob_purity},
                {"table_correction", to_json(o.table_correction)},
                {"fidelity_table", o.fidelity_table},
                {"best_correction", to_json(o.best_correction)},
                {"fidelity_best", o.fidelity_best}};
}

inline json to_json(const DegenerateDemoReport& r) {
    json outcomes = json::array();
    for (const auto& o : r.outcomes) outcomes.push_back(to_json(o));
    return json{{"config", to_json(r.config)},
                {"outcomes", outcomes},
                {"average_fidelity_table", r.average_fidelity_table},
                {"average_fidelity_best", r.average_fidelity_best},
                {"control_observable_eigenvalues", r.control_observable.eigenvalues},
                {"control_fidelity", r.control_fidelity}};
}

inline json to_json(const CheckResult& c) {
    return json{{"suite", c.suite},
                {"name", c.name},
                {"max_error", c.max_error},
                {"tolerance", c.tolerance},
                {"pass", c.pass}};
}

inline json to_json(const SpectralForm& sf) {
    json spaces = json::array();
    for (std::size_t k = 0; k < sf.outcome_count(); ++k)
        spaces.push_back(json{{"value", sf.eigenvalues[k]}, {"multiplicity", sf.multiplicities[k]}});
    return json{{"dim", sf.dim}, {"eigenvalues", spaces}, {"degenerate", sf.degenerate()}};
}

// ── Text rendering ───────────────────────────────────────────────────────

inline std::string format_real(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

inline std::string format_cnum(cnum z) {
    std::ostringstream os;
    os << "(" << format_real(z.real());
    os << (z.imag() < 0 ? "-" : "+") << format_real(std::abs(z.imag())) << "i)";
    return os.str();
}

// Mixed-radix digits of a flat index, e.g. |102⟩ for dims (2,2,3).
inline std::string ket_label(const std::vector<std::size_t>& dims, std::size_t flat) {
    std::string digits(dims.size(), '0');
    for (std::size_t i = dims.size(); i-- > 0;) {
        digits[i] = static_cast<char>('0' + flat % dims[i]);
        flat /= dims[i];
    }
    return "|" + digits + "⟩";
}

// Amplitudes rounded to 6 digits, zero terms skipped.
inline std::string ket_string(const StateVec& s) {
    std::string out;
    for (std::size_t i = 0; i < s.amps.size(); ++i) {
        if (std::abs(s.amps[i]) < 5e-7) continue;
        if (!out.empty()) out += " + ";
        out += format_cnum(s.amps[i]) + ket_label(s.dims, i);
    }
    return out.empty() ? "0" : out;
}

}  // namespace gbt
