#pragma once

#include "lsc/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lsc {

enum class GateKind { H, S, Sdg, X, Z, SX, T, Tdg, RZ, CNOT };

inline constexpr GateKind all_gate_kinds[] = {GateKind::H,  GateKind::S,   GateKind::Sdg,
                                              GateKind::X,  GateKind::Z,   GateKind::SX,
                                              GateKind::T,  GateKind::Tdg, GateKind::RZ,
                                              GateKind::CNOT};

/// Canonical display name, also used in JSON exports.
inline std::string_view kind_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::S: return "S";
        case GateKind::Sdg: return "Sdg";
        case GateKind::X: return "X";
        case GateKind::Z: return "Z";
        case GateKind::SX: return "SX";
        case GateKind::T: return "T";
        case GateKind::Tdg: return "Tdg";
        case GateKind::RZ: return "RZ";
        case GateKind::CNOT: return "CNOT";
    }
    return "?";
}

/// OpenQASM 2.0 (qelib1) mnemonic.
inline std::string_view qasm_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "h";
        case GateKind::S: return "s";
        case GateKind::Sdg: return "sdg";
        case GateKind::X: return "x";
        case GateKind::Z: return "z";
        case GateKind::SX: return "sx";
        case GateKind::T: return "t";
        case GateKind::Tdg: return "tdg";
        case GateKind::RZ: return "rz";
        case GateKind::CNOT: return "cx";
    }
    return "?";
}

inline std::optional<GateKind> kind_from_name(std::string_view name) {
    for (GateKind k : all_gate_kinds) {
        if (kind_name(k) == name) return k;
    }
    return std::nullopt;
}

inline std::optional<GateKind> kind_from_qasm(std::string_view name) {
    for (GateKind k : all_gate_kinds) {
        if (qasm_name(k) == name) return k;
    }
    return std::nullopt;
}

inline constexpr double clifford_angle_tolerance = 1e-9;

/// If `angle` is an integer multiple of pi/2 (within tolerance), returns that
/// multiple reduced mod 4.
inline std::optional<int> clifford_quarter_turns(double angle) {
    const double k = angle / (std::numbers::pi / 2.0);
    const double nearest = std::round(k);
    if (std::abs(angle - nearest * (std::numbers::pi / 2.0)) > clifford_angle_tolerance) {
        return std::nullopt;
    }
    const long long m = static_cast<long long>(nearest);
    return static_cast<int>(((m % 4) + 4) % 4);
}

struct Gate {
    GateKind kind = GateKind::H;
    std::vector<std::size_t> operands;
    std::optional<double> angle;

    static Gate single(GateKind k, std::size_t q) { return Gate{k, {q}, std::nullopt}; }
    static Gate rz(std::size_t q, double theta) { return Gate{GateKind::RZ, {q}, theta}; }
    static Gate cnot(std::size_t control, std::size_t target) {
        return Gate{GateKind::CNOT, {control, target}, std::nullopt};
    }

    bool is_two_qubit() const noexcept { return kind == GateKind::CNOT; }

    friend bool operator==(const Gate&, const Gate&) = default;
};

/// True for gates that consume one distilled magic state.
inline bool needs_magic_state(const Gate& g) {
    switch (g.kind) {
        case GateKind::T:
        case GateKind::Tdg: return true;
        case GateKind::RZ: return g.angle && !clifford_quarter_turns(*g.angle).has_value();
        default: return false;
    }
}

struct Circuit {
    std::string name;
    std::size_t n_qubits = 0;
    std::vector<Gate> gates;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Throws InvalidArgument describing the first gate that breaks the Gate
/// invariants against `n_qubits`.
inline void check_gate(const Gate& g, std::size_t n_qubits) {
    const std::size_t want = g.kind == GateKind::CNOT ? 2 : 1;
    if (g.operands.size() != want) {
        throw InvalidArgument(std::string(kind_name(g.kind)) + " expects " + std::to_string(want) +
                              " operand(s)");
    }
    for (std::size_t q : g.operands) {
        if (q >= n_qubits) {
            throw InvalidArgument("qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (want == 2 && g.operands[0] == g.operands[1]) {
        throw InvalidArgument("CNOT operands must be distinct");
    }
    if ((g.kind == GateKind::RZ) != g.angle.has_value()) {
        throw InvalidArgument("angle must be present exactly for RZ");
    }
    if (g.angle && !std::isfinite(*g.angle)) throw InvalidArgument("RZ angle must be finite");
}

inline void check_circuit(const Circuit& c) {
    for (const Gate& g : c.gates) check_gate(g, c.n_qubits);
}

inline std::size_t count_t_states(const Circuit& c) {
    return static_cast<std::size_t>(std::count_if(c.gates.begin(), c.gates.end(), needs_magic_state));
}

using GateCounts = std::map<GateKind, std::size_t>;

inline GateCounts gate_counts(const Circuit& c) {
    GateCounts counts;
    for (const Gate& g : c.gates) ++counts[g.kind];
    return counts;
}

/// "CNOT: 360, RZ: 280, H: 300" style, in enum order, zero counts skipped.
inline std::string format_counts(const GateCounts& counts) {
    std::string out;
    for (GateKind k : all_gate_kinds) {
        auto it = counts.find(k);
        if (it == counts.end() || it->second == 0) continue;
        if (!out.empty()) out += ", ";
        out += std::string(kind_name(k)) + ": " + std::to_string(it->second);
    }
    return out;
}

// ---- JSON -------------------------------------------------------------------

inline nlohmann::json to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate& g : c.gates) {
        nlohmann::json j{{"kind", kind_name(g.kind)}, {"operands", g.operands}};
        if (g.angle) j["angle"] = *g.angle;
        gates.push_back(std::move(j));
    }
    return {{"name", c.name}, {"n_qubits", c.n_qubits}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    Circuit c;
    c.name = j.at("name").get<std::string>();
    c.n_qubits = j.at("n_qubits").get<std::size_t>();
    for (const auto& jg : j.at("gates")) {
        const auto name = jg.at("kind").get<std::string>();
        auto kind = kind_from_name(name);
        if (!kind) throw UnsupportedGate(name);
        Gate g{*kind, jg.at("operands").get<std::vector<std::size_t>>(), std::nullopt};
        if (jg.contains("angle")) g.angle = jg.at("angle").get<double>();
        c.gates.push_back(std::move(g));
    }
    check_circuit(c);
    return c;
}

}  // namespace lsc
