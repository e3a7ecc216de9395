#pragma once

// Circuit JSON:
//   {"width": n, "ancillas": a,
//    "gates": [{"kind": "MCZ", "operands": [0, 1, 2, 3]},
//              {"kind": "PhaseOracle", "operands": [0, 1, 2, 3], "marked": ["1100"]}]}

#include <nlohmann/json.hpp>
#include <string>

#include "localsearch/bitstring.hpp"
#include "localsearch/circuit/circuit.hpp"

namespace localsearch::circuit {

inline nlohmann::json to_json(const Circuit& c) {
    nlohmann::json gates = nlohmann::json::array();
    for (const auto& g : c.gates()) {
        nlohmann::json jg{{"kind", std::string(to_string(g.kind))}, {"operands", g.operands}};
        if (g.kind == GateKind::PhaseOracle) {
            nlohmann::json marked = nlohmann::json::array();
            for (auto m : g.marked) marked.push_back(format_bitstring(m, static_cast<int>(g.operands.size())));
            jg["marked"] = std::move(marked);
        }
        gates.push_back(std::move(jg));
    }
    return {{"width", c.width()}, {"ancillas", c.ancilla_count()}, {"gates", std::move(gates)}};
}

inline Circuit circuit_from_json(const nlohmann::json& j) {
    try {
        Circuit c(j.at("width").get<int>(), j.value("ancillas", 0));
        for (const auto& jg : j.at("gates")) {
            const auto name = jg.at("kind").get<std::string>();
            const auto kind = gate_kind_from_string(name);
            if (!kind) throw InvalidArgument("unknown gate kind '" + name + "'");
            Gate g{*kind, jg.at("operands").get<std::vector<int>>(), {}};
            if (*kind == GateKind::PhaseOracle) {
                for (const auto& m : jg.at("marked")) {
                    g.marked.push_back(parse_bitstring(m.get<std::string>(), static_cast<int>(g.operands.size())));
                }
                g = Gate::phase_oracle(std::move(g.operands), std::move(g.marked));
            }
            c.add(std::move(g));
        }
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw InvalidArgument(std::string("malformed circuit JSON: ") + e.what());
    }
}

}  // namespace localsearch::circuit
