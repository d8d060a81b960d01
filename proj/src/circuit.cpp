#include "symqnn/circuit.hpp"

#include <algorithm>
#include <stdexcept>

namespace symqnn {

bool is_rotation(GateKind kind) {
    return kind == GateKind::RY || kind == GateKind::RZ || kind == GateKind::RZZ;
}

int arity(GateKind kind) {
    switch (kind) {
        case GateKind::H:
        case GateKind::RY:
        case GateKind::RZ: return 1;
        case GateKind::RZZ:
        case GateKind::CNOT:
        case GateKind::SWAP: return 2;
    }
    return 0;
}

std::string gate_name(GateKind kind) {
    switch (kind) {
        case GateKind::H: return "H";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::RZZ: return "RZZ";
        case GateKind::CNOT: return "CNOT";
        case GateKind::SWAP: return "SWAP";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "H") return GateKind::H;
    if (name == "RY") return GateKind::RY;
    if (name == "RZ") return GateKind::RZ;
    if (name == "RZZ") return GateKind::RZZ;
    if (name == "CNOT") return GateKind::CNOT;
    if (name == "SWAP") return GateKind::SWAP;
    throw std::invalid_argument("unknown gate kind '" + name + "'");
}

Gate Gate::h(int q) { return Gate{GateKind::H, q, -1, {}, {}}; }
Gate Gate::ry(int q, int slot) { return Gate{GateKind::RY, q, -1, slot, {}}; }
Gate Gate::ry_fixed(int q, double angle) { return Gate{GateKind::RY, q, -1, {}, angle}; }
Gate Gate::rz(int q, int slot) { return Gate{GateKind::RZ, q, -1, slot, {}}; }
Gate Gate::rz_fixed(int q, double angle) { return Gate{GateKind::RZ, q, -1, {}, angle}; }
Gate Gate::rzz(int q0, int q1, int slot) { return Gate{GateKind::RZZ, q0, q1, slot, {}}; }
Gate Gate::rzz_fixed(int q0, int q1, double angle) { return Gate{GateKind::RZZ, q0, q1, {}, angle}; }
Gate Gate::cnot(int control, int target) { return Gate{GateKind::CNOT, control, target, {}, {}}; }
Gate Gate::swap(int q0, int q1) { return Gate{GateKind::SWAP, q0, q1, {}, {}}; }

void Gate::validate(int n_qubits) const {
    const int n_targets = arity(kind);
    if (q0 < 0 || q0 >= n_qubits)
        throw std::out_of_range("gate target " + std::to_string(q0) +
                                " outside register of " + std::to_string(n_qubits));
    if (n_targets == 2) {
        if (q1 < 0 || q1 >= n_qubits)
            throw std::out_of_range("gate target " + std::to_string(q1) +
                                    " outside register of " + std::to_string(n_qubits));
        if (q0 == q1)
            throw std::invalid_argument(gate_name(kind) + " requires two distinct targets");
    } else if (q1 != -1) {
        throw std::invalid_argument(gate_name(kind) + " takes a single target");
    }
    if (is_rotation(kind)) {
        if (param_slot.has_value() == fixed_angle.has_value())
            throw std::invalid_argument(gate_name(kind) +
                                        " needs exactly one of param_slot / fixed_angle");
    } else if (param_slot || fixed_angle) {
        throw std::invalid_argument(gate_name(kind) + " takes no angle");
    }
}

void ParamCircuit::validate() const {
    if (n_qubits < 0) throw std::invalid_argument("negative register size");
    std::vector<bool> seen(static_cast<std::size_t>(std::max(n_params, 0)), false);
    for (const Gate& g : gates) {
        g.validate(n_qubits);
        if (g.param_slot) {
            const int s = *g.param_slot;
            if (s < 0 || s >= n_params)
                throw std::out_of_range("parameter slot " + std::to_string(s) +
                                        " outside 0.." + std::to_string(n_params - 1));
            seen[static_cast<std::size_t>(s)] = true;
        }
    }
    for (int s = 0; s < n_params; ++s)
        if (!seen[static_cast<std::size_t>(s)])
            throw std::invalid_argument("parameter slot " + std::to_string(s) +
                                        " is never referenced");
}

std::vector<std::vector<std::size_t>> ParamCircuit::slot_gates() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(std::max(n_params, 0)));
    for (std::size_t i = 0; i < gates.size(); ++i)
        if (gates[i].param_slot) out[static_cast<std::size_t>(*gates[i].param_slot)].push_back(i);
    return out;
}

int ParamCircuit::depth() const {
    std::vector<int> level(static_cast<std::size_t>(n_qubits), 0);
    int depth = 0;
    for (const Gate& g : gates) {
        int at = level[static_cast<std::size_t>(g.q0)];
        if (arity(g.kind) == 2) at = std::max(at, level[static_cast<std::size_t>(g.q1)]);
        ++at;
        level[static_cast<std::size_t>(g.q0)] = at;
        if (arity(g.kind) == 2) level[static_cast<std::size_t>(g.q1)] = at;
        depth = std::max(depth, at);
    }
    return depth;
}

nlohmann::json ParamCircuit::to_json() const {
    nlohmann::json gates_json = nlohmann::json::array();
    for (const Gate& g : gates) {
        nlohmann::json jg;
        jg["kind"] = gate_name(g.kind);
        if (arity(g.kind) == 2)
            jg["targets"] = {g.q0, g.q1};
        else
            jg["targets"] = {g.q0};
        if (g.param_slot) jg["slot"] = *g.param_slot;
        if (g.fixed_angle) jg["angle"] = *g.fixed_angle;
        gates_json.push_back(std::move(jg));
    }
    return nlohmann::json{{"schema_version", 1},
                          {"n_qubits", n_qubits},
                          {"n_params", n_params},
                          {"metadata", {{"builder", builder}, {"layers", layers}}},
                          {"gates", std::move(gates_json)}};
}

ParamCircuit ParamCircuit::from_json(const nlohmann::json& j) {
    ParamCircuit c;
    c.n_qubits = j.at("n_qubits").get<int>();
    c.n_params = j.at("n_params").get<int>();
    if (j.contains("metadata")) {
        c.builder = j["metadata"].value("builder", "");
        c.layers = j["metadata"].value("layers", 0);
    }
    for (const auto& jg : j.at("gates")) {
        Gate g{gate_kind_from_name(jg.at("kind").get<std::string>()), 0, -1, {}, {}};
        const auto& t = jg.at("targets");
        g.q0 = t.at(0).get<int>();
        g.q1 = t.size() > 1 ? t.at(1).get<int>() : -1;
        if (jg.contains("slot")) g.param_slot = jg["slot"].get<int>();
        if (jg.contains("angle")) g.fixed_angle = jg["angle"].get<double>();
        c.gates.push_back(g);
    }
    c.validate();
    return c;
}

}  // namespace symqnn
