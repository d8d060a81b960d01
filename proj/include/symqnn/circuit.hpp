#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace symqnn {

enum class GateKind { H, RY, RZ, RZZ, CNOT, SWAP };

bool is_rotation(GateKind kind);
int arity(GateKind kind);
std::string gate_name(GateKind kind);
GateKind gate_kind_from_name(const std::string& name);

/// One gate in a circuit. Rotation gates carry either a shared parameter
/// slot or a fixed angle, never both; H/CNOT/SWAP carry neither.
struct Gate {
    GateKind kind;
    int q0 = 0;
    int q1 = -1;  // second target for RZZ/CNOT/SWAP (control first for CNOT)
    std::optional<int> param_slot;
    std::optional<double> fixed_angle;

    static Gate h(int q);
    static Gate ry(int q, int slot);
    static Gate ry_fixed(int q, double angle);
    static Gate rz(int q, int slot);
    static Gate rz_fixed(int q, double angle);
    static Gate rzz(int q0, int q1, int slot);
    static Gate rzz_fixed(int q0, int q1, double angle);
    static Gate cnot(int control, int target);
    static Gate swap(int q0, int q1);

    void validate(int n_qubits) const;
};

/// An ordered gate list over a fixed register, with shared parameter
/// slots. Immutable by convention once built.
struct ParamCircuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    int n_params = 0;
    std::string builder;
    int layers = 0;

    /// Checks targets, slot ranges and that every slot is referenced.
    void validate() const;

    /// Indices of the gates carrying each slot.
    std::vector<std::vector<std::size_t>> slot_gates() const;

    /// Greedy parallel-layering depth of this gate list. Depth figures
    /// from external transpilers are not comparable.
    int depth() const;

    nlohmann::json to_json() const;
    static ParamCircuit from_json(const nlohmann::json& j);
};

}  // namespace symqnn
