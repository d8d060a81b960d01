#include "symqnn/ansatz.hpp"

#include <stdexcept>

#include "symqnn/encoding.hpp"

namespace symqnn {

namespace {

void append_hardware_efficient_body(ParamCircuit& c, int layers) {
    int slot = 0;
    auto rotation_column = [&] {
        for (int q = 0; q < c.n_qubits; ++q) c.gates.push_back(Gate::ry(q, slot++));
    };
    for (int l = 0; l < layers; ++l) {
        rotation_column();
        for (int q = 0; q + 1 < c.n_qubits; ++q) c.gates.push_back(Gate::cnot(q, q + 1));
    }
    rotation_column();
    c.n_params = slot;
}

/// Emits one twirled generator as gates sharing `slot`: RY per Y orbit
/// member, RZZ per ZZ orbit member. `offset` relocates block-local
/// supports into the assembled register.
void append_twirled(ParamCircuit& c, const TwirledGenerator& gen, int slot, int offset) {
    for (const PauliString& p : gen.orbit) {
        if (p.ops.size() == 1 && p.ops.begin()->second == PauliOp::Y) {
            c.gates.push_back(Gate::ry(p.ops.begin()->first + offset, slot));
        } else if (p.ops.size() == 2 &&
                   p.ops.begin()->second == PauliOp::Z &&
                   std::next(p.ops.begin())->second == PauliOp::Z) {
            c.gates.push_back(Gate::rzz(p.ops.begin()->first + offset,
                                        std::next(p.ops.begin())->first + offset, slot));
        } else {
            throw std::invalid_argument("twirled orbit member " + p.str() +
                                        " has no gate realization");
        }
    }
}

}  // namespace

ParamCircuit build_baseline(int n_points, int dim, int layers) {
    if (n_points < 1 || dim < 1) throw std::invalid_argument("need n_points >= 1 and dim >= 1");
    if (layers < 1) throw std::invalid_argument("need at least one ansatz layer");
    ParamCircuit c;
    c.n_qubits = n_points * dim;
    c.builder = "baseline";
    c.layers = layers;
    append_hardware_efficient_body(c, layers);
    c.validate();
    return c;
}

ParamCircuit build_rotational(int n_points, int layers, bool include_self) {
    if (n_points < 1) throw std::invalid_argument("need n_points >= 1");
    if (layers < 1) throw std::invalid_argument("need at least one ansatz layer");
    ParamCircuit c;
    c.n_qubits = n_pairs(n_points) + (include_self ? n_points : 0);
    c.builder = "rotational";
    c.layers = layers;
    append_hardware_efficient_body(c, layers);
    c.validate();
    return c;
}

ParamCircuit build_fully_symmetric(int n_points, int layers, bool include_self) {
    if (n_points < 2 || n_points > kMaxGroupPoints)
        throw std::out_of_range("fully symmetric ansatz supports 2.." +
                                std::to_string(kMaxGroupPoints) + " points");
    if (layers < 1) throw std::invalid_argument("need at least one ansatz layer");

    const int n = n_points;
    const int pair_offset = include_self ? n : 0;

    const auto y_self = twirl(PauliString{{{0, PauliOp::Y}}}, n, Block::Self);
    const auto y_pair = twirl(PauliString{{{0, PauliOp::Y}}}, n, Block::Pair);
    const auto zz_self = twirl(PauliString{{{0, PauliOp::Z}, {1, PauliOp::Z}}}, n, Block::Self);
    // Seed Z[12]Z[13]: the index-sharing pair. Needs at least two pair qubits.
    const bool has_pair_zz = n_pairs(n) >= 2;
    const auto zz_pair = has_pair_zz
        ? twirl(PauliString{{{pair_index(0, 1, n), PauliOp::Z}, {pair_index(0, 2, n), PauliOp::Z}}},
                n, Block::Pair)
        : TwirledGenerator{};

    ParamCircuit c;
    c.n_qubits = n_pairs(n) + (include_self ? n : 0);
    c.builder = "fully_symmetric";
    c.layers = layers;
    int slot = 0;
    for (int l = 0; l < layers; ++l) {
        if (include_self) append_twirled(c, y_self, slot++, 0);
        append_twirled(c, y_pair, slot++, pair_offset);
        if (include_self) append_twirled(c, zz_self, slot++, 0);
        if (has_pair_zz) append_twirled(c, zz_pair, slot++, pair_offset);
    }
    c.n_params = slot;
    c.validate();
    return c;
}

ParamCircuit assemble_model(const ParamCircuit& encoder, const ParamCircuit& ansatz) {
    if (encoder.n_qubits != 0 && encoder.n_qubits != ansatz.n_qubits)
        throw std::invalid_argument("encoder register (" + std::to_string(encoder.n_qubits) +
                                    ") does not match ansatz register (" +
                                    std::to_string(ansatz.n_qubits) + ")");
    if (encoder.n_params != 0)
        throw std::invalid_argument("encoder must be parameter-free");
    ParamCircuit c;
    c.n_qubits = ansatz.n_qubits;
    c.n_params = ansatz.n_params;
    c.builder = encoder.gates.empty() ? ansatz.builder : encoder.builder + "+" + ansatz.builder;
    c.layers = ansatz.layers;
    c.gates = encoder.gates;
    c.gates.insert(c.gates.end(), ansatz.gates.begin(), ansatz.gates.end());
    c.validate();
    return c;
}

}  // namespace symqnn
