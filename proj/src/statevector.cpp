#include "symqnn/statevector.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace symqnn {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::out_of_range("register size " + std::to_string(n_qubits) +
                                " outside 1.." + std::to_string(kMaxQubits));
    amps_.assign(std::size_t{1} << n_qubits, {0.0, 0.0});
    amps_[0] = {1.0, 0.0};
}

Statevector init_state(int n_qubits) { return Statevector(n_qubits); }

double Statevector::norm() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return std::sqrt(s);
}

void Statevector::check_target(int q) const {
    if (q < 0 || q >= n_qubits_)
        throw std::out_of_range("qubit " + std::to_string(q) + " outside register of " +
                                std::to_string(n_qubits_));
}

void Statevector::apply_h(int q) {
    check_target(q);
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + mask];
            amps_[i] = (a0 + a1) * kInvSqrt2;
            amps_[i + mask] = (a0 - a1) * kInvSqrt2;
        }
    }
}

void Statevector::apply_ry(int q, double angle) {
    check_target(q);
    const double c = std::cos(angle / 2.0);
    const double s = std::sin(angle / 2.0);
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            const auto a0 = amps_[i];
            const auto a1 = amps_[i + mask];
            amps_[i] = c * a0 - s * a1;
            amps_[i + mask] = s * a0 + c * a1;
        }
    }
}

void Statevector::apply_rz(int q, double angle) {
    check_target(q);
    const std::complex<double> ph0{std::cos(angle / 2.0), -std::sin(angle / 2.0)};
    const std::complex<double> ph1 = std::conj(ph0);
    const std::size_t mask = std::size_t{1} << q;
    const std::size_t dim = amps_.size();
    for (std::size_t base = 0; base < dim; base += 2 * mask) {
        for (std::size_t i = base; i < base + mask; ++i) {
            amps_[i] *= ph0;
            amps_[i + mask] *= ph1;
        }
    }
}

void Statevector::apply_rzz(int q0, int q1, double angle) {
    check_target(q0);
    check_target(q1);
    if (q0 == q1) throw std::invalid_argument("RZZ requires two distinct targets");
    const std::complex<double> even{std::cos(angle / 2.0), -std::sin(angle / 2.0)};
    const std::complex<double> odd = std::conj(even);
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        const bool parity = ((i & m0) != 0) != ((i & m1) != 0);
        amps_[i] *= parity ? odd : even;
    }
}

void Statevector::apply_cnot(int control, int target) {
    check_target(control);
    check_target(target);
    if (control == target) throw std::invalid_argument("CNOT requires two distinct targets");
    const std::size_t cm = std::size_t{1} << control;
    const std::size_t tm = std::size_t{1} << target;
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & cm) && !(i & tm)) std::swap(amps_[i], amps_[i | tm]);
    }
}

void Statevector::apply_swap(int q0, int q1) {
    check_target(q0);
    check_target(q1);
    if (q0 == q1) throw std::invalid_argument("SWAP requires two distinct targets");
    const std::size_t m0 = std::size_t{1} << q0;
    const std::size_t m1 = std::size_t{1} << q1;
    const std::size_t dim = amps_.size();
    for (std::size_t i = 0; i < dim; ++i) {
        if ((i & m0) && !(i & m1)) std::swap(amps_[i], amps_[(i & ~m0) | m1]);
    }
}

namespace {

double resolve_angle(const Gate& gate, std::optional<double> angle) {
    if (gate.fixed_angle) return *gate.fixed_angle;
    if (!angle)
        throw std::invalid_argument(gate_name(gate.kind) +
                                    " carries a parameter slot but no angle was supplied");
    return *angle;
}

}  // namespace

void apply_gate(Statevector& state, const Gate& gate, std::optional<double> angle) {
    switch (gate.kind) {
        case GateKind::H: state.apply_h(gate.q0); return;
        case GateKind::RY: state.apply_ry(gate.q0, resolve_angle(gate, angle)); return;
        case GateKind::RZ: state.apply_rz(gate.q0, resolve_angle(gate, angle)); return;
        case GateKind::RZZ: state.apply_rzz(gate.q0, gate.q1, resolve_angle(gate, angle)); return;
        case GateKind::CNOT: state.apply_cnot(gate.q0, gate.q1); return;
        case GateKind::SWAP: state.apply_swap(gate.q0, gate.q1); return;
    }
}

void apply_circuit(Statevector& state, const ParamCircuit& circuit,
                   const std::vector<double>& params) {
    apply_circuit_shifted(state, circuit, params, circuit.gates.size(), 0.0);
}

void apply_circuit_shifted(Statevector& state, const ParamCircuit& circuit,
                           const std::vector<double>& params, std::size_t gate_index,
                           double delta) {
    if (static_cast<int>(params.size()) != circuit.n_params)
        throw std::invalid_argument("circuit expects " + std::to_string(circuit.n_params) +
                                    " parameters, got " + std::to_string(params.size()));
    if (state.n_qubits() < circuit.n_qubits)
        throw std::out_of_range("state register smaller than circuit register");
    for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
        const Gate& g = circuit.gates[i];
        std::optional<double> angle;
        if (g.param_slot) {
            angle = params[static_cast<std::size_t>(*g.param_slot)];
            if (i == gate_index) *angle += delta;
        } else if (g.fixed_angle && i == gate_index) {
            angle = *g.fixed_angle + delta;
            Gate shifted = g;
            shifted.fixed_angle = angle;
            apply_gate(state, shifted, std::nullopt);
            continue;
        }
        apply_gate(state, g, angle);
    }
}

namespace {

double check_imag(double im) {
    if (std::abs(im) >= 1e-10)
        throw std::runtime_error("expectation has imaginary residual " + std::to_string(im));
    return im;
}

}  // namespace

double expectation(const Statevector& state, const PauliString& observable) {
    if (!observable.fits(state.n_qubits()))
        throw std::out_of_range("observable acts outside the register");
    const auto& amps = state.amplitudes();
    const std::size_t dim = amps.size();

    std::size_t flip = 0, zmask = 0, ymask = 0;
    for (const auto& [q, op] : observable.ops) {
        const std::size_t m = std::size_t{1} << q;
        if (op == PauliOp::Z) zmask |= m;
        if (op == PauliOp::X) flip |= m;
        if (op == PauliOp::Y) { flip |= m; ymask |= m; }
    }

    if (flip == 0) {
        // Diagonal string: plain signed sum of probabilities.
        double acc = 0.0;
        for (std::size_t x = 0; x < dim; ++x) {
            const double p = std::norm(amps[x]);
            acc += (std::popcount(x & zmask) & 1) ? -p : p;
        }
        return observable.coefficient * acc;
    }

    // P|x> = phase(x) |x ^ flip>, phase = (-1)^{|x & zmask|} * prod_Y (i or -i).
    const int n_y = std::popcount(ymask);
    std::complex<double> acc = 0.0;
    for (std::size_t x = 0; x < dim; ++x) {
        const std::size_t y = x ^ flip;
        int sign = std::popcount(x & zmask) & 1;
        // Y|0> = i|1>, Y|1> = -i|0>: each Y qubit set in x contributes -i.
        const int y_set = std::popcount(x & ymask);
        std::complex<double> phase = (sign ? -1.0 : 1.0);
        // i^{n_y} * (-1)^{y_set}
        const int quarter = ((n_y % 4) + 4) % 4;
        static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
        phase *= i_pow[quarter];
        if (y_set & 1) phase = -phase;
        acc += std::conj(amps[y]) * phase * amps[x];
    }
    check_imag(acc.imag());
    return observable.coefficient * acc.real();
}

double expectation(const Statevector& state, const std::vector<PauliString>& observable) {
    double total = 0.0;
    for (const auto& term : observable) total += expectation(state, term);
    return total;
}

}  // namespace symqnn
