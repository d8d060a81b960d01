#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "symqnn/circuit.hpp"
#include "symqnn/pauli.hpp"

namespace symqnn {

/// Largest supported register. The largest circuit used by the shipped
/// experiments is 16 qubits; the ceiling keeps a state under 1 GiB.
inline constexpr int kMaxQubits = 24;

/// Dense complex amplitudes of an `n_qubits` register. Qubit 0 is the
/// least significant bit of the amplitude index. Gates mutate the buffer
/// in place with stride iteration; no scratch allocation.
class Statevector {
  public:
    Statevector() = default;
    explicit Statevector(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t size() const { return amps_.size(); }
    const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
    std::vector<std::complex<double>>& amplitudes() { return amps_; }
    std::complex<double> operator[](std::size_t i) const { return amps_[i]; }

    double norm() const;

    void apply_h(int q);
    void apply_ry(int q, double angle);
    void apply_rz(int q, double angle);
    void apply_rzz(int q0, int q1, double angle);
    void apply_cnot(int control, int target);
    void apply_swap(int q0, int q1);

  private:
    void check_target(int q) const;

    std::vector<std::complex<double>> amps_;
    int n_qubits_ = 0;
};

/// |0...0> on `n_qubits` qubits.
Statevector init_state(int n_qubits);

/// Applies one gate in place. `angle` feeds a slot-bearing rotation;
/// fixed-angle rotations use their stored angle. Convention for all
/// rotations is exp(-i*angle*G/2) with G the generating Pauli.
void apply_gate(Statevector& state, const Gate& gate,
                std::optional<double> angle = std::nullopt);

/// Applies the whole circuit; `params` must match the declared slot count
/// and shared slots read the same entry.
void apply_circuit(Statevector& state, const ParamCircuit& circuit,
                   const std::vector<double>& params);

/// As above, with one gate's rotation angle offset by `delta` (used by the
/// parameter-shift rule, which shifts a single occurrence of a slot).
void apply_circuit_shifted(Statevector& state, const ParamCircuit& circuit,
                           const std::vector<double>& params,
                           std::size_t gate_index, double delta);

/// <psi|P|psi> for a single Pauli string. The imaginary residual must stay
/// below 1e-10 (it is zero in exact arithmetic for Hermitian strings).
double expectation(const Statevector& state, const PauliString& observable);

/// Expectation of a sum of Pauli strings, e.g. the local observable sum_z.
double expectation(const Statevector& state, const std::vector<PauliString>& observable);

}  // namespace symqnn
