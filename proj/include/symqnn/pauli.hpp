#pragma once

#include <map>
#include <string>
#include <vector>

namespace symqnn {

enum class PauliOp { X, Y, Z };

/// A real-weighted Pauli string: identity everywhere except the listed
/// qubits. Supports are sparse so the same string can be evaluated on any
/// register large enough to contain them.
struct PauliString {
    std::map<int, PauliOp> ops;
    double coefficient = 1.0;

    PauliString() = default;
    PauliString(std::map<int, PauliOp> o, double c = 1.0)
        : ops(std::move(o)), coefficient(c) {}

    /// Highest qubit index touched, or -1 for the identity string.
    int max_qubit() const;

    /// True when every support lies below `n_qubits`.
    bool fits(int n_qubits) const;

    /// Even/odd overlap rule: two strings commute iff the number of
    /// qubits where they carry different Paulis is even.
    bool commutes_with(const PauliString& other) const;

    /// Support relabeled through a qubit bijection; coefficient kept.
    PauliString relabeled(const std::vector<int>& qubit_map) const;

    /// Canonical text form such as "0.5 * Y0 Z3" (supports in index order).
    std::string str() const;

    /// Support-wise comparison ignoring the coefficient.
    bool same_ops(const PauliString& other) const;

    /// Strict weak order on supports, for canonical orbit ordering.
    bool ops_less(const PauliString& other) const;
};

/// Z on every one of `n_qubits` qubits: the global parity observable.
PauliString all_z(int n_qubits);

/// The local alternative observable: one Z per qubit, summed.
std::vector<PauliString> sum_z(int n_qubits);

char pauli_char(PauliOp op);

}  // namespace symqnn
