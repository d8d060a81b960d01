#include "symqnn/pauli.hpp"

#include <sstream>
#include <stdexcept>

namespace symqnn {

int PauliString::max_qubit() const {
    return ops.empty() ? -1 : ops.rbegin()->first;
}

bool PauliString::fits(int n_qubits) const {
    if (ops.empty()) return true;
    return ops.begin()->first >= 0 && max_qubit() < n_qubits;
}

bool PauliString::commutes_with(const PauliString& other) const {
    int mismatches = 0;
    for (const auto& [q, op] : ops) {
        auto it = other.ops.find(q);
        if (it != other.ops.end() && it->second != op) ++mismatches;
    }
    return mismatches % 2 == 0;
}

PauliString PauliString::relabeled(const std::vector<int>& qubit_map) const {
    PauliString out;
    out.coefficient = coefficient;
    for (const auto& [q, op] : ops) {
        if (q < 0 || q >= static_cast<int>(qubit_map.size()))
            throw std::out_of_range("pauli relabel: qubit " + std::to_string(q) +
                                    " outside the mapped register");
        out.ops.emplace(qubit_map[q], op);
    }
    if (out.ops.size() != ops.size())
        throw std::invalid_argument("pauli relabel: qubit map is not a bijection");
    return out;
}

char pauli_char(PauliOp op) {
    switch (op) {
        case PauliOp::X: return 'X';
        case PauliOp::Y: return 'Y';
        case PauliOp::Z: return 'Z';
    }
    return '?';
}

std::string PauliString::str() const {
    std::ostringstream os;
    os << coefficient << " *";
    if (ops.empty()) os << " I";
    for (const auto& [q, op] : ops) os << ' ' << pauli_char(op) << q;
    return os.str();
}

bool PauliString::same_ops(const PauliString& other) const {
    return ops == other.ops;
}

bool PauliString::ops_less(const PauliString& other) const {
    return ops < other.ops;
}

PauliString all_z(int n_qubits) {
    PauliString p;
    for (int q = 0; q < n_qubits; ++q) p.ops.emplace(q, PauliOp::Z);
    return p;
}

std::vector<PauliString> sum_z(int n_qubits) {
    std::vector<PauliString> terms;
    terms.reserve(n_qubits);
    for (int q = 0; q < n_qubits; ++q)
        terms.push_back(PauliString{{{q, PauliOp::Z}}, 1.0});
    return terms;
}

}  // namespace symqnn
