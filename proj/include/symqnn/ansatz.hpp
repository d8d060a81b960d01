#pragma once

#include "symqnn/circuit.hpp"
#include "symqnn/symmetry.hpp"

namespace symqnn {

/// Hardware-efficient ansatz on n_points*dim qubits: per layer an RY
/// column (one slot per qubit) and a CNOT ladder q_k -> q_{k+1}, then a
/// final RY column. n_params = (layers + 1) * n_qubits.
ParamCircuit build_baseline(int n_points, int dim, int layers);

/// Same hardware-efficient body on the inner-product register:
/// n(n+1)/2 qubits with the self block, n(n-1)/2 without.
ParamCircuit build_rotational(int n_points, int layers, bool include_self);

/// Per layer, in order: twirled-Y on the self block, twirled-Y on the
/// pair block, twirled-ZZ on the self block (seed Z[11]Z[22]) and
/// twirled-ZZ on the pair block (seed Z[12]Z[13]); self layers are
/// omitted without the self block. Every orbit is realized as commuting
/// RY/RZZ gates sharing one slot whose angle is the slot value (the
/// 1/|orbit| coefficient is absorbed into the trainable parameter).
/// n_params = layers * 4 with self, layers * 2 without; at n_points = 2
/// the pair block has a single qubit, so no pair-ZZ seed exists and that
/// sub-layer is skipped (3 and 1 slots per layer respectively).
ParamCircuit build_fully_symmetric(int n_points, int layers, bool include_self);

/// Encoder followed by ansatz on the same register. The encoder must be
/// parameter-free (fixed angles); slots are the ansatz's.
ParamCircuit assemble_model(const ParamCircuit& encoder, const ParamCircuit& ansatz);

}  // namespace symqnn
