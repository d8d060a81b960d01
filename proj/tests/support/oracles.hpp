#pragma once

// Test-side oracles, deliberately independent of the library's
// implementation paths: a dense matrix circuit simulator built from
// explicit 2x2/4x4 gate matrices and generic embedding, dense Pauli and
// SWAP matrices, brute-force statistics, and random transform generators.

#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "symqnn/circuit.hpp"
#include "symqnn/pauli.hpp"

namespace oracle {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using cd = std::complex<double>;

inline Mat identity2() { return Mat::Identity(2, 2); }

inline Mat pauli_matrix(symqnn::PauliOp op) {
    Mat m(2, 2);
    switch (op) {
        case symqnn::PauliOp::X: m << 0, 1, 1, 0; break;
        case symqnn::PauliOp::Y: m << 0, cd(0, -1), cd(0, 1), 0; break;
        case symqnn::PauliOp::Z: m << 1, 0, 0, -1; break;
    }
    return m;
}

inline Mat gate_matrix_small(const symqnn::Gate& g, double angle) {
    const double c = std::cos(angle / 2.0), s = std::sin(angle / 2.0);
    Mat m;
    switch (g.kind) {
        case symqnn::GateKind::H:
            m.resize(2, 2);
            m << 1, 1, 1, -1;
            m /= std::sqrt(2.0);
            return m;
        case symqnn::GateKind::RY:
            m.resize(2, 2);
            m << c, -s, s, c;
            return m;
        case symqnn::GateKind::RZ:
            m.resize(2, 2);
            m << cd(c, -s), 0, 0, cd(c, s);
            return m;
        case symqnn::GateKind::RZZ:
            m = Mat::Zero(4, 4);
            m(0, 0) = cd(c, -s);
            m(1, 1) = cd(c, s);
            m(2, 2) = cd(c, s);
            m(3, 3) = cd(c, -s);
            return m;
        case symqnn::GateKind::CNOT:
            // Basis order (q1 q0) with q0 = control as targets[0].
            m = Mat::Zero(4, 4);
            m(0, 0) = 1;  // |00>
            m(3, 1) = 1;  // |01> -> |11>  (control set flips target)
            m(2, 2) = 1;  // |10>
            m(1, 3) = 1;  // |11> -> |01>
            return m;
        case symqnn::GateKind::SWAP:
            m = Mat::Zero(4, 4);
            m(0, 0) = 1;
            m(2, 1) = 1;
            m(1, 2) = 1;
            m(3, 3) = 1;
            return m;
    }
    return m;
}

/// Embeds a small gate matrix over the listed target qubits into the full
/// 2^n register (qubit 0 = least significant index bit).
inline Mat embed(const Mat& small, const std::vector<int>& targets, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const int t = static_cast<int>(targets.size());
    Mat full = Mat::Zero(dim, dim);
    for (Eigen::Index row = 0; row < dim; ++row) {
        for (Eigen::Index col = 0; col < dim; ++col) {
            // Rows/cols must agree away from the targets.
            bool same = true;
            std::size_t sub_r = 0, sub_c = 0;
            for (int q = 0, k = 0; q < n_qubits; ++q) {
                const bool rb = row & (Eigen::Index{1} << q);
                const bool cb = col & (Eigen::Index{1} << q);
                bool is_target = false;
                for (int j = 0; j < t; ++j)
                    if (targets[static_cast<std::size_t>(j)] == q) {
                        if (rb) sub_r |= std::size_t{1} << j;
                        if (cb) sub_c |= std::size_t{1} << j;
                        is_target = true;
                    }
                (void)k;
                if (!is_target && rb != cb) {
                    same = false;
                    break;
                }
            }
            if (same)
                full(row, col) =
                    small(static_cast<Eigen::Index>(sub_r), static_cast<Eigen::Index>(sub_c));
        }
    }
    return full;
}

inline Mat gate_matrix_full(const symqnn::Gate& g, double angle, int n_qubits) {
    std::vector<int> targets{g.q0};
    if (symqnn::arity(g.kind) == 2) targets.push_back(g.q1);
    return embed(gate_matrix_small(g, angle), targets, n_qubits);
}

/// Full-circuit unitary by plain matrix products, gates in declared order.
inline Mat circuit_matrix(const symqnn::ParamCircuit& c, const std::vector<double>& params) {
    const Eigen::Index dim = Eigen::Index{1} << c.n_qubits;
    Mat u = Mat::Identity(dim, dim);
    for (const auto& g : c.gates) {
        double angle = 0.0;
        if (g.fixed_angle) angle = *g.fixed_angle;
        if (g.param_slot) angle = params.at(static_cast<std::size_t>(*g.param_slot));
        u = gate_matrix_full(g, angle, c.n_qubits) * u;
    }
    return u;
}

/// Dense Pauli string by Kronecker products, highest qubit outermost
/// (qubit 0 is the least significant index bit).
inline Mat pauli_matrix_full(const symqnn::PauliString& p, int n_qubits) {
    Mat acc = Mat::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        const auto it = p.ops.find(q);
        const Mat factor = it == p.ops.end() ? identity2() : pauli_matrix(it->second);
        Mat next(acc.rows() * 2, acc.cols() * 2);
        for (Eigen::Index i = 0; i < 2; ++i)
            for (Eigen::Index j = 0; j < 2; ++j)
                next.block(i * acc.rows(), j * acc.cols(), acc.rows(), acc.cols()) =
                    factor(i, j) * acc;
        acc = std::move(next);
    }
    return p.coefficient * acc;
}

/// Dense SWAP of two qubits on an m-qubit register.
inline Mat swap_matrix(int a, int b, int n_qubits) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    Mat m = Mat::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        auto y = static_cast<std::size_t>(x);
        const bool ba = y & (std::size_t{1} << a);
        const bool bb = y & (std::size_t{1} << b);
        if (ba != bb) y ^= (std::size_t{1} << a) | (std::size_t{1} << b);
        m(static_cast<Eigen::Index>(y), x) = 1.0;
    }
    return m;
}

inline Vec zero_state(int n_qubits) {
    Vec v = Vec::Zero(Eigen::Index{1} << n_qubits);
    v(0) = 1.0;
    return v;
}

/// Mann-Whitney pair statistic with the tie convention of 1/2.
inline double mann_whitney_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
    double pairs = 0.0, favorable = 0.0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] != 1) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j] != -1) continue;
            pairs += 1.0;
            if (scores[i] > scores[j]) favorable += 1.0;
            else if (scores[i] == scores[j]) favorable += 0.5;
        }
    }
    return favorable / pairs;
}

/// Asymptotic Kolmogorov-Smirnov p-value against U(lo, hi).
inline double ks_uniform_pvalue(std::vector<double> values, double lo, double hi) {
    std::sort(values.begin(), values.end());
    const auto n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double cdf = (values[i] - lo) / (hi - lo);
        const double lo_step = static_cast<double>(i) / n;
        const double hi_step = static_cast<double>(i + 1) / n;
        d = std::max({d, std::abs(cdf - lo_step), std::abs(cdf - hi_step)});
    }
    const double lambda = (std::sqrt(n) + 0.12 + 0.11 / std::sqrt(n)) * d;
    double p = 0.0;
    for (int k = 1; k <= 100; ++k)
        p += 2.0 * ((k % 2 == 1) ? 1.0 : -1.0) * std::exp(-2.0 * k * k * lambda * lambda);
    return std::clamp(p, 0.0, 1.0);
}

/// Random orthogonal matrix by QR of a Gaussian draw.
inline Eigen::MatrixXd random_orthogonal(int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a(i, j) = gauss(rng);
    const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    Eigen::MatrixXd q = qr.householderQ();
    const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < d; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

/// Lorentz boost matrix for velocity beta * direction, acting on column
/// vectors (E, px, py, pz).
inline Eigen::Matrix4d boost_matrix(double beta, const Eigen::Vector3d& direction) {
    const Eigen::Vector3d n = direction.normalized();
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
        m(0, i + 1) = gamma * beta * n(i);
        m(i + 1, 0) = gamma * beta * n(i);
        for (int j = 0; j < 3; ++j) m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * n(i) * n(j);
    }
    return m;
}

/// Spatial rotation embedded in a Lorentz matrix.
inline Eigen::Matrix4d rotation4(const Eigen::Matrix3d& r) {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.block<3, 3>(1, 1) = r;
    return m;
}

}  // namespace oracle
