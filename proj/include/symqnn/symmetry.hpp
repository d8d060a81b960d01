#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symqnn/pauli.hpp"

namespace symqnn {

/// Largest point count whose permutation group is enumerated (6! = 720).
inline constexpr int kMaxGroupPoints = 6;

/// A bijection on {0..n-1}; image[i] is where point i goes.
struct Permutation {
    std::vector<int> image;

    int n() const { return static_cast<int>(image.size()); }
    int operator()(int i) const { return image[static_cast<std::size_t>(i)]; }
    bool is_identity() const;
    Permutation inverse() const;
    /// (a.then_after(b))(i) = a(b(i)).
    Permutation compose(const Permutation& inner) const;
    static Permutation identity(int n);
    void validate() const;
    bool operator==(const Permutation&) const = default;
};

/// Which qubit block a generator or induced action lives on. Self and
/// pair blocks are indexed block-locally; Both spans the combined
/// self-then-pair register (reserved for the observable check).
enum class Block { Self, Pair, Both };

/// A bijection on the qubits of one block, induced by a point
/// permutation through the inner-product encoding.
struct InducedQubitPermutation {
    std::vector<int> qubit_map;

    int n_qubits() const { return static_cast<int>(qubit_map.size()); }
    int operator()(int q) const { return qubit_map[static_cast<std::size_t>(q)]; }
    InducedQubitPermutation compose(const InducedQubitPermutation& inner) const;
    void validate() const;
    bool operator==(const InducedQubitPermutation&) const = default;
};

/// All n! permutations, each exactly once.
std::vector<Permutation> enumerate_group(int n);

/// Pair qubit [ij] -> [sigma(i)sigma(j)], re-canonicalized to i < j.
InducedQubitPermutation induce_on_pairs(const Permutation& sigma, int n);

/// Self qubit [ii] -> [sigma(i)sigma(i)].
InducedQubitPermutation induce_on_self(const Permutation& sigma, int n);

/// Induced action on the declared block register (Both = self block then
/// pair block, matching the encoder layout).
InducedQubitPermutation induce_on_block(const Permutation& sigma, int n, Block block);

int block_qubits(int n, Block block);

/// The orbit of one seed generator under the induced group action, with
/// the uniform 1/|orbit| coefficient. All orbit members pairwise commute,
/// so exp(i*theta*sum) factorizes into one gate per member.
struct TwirledGenerator {
    std::vector<PauliString> orbit;  // canonical order, equal coefficients
    PauliString source;
    int n_points = 0;
    Block block = Block::Pair;
};

/// Group-averages `seed` over the induced representation. The seed must
/// act inside the declared block; conjugation by a qubit permutation only
/// relabels supports, so the average is the uniform orbit sum.
TwirledGenerator twirl(const PauliString& seed, int n, Block block);

/// Dense check that the generator commutes with every induced
/// representation unitary (max-abs commutator entry < 1e-12).
bool verify_equivariance(const TwirledGenerator& gen, int n);

/// Dense 2^m x 2^m matrix of a Pauli string on an m-qubit register.
Eigen::MatrixXcd dense_pauli(const PauliString& p, int n_qubits);

/// Dense 2^m x 2^m unitary moving qubit k's state to qubit map(k).
Eigen::MatrixXcd dense_qubit_permutation(const InducedQubitPermutation& perm);

/// Feature-space realization of an induced permutation: row q has its 1
/// in column map(q). For n = 3 these are exactly the published 3 x 3
/// representation matrices of the pair and self vectors.
Eigen::MatrixXd feature_permutation_matrix(const InducedQubitPermutation& perm);

/// Sum of the orbit as one dense matrix (coefficients included).
Eigen::MatrixXcd dense_generator(const TwirledGenerator& gen);

}  // namespace symqnn
