#include "symqnn/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

#include "symqnn/encoding.hpp"

namespace symqnn {

bool Permutation::is_identity() const {
    for (int i = 0; i < n(); ++i)
        if (image[static_cast<std::size_t>(i)] != i) return false;
    return true;
}

Permutation Permutation::inverse() const {
    Permutation inv;
    inv.image.resize(image.size());
    for (int i = 0; i < n(); ++i) inv.image[static_cast<std::size_t>(image[static_cast<std::size_t>(i)])] = i;
    return inv;
}

Permutation Permutation::compose(const Permutation& inner) const {
    if (n() != inner.n()) throw std::invalid_argument("composing permutations of different sizes");
    Permutation out;
    out.image.resize(image.size());
    for (int i = 0; i < n(); ++i) out.image[static_cast<std::size_t>(i)] = (*this)(inner(i));
    return out;
}

Permutation Permutation::identity(int n) {
    Permutation p;
    p.image.resize(static_cast<std::size_t>(n));
    std::iota(p.image.begin(), p.image.end(), 0);
    return p;
}

void Permutation::validate() const {
    std::vector<bool> hit(image.size(), false);
    for (int v : image) {
        if (v < 0 || v >= n() || hit[static_cast<std::size_t>(v)])
            throw std::invalid_argument("permutation image is not a bijection");
        hit[static_cast<std::size_t>(v)] = true;
    }
}

InducedQubitPermutation InducedQubitPermutation::compose(const InducedQubitPermutation& inner) const {
    if (n_qubits() != inner.n_qubits())
        throw std::invalid_argument("composing qubit permutations of different sizes");
    InducedQubitPermutation out;
    out.qubit_map.resize(qubit_map.size());
    for (int q = 0; q < n_qubits(); ++q) out.qubit_map[static_cast<std::size_t>(q)] = (*this)(inner(q));
    return out;
}

void InducedQubitPermutation::validate() const {
    std::vector<bool> hit(qubit_map.size(), false);
    for (int v : qubit_map) {
        if (v < 0 || v >= n_qubits() || hit[static_cast<std::size_t>(v)])
            throw std::invalid_argument("qubit map is not a bijection");
        hit[static_cast<std::size_t>(v)] = true;
    }
}

std::vector<Permutation> enumerate_group(int n) {
    if (n < 1 || n > kMaxGroupPoints)
        throw std::out_of_range("group enumeration supports 1.." +
                                std::to_string(kMaxGroupPoints) + " points");
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    std::vector<Permutation> group;
    do {
        group.push_back(Permutation{image});
    } while (std::next_permutation(image.begin(), image.end()));
    return group;
}

InducedQubitPermutation induce_on_pairs(const Permutation& sigma, int n) {
    sigma.validate();
    if (sigma.n() != n) throw std::invalid_argument("permutation size does not match n");
    InducedQubitPermutation out;
    out.qubit_map.resize(static_cast<std::size_t>(n_pairs(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            out.qubit_map[static_cast<std::size_t>(pair_index(i, j, n))] =
                pair_index(sigma(i), sigma(j), n);
    return out;
}

InducedQubitPermutation induce_on_self(const Permutation& sigma, int n) {
    sigma.validate();
    if (sigma.n() != n) throw std::invalid_argument("permutation size does not match n");
    InducedQubitPermutation out;
    out.qubit_map.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.qubit_map[static_cast<std::size_t>(i)] = sigma(i);
    return out;
}

int block_qubits(int n, Block block) {
    switch (block) {
        case Block::Self: return n;
        case Block::Pair: return n_pairs(n);
        case Block::Both: return n + n_pairs(n);
    }
    return 0;
}

InducedQubitPermutation induce_on_block(const Permutation& sigma, int n, Block block) {
    if (block == Block::Self) return induce_on_self(sigma, n);
    if (block == Block::Pair) return induce_on_pairs(sigma, n);
    const auto self = induce_on_self(sigma, n);
    const auto pair = induce_on_pairs(sigma, n);
    InducedQubitPermutation out;
    out.qubit_map.reserve(static_cast<std::size_t>(block_qubits(n, Block::Both)));
    for (int v : self.qubit_map) out.qubit_map.push_back(v);
    for (int v : pair.qubit_map) out.qubit_map.push_back(v + n);
    return out;
}

TwirledGenerator twirl(const PauliString& seed, int n, Block block) {
    const int m = block_qubits(n, block);
    if (!seed.fits(m))
        throw std::invalid_argument("seed acts outside the " + std::to_string(m) +
                                    "-qubit block register");
    const auto group = enumerate_group(n);

    std::vector<PauliString> orbit;
    for (const Permutation& sigma : group) {
        const auto induced = induce_on_block(sigma, n, block);
        PauliString moved = seed.relabeled(induced.qubit_map);
        const bool known = std::any_of(orbit.begin(), orbit.end(),
                                       [&](const PauliString& p) { return p.same_ops(moved); });
        if (!known) orbit.push_back(std::move(moved));
    }
    std::sort(orbit.begin(), orbit.end(),
              [](const PauliString& a, const PauliString& b) { return a.ops_less(b); });

    const double coeff = seed.coefficient / static_cast<double>(orbit.size());
    for (PauliString& p : orbit) p.coefficient = coeff;

    for (std::size_t a = 0; a < orbit.size(); ++a)
        for (std::size_t b = a + 1; b < orbit.size(); ++b)
            if (!orbit[a].commutes_with(orbit[b]))
                throw std::runtime_error("twirl not factorizable: orbit members " + orbit[a].str() +
                                         " and " + orbit[b].str() + " do not commute");

    return TwirledGenerator{std::move(orbit), seed, n, block};
}

Eigen::MatrixXcd dense_pauli(const PauliString& p, int n_qubits) {
    if (!p.fits(n_qubits)) throw std::out_of_range("pauli string outside register");
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    std::size_t flip = 0, zmask = 0, ymask = 0;
    for (const auto& [q, op] : p.ops) {
        const std::size_t m = std::size_t{1} << q;
        if (op == PauliOp::Z) zmask |= m;
        if (op == PauliOp::X) flip |= m;
        if (op == PauliOp::Y) { flip |= m; ymask |= m; }
    }
    const int n_y = static_cast<int>(std::popcount(ymask));
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        const auto ux = static_cast<std::size_t>(x);
        std::complex<double> phase = i_pow[n_y % 4];
        if (std::popcount(ux & zmask) & 1) phase = -phase;
        if (std::popcount(ux & ymask) & 1) phase = -phase;
        out(static_cast<Eigen::Index>(ux ^ flip), x) = p.coefficient * phase;
    }
    return out;
}

Eigen::MatrixXcd dense_qubit_permutation(const InducedQubitPermutation& perm) {
    perm.validate();
    const int m = perm.n_qubits();
    const Eigen::Index dim = Eigen::Index{1} << m;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index x = 0; x < dim; ++x) {
        // Output qubit q reads input qubit map(q): the same orientation as
        // feature_permutation_matrix, so both realizations of one group
        // element agree.
        std::size_t y = 0;
        for (int q = 0; q < m; ++q)
            if (static_cast<std::size_t>(x) & (std::size_t{1} << perm(q))) y |= std::size_t{1} << q;
        out(static_cast<Eigen::Index>(y), x) = 1.0;
    }
    return out;
}

Eigen::MatrixXd feature_permutation_matrix(const InducedQubitPermutation& perm) {
    perm.validate();
    const int m = perm.n_qubits();
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m, m);
    for (int q = 0; q < m; ++q) out(q, perm(q)) = 1.0;
    return out;
}

Eigen::MatrixXcd dense_generator(const TwirledGenerator& gen) {
    const int m = block_qubits(gen.n_points, gen.block);
    const Eigen::Index dim = Eigen::Index{1} << m;
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
    for (const PauliString& p : gen.orbit) out += dense_pauli(p, m);
    return out;
}

bool verify_equivariance(const TwirledGenerator& gen, int n) {
    const int m = block_qubits(n, gen.block);
    if (m > 10)
        throw std::out_of_range("dense equivariance check limited to 10-qubit registers");
    const Eigen::MatrixXcd g = dense_generator(gen);
    for (const Permutation& sigma : enumerate_group(n)) {
        const auto v = dense_qubit_permutation(induce_on_block(sigma, n, gen.block));
        const Eigen::MatrixXcd comm = g * v - v * g;
        if (comm.cwiseAbs().maxCoeff() >= 1e-12) return false;
    }
    return true;
}

}  // namespace symqnn
