#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "symqnn/statevector.hpp"

using namespace symqnn;

namespace {

constexpr double kPi = std::numbers::pi;

/// Random circuit over the full gate set; angles in [0, 2pi).
ParamCircuit random_circuit(int n_qubits, int n_gates, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<int> qubit(0, n_qubits - 1);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    ParamCircuit c;
    c.n_qubits = n_qubits;
    for (int i = 0; i < n_gates; ++i) {
        const int q0 = qubit(rng);
        int q1 = q0;
        while (n_qubits > 1 && q1 == q0) q1 = qubit(rng);
        switch (kind(rng)) {
            case 0: c.gates.push_back(Gate::h(q0)); break;
            case 1: c.gates.push_back(Gate::ry_fixed(q0, angle(rng))); break;
            case 2: c.gates.push_back(Gate::rz_fixed(q0, angle(rng))); break;
            case 3:
                if (n_qubits > 1) c.gates.push_back(Gate::rzz_fixed(q0, q1, angle(rng)));
                break;
            case 4:
                if (n_qubits > 1) c.gates.push_back(Gate::cnot(q0, q1));
                break;
            default:
                if (n_qubits > 1) c.gates.push_back(Gate::swap(q0, q1));
                break;
        }
    }
    return c;
}

}  // namespace

TEST_SUITE("statevector") {

TEST_CASE("init_state produces |0...0>") {
    const Statevector one = init_state(1);
    CHECK(one.size() == 2);
    CHECK(one[0] == oracle::cd(1.0, 0.0));
    CHECK(one[1] == oracle::cd(0.0, 0.0));

    const Statevector two = init_state(2);
    CHECK(two.size() == 4);
    CHECK(two[0].real() == 1.0);

    const Statevector ten = init_state(10);
    CHECK(ten.size() == 1024);
    CHECK(ten[0].real() == 1.0);
    double rest = 0.0;
    for (std::size_t i = 1; i < ten.size(); ++i) rest += std::abs(ten[i]);
    CHECK(rest == 0.0);
}

TEST_CASE("init_state rejects out-of-range registers") {
    CHECK_THROWS_AS(init_state(0), std::out_of_range);
    CHECK_THROWS_AS(init_state(kMaxQubits + 1), std::out_of_range);
}

TEST_CASE("RY(pi) maps |0> to |1> up to global phase") {
    Statevector s = init_state(1);
    s.apply_ry(0, kPi);
    CHECK(std::abs(s[1]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(s[0]) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("RZ leaves |0> a Z eigenstate") {
    Statevector s = init_state(1);
    s.apply_rz(0, 1.234);
    CHECK(std::abs(s[0]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(expectation(s, all_z(1)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("RY(pi/2) on |0> gives <Z> = 0") {
    Statevector s = init_state(1);
    s.apply_ry(0, kPi / 2.0);
    CHECK(expectation(s, all_z(1)) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("<Z> after RY(theta) equals cos(theta)") {
    for (const double theta : {0.3, 1.1, 2.5}) {
        Statevector s = init_state(1);
        s.apply_ry(0, theta);
        CHECK(expectation(s, all_z(1)) == doctest::Approx(std::cos(theta)).epsilon(1e-12));
    }
}

TEST_CASE("invalid gate targets raise index errors") {
    Statevector s = init_state(2);
    CHECK_THROWS_AS(s.apply_h(2), std::out_of_range);
    CHECK_THROWS_AS(s.apply_ry(-1, 0.1), std::out_of_range);
    CHECK_THROWS_AS(s.apply_cnot(0, 0), std::invalid_argument);
}

TEST_CASE("empty circuit leaves the state unchanged") {
    Statevector s = init_state(3);
    s.apply_h(1);
    const auto before = s.amplitudes();
    ParamCircuit empty;
    empty.n_qubits = 3;
    apply_circuit(s, empty, {});
    CHECK(s.amplitudes() == before);
}

TEST_CASE("H on |0> gives the uniform pair") {
    Statevector s = init_state(1);
    ParamCircuit c;
    c.n_qubits = 1;
    c.gates.push_back(Gate::h(0));
    apply_circuit(s, c, {});
    CHECK(s[0].real() == doctest::Approx(1 / std::sqrt(2.0)));
    CHECK(s[1].real() == doctest::Approx(1 / std::sqrt(2.0)));
}

TEST_CASE("a shared slot feeds every gate bound to it") {
    ParamCircuit shared;
    shared.n_qubits = 2;
    shared.n_params = 1;
    shared.gates.push_back(Gate::ry(0, 0));
    shared.gates.push_back(Gate::ry(1, 0));
    Statevector a = init_state(2);
    apply_circuit(a, shared, {kPi});

    Statevector b = init_state(2);
    b.apply_ry(0, kPi);
    b.apply_ry(1, kPi);
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(std::abs(a[i] - b[i]) < 1e-15);
}

TEST_CASE("parameter arity is enforced") {
    ParamCircuit c;
    c.n_qubits = 1;
    c.n_params = 1;
    c.gates.push_back(Gate::ry(0, 0));
    Statevector s = init_state(1);
    CHECK_THROWS_AS(apply_circuit(s, c, {}), std::invalid_argument);
    CHECK_THROWS_AS(apply_circuit(s, c, {0.1, 0.2}), std::invalid_argument);
}

TEST_CASE("expectation of trivial product states") {
    Statevector zeros = init_state(3);
    CHECK(expectation(zeros, all_z(3)) == doctest::Approx(1.0));

    // |1> (x) |0>: qubit 0 flipped via RY(pi).
    Statevector s = init_state(2);
    s.apply_ry(0, kPi);
    CHECK(expectation(s, all_z(2)) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("expectation rejects observables outside the register") {
    Statevector s = init_state(2);
    CHECK_THROWS_AS(expectation(s, all_z(3)), std::out_of_range);
}

TEST_CASE("sum-of-Z observable evaluates termwise") {
    Statevector s = init_state(2);
    s.apply_ry(0, 1.1);
    const double expected = std::cos(1.1) + 1.0;
    CHECK(expectation(s, sum_z(2)) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("norm preserved over 1000 random circuits") {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<int> qubits(1, 6);
    std::uniform_int_distribution<int> depth(1, 20);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = qubits(rng);
        ParamCircuit c = random_circuit(n, depth(rng), rng);
        Statevector s = init_state(n);
        apply_circuit(s, c, {});
        CHECK(std::abs(s.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("gates invert by negating the angle") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    ParamCircuit prep = random_circuit(3, 12, rng);
    Statevector s = init_state(3);
    apply_circuit(s, prep, {});
    const auto reference = s.amplitudes();

    const double theta = angle(rng);
    SUBCASE("RY") { s.apply_ry(1, theta); s.apply_ry(1, -theta); }
    SUBCASE("RZ") { s.apply_rz(2, theta); s.apply_rz(2, -theta); }
    SUBCASE("RZZ") { s.apply_rzz(0, 2, theta); s.apply_rzz(0, 2, -theta); }
    SUBCASE("H twice") { s.apply_h(0); s.apply_h(0); }
    SUBCASE("CNOT twice") { s.apply_cnot(0, 1); s.apply_cnot(0, 1); }
    SUBCASE("SWAP twice") { s.apply_swap(1, 2); s.apply_swap(1, 2); }
    for (std::size_t i = 0; i < reference.size(); ++i)
        CHECK(std::abs(s[i] - reference[i]) < 1e-10);
}

TEST_CASE("expectation of the parity observable stays within [-1, 1]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + static_cast<int>(rng() % 5);
        ParamCircuit c = random_circuit(n, 15, rng);
        Statevector s = init_state(n);
        apply_circuit(s, c, {});
        CHECK(std::abs(expectation(s, all_z(n))) <= 1.0 + 1e-12);
    }
}

TEST_CASE("stride kernels agree with the dense matrix oracle") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> qubits(1, 4);
    std::uniform_int_distribution<int> depth(1, 25);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = qubits(rng);
        const ParamCircuit c = random_circuit(n, depth(rng), rng);

        Statevector fast = init_state(n);
        apply_circuit(fast, c, {});

        const oracle::Mat u = oracle::circuit_matrix(c, {});
        const oracle::Vec slow = u * oracle::zero_state(n);

        for (std::size_t i = 0; i < fast.size(); ++i)
            CHECK(std::abs(fast[i] - slow(static_cast<Eigen::Index>(i))) < 1e-10);
    }
}

TEST_CASE("general Pauli expectation agrees with the dense oracle") {
    std::mt19937_64 rng(555);
    std::uniform_int_distribution<int> qubits(1, 4);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = qubits(rng);
        const ParamCircuit c = random_circuit(n, 12, rng);
        Statevector s = init_state(n);
        apply_circuit(s, c, {});

        PauliString p;
        for (int q = 0; q < n; ++q) {
            switch (rng() % 4) {
                case 0: break;  // identity on this qubit
                case 1: p.ops.emplace(q, PauliOp::X); break;
                case 2: p.ops.emplace(q, PauliOp::Y); break;
                default: p.ops.emplace(q, PauliOp::Z); break;
            }
        }
        p.coefficient = 1.0;

        const oracle::Mat pm = oracle::pauli_matrix_full(p, n);
        oracle::Vec psi(static_cast<Eigen::Index>(s.size()));
        for (std::size_t i = 0; i < s.size(); ++i) psi(static_cast<Eigen::Index>(i)) = s[i];
        const double expected = (psi.adjoint() * pm * psi)(0, 0).real();

        CHECK(expectation(s, p) == doctest::Approx(expected).epsilon(1e-10));
    }
}

}  // TEST_SUITE
