#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "support/oracles.hpp"
#include "symqnn/encoding.hpp"
#include "symqnn/statevector.hpp"
#include "symqnn/symmetry.hpp"

using namespace symqnn;

namespace {

PointCloudSample sample_from(std::initializer_list<std::initializer_list<double>> rows,
                             int label = 1) {
    const auto n = static_cast<Eigen::Index>(rows.size());
    const auto d = static_cast<Eigen::Index>(rows.begin()->size());
    Eigen::MatrixXd pts(n, d);
    Eigen::Index i = 0;
    for (const auto& row : rows) {
        Eigen::Index k = 0;
        for (double v : row) pts(i, k++) = v;
        ++i;
    }
    return PointCloudSample{pts, label};
}

PointCloudSample random_sample(int n, int d, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 2.0);
    Eigen::MatrixXd pts(n, d);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) pts(i, k) = gauss(rng);
    return PointCloudSample{pts, 1};
}

/// Random massive four-vectors: E chosen above |p| so self terms stay
/// well away from zero for the relative-tolerance check.
PointCloudSample random_event(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> mom(-50.0, 50.0);
    std::uniform_real_distribution<double> mass(5.0, 80.0);
    Eigen::MatrixXd pts(n, 4);
    for (int i = 0; i < n; ++i) {
        const double px = mom(rng), py = mom(rng), pz = mom(rng), m = mass(rng);
        pts(i, 0) = std::sqrt(m * m + px * px + py * py + pz * pz);
        pts(i, 1) = px;
        pts(i, 2) = py;
        pts(i, 3) = pz;
    }
    return PointCloudSample{pts, 1};
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

}  // namespace

TEST_SUITE("encoding") {

TEST_CASE("pair indexing is lexicographic and invertible") {
    CHECK(pair_index(0, 1, 4) == 0);
    CHECK(pair_index(0, 2, 4) == 1);
    CHECK(pair_index(0, 3, 4) == 2);
    CHECK(pair_index(1, 2, 4) == 3);
    CHECK(pair_index(2, 3, 4) == 5);
    CHECK(pair_index(3, 2, 4) == 5);  // unordered
    for (int n : {2, 3, 4, 5, 6})
        for (int k = 0; k < n_pairs(n); ++k) {
            const auto [i, j] = pair_from_index(k, n);
            CHECK(pair_index(i, j, n) == k);
        }
    CHECK_THROWS_AS(pair_index(1, 1, 4), std::out_of_range);
}

TEST_CASE("euclidean inner products of an orthonormal pair") {
    const auto f = inner_products_euclidean(sample_from({{1, 0}, {0, 1}}), true);
    CHECK(f.self_block == std::vector<double>{1.0, 1.0});
    CHECK(f.pair_block == std::vector<double>{0.0});
    CHECK(f.size() == 3);
    CHECK(f.full_vector() == std::vector<double>{1.0, 1.0, 0.0});
}

TEST_CASE("four points give ten features with the self block") {
    std::mt19937_64 rng(3);
    const auto f = inner_products_euclidean(random_sample(4, 2, rng), true);
    CHECK(f.size() == 10);
    const auto without = inner_products_euclidean(random_sample(4, 2, rng), false);
    CHECK(without.size() == 6);
}

TEST_CASE("euclidean features are invariant under random orthogonal maps") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 200; ++trial) {
        const int d = 2 + trial % 3;
        const int n = 2 + static_cast<int>(rng() % 4);
        const PointCloudSample s = random_sample(n, d, rng);
        const Eigen::MatrixXd r = oracle::random_orthogonal(d, rng);
        PointCloudSample rotated = s;
        rotated.points = s.points * r.transpose();

        const auto a = inner_products_euclidean(s, true).full_vector();
        const auto b = inner_products_euclidean(rotated, true).full_vector();
        REQUIRE(a.size() == b.size());
        for (std::size_t k = 0; k < a.size(); ++k) CHECK(std::abs(a[k] - b[k]) < 1e-9);
    }
}

TEST_CASE("permuting the points permutes the blocks through the induced maps") {
    std::mt19937_64 rng(23);
    for (int n : {3, 4, 5}) {
        const PointCloudSample s = random_sample(n, 3, rng);
        const auto base = inner_products_euclidean(s, true);
        for (const auto& sigma : enumerate_group(n)) {
            PointCloudSample moved = s;
            for (int i = 0; i < n; ++i) moved.points.row(sigma(i)) = s.points.row(i);
            const auto perm = inner_products_euclidean(moved, true);

            const auto self_map = induce_on_self(sigma, n);
            const auto pair_map = induce_on_pairs(sigma, n);
            for (int q = 0; q < n; ++q)
                CHECK(perm.self_block[static_cast<std::size_t>(self_map(q))] ==
                      doctest::Approx(base.self_block[static_cast<std::size_t>(q)]).epsilon(1e-12));
            for (int q = 0; q < n_pairs(n); ++q)
                CHECK(perm.pair_block[static_cast<std::size_t>(pair_map(q))] ==
                      doctest::Approx(base.pair_block[static_cast<std::size_t>(q)]).epsilon(1e-12));
        }
    }
}

TEST_CASE("minkowski inner products") {
    SUBCASE("massless vector has zero self term") {
        const auto f = inner_products_minkowski(
            sample_from({{1, 0, 0, 1}, {2, 0, 0, -2}}), true);
        CHECK(f.self_block[0] == doctest::Approx(0.0));
        CHECK(f.self_block[1] == doctest::Approx(0.0));
    }
    SUBCASE("back-to-back massless pair reconstructs the parent mass") {
        const auto f = inner_products_minkowski(
            sample_from({{45.6, 0, 0, 45.6}, {45.6, 0, 0, -45.6}}), true);
        CHECK(f.pair_block[0] == doctest::Approx(2.0 * 45.6 * 45.6));
        CHECK(std::sqrt(2.0 * f.pair_block[0]) == doctest::Approx(91.2));
    }
    SUBCASE("dimension must be four") {
        CHECK_THROWS_AS(inner_products_minkowski(sample_from({{1, 2}, {3, 4}}), true),
                        std::invalid_argument);
    }
}

TEST_CASE("minkowski features are invariant under boosts and rotations") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> beta(0.0, 0.9);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const PointCloudSample s = random_event(n, rng);

        Eigen::Vector3d dir;
        std::normal_distribution<double> gauss(0.0, 1.0);
        do { dir = Eigen::Vector3d(gauss(rng), gauss(rng), gauss(rng)); } while (dir.norm() < 1e-6);
        const Eigen::Matrix4d lambda =
            oracle::boost_matrix(beta(rng), dir) * oracle::rotation4(oracle::random_orthogonal(3, rng));

        PointCloudSample moved = s;
        moved.points = s.points * lambda.transpose();

        const auto a = inner_products_minkowski(s, true).full_vector();
        const auto b = inner_products_minkowski(moved, true).full_vector();
        for (std::size_t k = 0; k < a.size(); ++k)
            CHECK(std::abs(a[k] - b[k]) <= 1e-6 * std::max(1.0, std::abs(a[k])));
    }
}

TEST_CASE("boost along z with beta = 0.5 preserves features") {
    std::mt19937_64 rng(31);
    const PointCloudSample s = random_event(4, rng);
    const Eigen::Matrix4d lambda = oracle::boost_matrix(0.5, Eigen::Vector3d(0, 0, 1));
    PointCloudSample moved = s;
    moved.points = s.points * lambda.transpose();
    const auto a = inner_products_minkowski(s, false).full_vector();
    const auto b = inner_products_minkowski(moved, false).full_vector();
    for (std::size_t k = 0; k < a.size(); ++k)
        CHECK(std::abs(a[k] - b[k]) <= 1e-6 * std::max(1.0, std::abs(a[k])));
}

TEST_CASE("flatten_baseline ordering") {
    CHECK(flatten_baseline(sample_from({{1, 2}, {3, 4}})) == std::vector<double>{1, 2, 3, 4});
    CHECK(flatten_baseline(sample_from({{5}})) == std::vector<double>{5});
    std::mt19937_64 rng(5);
    CHECK(flatten_baseline(random_sample(4, 2, rng)).size() == 8);
}

TEST_CASE("scaler maps the fitted range onto [0, 2pi]") {
    const FeatureScaler s = FeatureScaler::fit({{0.0}, {10.0}});
    CHECK(s.transform({0.0})[0] == doctest::Approx(0.0));
    CHECK(s.transform({10.0})[0] == doctest::Approx(kTwoPi));
    CHECK(s.transform({5.0})[0] == doctest::Approx(std::numbers::pi));
    SUBCASE("values outside the range clamp to the endpoints") {
        CHECK(s.transform({12.0})[0] == doctest::Approx(kTwoPi));
        CHECK(s.transform({-3.0})[0] == doctest::Approx(0.0));
    }
}

TEST_CASE("degenerate features map to the midpoint") {
    const FeatureScaler s = FeatureScaler::fit({{3.0}, {3.0}, {3.0}});
    CHECK(s.transform({3.0})[0] == doctest::Approx(std::numbers::pi));
    CHECK(s.transform({99.0})[0] == doctest::Approx(std::numbers::pi));
}

TEST_CASE("scaler rejects an empty training set") {
    CHECK_THROWS_AS(FeatureScaler::fit({}), std::invalid_argument);
}

TEST_CASE("grouped fit shares one range inside each group") {
    const FeatureScaler s = FeatureScaler::fit_grouped({{0.0, 4.0}, {2.0, 6.0}}, {{0, 2}});
    CHECK(s.minima() == std::vector<double>{0.0, 0.0});
    CHECK(s.maxima() == std::vector<double>{6.0, 6.0});
    CHECK_THROWS_AS(FeatureScaler::fit_grouped({{1.0, 2.0}}, {{0, 1}}), std::invalid_argument);
}

TEST_CASE("z feature map structure and state") {
    const ParamCircuit c = z_feature_map({0.0});
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].kind == GateKind::H);
    CHECK(c.gates[1].kind == GateKind::RZ);
    CHECK(c.gates[1].fixed_angle == 0.0);
    CHECK(c.n_params == 0);

    Statevector s = init_state(1);
    apply_circuit(s, c, {});
    CHECK(s[0].real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(std::abs(s[1] - oracle::cd(1.0 / std::sqrt(2.0), 0)) < 1e-12);

    CHECK(z_feature_map(std::vector<double>(10, 1.0)).n_qubits == 10);
}

TEST_CASE("z feature map is product-form: equal angles commute across qubits") {
    const std::vector<double> features{std::numbers::pi, std::numbers::pi};
    Statevector a = init_state(2);
    apply_circuit(a, z_feature_map(features), {});

    // Same features with the qubit order swapped by hand.
    Statevector b = init_state(2);
    ParamCircuit swapped;
    swapped.n_qubits = 2;
    swapped.gates = {Gate::h(1), Gate::rz_fixed(1, features[1]), Gate::h(0),
                     Gate::rz_fixed(0, features[0])};
    apply_circuit(b, swapped, {});
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
}

TEST_CASE("samples reject non-finite coordinates") {
    PointCloudSample bad = sample_from({{1.0, 2.0}});
    bad.points(0, 0) = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(inner_products_euclidean(bad, true), std::invalid_argument);
}

}  // TEST_SUITE
