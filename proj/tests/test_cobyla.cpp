#include <doctest.h>

#include <cmath>
#include <limits>
#include <stdexcept>

#include "symqnn/cobyla.hpp"

using namespace symqnn;

TEST_SUITE("cobyla") {

TEST_CASE("1-D quadratic converges inside the budget") {
    const auto r = minimize_cobyla([](const std::vector<double>& x) {
        return (x[0] - 3.0) * (x[0] - 3.0);
    }, {0.0}, CobylaOptions{100, 0.5, 1e-4});
    CHECK(std::abs(r.best_point[0] - 3.0) < 1e-3);
    CHECK(r.evaluations <= 100);
}

TEST_CASE("a constant objective returns the start point") {
    const auto r = minimize_cobyla([](const std::vector<double>&) { return 7.0; },
                                   {1.0, 2.0}, CobylaOptions{100, 0.5, 1e-4});
    CHECK(r.best_point == std::vector<double>{1.0, 2.0});
    CHECK(r.best_value == 7.0);
}

TEST_CASE("anisotropic bowl reaches 1e-4 inside 300 evaluations") {
    const auto r = minimize_cobyla([](const std::vector<double>& x) {
        return x[0] * x[0] + 10.0 * x[1] * x[1];
    }, {1.0, 1.0}, CobylaOptions{300, 0.5, 1e-4});
    CHECK(r.best_value < 1e-4);
    CHECK(r.evaluations <= 300);
}

TEST_CASE("history records best-so-far per evaluation and never rises") {
    const auto r = minimize_cobyla([](const std::vector<double>& x) {
        return std::sin(x[0]) + x[0] * x[0] * 0.1;
    }, {2.0}, CobylaOptions{60, 0.5, 1e-4});
    CHECK(static_cast<int>(r.history.size()) == r.evaluations);
    for (std::size_t i = 1; i < r.history.size(); ++i) CHECK(r.history[i] <= r.history[i - 1]);
    CHECK(r.best_value <= r.history.front());
}

TEST_CASE("a single evaluation returns the start") {
    const auto r = minimize_cobyla([](const std::vector<double>& x) {
        return (x[0] - 3.0) * (x[0] - 3.0);
    }, {0.0}, CobylaOptions{1, 0.5, 1e-4});
    CHECK(r.history.size() == 1);
    CHECK(r.best_point[0] == 0.0);
}

TEST_CASE("non-finite objectives abort with a diagnostic") {
    CHECK_THROWS_WITH_AS(
        minimize_cobyla([](const std::vector<double>& x) {
            return x[0] > 0.2 ? std::numeric_limits<double>::quiet_NaN() : x[0];
        }, {0.0}, CobylaOptions{50, 0.5, 1e-4}),
        doctest::Contains("aborted"), std::runtime_error);
}

TEST_CASE("deterministic for a fixed start") {
    const Objective f = [](const std::vector<double>& x) {
        return std::cos(x[0]) * std::sin(x[1]) + 0.05 * (x[0] * x[0] + x[1] * x[1]);
    };
    const auto a = minimize_cobyla(f, {0.3, 0.4}, CobylaOptions{120, 0.5, 1e-4});
    const auto b = minimize_cobyla(f, {0.3, 0.4}, CobylaOptions{120, 0.5, 1e-4});
    CHECK(a.best_point == b.best_point);
    CHECK(a.history == b.history);
    CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("option validation") {
    const Objective f = [](const std::vector<double>& x) { return x[0]; };
    const CobylaOptions no_budget{0, 0.5, 1e-4};
    const CobylaOptions bad_step{10, -0.5, 1e-4};
    const CobylaOptions bad_tolerance{10, 0.5, 0.0};
    CHECK_THROWS_AS(minimize_cobyla(f, {0.0}, no_budget), std::invalid_argument);
    CHECK_THROWS_AS(minimize_cobyla(f, {0.0}, bad_step), std::invalid_argument);
    CHECK_THROWS_AS(minimize_cobyla(f, {0.0}, bad_tolerance), std::invalid_argument);
}

}  // TEST_SUITE
