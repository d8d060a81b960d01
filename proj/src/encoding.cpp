#include "symqnn/encoding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace symqnn {

void PointCloudSample::validate() const {
    if (points.rows() < 1 || points.cols() < 1)
        throw std::invalid_argument("sample needs at least one point and one coordinate");
    if (!points.allFinite())
        throw std::invalid_argument("sample has non-finite coordinates");
    if (label != 1 && label != -1)
        throw std::invalid_argument("label must be +1 or -1");
}

std::vector<double> InvariantFeatures::full_vector() const {
    std::vector<double> out;
    out.reserve(size());
    if (include_self) out.insert(out.end(), self_block.begin(), self_block.end());
    out.insert(out.end(), pair_block.begin(), pair_block.end());
    return out;
}

int pair_index(int i, int j, int n) {
    if (i == j || i < 0 || j < 0 || i >= n || j >= n)
        throw std::out_of_range("pair_index needs two distinct point indices below n");
    if (i > j) std::swap(i, j);
    // Pairs (0,1), (0,2), ..., (0,n-1), (1,2), ...
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

std::pair<int, int> pair_from_index(int k, int n) {
    if (k < 0 || k >= n_pairs(n)) throw std::out_of_range("pair feature index out of range");
    int i = 0;
    int row = n - 1;
    while (k >= row) {
        k -= row;
        --row;
        ++i;
    }
    return {i, i + 1 + k};
}

namespace {

InvariantFeatures inner_products(const PointCloudSample& sample, bool include_self,
                                 bool minkowski) {
    sample.validate();
    const int n = sample.n_points();
    const Eigen::MatrixXd& p = sample.points;

    auto dot = [&](int a, int b) {
        if (!minkowski) return p.row(a).dot(p.row(b));
        return p(a, 0) * p(b, 0) - p.row(a).tail(3).dot(p.row(b).tail(3));
    };

    InvariantFeatures f;
    f.include_self = include_self;
    f.self_block.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) f.self_block[static_cast<std::size_t>(i)] = dot(i, i);
    f.pair_block.resize(static_cast<std::size_t>(n_pairs(n)));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            f.pair_block[static_cast<std::size_t>(pair_index(i, j, n))] = dot(i, j);
    return f;
}

}  // namespace

InvariantFeatures inner_products_euclidean(const PointCloudSample& sample, bool include_self) {
    return inner_products(sample, include_self, false);
}

InvariantFeatures inner_products_minkowski(const PointCloudSample& sample, bool include_self) {
    if (sample.dim() != 4)
        throw std::invalid_argument("Minkowski inner products need 4-component rows (E, px, py, pz)");
    return inner_products(sample, include_self, true);
}

std::vector<double> flatten_baseline(const PointCloudSample& sample) {
    sample.validate();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(sample.points.size()));
    for (int i = 0; i < sample.n_points(); ++i)
        for (int k = 0; k < sample.dim(); ++k) out.push_back(sample.points(i, k));
    return out;
}

FeatureScaler FeatureScaler::fit(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("cannot fit a scaler on an empty training set");
    const std::size_t n = rows.front().size();
    std::vector<std::pair<int, int>> one_group_each;
    for (std::size_t k = 0; k < n; ++k)
        one_group_each.emplace_back(static_cast<int>(k), static_cast<int>(k + 1));
    return fit_grouped(rows, one_group_each);
}

FeatureScaler FeatureScaler::fit_grouped(const std::vector<std::vector<double>>& rows,
                                         const std::vector<std::pair<int, int>>& groups) {
    if (rows.empty()) throw std::invalid_argument("cannot fit a scaler on an empty training set");
    const std::size_t n = rows.front().size();
    for (const auto& r : rows)
        if (r.size() != n) throw std::invalid_argument("inconsistent feature lengths in training set");

    FeatureScaler s;
    s.min_.assign(n, 0.0);
    s.max_.assign(n, 0.0);
    std::vector<bool> covered(n, false);
    for (const auto& [begin, end] : groups) {
        if (begin < 0 || end <= begin || static_cast<std::size_t>(end) > n)
            throw std::invalid_argument("bad feature group bounds");
        double lo = rows[0][static_cast<std::size_t>(begin)];
        double hi = lo;
        for (const auto& r : rows)
            for (int k = begin; k < end; ++k) {
                lo = std::min(lo, r[static_cast<std::size_t>(k)]);
                hi = std::max(hi, r[static_cast<std::size_t>(k)]);
            }
        for (int k = begin; k < end; ++k) {
            if (covered[static_cast<std::size_t>(k)])
                throw std::invalid_argument("feature groups overlap");
            covered[static_cast<std::size_t>(k)] = true;
            s.min_[static_cast<std::size_t>(k)] = lo;
            s.max_[static_cast<std::size_t>(k)] = hi;
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        if (!covered[k]) throw std::invalid_argument("feature groups must cover every feature");
    return s;
}

FeatureScaler FeatureScaler::identity(int n_features) {
    FeatureScaler s;
    s.min_.assign(static_cast<std::size_t>(n_features), 0.0);
    s.max_.assign(static_cast<std::size_t>(n_features), 2.0 * std::numbers::pi);
    return s;
}

double FeatureScaler::transform_one(int feature, double value) const {
    const auto k = static_cast<std::size_t>(feature);
    if (k >= min_.size()) throw std::out_of_range("feature index outside fitted scaler");
    const double lo = min_[k];
    const double hi = max_[k];
    constexpr double two_pi = 2.0 * std::numbers::pi;
    if (hi == lo) return std::numbers::pi;  // degenerate feature: midpoint
    if (value <= lo) return 0.0;
    if (value >= hi) return two_pi;
    return (value - lo) / (hi - lo) * two_pi;
}

std::vector<double> FeatureScaler::transform(const std::vector<double>& features) const {
    if (features.size() != min_.size())
        throw std::invalid_argument("feature length does not match fitted scaler");
    std::vector<double> out(features.size());
    for (std::size_t k = 0; k < features.size(); ++k)
        out[k] = transform_one(static_cast<int>(k), features[k]);
    return out;
}

ParamCircuit z_feature_map(const std::vector<double>& scaled_features) {
    ParamCircuit c;
    c.n_qubits = static_cast<int>(scaled_features.size());
    c.n_params = 0;
    c.builder = "z_feature_map";
    c.gates.reserve(scaled_features.size() * 2);
    for (int q = 0; q < c.n_qubits; ++q) {
        c.gates.push_back(Gate::h(q));
        c.gates.push_back(Gate::rz_fixed(q, scaled_features[static_cast<std::size_t>(q)]));
    }
    return c;
}

}  // namespace symqnn
