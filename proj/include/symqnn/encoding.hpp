#pragma once

#include <vector>

#include <Eigen/Dense>

#include "symqnn/circuit.hpp"

namespace symqnn {

/// n points in d-dimensional space plus a binary label. For Minkowski
/// data column 0 is the energy and columns 1..3 the momentum (GeV).
struct PointCloudSample {
    Eigen::MatrixXd points;  // n x d
    int label = 1;           // +1 or -1

    int n_points() const { return static_cast<int>(points.rows()); }
    int dim() const { return static_cast<int>(points.cols()); }
    void validate() const;
};

/// Inner-product features of one sample, split into the self block
/// (q_ii, i = 0..n-1) and the pair block (q_ij, i < j, lexicographic).
/// The full vector is self block first, then pair block.
struct InvariantFeatures {
    std::vector<double> self_block;
    std::vector<double> pair_block;
    bool include_self = true;

    std::size_t size() const {
        return (include_self ? self_block.size() : 0) + pair_block.size();
    }
    std::vector<double> full_vector() const;
};

/// Number of pair features for n points.
inline int n_pairs(int n) { return n * (n - 1) / 2; }

/// Lexicographic index of the unordered pair (i, j), i != j, among all
/// pairs of n points. This fixes the pair-block qubit order everywhere.
int pair_index(int i, int j, int n);

/// Inverse of pair_index: the k-th pair in lexicographic order.
std::pair<int, int> pair_from_index(int k, int n);

InvariantFeatures inner_products_euclidean(const PointCloudSample& sample, bool include_self);

/// Minkowski signature (+,-,-,-); requires d = 4.
InvariantFeatures inner_products_minkowski(const PointCloudSample& sample, bool include_self);

/// Row-major flatten {p_0^0, p_0^1, ..., p_{n-1}^{d-1}}.
std::vector<double> flatten_baseline(const PointCloudSample& sample);

/// Per-feature affine map onto [0, 2pi], fitted on a training set.
/// Values outside the fitted range are clamped to the endpoints; a
/// degenerate feature (max == min) maps to the interval midpoint.
class FeatureScaler {
  public:
    FeatureScaler() = default;

    /// Fits per-feature minima and maxima.
    static FeatureScaler fit(const std::vector<std::vector<double>>& rows);

    /// Fits with shared ranges inside each [begin, end) feature group, so
    /// that features a symmetry is allowed to permute share one map.
    static FeatureScaler fit_grouped(const std::vector<std::vector<double>>& rows,
                                     const std::vector<std::pair<int, int>>& groups);

    /// Identity-shaped scaler (n features, range already [0, 2pi]).
    static FeatureScaler identity(int n_features);

    std::vector<double> transform(const std::vector<double>& features) const;
    double transform_one(int feature, double value) const;

    int n_features() const { return static_cast<int>(min_.size()); }
    const std::vector<double>& minima() const { return min_; }
    const std::vector<double>& maxima() const { return max_; }

  private:
    std::vector<double> min_;
    std::vector<double> max_;
};

/// Z feature map fragment: per qubit k, H then RZ(scaled feature k) as a
/// fixed angle. One qubit per feature; a bare RZ on |0> would be a global
/// phase, the leading H makes the encoding faithful.
ParamCircuit z_feature_map(const std::vector<double>& scaled_features);

}  // namespace symqnn
