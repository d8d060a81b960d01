#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "symqnn/circuit.hpp"
#include "symqnn/cobyla.hpp"
#include "symqnn/encoding.hpp"
#include "symqnn/pauli.hpp"
#include "symqnn/statevector.hpp"

namespace symqnn {

enum class Preprocessing { Flatten, EuclideanInvariants, MinkowskiInvariants };

std::string preprocessing_name(Preprocessing p);

/// A trainable classifier: preprocessing + fitted scaler + Z-feature-map
/// encoder + parameterized ansatz, read out through `observable`
/// (all-qubit Z by default).
struct Model {
    ParamCircuit ansatz;
    FeatureScaler scaler;
    Preprocessing preprocessing = Preprocessing::Flatten;
    bool include_self = true;  // for the invariant preprocessings
    PauliString observable;

    static Model make(ParamCircuit ansatz, FeatureScaler scaler, Preprocessing preprocessing,
                      bool include_self = true);

    /// Raw (unscaled) feature vector of one sample.
    std::vector<double> features(const PointCloudSample& sample) const;

    /// Post-encoder state for one sample; constant across parameter values,
    /// so training caches it.
    Statevector encode(const PointCloudSample& sample) const;
};

struct TrainConfig {
    int max_iterations = 100;  // objective evaluations
    double initial_step = 0.5;
    double tolerance = 1e-4;
    std::uint64_t seed = 0;
    bool use_offset_loss = false;
    double initial_offset = 0.0;
};

struct TrainResult {
    std::vector<double> best_params;
    double best_offset = 0.0;
    std::vector<double> loss_history;  // best-so-far per evaluation
    int evaluations = 0;
    std::uint64_t seed = 0;
    std::string status;

    nlohmann::json to_json() const;
};

/// <psi|O|psi> after encoder and ansatz; in [-1, 1] for the Z observable.
double predict(const Model& model, const PointCloudSample& sample,
               const std::vector<double>& params);

/// Same, starting from a cached post-encoder state.
double predict_encoded(const Model& model, const Statevector& encoded,
                       const std::vector<double>& params);

/// Mean squared error over predictions in [-1, 1] and labels in {-1, +1},
/// normalized to [0, 1]: (1/4n) sum (yhat - y)^2.
double mse_loss(const std::vector<double>& predictions, const std::vector<int>& labels);

/// Offset-activation loss, an unnormalized sum:
/// sum_i (-|yhat_i - b| - y_i)^2. The offset b is optimized alongside the
/// circuit parameters.
double offset_loss(const std::vector<double>& predictions, const std::vector<int>& labels,
                   double offset);

/// d yhat / d theta_slot by the parameter-shift rule: every RY/RZ/RZZ has
/// a single-Pauli generator, so each gate on the slot contributes
/// (yhat(angle + pi/2) - yhat(angle - pi/2)) / 2, summed over the slot's
/// gates (product rule for shared slots). A slot carried by no gate has
/// zero gradient.
double parameter_shift_gradient(const Model& model, const PointCloudSample& sample,
                                const std::vector<double>& params, int slot);

/// Called after every objective evaluation with the candidate parameters
/// and the just-computed training predictions (in dataset order).
using EvalObserver =
    std::function<void(const std::vector<double>& params, double offset,
                       const std::vector<double>& train_predictions, double train_loss)>;

/// Minimizes the selected loss over the training split. Initial
/// parameters are uniform on [0, 2pi) from config.seed; the offset (when
/// enabled) starts at config.initial_offset and is one extra optimizer
/// coordinate. Deterministic per seed.
TrainResult train(const Model& model, const std::vector<PointCloudSample>& dataset,
                  const TrainConfig& config, const EvalObserver& observer = nullptr);

/// Scores used for ROC sweeps: yhat for the plain loss, -|yhat - b| for
/// the offset loss (the activated output).
std::vector<double> decision_scores(const Model& model,
                                    const std::vector<PointCloudSample>& samples,
                                    const TrainResult& fit, bool use_offset_loss);

}  // namespace symqnn
