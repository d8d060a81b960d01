#include "symqnn/training.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "symqnn/threading.hpp"

namespace symqnn {

std::string preprocessing_name(Preprocessing p) {
    switch (p) {
        case Preprocessing::Flatten: return "flatten";
        case Preprocessing::EuclideanInvariants: return "euclidean-invariants";
        case Preprocessing::MinkowskiInvariants: return "minkowski-invariants";
    }
    return "?";
}

Model Model::make(ParamCircuit ansatz, FeatureScaler scaler, Preprocessing preprocessing,
                  bool include_self) {
    Model m;
    m.observable = all_z(ansatz.n_qubits);
    m.ansatz = std::move(ansatz);
    m.scaler = std::move(scaler);
    m.preprocessing = preprocessing;
    m.include_self = include_self;
    if (m.scaler.n_features() != m.ansatz.n_qubits)
        throw std::invalid_argument("scaler is fitted for " +
                                    std::to_string(m.scaler.n_features()) +
                                    " features but the register has " +
                                    std::to_string(m.ansatz.n_qubits) + " qubits");
    return m;
}

std::vector<double> Model::features(const PointCloudSample& sample) const {
    switch (preprocessing) {
        case Preprocessing::Flatten: return flatten_baseline(sample);
        case Preprocessing::EuclideanInvariants:
            return inner_products_euclidean(sample, include_self).full_vector();
        case Preprocessing::MinkowskiInvariants:
            return inner_products_minkowski(sample, include_self).full_vector();
    }
    throw std::logic_error("unreachable preprocessing mode");
}

Statevector Model::encode(const PointCloudSample& sample) const {
    const auto scaled = scaler.transform(features(sample));
    if (static_cast<int>(scaled.size()) != ansatz.n_qubits)
        throw std::invalid_argument("preprocessing yields " + std::to_string(scaled.size()) +
                                    " features for a " + std::to_string(ansatz.n_qubits) +
                                    "-qubit register");
    Statevector state = init_state(ansatz.n_qubits);
    const ParamCircuit fragment = z_feature_map(scaled);
    apply_circuit(state, fragment, {});
    return state;
}

double predict(const Model& model, const PointCloudSample& sample,
               const std::vector<double>& params) {
    const Statevector encoded = model.encode(sample);
    return predict_encoded(model, encoded, params);
}

double predict_encoded(const Model& model, const Statevector& encoded,
                       const std::vector<double>& params) {
    Statevector state = encoded;
    apply_circuit(state, model.ansatz, params);
    return expectation(state, model.observable);
}

double mse_loss(const std::vector<double>& predictions, const std::vector<int>& labels) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("predictions and labels differ in length");
    if (predictions.empty()) throw std::invalid_argument("empty loss input");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = predictions[i] - static_cast<double>(labels[i]);
        acc += d * d;
    }
    return acc / (4.0 * static_cast<double>(predictions.size()));
}

double offset_loss(const std::vector<double>& predictions, const std::vector<int>& labels,
                   double offset) {
    if (predictions.size() != labels.size())
        throw std::invalid_argument("predictions and labels differ in length");
    if (predictions.empty()) throw std::invalid_argument("empty loss input");
    double acc = 0.0;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
        const double d = -std::abs(predictions[i] - offset) - static_cast<double>(labels[i]);
        acc += d * d;
    }
    return acc;
}

double parameter_shift_gradient(const Model& model, const PointCloudSample& sample,
                                const std::vector<double>& params, int slot) {
    if (slot < 0) throw std::out_of_range("negative parameter slot");
    const Statevector encoded = model.encode(sample);
    double grad = 0.0;
    for (std::size_t i = 0; i < model.ansatz.gates.size(); ++i) {
        const Gate& g = model.ansatz.gates[i];
        if (!g.param_slot || *g.param_slot != slot) continue;
        if (!is_rotation(g.kind))
            throw std::invalid_argument("parameter-shift needs a rotation gate on slot " +
                                        std::to_string(slot));
        constexpr double half_pi = std::numbers::pi / 2.0;
        Statevector plus = encoded;
        apply_circuit_shifted(plus, model.ansatz, params, i, half_pi);
        Statevector minus = encoded;
        apply_circuit_shifted(minus, model.ansatz, params, i, -half_pi);
        grad += (expectation(plus, model.observable) - expectation(minus, model.observable)) / 2.0;
    }
    return grad;
}

nlohmann::json TrainResult::to_json() const {
    return nlohmann::json{{"best_params", best_params}, {"best_offset", best_offset},
                          {"loss_history", loss_history}, {"evaluations", evaluations},
                          {"seed", seed},                 {"status", status}};
}

TrainResult train(const Model& model, const std::vector<PointCloudSample>& dataset,
                  const TrainConfig& config, const EvalObserver& observer) {
    if (dataset.empty()) throw std::invalid_argument("cannot train on an empty dataset");
    if (config.max_iterations < 1) throw std::invalid_argument("need at least one iteration");
    if (config.tolerance <= 0.0) throw std::invalid_argument("tolerance must be positive");

    const std::size_t n_params = static_cast<std::size_t>(model.ansatz.n_params);
    const std::size_t dim = n_params + (config.use_offset_loss ? 1 : 0);

    std::vector<Statevector> encoded;
    encoded.reserve(dataset.size());
    std::vector<int> labels;
    labels.reserve(dataset.size());
    for (const auto& s : dataset) {
        encoded.push_back(model.encode(s));
        labels.push_back(s.label);
    }

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
    std::vector<double> x0(dim, 0.0);
    for (std::size_t k = 0; k < n_params; ++k) x0[k] = uniform(rng);
    if (config.use_offset_loss) x0[n_params] = config.initial_offset;

    std::vector<double> predictions(dataset.size(), 0.0);
    const Objective objective = [&](const std::vector<double>& x) {
        const std::vector<double> params(x.begin(), x.begin() + static_cast<long>(n_params));
        parallel_for(dataset.size(), [&](std::size_t i) {
            predictions[i] = predict_encoded(model, encoded[i], params);
        });
        const double offset = config.use_offset_loss ? x[n_params] : 0.0;
        const double loss = config.use_offset_loss ? offset_loss(predictions, labels, offset)
                                                   : mse_loss(predictions, labels);
        if (observer) observer(params, offset, predictions, loss);
        return loss;
    };

    CobylaOptions opts;
    opts.max_evaluations = config.max_iterations;
    opts.initial_step = config.initial_step;
    opts.tolerance = config.tolerance;
    const CobylaResult fit = minimize_cobyla(objective, x0, opts);

    TrainResult out;
    out.best_params.assign(fit.best_point.begin(),
                           fit.best_point.begin() + static_cast<long>(n_params));
    out.best_offset = config.use_offset_loss ? fit.best_point[n_params] : 0.0;
    out.loss_history = fit.history;
    out.evaluations = fit.evaluations;
    out.seed = config.seed;
    out.status = fit.status;
    return out;
}

std::vector<double> decision_scores(const Model& model,
                                    const std::vector<PointCloudSample>& samples,
                                    const TrainResult& fit, bool use_offset_loss) {
    std::vector<double> scores(samples.size(), 0.0);
    parallel_for(samples.size(), [&](std::size_t i) {
        const double yhat = predict(model, samples[i], fit.best_params);
        scores[i] = use_offset_loss ? -std::abs(yhat - fit.best_offset) : yhat;
    });
    return scores;
}

}  // namespace symqnn
