#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "symqnn/ansatz.hpp"
#include "symqnn/cli.hpp"
#include "symqnn/experiments.hpp"

namespace py = pybind11;
using namespace symqnn;

namespace {

nlohmann::json json_from_str(const std::string& s) { return nlohmann::json::parse(s); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Statevector simulator and training toolkit for rotation- and "
              "permutation-equivariant quantum neural networks on point clouds";

    // --- statevector ------------------------------------------------------
    py::enum_<PauliOp>(m, "PauliOp")
        .value("X", PauliOp::X)
        .value("Y", PauliOp::Y)
        .value("Z", PauliOp::Z);

    py::class_<PauliString>(m, "PauliString")
        .def(py::init<>())
        .def(py::init<std::map<int, PauliOp>, double>(), py::arg("ops"),
             py::arg("coefficient") = 1.0)
        .def_readwrite("ops", &PauliString::ops)
        .def_readwrite("coefficient", &PauliString::coefficient)
        .def("commutes_with", &PauliString::commutes_with)
        .def("__repr__", &PauliString::str);

    m.def("all_z", &all_z, py::arg("n_qubits"));
    m.def("sum_z", &sum_z, py::arg("n_qubits"));

    py::class_<Statevector>(m, "Statevector")
        .def(py::init<int>(), py::arg("n_qubits"))
        .def_property_readonly("n_qubits", &Statevector::n_qubits)
        .def_property_readonly("amplitudes",
                               [](const Statevector& s) { return s.amplitudes(); })
        .def("norm", &Statevector::norm)
        .def("apply_h", &Statevector::apply_h)
        .def("apply_ry", &Statevector::apply_ry)
        .def("apply_rz", &Statevector::apply_rz)
        .def("apply_rzz", &Statevector::apply_rzz)
        .def("apply_cnot", &Statevector::apply_cnot)
        .def("apply_swap", &Statevector::apply_swap);

    m.def("init_state", &init_state, py::arg("n_qubits"));
    m.def("apply_gate", &apply_gate, py::arg("state"), py::arg("gate"),
          py::arg("angle") = std::nullopt);
    m.def("apply_circuit", &apply_circuit, py::arg("state"), py::arg("circuit"),
          py::arg("params") = std::vector<double>{});
    m.def("expectation",
          py::overload_cast<const Statevector&, const PauliString&>(&expectation),
          py::arg("state"), py::arg("observable"));
    m.def("expectation_sum",
          py::overload_cast<const Statevector&, const std::vector<PauliString>&>(&expectation),
          py::arg("state"), py::arg("observable"));

    // --- circuits ---------------------------------------------------------
    py::enum_<GateKind>(m, "GateKind")
        .value("H", GateKind::H)
        .value("RY", GateKind::RY)
        .value("RZ", GateKind::RZ)
        .value("RZZ", GateKind::RZZ)
        .value("CNOT", GateKind::CNOT)
        .value("SWAP", GateKind::SWAP);

    py::class_<Gate>(m, "Gate")
        .def_readonly("kind", &Gate::kind)
        .def_readonly("q0", &Gate::q0)
        .def_readonly("q1", &Gate::q1)
        .def_readonly("param_slot", &Gate::param_slot)
        .def_readonly("fixed_angle", &Gate::fixed_angle)
        .def_static("h", &Gate::h)
        .def_static("ry", &Gate::ry)
        .def_static("ry_fixed", &Gate::ry_fixed)
        .def_static("rz", &Gate::rz)
        .def_static("rz_fixed", &Gate::rz_fixed)
        .def_static("rzz", &Gate::rzz)
        .def_static("rzz_fixed", &Gate::rzz_fixed)
        .def_static("cnot", &Gate::cnot)
        .def_static("swap", &Gate::swap);

    py::class_<ParamCircuit>(m, "ParamCircuit")
        .def(py::init<>())
        .def_readonly("n_qubits", &ParamCircuit::n_qubits)
        .def_readonly("n_params", &ParamCircuit::n_params)
        .def_readonly("gates", &ParamCircuit::gates)
        .def_readonly("builder", &ParamCircuit::builder)
        .def_readonly("layers", &ParamCircuit::layers)
        .def("depth", &ParamCircuit::depth)
        .def("to_json", [](const ParamCircuit& c) { return c.to_json().dump(); })
        .def_static("from_json",
                    [](const std::string& s) { return ParamCircuit::from_json(json_from_str(s)); });

    // --- encoding ---------------------------------------------------------
    py::class_<PointCloudSample>(m, "PointCloudSample")
        .def(py::init([](const Eigen::MatrixXd& points, int label) {
                 PointCloudSample s{points, label};
                 s.validate();
                 return s;
             }),
             py::arg("points"), py::arg("label") = 1)
        .def_readwrite("points", &PointCloudSample::points)
        .def_readwrite("label", &PointCloudSample::label)
        .def_property_readonly("n_points", &PointCloudSample::n_points)
        .def_property_readonly("dim", &PointCloudSample::dim);

    py::class_<InvariantFeatures>(m, "InvariantFeatures")
        .def_readonly("self_block", &InvariantFeatures::self_block)
        .def_readonly("pair_block", &InvariantFeatures::pair_block)
        .def_readonly("include_self", &InvariantFeatures::include_self)
        .def("full_vector", &InvariantFeatures::full_vector)
        .def("__len__", &InvariantFeatures::size);

    m.def("inner_products_euclidean", &inner_products_euclidean, py::arg("sample"),
          py::arg("include_self") = true);
    m.def("inner_products_minkowski", &inner_products_minkowski, py::arg("sample"),
          py::arg("include_self") = true);
    m.def("flatten_baseline", &flatten_baseline, py::arg("sample"));
    m.def("pair_index", &pair_index, py::arg("i"), py::arg("j"), py::arg("n"));
    m.def("z_feature_map", &z_feature_map, py::arg("scaled_features"));

    py::class_<FeatureScaler>(m, "FeatureScaler")
        .def_static("fit", &FeatureScaler::fit, py::arg("rows"))
        .def_static("fit_grouped", &FeatureScaler::fit_grouped, py::arg("rows"), py::arg("groups"))
        .def_static("identity", &FeatureScaler::identity, py::arg("n_features"))
        .def("transform", &FeatureScaler::transform)
        .def_property_readonly("minima", &FeatureScaler::minima)
        .def_property_readonly("maxima", &FeatureScaler::maxima);

    // --- symmetry ---------------------------------------------------------
    py::enum_<Block>(m, "Block")
        .value("Self", Block::Self)
        .value("Pair", Block::Pair)
        .value("Both", Block::Both);

    py::class_<Permutation>(m, "Permutation")
        .def(py::init([](std::vector<int> image) {
                 Permutation p{std::move(image)};
                 p.validate();
                 return p;
             }),
             py::arg("image"))
        .def_readonly("image", &Permutation::image)
        .def("inverse", &Permutation::inverse)
        .def("compose", &Permutation::compose);

    py::class_<InducedQubitPermutation>(m, "InducedQubitPermutation")
        .def_readonly("qubit_map", &InducedQubitPermutation::qubit_map);

    py::class_<TwirledGenerator>(m, "TwirledGenerator")
        .def_readonly("orbit", &TwirledGenerator::orbit)
        .def_readonly("source", &TwirledGenerator::source)
        .def_readonly("n_points", &TwirledGenerator::n_points)
        .def_readonly("block", &TwirledGenerator::block);

    m.def("enumerate_group", &enumerate_group, py::arg("n"));
    m.def("induce_on_pairs", &induce_on_pairs, py::arg("sigma"), py::arg("n"));
    m.def("induce_on_self", &induce_on_self, py::arg("sigma"), py::arg("n"));
    m.def("twirl", &twirl, py::arg("seed"), py::arg("n"), py::arg("block"));
    m.def("verify_equivariance", &verify_equivariance, py::arg("generator"), py::arg("n"));
    m.def("dense_pauli", &dense_pauli, py::arg("pauli"), py::arg("n_qubits"));
    m.def("dense_qubit_permutation", &dense_qubit_permutation, py::arg("perm"));
    m.def("feature_permutation_matrix", &feature_permutation_matrix, py::arg("perm"));

    // --- ansatz -----------------------------------------------------------
    m.def("build_baseline", &build_baseline, py::arg("n_points"), py::arg("dim"),
          py::arg("layers"));
    m.def("build_rotational", &build_rotational, py::arg("n_points"), py::arg("layers"),
          py::arg("include_self") = true);
    m.def("build_fully_symmetric", &build_fully_symmetric, py::arg("n_points"), py::arg("layers"),
          py::arg("include_self") = true);
    m.def("assemble_model", &assemble_model, py::arg("encoder"), py::arg("ansatz"));

    // --- training ---------------------------------------------------------
    py::enum_<Preprocessing>(m, "Preprocessing")
        .value("Flatten", Preprocessing::Flatten)
        .value("EuclideanInvariants", Preprocessing::EuclideanInvariants)
        .value("MinkowskiInvariants", Preprocessing::MinkowskiInvariants);

    py::class_<Model>(m, "Model")
        .def_static("make", &Model::make, py::arg("ansatz"), py::arg("scaler"),
                    py::arg("preprocessing"), py::arg("include_self") = true)
        .def_readonly("ansatz", &Model::ansatz)
        .def_readonly("preprocessing", &Model::preprocessing)
        .def_readonly("include_self", &Model::include_self)
        .def("features", &Model::features);

    py::class_<TrainConfig>(m, "TrainConfig")
        .def(py::init<>())
        .def_readwrite("max_iterations", &TrainConfig::max_iterations)
        .def_readwrite("initial_step", &TrainConfig::initial_step)
        .def_readwrite("tolerance", &TrainConfig::tolerance)
        .def_readwrite("seed", &TrainConfig::seed)
        .def_readwrite("use_offset_loss", &TrainConfig::use_offset_loss)
        .def_readwrite("initial_offset", &TrainConfig::initial_offset);

    py::class_<TrainResult>(m, "TrainResult")
        .def_readonly("best_params", &TrainResult::best_params)
        .def_readonly("best_offset", &TrainResult::best_offset)
        .def_readonly("loss_history", &TrainResult::loss_history)
        .def_readonly("evaluations", &TrainResult::evaluations)
        .def_readonly("seed", &TrainResult::seed)
        .def_readonly("status", &TrainResult::status)
        .def("to_json", [](const TrainResult& r) { return r.to_json().dump(); });

    m.def("predict", &predict, py::arg("model"), py::arg("sample"), py::arg("params"));
    m.def("mse_loss", &mse_loss, py::arg("predictions"), py::arg("labels"));
    m.def("offset_loss", &offset_loss, py::arg("predictions"), py::arg("labels"),
          py::arg("offset"));
    m.def("parameter_shift_gradient", &parameter_shift_gradient, py::arg("model"),
          py::arg("sample"), py::arg("params"), py::arg("slot"));
    m.def("train",
          [](const Model& model, const std::vector<PointCloudSample>& data,
             const TrainConfig& cfg) { return train(model, data, cfg); },
          py::arg("model"), py::arg("dataset"), py::arg("config"));

    py::class_<CobylaOptions>(m, "CobylaOptions")
        .def(py::init<>())
        .def_readwrite("max_evaluations", &CobylaOptions::max_evaluations)
        .def_readwrite("initial_step", &CobylaOptions::initial_step)
        .def_readwrite("tolerance", &CobylaOptions::tolerance);

    py::class_<CobylaResult>(m, "CobylaResult")
        .def_readonly("best_point", &CobylaResult::best_point)
        .def_readonly("best_value", &CobylaResult::best_value)
        .def_readonly("history", &CobylaResult::history)
        .def_readonly("evaluations", &CobylaResult::evaluations)
        .def_readonly("status", &CobylaResult::status);

    m.def("minimize_cobyla",
          [](const std::function<double(const std::vector<double>&)>& objective,
             const std::vector<double>& x0, const CobylaOptions& options) {
              return minimize_cobyla(objective, x0, options);
          },
          py::arg("objective"), py::arg("x0"), py::arg("options") = CobylaOptions{});

    // --- datasets ---------------------------------------------------------
    py::class_<ShapeConfig>(m, "ShapeConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &ShapeConfig::n_samples)
        .def_readwrite("n_train", &ShapeConfig::n_train)
        .def_readwrite("translation_max", &ShapeConfig::translation_max)
        .def_readwrite("resize_range", &ShapeConfig::resize_range)
        .def_readwrite("smear_range", &ShapeConfig::smear_range)
        .def_readwrite("rotate", &ShapeConfig::rotate)
        .def_readwrite("shuffle", &ShapeConfig::shuffle)
        .def_readwrite("seed", &ShapeConfig::seed);

    py::class_<DecayConfig>(m, "DecayConfig")
        .def(py::init<>())
        .def_readwrite("n_samples", &DecayConfig::n_samples)
        .def_readwrite("n_train", &DecayConfig::n_train)
        .def_readwrite("higgs_mass", &DecayConfig::higgs_mass)
        .def_readwrite("higgs_width", &DecayConfig::higgs_width)
        .def_readwrite("z_mass", &DecayConfig::z_mass)
        .def_readwrite("z_width", &DecayConfig::z_width)
        .def_readwrite("zstar_mass_range", &DecayConfig::zstar_mass_range)
        .def_readwrite("background_mass_range", &DecayConfig::background_mass_range)
        .def_readwrite("seed", &DecayConfig::seed);

    py::class_<LabeledDataset>(m, "LabeledDataset")
        .def_readonly("samples", &LabeledDataset::samples)
        .def_readonly("train_indices", &LabeledDataset::train_indices)
        .def_readonly("test_indices", &LabeledDataset::test_indices)
        .def("train_samples", &LabeledDataset::train_samples)
        .def("test_samples", &LabeledDataset::test_samples);

    m.def("generate_shapes", &generate_shapes, py::arg("config"));
    m.def("generate_decays", &generate_decays, py::arg("config"));
    m.def("mass_cut_scores",
          py::overload_cast<const LabeledDataset&, double>(&mass_cut_scores), py::arg("dataset"),
          py::arg("higgs_mass") = 125.0);
    m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"));
    m.def("read_csv", &read_csv, py::arg("path"));

    // --- experiments --------------------------------------------------------
    py::enum_<Task>(m, "Task").value("Shapes2D", Task::Shapes2D).value("Decay", Task::Decay);
    py::enum_<ModelKind>(m, "ModelKind")
        .value("Baseline", ModelKind::Baseline)
        .value("Rotational", ModelKind::Rotational)
        .value("FullySymmetric", ModelKind::FullySymmetric);
    py::enum_<ScanAxis>(m, "ScanAxis")
        .value("Dimension", ScanAxis::Dimension)
        .value("Points", ScanAxis::Points)
        .value("Qubits", ScanAxis::Qubits);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_static("preset", &ExperimentConfig::preset, py::arg("task"), py::arg("model"))
        .def_readwrite("task", &ExperimentConfig::task)
        .def_readwrite("model", &ExperimentConfig::model)
        .def_readwrite("layers", &ExperimentConfig::layers)
        .def_readwrite("n_inits", &ExperimentConfig::n_inits)
        .def_readwrite("iterations", &ExperimentConfig::iterations)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("initial_step", &ExperimentConfig::initial_step)
        .def_readwrite("tolerance", &ExperimentConfig::tolerance)
        .def_readwrite("use_offset_loss", &ExperimentConfig::use_offset_loss)
        .def_readwrite("shapes", &ExperimentConfig::shapes)
        .def_readwrite("decay", &ExperimentConfig::decay)
        .def("to_json", [](const ExperimentConfig& c) { return c.to_json().dump(); });

    py::class_<SeedOutcome>(m, "SeedOutcome")
        .def_readonly("fit", &SeedOutcome::fit)
        .def_readonly("whole_dataset_loss", &SeedOutcome::whole_dataset_loss)
        .def_readonly("test_scores", &SeedOutcome::test_scores)
        .def_readonly("test_auc", &SeedOutcome::test_auc)
        .def_readonly("status", &SeedOutcome::status);

    py::class_<ExperimentReport>(m, "ExperimentReport")
        .def_readonly("n_qubits", &ExperimentReport::n_qubits)
        .def_readonly("n_params", &ExperimentReport::n_params)
        .def_readonly("depth", &ExperimentReport::depth)
        .def_readonly("seeds", &ExperimentReport::seeds)
        .def_readonly("loss_median", &ExperimentReport::loss_median)
        .def_readonly("loss_q25", &ExperimentReport::loss_q25)
        .def_readonly("loss_q75", &ExperimentReport::loss_q75)
        .def_readonly("roc_fpr", &ExperimentReport::roc_fpr)
        .def_readonly("roc_tpr_mean", &ExperimentReport::roc_tpr_mean)
        .def_readonly("roc_tpr_std", &ExperimentReport::roc_tpr_std)
        .def_readonly("auc_mean", &ExperimentReport::auc_mean)
        .def_readonly("auc_std", &ExperimentReport::auc_std)
        .def_readonly("auc_median", &ExperimentReport::auc_median)
        .def_readonly("oracle_auc", &ExperimentReport::oracle_auc)
        .def("to_json", [](const ExperimentReport& r) { return r.to_json().dump(); });

    py::class_<VarianceScanRow>(m, "VarianceScanRow")
        .def_readonly("model", &VarianceScanRow::model)
        .def_readonly("n_points", &VarianceScanRow::n_points)
        .def_readonly("dim", &VarianceScanRow::dim)
        .def_readonly("n_qubits", &VarianceScanRow::n_qubits)
        .def_readonly("variance", &VarianceScanRow::variance)
        .def_readonly("mean_gradient", &VarianceScanRow::mean_gradient);

    py::class_<VarianceScanResult>(m, "VarianceScanResult")
        .def_readonly("axis", &VarianceScanResult::axis)
        .def_readonly("samples_per_point", &VarianceScanResult::samples_per_point)
        .def_readonly("rows", &VarianceScanResult::rows)
        .def("to_json", [](const VarianceScanResult& r) { return r.to_json().dump(); });

    m.def("build_model", &build_model, py::arg("config"), py::arg("dataset"));
    m.def("generate_task_dataset", &generate_task_dataset, py::arg("config"));
    m.def("run_classification",
          py::overload_cast<const ExperimentConfig&>(&run_classification), py::arg("config"));
    m.def("roc_curve", &roc_curve, py::arg("scores"), py::arg("labels"));
    m.def("auc", &auc, py::arg("roc"));
    m.def("auc_from_scores", &auc_from_scores, py::arg("scores"), py::arg("labels"));
    m.def("bp_variance_scan", &bp_variance_scan, py::arg("axis"),
          py::arg("samples_per_point") = 100, py::arg("seed") = 0, py::arg("layers") = 2);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::vector<const char*> argv{"symqnn"};
        for (const auto& a : args) argv.push_back(a.c_str());
        return run_cli(static_cast<int>(argv.size()), argv.data());
    });

#ifdef VERSION_INFO
#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)
    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
    m.attr("__version__") = "dev";
#endif
}
