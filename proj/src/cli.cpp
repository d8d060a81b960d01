#include "symqnn/cli.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "symqnn/experiments.hpp"

namespace symqnn {

namespace {

std::string iso_timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_json(const std::string& path, nlohmann::json j, bool timestamp = true) {
    if (timestamp) j["generated_at"] = iso_timestamp();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << j.dump(2) << '\n';
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    return nlohmann::json::parse(in);
}

std::string manifest_path(const std::string& csv_path) {
    const auto dot = csv_path.rfind('.');
    const std::string stem = dot == std::string::npos ? csv_path : csv_path.substr(0, dot);
    return stem + ".manifest.json";
}

struct CommonFlags {
    std::string task = "shapes2d";
    std::string model = "fully_symmetric";
    int layers = -1;
    int inits = -1;
    int iterations = -1;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::string data;
    std::string out;
    std::string config_path;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_model = true) {
    cmd->add_option("--task", f.task, "Task: shapes2d or decay")
        ->check(CLI::IsMember({"shapes2d", "decay"}));
    if (with_model)
        cmd->add_option("--model", f.model, "Model: baseline, rotational, fully_symmetric")
            ->check(CLI::IsMember({"baseline", "rotational", "fully_symmetric"}));
    cmd->add_option("--layers", f.layers, "Ansatz layers");
    cmd->add_option("--inits", f.inits, "Independent training initializations");
    cmd->add_option("--iterations", f.iterations, "Optimizer iterations (objective evaluations)");
    cmd->add_option("--seed", f.seed, "Master seed for all randomness")
        ->each([&f](const std::string&) { f.seed_set = true; });
    cmd->add_option("--data", f.data, "Dataset CSV path");
    cmd->add_option("--out", f.out, "Output path");
    cmd->add_option("--config", f.config_path, "JSON config file; overrides flags");
}

ExperimentConfig resolve_config(const CommonFlags& f) {
    ExperimentConfig c =
        ExperimentConfig::preset(task_from_name(f.task), model_kind_from_name(f.model));
    if (f.layers > 0) c.layers = f.layers;
    if (f.inits > 0) c.n_inits = f.inits;
    if (f.iterations > 0) c.iterations = f.iterations;
    if (f.seed_set) {
        c.seed = f.seed;
        c.shapes.seed = f.seed;
        c.decay.seed = f.seed;
    }
    if (!f.config_path.empty()) {
        nlohmann::json overrides = read_json(f.config_path);
        nlohmann::json merged = c.to_json();
        merged.merge_patch(overrides);
        c = ExperimentConfig::from_json(merged);
    }
    return c;
}

LabeledDataset load_or_generate(const ExperimentConfig& config, const std::string& data_path) {
    if (data_path.empty()) return generate_task_dataset(config);
    LabeledDataset ds = read_csv(data_path);
    // A manifest next to the CSV pins the train/test counts.
    std::ifstream probe(manifest_path(data_path));
    if (probe) {
        const nlohmann::json manifest = nlohmann::json::parse(probe);
        const int n_train = manifest.value("n_train", 0);
        if (n_train > 0 && n_train <= static_cast<int>(ds.samples.size())) {
            ds.train_indices.clear();
            ds.test_indices.clear();
            for (int i = 0; i < static_cast<int>(ds.samples.size()); ++i)
                (i < n_train ? ds.train_indices : ds.test_indices).push_back(i);
        }
    }
    return ds;
}

int cmd_generate(const CommonFlags& f, int n_samples, int n_train) {
    ExperimentConfig c = resolve_config(f);
    if (f.out.empty()) throw CLI::ValidationError("--out", "generate needs an output CSV path");
    if (c.task == Task::Shapes2D) {
        if (n_samples > 0) c.shapes.n_samples = n_samples;
        if (n_train > 0) c.shapes.n_train = n_train;
    } else {
        if (n_samples > 0) c.decay.n_samples = n_samples;
        if (n_train > 0) c.decay.n_train = n_train;
    }
    const LabeledDataset ds = generate_task_dataset(c);
    write_csv(ds, f.out);
    const nlohmann::json echo =
        c.task == Task::Shapes2D ? c.shapes.to_json() : c.decay.to_json();
    write_json(manifest_path(f.out), dataset_manifest(ds, echo, f.out));
    std::cout << "wrote " << ds.samples.size() << " samples to " << f.out << " ("
              << ds.train_indices.size() << " train / " << ds.test_indices.size() << " test)\n";
    return 0;
}

int cmd_train(const CommonFlags& f) {
    const ExperimentConfig c = resolve_config(f);
    if (f.out.empty()) throw CLI::ValidationError("--out", "train needs an output report path");
    const LabeledDataset ds = load_or_generate(c, f.data);
    const ExperimentReport report = run_classification(c, ds);
    write_json(f.out, report.to_json());
    std::printf("%s/%s: %d qubits, %d params, median test AUC %.4f (mean %.4f +/- %.4f)\n",
                task_name(c.task).c_str(), model_kind_name(c.model).c_str(), report.n_qubits,
                report.n_params, report.auc_median, report.auc_mean, report.auc_std);
    for (const auto& s : report.seeds)
        if (s.status != "ok") std::fprintf(stderr, "seed failed: %s\n", s.status.c_str());
    return 0;
}

int cmd_evaluate(const CommonFlags& f, const std::string& report_path) {
    if (report_path.empty())
        throw CLI::ValidationError("--report", "evaluate needs a training report");
    if (f.out.empty()) throw CLI::ValidationError("--out", "evaluate needs an output path");
    const nlohmann::json rj = read_json(report_path);
    const ExperimentConfig c = ExperimentConfig::from_json(rj.at("config"));
    const LabeledDataset ds = load_or_generate(c, f.data);
    const Model model = build_model(c, ds);
    const auto test_set = ds.test_samples();
    std::vector<int> labels;
    for (const auto& s : test_set) labels.push_back(s.label);

    nlohmann::json out{{"schema_version", 1}, {"config", c.to_json()}, {"seeds", nlohmann::json::array()}};
    for (const auto& js : rj.at("seeds")) {
        if (js.value("status", "") != "ok") continue;
        TrainResult fit;
        fit.best_params = js.at("best_params").get<std::vector<double>>();
        fit.best_offset = js.value("best_offset", 0.0);
        const auto scores = decision_scores(model, test_set, fit, c.use_offset_loss);
        const auto curve = roc_curve(scores, labels);
        nlohmann::json roc = nlohmann::json::array();
        for (const auto& [x, y] : curve) roc.push_back({x, y});
        out["seeds"].push_back({{"seed", js.value("seed", 0)},
                                {"test_auc", auc(curve)},
                                {"roc", std::move(roc)}});
    }
    if (c.task == Task::Decay)
        out["oracle_auc"] = auc_from_scores(mass_cut_scores(test_set, c.decay.higgs_mass), labels);
    write_json(f.out, out);
    std::cout << "evaluated " << out["seeds"].size() << " seeds onto " << f.out << '\n';
    return 0;
}

int cmd_bp_scan(const CommonFlags& f, const std::string& axis, int draws, int layers) {
    if (f.out.empty()) throw CLI::ValidationError("--out", "bp-scan needs an output path");
    std::vector<ScanAxis> axes;
    if (axis == "dimension") axes = {ScanAxis::Dimension};
    else if (axis == "points") axes = {ScanAxis::Points};
    else if (axis == "qubits") axes = {ScanAxis::Qubits};
    else axes = {ScanAxis::Dimension, ScanAxis::Points, ScanAxis::Qubits};

    nlohmann::json scans = nlohmann::json::array();
    for (const ScanAxis a : axes)
        scans.push_back(bp_variance_scan(a, draws, f.seed_set ? f.seed : 0, layers).to_json());
    write_json(f.out, nlohmann::json{{"schema_version", 1}, {"scans", std::move(scans)}});
    std::cout << "wrote " << scans.size() << " variance scan(s) to " << f.out << '\n';
    return 0;
}

void export_report_csv(const nlohmann::json& rj, const std::string& dir) {
    const auto& agg = rj.at("aggregate");
    {
        std::ofstream roc(dir + "/roc.csv");
        roc << "fpr,tpr_mean,tpr_std\n";
        const auto& fpr = agg.at("roc_fpr");
        for (std::size_t i = 0; i < fpr.size(); ++i)
            roc << fpr[i].get<double>() << ',' << agg.at("roc_tpr_mean")[i].get<double>() << ','
                << agg.at("roc_tpr_std")[i].get<double>() << '\n';
    }
    {
        std::ofstream loss(dir + "/loss.csv");
        loss << "iteration,median,q25,q75\n";
        const auto& med = agg.at("loss_median");
        for (std::size_t i = 0; i < med.size(); ++i)
            loss << i + 1 << ',' << med[i].get<double>() << ','
                 << agg.at("loss_q25")[i].get<double>() << ','
                 << agg.at("loss_q75")[i].get<double>() << '\n';
    }
}

void export_scan_csv(const nlohmann::json& sj, const std::string& dir) {
    std::ofstream out(dir + "/variance.csv");
    out << "axis,model,n_points,dim,n_qubits,variance\n";
    for (const auto& scan : sj.at("scans"))
        for (const auto& row : scan.at("rows"))
            out << scan.at("axis").get<std::string>() << ',' << row.at("model").get<std::string>()
                << ',' << row.at("n_points").get<int>() << ',' << row.at("dim").get<int>() << ','
                << row.at("n_qubits").get<int>() << ',' << row.at("variance").get<double>() << '\n';
}

int cmd_report(const std::string& report_path, const std::string& out_dir) {
    const nlohmann::json rj = read_json(report_path);
    if (rj.contains("scans")) {
        std::printf("%-10s %-16s %8s %4s %7s %12s\n", "axis", "model", "points", "dim", "qubits",
                    "variance");
        for (const auto& scan : rj["scans"])
            for (const auto& row : scan.at("rows"))
                std::printf("%-10s %-16s %8d %4d %7d %12.3e\n",
                            scan.at("axis").get<std::string>().c_str(),
                            row.at("model").get<std::string>().c_str(),
                            row.at("n_points").get<int>(), row.at("dim").get<int>(),
                            row.at("n_qubits").get<int>(), row.at("variance").get<double>());
        if (!out_dir.empty()) export_scan_csv(rj, out_dir);
        return 0;
    }
    const auto& cfg = rj.at("config");
    const auto& st = rj.at("structure");
    const auto& agg = rj.at("aggregate");
    std::printf("task=%s model=%s layers=%d inits=%d iterations=%d\n",
                cfg.at("task").get<std::string>().c_str(),
                cfg.at("model").get<std::string>().c_str(), cfg.at("layers").get<int>(),
                cfg.at("n_inits").get<int>(), cfg.at("iterations").get<int>());
    std::printf("qubits=%d params=%d depth=%d\n", st.at("n_qubits").get<int>(),
                st.at("n_params").get<int>(), st.at("depth").get<int>());
    std::printf("AUC median=%.4f mean=%.4f std=%.4f\n", agg.at("auc_median").get<double>(),
                agg.at("auc_mean").get<double>(), agg.at("auc_std").get<double>());
    if (agg.value("oracle_auc", 0.0) > 0.0)
        std::printf("mass-cut oracle AUC=%.4f\n", agg.at("oracle_auc").get<double>());
    for (const auto& s : rj.at("seeds"))
        std::printf("  seed %llu: status=%s evals=%d best_loss=%.5f test_auc=%.4f\n",
                    static_cast<unsigned long long>(s.value("seed", 0ull)),
                    s.value("status", "?").c_str(), s.value("evaluations", 0),
                    s.at("loss_history").empty() ? 0.0 : s.at("loss_history").back().get<double>(),
                    s.value("test_auc", 0.0));
    if (!out_dir.empty()) export_report_csv(rj, out_dir);
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Point-cloud QNN simulator and training toolkit"};
    app.require_subcommand(1);

    CommonFlags gen_f, train_f, eval_f, scan_f;
    int gen_samples = -1, gen_train = -1;
    std::string eval_report, report_path, report_outdir;
    std::string scan_axis = "all";
    int scan_draws = 100, scan_layers = 2;

    CLI::App* generate = app.add_subcommand("generate", "Generate a dataset CSV plus manifest");
    add_common(generate, gen_f, /*with_model=*/false);
    generate->add_option("--samples", gen_samples, "Total sample count");
    generate->add_option("--train", gen_train, "Training split size");

    CLI::App* train_cmd = app.add_subcommand("train", "Train a model over several seeds");
    add_common(train_cmd, train_f);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Re-score a trained report on a dataset");
    add_common(evaluate, eval_f);
    evaluate->add_option("--report", eval_report, "Training report JSON")->required();

    CLI::App* bp_scan = app.add_subcommand("bp-scan", "Gradient-variance scan");
    add_common(bp_scan, scan_f, /*with_model=*/false);
    bp_scan->add_option("--axis", scan_axis, "dimension, points, qubits or all")
        ->check(CLI::IsMember({"dimension", "points", "qubits", "all"}));
    bp_scan->add_option("--draws", scan_draws, "Random parameter draws per configuration");
    bp_scan->add_option("--scan-layers", scan_layers, "Ansatz layers in scanned circuits");

    CLI::App* report = app.add_subcommand("report", "Summarize a report JSON; optional CSV export");
    report->add_option("--report", report_path, "Report or scan JSON")->required();
    report->add_option("--out", report_outdir, "Directory for CSV export");

    try {
        app.parse(argc, argv);
        if (generate->parsed()) return cmd_generate(gen_f, gen_samples, gen_train);
        if (train_cmd->parsed()) return cmd_train(train_f);
        if (evaluate->parsed()) return cmd_evaluate(eval_f, eval_report);
        if (bp_scan->parsed())
            return cmd_bp_scan(scan_f, scan_axis, scan_draws,
                               scan_f.layers > 0 ? scan_f.layers : scan_layers);
        if (report->parsed()) return cmd_report(report_path, report_outdir);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace symqnn
