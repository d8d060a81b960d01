#include "symqnn/datasets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace symqnn {

double FourVector::mass() const {
    const double m2 = mass2();
    return m2 >= 0.0 ? std::sqrt(m2) : -std::sqrt(-m2);
}

FourVector FourVector::boosted(double bx, double by, double bz) const {
    const double b2 = bx * bx + by * by + bz * bz;
    if (b2 >= 1.0) throw std::invalid_argument("boost velocity must satisfy |beta| < 1");
    if (b2 == 0.0) return *this;
    const double gamma = 1.0 / std::sqrt(1.0 - b2);
    const double bp = bx * px + by * py + bz * pz;
    const double k = (gamma - 1.0) * bp / b2 + gamma * e;
    return {gamma * (e + bp), px + k * bx, py + k * by, pz + k * bz};
}

std::vector<PointCloudSample> LabeledDataset::train_samples() const {
    std::vector<PointCloudSample> out;
    out.reserve(train_indices.size());
    for (int i : train_indices) out.push_back(samples[static_cast<std::size_t>(i)]);
    return out;
}

std::vector<PointCloudSample> LabeledDataset::test_samples() const {
    std::vector<PointCloudSample> out;
    out.reserve(test_indices.size());
    for (int i : test_indices) out.push_back(samples[static_cast<std::size_t>(i)]);
    return out;
}

void LabeledDataset::validate() const {
    std::vector<int> seen(samples.size(), 0);
    for (int i : train_indices) ++seen.at(static_cast<std::size_t>(i));
    for (int i : test_indices) ++seen.at(static_cast<std::size_t>(i));
    for (int count : seen)
        if (count != 1)
            throw std::invalid_argument("train/test split must be disjoint and exhaustive");
}

namespace {

void default_split(LabeledDataset& ds, int n_train) {
    const int n = static_cast<int>(ds.samples.size());
    if (n_train <= 0) n_train = (3 * n) / 4;
    if (n_train > n) throw std::invalid_argument("train split larger than dataset");
    ds.train_indices.resize(static_cast<std::size_t>(n_train));
    std::iota(ds.train_indices.begin(), ds.train_indices.end(), 0);
    ds.test_indices.resize(static_cast<std::size_t>(n - n_train));
    std::iota(ds.test_indices.begin(), ds.test_indices.end(), n_train);
}

}  // namespace

nlohmann::json ShapeConfig::to_json() const {
    return {{"task", "shapes2d"},
            {"n_samples", n_samples},
            {"n_train", n_train},
            {"translation_max", translation_max},
            {"resize_range", {resize_range.first, resize_range.second}},
            {"smear_range", {smear_range.first, smear_range.second}},
            {"rotate", rotate},
            {"shuffle", shuffle},
            {"seed", seed}};
}

ShapeConfig ShapeConfig::from_json(const nlohmann::json& j) {
    ShapeConfig c;
    c.n_samples = j.value("n_samples", c.n_samples);
    c.n_train = j.value("n_train", c.n_train);
    c.translation_max = j.value("translation_max", c.translation_max);
    if (j.contains("resize_range"))
        c.resize_range = {j["resize_range"].at(0).get<double>(), j["resize_range"].at(1).get<double>()};
    if (j.contains("smear_range"))
        c.smear_range = {j["smear_range"].at(0).get<double>(), j["smear_range"].at(1).get<double>()};
    c.rotate = j.value("rotate", c.rotate);
    c.shuffle = j.value("shuffle", c.shuffle);
    c.seed = j.value("seed", c.seed);
    return c;
}

nlohmann::json DecayConfig::to_json() const {
    return {{"task", "decay"},
            {"n_samples", n_samples},
            {"n_train", n_train},
            {"higgs_mass", higgs_mass},
            {"higgs_width", higgs_width},
            {"z_mass", z_mass},
            {"z_width", z_width},
            {"zstar_mass_range", {zstar_mass_range.first, zstar_mass_range.second}},
            {"background_mass_range", {background_mass_range.first, background_mass_range.second}},
            {"seed", seed}};
}

DecayConfig DecayConfig::from_json(const nlohmann::json& j) {
    DecayConfig c;
    c.n_samples = j.value("n_samples", c.n_samples);
    c.n_train = j.value("n_train", c.n_train);
    c.higgs_mass = j.value("higgs_mass", c.higgs_mass);
    c.higgs_width = j.value("higgs_width", c.higgs_width);
    c.z_mass = j.value("z_mass", c.z_mass);
    c.z_width = j.value("z_width", c.z_width);
    if (j.contains("zstar_mass_range"))
        c.zstar_mass_range = {j["zstar_mass_range"].at(0).get<double>(),
                              j["zstar_mass_range"].at(1).get<double>()};
    if (j.contains("background_mass_range"))
        c.background_mass_range = {j["background_mass_range"].at(0).get<double>(),
                                   j["background_mass_range"].at(1).get<double>()};
    c.seed = j.value("seed", c.seed);
    return c;
}

LabeledDataset generate_shapes(const ShapeConfig& config) {
    if (config.n_samples < 2)
        throw std::invalid_argument("need at least two samples (one per class)");
    if (config.resize_range.first > config.resize_range.second ||
        config.smear_range.first > config.smear_range.second)
        throw std::invalid_argument("config ranges must be ordered");

    // Square and triangle templates share three vertices.
    const double square[4][2] = {{0, 0}, {0, 2}, {2, 0}, {2, 2}};
    const double triangle[4][2] = {{0, 0}, {0, 2}, {2, 0}, {1, 1}};

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    LabeledDataset ds;
    ds.samples.reserve(static_cast<std::size_t>(config.n_samples));
    for (int s = 0; s < config.n_samples; ++s) {
        const bool is_square = s % 2 == 0;  // exact class balance
        const auto& tpl = is_square ? square : triangle;

        Eigen::MatrixXd pts(4, 2);
        for (int i = 0; i < 4; ++i) {
            pts(i, 0) = tpl[i][0];
            pts(i, 1) = tpl[i][1];
        }
        const Eigen::RowVector2d centre = pts.colwise().mean();

        const double scale = uniform(config.resize_range.first, config.resize_range.second);
        const double angle = config.rotate ? uniform(0.0, 2.0 * std::numbers::pi) : 0.0;
        const double tx = uniform(-config.translation_max, config.translation_max);
        const double ty = uniform(-config.translation_max, config.translation_max);

        Eigen::Matrix2d rot;
        rot << std::cos(angle), -std::sin(angle), std::sin(angle), std::cos(angle);
        for (int i = 0; i < 4; ++i) {
            Eigen::RowVector2d p = (pts.row(i) - centre) * scale;
            p = p * rot.transpose();
            p += centre + Eigen::RowVector2d(tx, ty);
            p(0) += uniform(config.smear_range.first, config.smear_range.second);
            p(1) += uniform(config.smear_range.first, config.smear_range.second);
            pts.row(i) = p;
        }

        if (config.shuffle) {
            for (int i = 3; i > 0; --i) {
                std::uniform_int_distribution<int> pick(0, i);
                pts.row(i).swap(pts.row(pick(rng)));
            }
        }

        ds.samples.push_back(PointCloudSample{pts, is_square ? 1 : -1});
    }
    default_split(ds, config.n_train);
    ds.validate();
    return ds;
}

std::pair<FourVector, FourVector> two_body_decay(const FourVector& parent, double m1, double m2,
                                                 std::mt19937_64& rng) {
    const double m2_parent = parent.mass2();
    if (m2_parent <= 0.0) throw std::invalid_argument("parent must be timelike");
    const double mass = std::sqrt(m2_parent);
    if (m1 < 0.0 || m2 < 0.0 || m1 + m2 > mass)
        throw std::invalid_argument("two-body decay is kinematically infeasible: m1 + m2 > M");

    // Momentum of either daughter in the parent rest frame.
    const double a = mass * mass - (m1 + m2) * (m1 + m2);
    const double b = mass * mass - (m1 - m2) * (m1 - m2);
    const double p_star = std::sqrt(std::max(a * b, 0.0)) / (2.0 * mass);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double cos_theta = 2.0 * unit(rng) - 1.0;
    const double sin_theta = std::sqrt(std::max(1.0 - cos_theta * cos_theta, 0.0));
    const double phi = 2.0 * std::numbers::pi * unit(rng);

    const double nx = sin_theta * std::cos(phi);
    const double ny = sin_theta * std::sin(phi);
    const double nz = cos_theta;
    FourVector d1{std::sqrt(m1 * m1 + p_star * p_star), p_star * nx, p_star * ny, p_star * nz};
    FourVector d2{std::sqrt(m2 * m2 + p_star * p_star), -p_star * nx, -p_star * ny, -p_star * nz};

    const double bx = parent.px / parent.e;
    const double by = parent.py / parent.e;
    const double bz = parent.pz / parent.e;
    return {d1.boosted(bx, by, bz), d2.boosted(bx, by, bz)};
}

namespace {

/// Breit-Wigner (Cauchy) mass truncated to [lo, hi] by inverse CDF.
double truncated_breit_wigner(double peak, double width, double lo, double hi,
                              std::mt19937_64& rng) {
    const double scale = width / 2.0;
    auto cdf = [&](double x) { return 0.5 + std::atan((x - peak) / scale) / std::numbers::pi; };
    std::uniform_real_distribution<double> u(cdf(lo), cdf(hi));
    const double q = u(rng);
    return peak + scale * std::tan(std::numbers::pi * (q - 0.5));
}

PointCloudSample four_lepton_sample(const FourVector& parent, double m_a, double m_b, int label,
                                    std::mt19937_64& rng) {
    const auto [va, vb] = two_body_decay(parent, m_a, m_b, rng);
    const auto [l1, l2] = two_body_decay(va, 0.0, 0.0, rng);
    const auto [l3, l4] = two_body_decay(vb, 0.0, 0.0, rng);
    Eigen::MatrixXd pts(4, 4);
    const FourVector leptons[4] = {l1, l2, l3, l4};
    for (int i = 0; i < 4; ++i) {
        pts(i, 0) = leptons[i].e;
        pts(i, 1) = leptons[i].px;
        pts(i, 2) = leptons[i].py;
        pts(i, 3) = leptons[i].pz;
    }
    return PointCloudSample{pts, label};
}

}  // namespace

namespace {
constexpr double kMinMass = 0.5;      // floor for sampled intermediates
constexpr double kPeakWindow = 15.0;  // truncation of the signal peak (GeV)
constexpr int kResampleBudget = 10000;
}  // namespace

LabeledDataset generate_decays(const DecayConfig& config) {
    if (config.n_samples < 2)
        throw std::invalid_argument("need at least two samples (one per class)");
    if (config.zstar_mass_range.first > config.zstar_mass_range.second ||
        config.background_mass_range.first > config.background_mass_range.second)
        throw std::invalid_argument("config ranges must be ordered");
    if (config.higgs_width < 0.0)
        throw std::invalid_argument("higgs_width must be non-negative");
    const double lowest_peak =
        config.higgs_width > 0.0 ? config.higgs_mass - kPeakWindow : config.higgs_mass;
    if (config.zstar_mass_range.second >= lowest_peak - 2.0)
        throw std::invalid_argument("off-shell mass range must stay below the resonance peak");
    if (config.background_mass_range.first <= config.zstar_mass_range.first + 2.0)
        throw std::invalid_argument("background masses must clear the off-shell floor");

    std::mt19937_64 rng(config.seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return lo + (hi - lo) * unit(rng); };

    auto parent_at = [&](double mass) {
        // A small transverse boost; the invariant content is unaffected.
        const double pt = uniform(0.0, 50.0);
        const double phi = uniform(0.0, 2.0 * std::numbers::pi);
        return FourVector{std::sqrt(mass * mass + pt * pt), pt * std::cos(phi),
                          pt * std::sin(phi), 0.0};
    };

    LabeledDataset ds;
    ds.samples.reserve(static_cast<std::size_t>(config.n_samples));
    for (int s = 0; s < config.n_samples; ++s) {
        const bool is_signal = s % 2 == 0;
        if (is_signal) {
            const double m_peak =
                config.higgs_width > 0.0
                    ? truncated_breit_wigner(config.higgs_mass, config.higgs_width,
                                             config.higgs_mass - kPeakWindow, config.higgs_mass + kPeakWindow,
                                             rng)
                    : config.higgs_mass;
            double m_z = 0.0, m_star = 0.0;
            int tries = 0;
            do {
                if (++tries > kResampleBudget)
                    throw std::runtime_error("resampling budget exceeded for signal kinematics");
                m_star = uniform(config.zstar_mass_range.first, config.zstar_mass_range.second);
                m_z = truncated_breit_wigner(config.z_mass, config.z_width, kMinMass,
                                             m_peak - m_star - kMinMass, rng);
            } while (m_z + m_star >= m_peak);
            ds.samples.push_back(four_lepton_sample(parent_at(m_peak), m_z, m_star, 1, rng));
        } else {
            const double m4 = uniform(config.background_mass_range.first,
                                      config.background_mass_range.second);
            double m_zlike = 0.0, m_other = 0.0;
            int tries = 0;
            do {
                if (++tries > kResampleBudget)
                    throw std::runtime_error("resampling budget exceeded for background kinematics");
                m_other = uniform(config.zstar_mass_range.first,
                                  std::min(config.zstar_mass_range.second, m4 - 2.0 * kMinMass));
                m_zlike = truncated_breit_wigner(config.z_mass, config.z_width, kMinMass,
                                                 m4 - m_other - kMinMass, rng);
            } while (m_zlike + m_other >= m4);
            ds.samples.push_back(four_lepton_sample(parent_at(m4), m_zlike, m_other, -1, rng));
        }
    }
    default_split(ds, config.n_train);
    ds.validate();
    return ds;
}

std::vector<double> mass_cut_scores(const std::vector<PointCloudSample>& samples,
                                    double higgs_mass) {
    std::vector<double> scores;
    scores.reserve(samples.size());
    for (const auto& s : samples) {
        if (s.dim() != 4)
            throw std::invalid_argument("mass-cut scores need four-vector samples");
        FourVector total;
        for (int i = 0; i < s.n_points(); ++i)
            total = total + FourVector{s.points(i, 0), s.points(i, 1), s.points(i, 2), s.points(i, 3)};
        scores.push_back(-std::abs(total.mass() - higgs_mass));
    }
    return scores;
}

std::vector<double> mass_cut_scores(const LabeledDataset& dataset, double higgs_mass) {
    return mass_cut_scores(dataset.samples, higgs_mass);
}

void write_csv(const LabeledDataset& dataset, const std::string& path) {
    if (dataset.samples.empty()) throw std::invalid_argument("refusing to write an empty dataset");
    const int n = dataset.samples.front().n_points();
    const int d = dataset.samples.front().dim();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");

    for (int i = 0; i < n; ++i)
        for (int k = 0; k < d; ++k) out << 'p' << i << '_' << k << ',';
    out << "label\n";

    char buf[32];
    for (const auto& s : dataset.samples) {
        if (s.n_points() != n || s.dim() != d)
            throw std::invalid_argument("all samples in one CSV must share n_points and dim");
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < d; ++k) {
                std::snprintf(buf, sizeof buf, "%.17g", s.points(i, k));
                out << buf << ',';
            }
        out << s.label << '\n';
    }
}

LabeledDataset read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");

    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error(path + ":1: missing header row");
    std::vector<std::string> columns;
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) columns.push_back(cell);
    }
    if (columns.empty() || columns.back() != "label")
        throw std::runtime_error(path + ":1: header must end with a 'label' column");

    int n = 0, d = 0;
    for (std::size_t c = 0; c + 1 < columns.size(); ++c) {
        int i = -1, k = -1;
        if (std::sscanf(columns[c].c_str(), "p%d_%d", &i, &k) != 2 || i < 0 || k < 0)
            throw std::runtime_error(path + ":1: bad coordinate column '" + columns[c] + "'");
        n = std::max(n, i + 1);
        d = std::max(d, k + 1);
    }
    if (n * d != static_cast<int>(columns.size()) - 1)
        throw std::runtime_error(path + ":1: coordinate columns do not form a full p{i}_{k} grid");
    for (std::size_t c = 0; c + 1 < columns.size(); ++c) {
        const int i = static_cast<int>(c) / d;
        const int k = static_cast<int>(c) % d;
        char expect[32];
        std::snprintf(expect, sizeof expect, "p%d_%d", i, k);
        if (columns[c] != expect)
            throw std::runtime_error(path + ":1: expected column '" + std::string(expect) +
                                     "', found '" + columns[c] + "'");
    }

    LabeledDataset ds;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        Eigen::MatrixXd pts(n, d);
        for (int c = 0; c < n * d; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(path + ":" + std::to_string(line_no) + ": truncated row");
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": bad number '" + cell + "'");
            }
            if (used != cell.size() || !std::isfinite(v))
                throw std::runtime_error(path + ":" + std::to_string(line_no) +
                                         ": bad number '" + cell + "'");
            pts(c / d, c % d) = v;
        }
        if (!std::getline(ss, cell, ','))
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": missing label");
        int label = 0;
        if (cell == "1" || cell == "+1")
            label = 1;
        else if (cell == "-1")
            label = -1;
        else
            throw std::runtime_error(path + ":" + std::to_string(line_no) + ": label '" + cell +
                                     "' must be +1 or -1");
        ds.samples.push_back(PointCloudSample{std::move(pts), label});
    }
    if (ds.samples.empty()) throw std::runtime_error(path + ": no samples");
    default_split(ds, 0);
    ds.validate();
    return ds;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for checksum");
    std::uint64_t hash = 14695981039346656037ull;
    char c;
    while (in.get(c)) {
        hash ^= static_cast<unsigned char>(c);
        hash *= 1099511628211ull;
    }
    return hash;
}

nlohmann::json dataset_manifest(const LabeledDataset& dataset, const nlohmann::json& config_echo,
                                const std::string& csv_path) {
    int positives = 0;
    for (const auto& s : dataset.samples) positives += s.label == 1;
    char checksum[32];
    std::snprintf(checksum, sizeof checksum, "%016llx",
                  static_cast<unsigned long long>(fnv1a_file(csv_path)));
    return {{"schema_version", 1},
            {"config", config_echo},
            {"n_samples", dataset.samples.size()},
            {"n_train", dataset.train_indices.size()},
            {"n_test", dataset.test_indices.size()},
            {"n_positive", positives},
            {"n_negative", dataset.samples.size() - static_cast<std::size_t>(positives)},
            {"csv_fnv1a", checksum}};
}

}  // namespace symqnn
