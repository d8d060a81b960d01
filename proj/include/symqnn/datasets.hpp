#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "symqnn/encoding.hpp"

namespace symqnn {

/// Energy-momentum four-vector in GeV, metric (+,-,-,-).
struct FourVector {
    double e = 0.0, px = 0.0, py = 0.0, pz = 0.0;

    double dot(const FourVector& o) const { return e * o.e - px * o.px - py * o.py - pz * o.pz; }
    double mass2() const { return dot(*this); }
    double mass() const;
    FourVector operator+(const FourVector& o) const {
        return {e + o.e, px + o.px, py + o.py, pz + o.pz};
    }
    /// Boosts by velocity beta = (bx, by, bz), |beta| < 1.
    FourVector boosted(double bx, double by, double bz) const;
};

/// Labeled samples with disjoint, exhaustive train/test index lists.
struct LabeledDataset {
    std::vector<PointCloudSample> samples;
    std::vector<int> train_indices;
    std::vector<int> test_indices;

    std::vector<PointCloudSample> train_samples() const;
    std::vector<PointCloudSample> test_samples() const;
    void validate() const;
};

/// 2D shapes task: squares (+1) vs triangles (-1), four points each,
/// subjected to translation, re-sizing, rotation, point shuffling and
/// per-point smearing. n_train = 0 picks the 3/4 default split.
struct ShapeConfig {
    int n_samples = 1600;
    int n_train = 0;
    double translation_max = 5.0;
    std::pair<double, double> resize_range{0.5, 5.0};
    std::pair<double, double> smear_range{-0.5, 0.5};
    bool rotate = true;
    bool shuffle = true;
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static ShapeConfig from_json(const nlohmann::json& j);
};

/// Synthetic four-lepton task: Higgs cascade decays (+1) against a
/// continuum of four-lepton events (-1). Masses in GeV. higgs_width is
/// the effective line width of the generated peak (physical width folded
/// with an assumed resolution); 0 puts every signal event exactly at
/// higgs_mass.
struct DecayConfig {
    int n_samples = 8000;
    int n_train = 0;
    double higgs_mass = 125.0;
    double higgs_width = 1.5;
    double z_mass = 91.19;
    double z_width = 2.5;
    std::pair<double, double> zstar_mass_range{12.0, 40.0};
    std::pair<double, double> background_mass_range{80.0, 250.0};
    std::uint64_t seed = 0;

    nlohmann::json to_json() const;
    static DecayConfig from_json(const nlohmann::json& j);
};

LabeledDataset generate_shapes(const ShapeConfig& config);

/// Isotropic two-body decay of `parent` into masses m1, m2, boosted to
/// the parent frame. Energy-momentum is conserved exactly.
std::pair<FourVector, FourVector> two_body_decay(const FourVector& parent, double m1, double m2,
                                                 std::mt19937_64& rng);

LabeledDataset generate_decays(const DecayConfig& config);

/// Oracle scores: -|m_4body - higgs_mass|, so a threshold sweep traces a
/// symmetric mass window around the peak.
std::vector<double> mass_cut_scores(const LabeledDataset& dataset, double higgs_mass = 125.0);
std::vector<double> mass_cut_scores(const std::vector<PointCloudSample>& samples,
                                    double higgs_mass = 125.0);

/// CSV with a header row of coordinate columns p{i}_{k} plus a label
/// column; one sample per row. Round-trips beyond 1e-12.
void write_csv(const LabeledDataset& dataset, const std::string& path);
LabeledDataset read_csv(const std::string& path);

/// Companion manifest describing a written dataset (config echo, seed,
/// counts, checksum of the CSV bytes).
nlohmann::json dataset_manifest(const LabeledDataset& dataset, const nlohmann::json& config_echo,
                                const std::string& csv_path);

std::uint64_t fnv1a_file(const std::string& path);

}  // namespace symqnn
