#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qkern/dataset.hpp"
#include "qkern/kernel_spec.hpp"
#include "qkern/kernels.hpp"
#include "qkern/statevector.hpp"

namespace qkern::pipeline {

struct EstimatorConfig {
    kernels::Estimator kind = kernels::Estimator::Exact;
    int shadow_count = 4000;          // T, shadows estimator
    long long shots_per_element = 100; // m, shot-noisy estimator
};

struct LearnerConfig {
    std::optional<double> box_c; // fixed C when set, else CV over the grid
    std::vector<double> cv_grid;
    int folds = 10;
    double margin = 1.0;
    double delta = 0.05;
};

struct SweepConfig {
    std::vector<double> bandwidths;
    std::vector<int> p_list;
    std::vector<int> n_list;
    int seeds = 5;
};

struct ExperimentConfig {
    sim::EmbeddingConfig embedding;
    std::optional<pauli::KernelSpec> kernel;
    EstimatorConfig estimator;
    LearnerConfig learner;
    SweepConfig sweep;
    std::string dataset_path;
    std::uint64_t seed = 0;

    std::uint64_t hash() const;
    static ExperimentConfig from_json_string(const std::string& text);
    static ExperimentConfig load(const std::string& path);
};

/// The default cross-validation grid for the regularization parameter.
std::vector<double> default_c_grid();

/// Atomic write: temp file in the target directory, then rename.
void write_file_atomic(const std::string& path, const std::string& content);

/// Writes a sibling `<out>.manifest.json` recording config hash, seed and
/// artifact version so a run can be reproduced byte-for-byte.
void write_manifest(const std::string& out_path, const ExperimentConfig& cfg,
                    const std::vector<std::string>& products);

/// Gram matrix of the train split under the configured kernel/estimator.
/// Writes CSV to `out` (and the train labels to `labels_out` if nonempty).
void run_gram(const ExperimentConfig& cfg, const std::string& out,
              const std::string& labels_out = "");

/// Bandwidth sweep: for every bandwidth, CV-optimized accuracy of the
/// p-column subsampled weight-2 kernel for each p, plus the full-fidelity
/// kernel (reported with p = 4^n). CSV "bandwidth,p,mean_accuracy,stderr".
void run_sweep_bandwidth(const ExperimentConfig& cfg, const std::string& out);

/// Risk-vs-p table at fixed C: subsamples N train points (stratified) and p
/// feature columns per seed. CSV "p,N,seed,train_risk,test_risk,gap".
void run_gen_gap(const ExperimentConfig& cfg, const std::string& out);

/// Measurement-budget curves. CSV "N,M_gfqk,M_lpqk_<H>..." for N = 1..n_max.
void run_shots(int n, const std::vector<int>& h_list, double eps, int n_max,
               const std::string& out);

/// Empirical Mercer decomposition of the train split: eigenvalue JSON at
/// `out`, basis matrix at `out + ".basis"`, diagnostics in the manifest.
void run_mercer(const ExperimentConfig& cfg, const std::string& out);

} // namespace qkern::pipeline
