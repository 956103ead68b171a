#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qkern/kernels.hpp"

namespace qkern::learner {

/// Soft-margin SVM dual solution on a precomputed Gram matrix.
struct SvmModel {
    Eigen::VectorXd alpha;
    double bias = 0.0;
    double box_c = 0.0;
    std::vector<int> support_indices; // alpha_i > 0
    Eigen::VectorXd labels;           // training labels, +-1
    std::uint64_t gram_hash = 0;
    bool psd_clipped = false; // negative eigenvalues zeroed before training
    double dual_objective = 0.0;

    std::string to_json_string() const;
};

struct SvmOptions {
    double kkt_tol = 1e-7;
    long long max_iterations = 0; // 0 = automatic
    bool clip_shot_noisy = true;  // eigenvalue-clip shot-noisy Grams to PSD
};

/// Maximal-violating-pair SMO on max sum(a) - 1/2 a^T Q a, 0 <= a <= C,
/// y^T a = 0. Exact Grams must already be PSD (else data_error); shot-noisy
/// Grams are clipped first when the option is on.
SvmModel svm_train(const kernels::GramMatrix& k, const Eigen::VectorXd& y,
                   double box_c, const SvmOptions& opts = {});

struct Prediction {
    Eigen::VectorXd scores;
    Eigen::VectorXd labels; // sign(score), sign(0) = +1
};

/// scores = K_cross * (alpha .* y) + b for a test x train kernel block.
Prediction predict(const SvmModel& model, const Eigen::MatrixXd& k_cross);

/// Mean piecewise-linear margin loss: 1 below 0, linear ramp on [0, margin],
/// 0 above the margin.
double margin_loss(const Eigen::VectorXd& scores, const Eigen::VectorXd& y,
                   double margin);

struct BoundInputs {
    int p = 1;          // nonzero-weight count
    int train_size = 1; // N
    double margin = 1.0;
    double r_squared = 1.0;  // sup of the per-Lego kernel diagonal
    double delta = 0.05;     // confidence level
    Eigen::VectorXd traces;  // (Tr K_1, ..., Tr K_p)
    double eta0 = 23.0 / 22.0;
};

struct BoundResult {
    double empirical_complexity = 0.0; // sqrt(2 eta0 ||u||_2) / N
    double generalization_gap = 0.0;   // 2 p^(1/4)/margin * sqrt(2 eta0 R^2/N)
                                       //   + 3 sqrt(log(2/delta) / (2N))
};

BoundResult rademacher_bound(const BoundInputs& in);

struct CrossValidation {
    double best_c = 0.0;
    std::vector<std::pair<double, double>> accuracy_by_c; // (C, mean accuracy)
};

/// Stratified k-fold CV over a C grid; ties break toward the smaller C.
CrossValidation cross_validate(const kernels::GramMatrix& k,
                               const Eigen::VectorXd& y,
                               const std::vector<double>& c_grid, int folds,
                               std::uint64_t seed, const SvmOptions& opts = {});

struct GapRow {
    int p = 0;
    int train_size = 0;
    std::uint64_t seed = 0;
    double train_risk = 0.0;
    double test_risk = 0.0;
    double gap = 0.0;
};

/// For each (p, seed): draw p feature columns without replacement, build the
/// 1/sqrt(p)-weighted kernel, train at fixed C, record train/test risk
/// (risk = 1 - accuracy) and their gap.
std::vector<GapRow> generalization_gap_experiment(
    const Eigen::MatrixXd& train_features, const Eigen::MatrixXd& test_features,
    const Eigen::VectorXd& y_train, const Eigen::VectorXd& y_test, double box_c,
    const std::vector<int>& p_list, const std::vector<std::uint64_t>& seeds,
    const SvmOptions& opts = {});

std::string gap_rows_to_csv(const std::vector<GapRow>& rows);

} // namespace qkern::learner
