#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "qkern/kernel_spec.hpp"
#include "qkern/statevector.hpp"

namespace qkern::kernels {

enum class Estimator { Exact, Shadows, ShotNoisy };

std::string estimator_name(Estimator e);
Estimator estimator_from_name(const std::string& s);

struct GramMeta {
    std::uint64_t kernel_hash = 0;
    std::uint64_t dataset_hash = 0;
    Estimator estimator = Estimator::Exact;
    std::uint64_t seed = 0;
};

/// N x N symmetric matrix of pairwise kernel values plus provenance.
struct GramMatrix {
    Eigen::MatrixXd entries;
    GramMeta meta;

    Eigen::Index size() const { return entries.rows(); }
};

/// Pauli expectation values tr(rho(x_r) P_c): one row per data point, one
/// column per Pauli string. Column order is the pinned spec support order.
struct FeatureTable {
    Eigen::MatrixXd values; // N x p
    std::vector<pauli::PauliString> columns;

    Eigen::Index points() const { return values.rows(); }
    Eigen::Index paulis() const { return values.cols(); }
};

/// Provenance hash of a dataset (row-major double bytes).
std::uint64_t dataset_hash(const Eigen::MatrixXd& points);

/// tr(rho(x) Pbar) * tr(rho(x') Pbar) with Pbar = P / sqrt(2^n).
double lego_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const pauli::PauliString& p, const sim::EmbeddingConfig& cfg);

/// Weighted sum over the spec support of tr(rho(x) P_i) tr(rho(x') P_i)
/// with raw (unnormalized) Paulis. Every named kernel below is a special
/// weight assignment of this one.
double gtqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
            const pauli::KernelSpec& spec, const sim::EmbeddingConfig& cfg);

/// Full-state fidelity tr(rho(x) rho(x')), evaluated as a direct overlap.
double gfqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
            const sim::EmbeddingConfig& cfg);

/// Reduced-state fidelity on one fixed qubit subset.
double s_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              const std::vector<int>& subset, const sim::EmbeddingConfig& cfg);

/// Sum of s_lpqk over all C(n,S) subsets of size S, scaled by 1/sqrt(C(n,S)).
double S_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int big_s,
              const sim::EmbeddingConfig& cfg);

/// Sum over all d_H weight-H Paulis, scaled by 1/sqrt(d_H).
double h_body_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int h,
                   const sim::EmbeddingConfig& cfg);

/// Closed-form inversion: recovers k_H from the ladder k_S, S = 0..H
/// (k_S values normalized as returned by S_lpqk; k_0 = 1).
double h_from_s(std::span<const double> k_s_values, int n, int h);

/// One statevector simulation per point, one expectation per column.
/// Row fill parallelizes over points; the result is worker-count invariant.
FeatureTable feature_table(const Eigen::MatrixXd& points,
                           const std::vector<pauli::PauliString>& paulis,
                           const sim::EmbeddingConfig& cfg);

using KernelFn =
    std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>;

/// Pairwise Gram over `points` (rows). Diagonal is computed, not assumed.
GramMatrix gram(const Eigen::MatrixXd& points, const KernelFn& k, GramMeta meta);

/// Feature-first exact Gram for a weight spec: fills the FeatureTable once
/// (O(N p) simulations), then forms weighted column inner products.
GramMatrix exact_gram(const Eigen::MatrixXd& points,
                      const pauli::KernelSpec& spec,
                      const sim::EmbeddingConfig& cfg);

/// Exact GFQK Gram via direct overlaps.
GramMatrix gfqk_gram(const Eigen::MatrixXd& points,
                     const sim::EmbeddingConfig& cfg);

/// Weighted column inner products of an existing (possibly estimated) table.
Eigen::MatrixXd gram_from_features(const Eigen::MatrixXd& features,
                                   const Eigen::VectorXd& weights);

/// Double-centering: Kc = K - 1K/N - K1/N + 1K1/N^2. Row sums of the result
/// vanish; PSD is preserved up to round-off.
GramMatrix center_gram(const GramMatrix& k);

/// Smallest/largest eigenvalue of a symmetric matrix (helper for PSD checks).
std::pair<double, double> symmetric_eig_range(const Eigen::MatrixXd& m);

} // namespace qkern::kernels
