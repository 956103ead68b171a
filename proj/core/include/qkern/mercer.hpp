#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "qkern/statevector.hpp"

namespace qkern::mercer {

/// Hard cap: the feature operator is a dense 4^n x 4^n matrix.
constexpr int kMaxQubits = 6;

/// Eigendecomposition of the empirical data-covariance feature operator.
/// Column i of `basis_coeffs` expands the i-th basis operator over the
/// normalized Pauli strings indexed in base-4 order (I,X,Y,Z digits, qubit 0
/// most significant). Eigenvalues descend; ties are canonicalized by making a
/// vector's first nonzero coefficient positive.
struct MercerDecomposition {
    int n = 0;
    Eigen::VectorXd eigenvalues;  // 4^n, descending, >= -1e-12
    Eigen::MatrixXd basis_coeffs; // 4^n x 4^n orthogonal
    std::uint64_t dataset_hash = 0;

    static constexpr double kModeTolerance = 1e-10;

    std::string eigenvalues_to_json_string() const;
    /// Binary layout: magic "MERCERV1", u32 n, u32 reserved, then
    /// little-endian f64 column-major basis_coeffs.
    void write_basis(const std::string& path) const;
    static Eigen::MatrixXd read_basis(const std::string& path, int* n_out = nullptr);
};

/// Expectations of all 4^n normalized Paulis for one embedded point
/// (the generalized Bloch vector).
Eigen::VectorXd pauli_feature_vector(const Eigen::VectorXd& x,
                                     const sim::EmbeddingConfig& cfg);

/// G_ij = (1/N) sum_x tr(rho(x) Pbar_i) tr(rho(x) Pbar_j): the empirical
/// covariance operator in the normalized Pauli basis. PSD; trace equals the
/// mean state purity (1 for pure embeddings).
Eigen::MatrixXd feature_gram_operator(const Eigen::MatrixXd& points,
                                      const sim::EmbeddingConfig& cfg);

MercerDecomposition diagonalize(const Eigen::MatrixXd& g,
                                std::uint64_t dataset_hash = 0);

/// phi_i(x) = tr(rho(x) A_i) / sqrt(gamma_i). Modes with gamma at or below
/// the tolerance are rejected (eigenvector not meaningful).
double eigenfunction(const MercerDecomposition& md, int mode,
                     const Eigen::VectorXd& x, const sim::EmbeddingConfig& cfg);

/// k(x,x') = sum_i 2^n w_i tr(rho(x) A_i) tr(rho(x') A_i) over the Mercer
/// basis; uniform w = 1/2^n reproduces the full-state fidelity kernel.
double mercer_gtqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& mode_weights,
                   const MercerDecomposition& md,
                   const sim::EmbeddingConfig& cfg);

/// Max |(1/N) sum_x tr(rho A_i) tr(rho A_j)| over distinct live modes.
/// Vanishes (<= 1e-8) on the dataset the decomposition was built from.
double lego_rkhs_orthogonality(const MercerDecomposition& md,
                               const Eigen::MatrixXd& points,
                               const sim::EmbeddingConfig& cfg,
                               bool enforce_hash = true);

} // namespace qkern::mercer
