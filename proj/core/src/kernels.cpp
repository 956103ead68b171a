#include "qkern/kernels.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "qkern/hash.hpp"
#include "qkern/parallel.hpp"

namespace qkern::kernels {

std::string estimator_name(Estimator e) {
    switch (e) {
        case Estimator::Exact: return "exact";
        case Estimator::Shadows: return "shadows";
        case Estimator::ShotNoisy: return "shot-noisy";
    }
    throw input_error("invalid estimator tag");
}

Estimator estimator_from_name(const std::string& s) {
    if (s == "exact") return Estimator::Exact;
    if (s == "shadows") return Estimator::Shadows;
    if (s == "shot-noisy") return Estimator::ShotNoisy;
    throw input_error("unknown estimator tag '" + s + "'");
}

std::uint64_t dataset_hash(const Eigen::MatrixXd& points) {
    Fnv1a h;
    h.update_pod(points.rows());
    h.update_pod(points.cols());
    for (Eigen::Index r = 0; r < points.rows(); ++r) {
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            h.update_pod(points(r, c));
        }
    }
    return h.digest();
}

double lego_kernel(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const pauli::PauliString& p, const sim::EmbeddingConfig& cfg) {
    const double norm = 1.0 / static_cast<double>(std::size_t{1} << cfg.n); // 1/2^n
    const double ex = sim::pauli_expectation(sim::embed(x, cfg), p);
    const double ey = sim::pauli_expectation(sim::embed(y, cfg), p);
    return norm * ex * ey;
}

double gtqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
            const pauli::KernelSpec& spec, const sim::EmbeddingConfig& cfg) {
    if (spec.n() != cfg.n) throw input_error("gtqk: spec/embedding qubit mismatch");
    const auto sx = sim::embed(x, cfg);
    const auto sy = sim::embed(y, cfg);
    double acc = 0.0;
    for (const auto& [p, w] : spec.weights()) {
        acc += w * sim::pauli_expectation(sx, p) * sim::pauli_expectation(sy, p);
    }
    return acc;
}

double gfqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
            const sim::EmbeddingConfig& cfg) {
    return sim::overlap(sim::embed(x, cfg), sim::embed(y, cfg));
}

double s_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
              const std::vector<int>& subset, const sim::EmbeddingConfig& cfg) {
    const auto rx = sim::reduced_density_matrix(sim::embed(x, cfg), subset);
    const auto ry = sim::reduced_density_matrix(sim::embed(y, cfg), subset);
    return (rx.entries * ry.entries).trace().real();
}

double S_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int big_s,
              const sim::EmbeddingConfig& cfg) {
    if (big_s < 1 || big_s > cfg.n) throw input_error("S_lpqk: need 1 <= S <= n");
    const auto sx = sim::embed(x, cfg);
    const auto sy = sim::embed(y, cfg);
    // Sum over all C(n,S) subsets via an index odometer.
    std::vector<int> subset(static_cast<std::size_t>(big_s));
    for (int i = 0; i < big_s; ++i) subset[static_cast<std::size_t>(i)] = i;
    double acc = 0.0;
    long long count = 0;
    for (;;) {
        const auto rx = sim::reduced_density_matrix(sx, subset);
        const auto ry = sim::reduced_density_matrix(sy, subset);
        acc += (rx.entries * ry.entries).trace().real();
        ++count;
        int i = big_s - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == cfg.n - big_s + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < big_s; ++j) {
            subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return acc / std::sqrt(static_cast<double>(count));
}

double h_body_lpqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int h,
                   const sim::EmbeddingConfig& cfg) {
    if (h < 0 || h > cfg.n) throw input_error("h_body_lpqk: need 0 <= H <= n");
    const auto sx = sim::embed(x, cfg);
    const auto sy = sim::embed(y, cfg);
    double acc = 0.0;
    for (const auto& p : pauli::enumerate_h_body(cfg.n, h)) {
        acc += sim::pauli_expectation(sx, p) * sim::pauli_expectation(sy, p);
    }
    return acc / std::sqrt(static_cast<double>(pauli::h_body_count(cfg.n, h)));
}

double h_from_s(std::span<const double> k_s_values, int n, int h) {
    if (h < 0 || h > n) throw input_error("h_from_s: need 0 <= H <= n");
    if (k_s_values.size() < static_cast<std::size_t>(h) + 1) {
        throw input_error("h_from_s: need k_S for every S = 0..H");
    }
    double acc = 0.0;
    for (int s = 0; s <= h; ++s) {
        const double sign = ((h - s) % 2 == 0) ? 1.0 : -1.0;
        const double unnorm_scale =
            static_cast<double>(1ull << s) *
            std::sqrt(static_cast<double>(pauli::binomial_coeff(n, s)));
        acc += sign * static_cast<double>(pauli::binomial_coeff(n - s, h - s)) *
               unnorm_scale * k_s_values[static_cast<std::size_t>(s)];
    }
    return acc / std::sqrt(static_cast<double>(pauli::h_body_count(n, h)));
}

FeatureTable feature_table(const Eigen::MatrixXd& points,
                           const std::vector<pauli::PauliString>& paulis,
                           const sim::EmbeddingConfig& cfg) {
    if (points.rows() == 0) throw input_error("feature_table: empty dataset");
    if (points.cols() != cfg.n) {
        throw input_error("feature_table: feature dimension must equal qubit count");
    }
    FeatureTable table;
    table.columns = paulis;
    table.values.resize(points.rows(), static_cast<Eigen::Index>(paulis.size()));
    parallel_for(0, static_cast<std::size_t>(points.rows()), [&](std::size_t r) {
        const auto row = static_cast<Eigen::Index>(r);
        const auto psi = sim::embed(points.row(row).transpose(), cfg);
        for (std::size_t c = 0; c < paulis.size(); ++c) {
            table.values(row, static_cast<Eigen::Index>(c)) =
                sim::pauli_expectation(psi, paulis[c]);
        }
    });
    return table;
}

GramMatrix gram(const Eigen::MatrixXd& points, const KernelFn& k, GramMeta meta) {
    const Eigen::Index n = points.rows();
    if (n == 0) throw input_error("gram: empty dataset");
    GramMatrix g;
    g.meta = meta;
    g.meta.dataset_hash = dataset_hash(points);
    g.entries.resize(n, n);
    // One task per row of the upper triangle; disjoint output slots.
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t ri) {
        const auto i = static_cast<Eigen::Index>(ri);
        for (Eigen::Index j = i; j < n; ++j) {
            g.entries(i, j) = k(points.row(i).transpose(), points.row(j).transpose());
        }
    });
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) g.entries(i, j) = g.entries(j, i);
    }
    return g;
}

Eigen::MatrixXd gram_from_features(const Eigen::MatrixXd& features,
                                   const Eigen::VectorXd& weights) {
    if (features.cols() != weights.size()) {
        throw input_error("gram_from_features: column/weight count mismatch");
    }
    const Eigen::MatrixXd scaled =
        features * weights.cwiseSqrt().asDiagonal(); // K = F W F^T, W >= 0
    Eigen::MatrixXd k = scaled * scaled.transpose();
    // Symmetrize exactly against round-off asymmetry in the BLAS path.
    for (Eigen::Index i = 0; i < k.rows(); ++i) {
        for (Eigen::Index j = 0; j < i; ++j) k(i, j) = k(j, i);
    }
    return k;
}

GramMatrix exact_gram(const Eigen::MatrixXd& points,
                      const pauli::KernelSpec& spec,
                      const sim::EmbeddingConfig& cfg) {
    if (spec.n() != cfg.n) throw input_error("exact_gram: spec/embedding qubit mismatch");
    const auto table = feature_table(points, spec.support_strings(), cfg);
    const auto wv = spec.weight_values();
    const Eigen::VectorXd weights =
        Eigen::Map<const Eigen::VectorXd>(wv.data(), static_cast<Eigen::Index>(wv.size()));
    GramMatrix g;
    g.entries = gram_from_features(table.values, weights);
    g.meta.kernel_hash = spec.hash();
    g.meta.dataset_hash = dataset_hash(points);
    g.meta.estimator = Estimator::Exact;
    return g;
}

GramMatrix gfqk_gram(const Eigen::MatrixXd& points, const sim::EmbeddingConfig& cfg) {
    if (points.rows() == 0) throw input_error("gfqk_gram: empty dataset");
    if (points.cols() != cfg.n) {
        throw input_error("gfqk_gram: feature dimension must equal qubit count");
    }
    const Eigen::Index n = points.rows();
    std::vector<sim::StateVector> states;
    states.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        states.push_back(sim::embed(points.row(i).transpose(), cfg));
    }
    GramMatrix g;
    g.entries.resize(n, n);
    parallel_for(0, static_cast<std::size_t>(n), [&](std::size_t ri) {
        const auto i = static_cast<Eigen::Index>(ri);
        for (Eigen::Index j = i; j < n; ++j) {
            g.entries(i, j) = sim::overlap(states[static_cast<std::size_t>(i)],
                                           states[static_cast<std::size_t>(j)]);
        }
    });
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) g.entries(i, j) = g.entries(j, i);
    }
    Fnv1a h;
    h.update("gfqk-direct");
    h.update_pod(cfg.n);
    g.meta.kernel_hash = h.digest();
    g.meta.dataset_hash = dataset_hash(points);
    g.meta.estimator = Estimator::Exact;
    return g;
}

GramMatrix center_gram(const GramMatrix& k) {
    const Eigen::Index n = k.entries.rows();
    const Eigen::VectorXd row_mean = k.entries.rowwise().mean();
    const double total_mean = k.entries.mean();
    GramMatrix out;
    out.meta = k.meta;
    out.entries = k.entries;
    out.entries.colwise() -= row_mean;
    out.entries.rowwise() -= row_mean.transpose();
    out.entries.array() += total_mean;
    // Exact symmetry after the rank-one updates.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) out.entries(i, j) = out.entries(j, i);
    }
    return out;
}

std::pair<double, double> symmetric_eig_range(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    return {ev.minCoeff(), ev.maxCoeff()};
}

} // namespace qkern::kernels
