#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qkern/kernels.hpp"
#include "qkern/statevector.hpp"

namespace qkern::shadows {

/// One random-Pauli measurement record: a basis symbol per qubit (never the
/// identity) and the observed computational-basis bits after rotation.
struct Snapshot {
    std::vector<std::uint8_t> basis;   // 0,1,2 = X,Y,Z per qubit
    std::vector<std::uint8_t> outcome; // one bit per qubit
};

struct ShadowSet {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<Snapshot> snapshots;

    std::size_t size() const { return snapshots.size(); }

    /// Compact binary record: little-endian u32 n, u32 T, then per snapshot
    /// n basis bytes and ceil(n/8) outcome bytes (bit q at byte q/8, bit q%8).
    std::vector<std::uint8_t> to_bytes() const;
    static ShadowSet from_bytes(const std::vector<std::uint8_t>& bytes);

    std::string to_json_string() const;
};

/// Draws T random-Pauli snapshots from the exact Born distribution of
/// `state`. Deterministic given the seed.
ShadowSet collect_shadows(const sim::StateVector& state, int t, std::uint64_t seed);

/// Default median-of-means group count for T snapshots.
int default_groups(int t);

/// Median-of-means estimate of tr(rho P). Each matching snapshot contributes
/// prod_{q in supp(P)} 3 * (+-1); mismatched snapshots contribute 0, so the
/// per-snapshot value is unbiased and bounded by 3^weight(P).
double estimate_pauli(const ShadowSet& shadows, const pauli::PauliString& p,
                      int groups);

/// Gram matrix from per-point shadow sets: one collection per datum, shared
/// by every Pauli in the spec support. Estimator tag "shadows".
kernels::GramMatrix shadow_gram(const Eigen::MatrixXd& points,
                                const pauli::KernelSpec& spec,
                                const sim::EmbeddingConfig& cfg, int t,
                                std::uint64_t seed, int max_weight = 4);

/// Inversion-test simulation: each entry is Binomial(m, k_exact)/m where
/// k_exact is the all-zeros outcome probability. Estimator tag "shot-noisy".
kernels::GramMatrix noisy_gfqk_gram(const Eigen::MatrixXd& points,
                                    const sim::EmbeddingConfig& cfg,
                                    long long shots_per_element,
                                    std::uint64_t seed);

enum class BudgetMode { Asymptotic, Calibrated };

struct BudgetQuery {
    int n = 1;
    long long train_size = 1; // N
    int h = 1;
    double eps = 1.0;
    long long shots_per_element = 1; // informational (GFQK side)
    BudgetMode mode = BudgetMode::Asymptotic;
    double calib_gfqk = 1.0; // multipliers in Calibrated mode
    double calib_lpqk = 1.0;
    double log_base = 0.0; // 0 = natural log
};

struct BudgetResult {
    long long m_gfqk = 0;
    long long m_lpqk = 0;
    long long crossover_n = 0; // smallest N with M_lpqk < M_gfqk
};

/// Measurement budget model: M_gfqk = N(N+1)/2 * ceil(1/eps^2) over all
/// symmetric pairs, M_lpqk = N * ceil(log(d_H) 3^H / eps^2) with classical
/// shadows reused across the d_H observables.
BudgetResult shot_budget(const BudgetQuery& q);

} // namespace qkern::shadows
