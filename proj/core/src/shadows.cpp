#include "qkern/shadows.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qkern/hash.hpp"
#include "qkern/parallel.hpp"
#include "qkern/rng.hpp"

namespace qkern::shadows {

using sim::cd;

namespace {

void apply_hadamard(std::vector<cd>& amps, int q, int n) {
    const std::size_t stride = std::size_t{1} << (n - 1 - q);
    const std::size_t dim = amps.size();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t base = 0; base < dim; base += 2 * stride) {
        for (std::size_t off = 0; off < stride; ++off) {
            const std::size_t i0 = base + off;
            const std::size_t i1 = i0 + stride;
            const cd a = amps[i0];
            const cd b = amps[i1];
            amps[i0] = (a + b) * inv_sqrt2;
            amps[i1] = (a - b) * inv_sqrt2;
        }
    }
}

void apply_s_dagger(std::vector<cd>& amps, int q, int n) {
    const std::size_t bit = std::size_t{1} << (n - 1 - q);
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (i & bit) amps[i] *= cd{0.0, -1.0};
    }
}

// Rotates the measured-axis eigenstates onto the computational basis:
// X -> H, Y -> H * S^dagger, Z -> identity. Outcome bit 0 then corresponds
// to the +1 eigenvalue of the measured Pauli.
void rotate_to_basis(std::vector<cd>& amps, const std::vector<std::uint8_t>& basis, int n) {
    for (int q = 0; q < n; ++q) {
        switch (basis[static_cast<std::size_t>(q)]) {
            case 0: apply_hadamard(amps, q, n); break;
            case 1:
                apply_s_dagger(amps, q, n);
                apply_hadamard(amps, q, n);
                break;
            default: break;
        }
    }
}

std::size_t sample_index(const std::vector<cd>& amps, Rng& rng) {
    const double u = rng.uniform01();
    double acc = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        acc += std::norm(amps[i]);
        if (u < acc) return i;
    }
    return amps.size() - 1; // u landed in the round-off tail
}

} // namespace

ShadowSet collect_shadows(const sim::StateVector& state, int t, std::uint64_t seed) {
    if (t < 1) throw input_error("collect_shadows: need at least one snapshot");
    const int n = state.num_qubits();
    ShadowSet set;
    set.n = n;
    set.seed = seed;
    set.snapshots.resize(static_cast<std::size_t>(t));
    Rng rng(seed);
    std::vector<cd> work;
    for (int snap = 0; snap < t; ++snap) {
        Snapshot& s = set.snapshots[static_cast<std::size_t>(snap)];
        s.basis.resize(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            s.basis[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>(rng.below(3));
        }
        work = state.amplitudes();
        rotate_to_basis(work, s.basis, n);
        const std::size_t outcome = sample_index(work, rng);
        s.outcome.resize(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            s.outcome[static_cast<std::size_t>(q)] =
                static_cast<std::uint8_t>(sim::StateVector::bit_of(outcome, q, n));
        }
    }
    return set;
}

int default_groups(int t) { return t < 100 ? 1 : 10; }

double estimate_pauli(const ShadowSet& shadows, const pauli::PauliString& p,
                      int groups) {
    if (shadows.snapshots.empty()) throw input_error("estimate_pauli: empty shadow set");
    if (p.n() != shadows.n) throw input_error("estimate_pauli: qubit count mismatch");
    const int t = static_cast<int>(shadows.size());
    if (groups < 1 || groups > t) {
        throw input_error("estimate_pauli: need 1 <= groups <= snapshot count");
    }

    const auto support = p.support();
    auto snapshot_value = [&](const Snapshot& s) -> double {
        double v = 1.0;
        for (int q : support) {
            const auto want = static_cast<std::uint8_t>(static_cast<int>(p.axis(q)) - 1);
            if (s.basis[static_cast<std::size_t>(q)] != want) return 0.0;
            v *= s.outcome[static_cast<std::size_t>(q)] ? -3.0 : 3.0;
        }
        return v;
    };

    // Median of `groups` block means over the snapshot sequence.
    std::vector<double> means(static_cast<std::size_t>(groups), 0.0);
    const int base = t / groups;
    const int extra = t % groups;
    int cursor = 0;
    for (int g = 0; g < groups; ++g) {
        const int len = base + (g < extra ? 1 : 0);
        double sum = 0.0;
        for (int i = 0; i < len; ++i) {
            sum += snapshot_value(shadows.snapshots[static_cast<std::size_t>(cursor++)]);
        }
        means[static_cast<std::size_t>(g)] = sum / static_cast<double>(len);
    }
    std::sort(means.begin(), means.end());
    const std::size_t mid = means.size() / 2;
    if (means.size() % 2 == 1) return means[mid];
    return 0.5 * (means[mid - 1] + means[mid]);
}

kernels::GramMatrix shadow_gram(const Eigen::MatrixXd& points,
                                const pauli::KernelSpec& spec,
                                const sim::EmbeddingConfig& cfg, int t,
                                std::uint64_t seed, int max_weight) {
    if (spec.n() != cfg.n) throw input_error("shadow_gram: spec/embedding qubit mismatch");
    if (spec.max_weight() > max_weight) {
        throw input_error("shadow_gram: spec contains a Pauli heavier than the configured max");
    }
    const Eigen::Index n_points = points.rows();
    if (n_points == 0) throw input_error("shadow_gram: empty dataset");

    const auto support = spec.support_strings();
    const int groups = default_groups(t);
    Eigen::MatrixXd features(n_points, static_cast<Eigen::Index>(support.size()));
    // One shadow collection per datum; independent streams keep the result
    // invariant to the worker count.
    parallel_for(0, static_cast<std::size_t>(n_points), [&](std::size_t r) {
        const auto row = static_cast<Eigen::Index>(r);
        const auto psi = sim::embed(points.row(row).transpose(), cfg);
        const auto shadows = collect_shadows(psi, t, derive_seed(seed, r));
        for (std::size_t c = 0; c < support.size(); ++c) {
            features(row, static_cast<Eigen::Index>(c)) =
                estimate_pauli(shadows, support[c], groups);
        }
    });

    const auto wv = spec.weight_values();
    const Eigen::VectorXd weights =
        Eigen::Map<const Eigen::VectorXd>(wv.data(), static_cast<Eigen::Index>(wv.size()));
    kernels::GramMatrix g;
    g.entries = kernels::gram_from_features(features, weights);
    g.meta.kernel_hash = spec.hash();
    g.meta.dataset_hash = kernels::dataset_hash(points);
    g.meta.estimator = kernels::Estimator::Shadows;
    g.meta.seed = seed;
    return g;
}

kernels::GramMatrix noisy_gfqk_gram(const Eigen::MatrixXd& points,
                                    const sim::EmbeddingConfig& cfg,
                                    long long shots_per_element,
                                    std::uint64_t seed) {
    if (shots_per_element < 1) throw input_error("noisy_gfqk_gram: need m >= 1");
    const Eigen::Index n_points = points.rows();
    if (n_points == 0) throw input_error("noisy_gfqk_gram: empty dataset");
    if (points.cols() != cfg.n) {
        throw input_error("noisy_gfqk_gram: feature dimension must equal qubit count");
    }
    std::vector<sim::StateVector> states;
    states.reserve(static_cast<std::size_t>(n_points));
    for (Eigen::Index i = 0; i < n_points; ++i) {
        states.push_back(sim::embed(points.row(i).transpose(), cfg));
    }
    kernels::GramMatrix g;
    g.entries.resize(n_points, n_points);
    // Pair index (i,j), i <= j, with its own derived stream; diagonal entries
    // are estimated like any other.
    parallel_for(0, static_cast<std::size_t>(n_points), [&](std::size_t ri) {
        const auto i = static_cast<Eigen::Index>(ri);
        for (Eigen::Index j = i; j < n_points; ++j) {
            const double exact = sim::overlap(states[static_cast<std::size_t>(i)],
                                              states[static_cast<std::size_t>(j)]);
            const std::uint64_t pair_index =
                static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n_points) +
                static_cast<std::uint64_t>(j);
            Rng rng(derive_seed(seed, pair_index));
            g.entries(i, j) = static_cast<double>(rng.binomial(shots_per_element, exact)) /
                              static_cast<double>(shots_per_element);
        }
    });
    for (Eigen::Index i = 0; i < n_points; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) g.entries(i, j) = g.entries(j, i);
    }
    Fnv1a h;
    h.update("gfqk-inversion-test");
    h.update_pod(cfg.n);
    h.update_pod(shots_per_element);
    g.meta.kernel_hash = h.digest();
    g.meta.dataset_hash = kernels::dataset_hash(points);
    g.meta.estimator = kernels::Estimator::ShotNoisy;
    g.meta.seed = seed;
    return g;
}

BudgetResult shot_budget(const BudgetQuery& q) {
    if (q.eps <= 0.0) throw input_error("shot_budget: epsilon must be positive");
    if (q.train_size < 1) throw input_error("shot_budget: need N >= 1");
    if (q.h < 0 || q.h > q.n) throw input_error("shot_budget: need 0 <= H <= n");

    const double inv_eps2 = 1.0 / (q.eps * q.eps);
    const double d_h = static_cast<double>(pauli::h_body_count(q.n, q.h));
    const double log_dh = q.log_base > 0.0 ? std::log(d_h) / std::log(q.log_base)
                                           : std::log(d_h);
    const double pow3 = std::pow(3.0, q.h);
    double per_pair = std::ceil(inv_eps2);
    double per_point = std::ceil(log_dh * pow3 * inv_eps2);
    if (q.mode == BudgetMode::Calibrated) {
        per_pair = std::ceil(per_pair * q.calib_gfqk);
        per_point = std::ceil(per_point * q.calib_lpqk);
    }

    auto gfqk_total = [&](long long n_train) {
        return n_train * (n_train + 1) / 2 * static_cast<long long>(per_pair);
    };
    auto lpqk_total = [&](long long n_train) {
        return n_train * static_cast<long long>(per_point);
    };

    BudgetResult r;
    r.m_gfqk = gfqk_total(q.train_size);
    r.m_lpqk = lpqk_total(q.train_size);
    // M_lpqk is affine in N and M_gfqk quadratic, so the LPQK side wins just
    // above N = 2*per_point/per_pair - 1; scan from a little below that.
    long long n_scan = std::max<long long>(
        1, static_cast<long long>(2.0 * per_point / per_pair) - 2);
    while (n_scan > 1 && lpqk_total(n_scan - 1) < gfqk_total(n_scan - 1)) --n_scan;
    while (lpqk_total(n_scan) >= gfqk_total(n_scan)) ++n_scan;
    r.crossover_n = n_scan;
    return r;
}

std::vector<std::uint8_t> ShadowSet::to_bytes() const {
    std::vector<std::uint8_t> out;
    const auto put_u32 = [&out](std::uint32_t v) {
        for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
    };
    put_u32(static_cast<std::uint32_t>(n));
    put_u32(static_cast<std::uint32_t>(snapshots.size()));
    const int outcome_bytes = (n + 7) / 8;
    for (const auto& s : snapshots) {
        out.insert(out.end(), s.basis.begin(), s.basis.end());
        for (int b = 0; b < outcome_bytes; ++b) {
            std::uint8_t packed = 0;
            for (int q = 8 * b; q < std::min(8 * b + 8, n); ++q) {
                if (s.outcome[static_cast<std::size_t>(q)]) {
                    packed |= static_cast<std::uint8_t>(1u << (q % 8));
                }
            }
            out.push_back(packed);
        }
    }
    return out;
}

ShadowSet ShadowSet::from_bytes(const std::vector<std::uint8_t>& bytes) {
    std::size_t pos = 0;
    const auto get_u32 = [&bytes, &pos]() {
        if (pos + 4 > bytes.size()) throw input_error("ShadowSet: truncated header");
        std::uint32_t v = 0;
        for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(bytes[pos++]) << (8 * b);
        return v;
    };
    ShadowSet set;
    set.n = static_cast<int>(get_u32());
    if (set.n < 1) throw input_error("ShadowSet: invalid qubit count");
    const std::uint32_t t = get_u32();
    const int outcome_bytes = (set.n + 7) / 8;
    const std::size_t record = static_cast<std::size_t>(set.n + outcome_bytes);
    if (bytes.size() - pos != record * t) throw input_error("ShadowSet: truncated payload");
    set.snapshots.resize(t);
    for (auto& s : set.snapshots) {
        s.basis.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                       bytes.begin() + static_cast<std::ptrdiff_t>(pos + static_cast<std::size_t>(set.n)));
        for (auto b : s.basis) {
            if (b > 2) throw input_error("ShadowSet: invalid basis byte");
        }
        pos += static_cast<std::size_t>(set.n);
        s.outcome.resize(static_cast<std::size_t>(set.n));
        for (int q = 0; q < set.n; ++q) {
            s.outcome[static_cast<std::size_t>(q)] =
                (bytes[pos + static_cast<std::size_t>(q / 8)] >> (q % 8)) & 1u;
        }
        pos += static_cast<std::size_t>(outcome_bytes);
    }
    return set;
}

std::string ShadowSet::to_json_string() const {
    nlohmann::json j;
    j["n"] = n;
    j["T"] = snapshots.size();
    j["seed"] = seed;
    auto arr = nlohmann::json::array();
    static const char* axis = "XYZ";
    for (const auto& s : snapshots) {
        std::string basis_str, outcome_str;
        for (int q = 0; q < n; ++q) {
            basis_str += axis[s.basis[static_cast<std::size_t>(q)]];
            outcome_str += s.outcome[static_cast<std::size_t>(q)] ? '1' : '0';
        }
        arr.push_back({{"basis", basis_str}, {"outcome", outcome_str}});
    }
    j["snapshots"] = std::move(arr);
    return j.dump();
}

} // namespace qkern::shadows
