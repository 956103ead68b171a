#include "qkern/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace qkern::sim {

void EmbeddingConfig::validate() const {
    if (n < 1) throw input_error("EmbeddingConfig: qubit count must be >= 1");
    if (n > kMaxQubits) {
        throw capacity_error("EmbeddingConfig: qubit count exceeds the 24-qubit guard");
    }
    if (!(bandwidth >= 0.0 && bandwidth <= 1.0)) {
        throw input_error("EmbeddingConfig: bandwidth must lie in [0, 1]");
    }
    if (layers < 1) throw input_error("EmbeddingConfig: layers must be >= 1");
}

std::vector<std::pair<int, int>> EmbeddingConfig::coupling_pairs() const {
    std::vector<std::pair<int, int>> pairs;
    if (coupling == Coupling::AllPairs) {
        for (int j = 0; j < n; ++j) {
            for (int k = j + 1; k < n; ++k) pairs.emplace_back(j, k);
        }
    } else {
        for (int j = 0; j + 1 < n; ++j) pairs.emplace_back(j, j + 1);
        if (n > 2) pairs.emplace_back(n - 1, 0);
    }
    return pairs;
}

StateVector::StateVector(int n) : n_(n) {
    if (n < 1) throw input_error("StateVector: qubit count must be >= 1");
    if (n > EmbeddingConfig::kMaxQubits) {
        throw capacity_error("StateVector: qubit count exceeds the 24-qubit guard");
    }
    amps_.assign(std::size_t{1} << n, cd{0.0, 0.0});
    amps_[0] = cd{1.0, 0.0};
}

StateVector::StateVector(int n, std::vector<cd> amplitudes) : n_(n) {
    if (n < 1) throw input_error("StateVector: qubit count must be >= 1");
    if (amplitudes.size() != (std::size_t{1} << n)) {
        throw input_error("StateVector: amplitude count must be 2^n");
    }
    amps_ = std::move(amplitudes);
}

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const auto& a : amps_) s += std::norm(a);
    return s;
}

void StateVector::normalize() {
    const double nrm = std::sqrt(norm_sq());
    if (nrm <= 0.0) throw data_error("StateVector: cannot normalize the zero vector");
    for (auto& a : amps_) a /= nrm;
}

namespace {

void apply_hadamard_all(StateVector& psi) {
    const int n = psi.num_qubits();
    const std::size_t dim = psi.dim();
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int q = 0; q < n; ++q) {
        const std::size_t stride = std::size_t{1} << (n - 1 - q);
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t i0 = base + off;
                const std::size_t i1 = i0 + stride;
                const cd a = psi[i0];
                const cd b = psi[i1];
                psi[i0] = (a + b) * inv_sqrt2;
                psi[i1] = (a - b) * inv_sqrt2;
            }
        }
    }
}

void apply_diagonal_phases(StateVector& psi, const Eigen::VectorXd& y,
                           const std::vector<std::pair<int, int>>& pairs) {
    const int n = psi.num_qubits();
    const std::size_t dim = psi.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        double theta = 0.0;
        for (int q = 0; q < n; ++q) {
            const double z = StateVector::bit_of(i, q, n) ? -1.0 : 1.0;
            theta += y[q] * z;
        }
        for (const auto& [j, k] : pairs) {
            const double zj = StateVector::bit_of(i, j, n) ? -1.0 : 1.0;
            const double zk = StateVector::bit_of(i, k, n) ? -1.0 : 1.0;
            theta += y[j] * y[k] * zj * zk;
        }
        psi[i] *= cd{std::cos(theta), std::sin(theta)};
    }
}

} // namespace

StateVector embed(const Eigen::VectorXd& x, const EmbeddingConfig& cfg) {
    cfg.validate();
    if (x.size() != cfg.n) {
        throw input_error("embed: feature vector length must equal the qubit count");
    }
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) throw input_error("embed: features must be finite");
    }
    const Eigen::VectorXd y = cfg.bandwidth * x;
    const auto pairs = cfg.coupling_pairs();
    StateVector psi(cfg.n);
    for (int layer = 0; layer < cfg.layers; ++layer) {
        apply_hadamard_all(psi);
        apply_diagonal_phases(psi, y, pairs);
    }
    return psi;
}

double pauli_expectation(const StateVector& state, const pauli::PauliString& p) {
    const int n = state.num_qubits();
    if (p.n() != n) throw input_error("pauli_expectation: qubit count mismatch");

    std::size_t flip_mask = 0; // X and Y flip the bit
    std::size_t sign_mask = 0; // Y and Z pick up (-1)^bit
    int y_count = 0;
    for (int q = 0; q < n; ++q) {
        const std::size_t bit = std::size_t{1} << (n - 1 - q);
        switch (p.axis(q)) {
            case pauli::Axis::I: break;
            case pauli::Axis::X: flip_mask |= bit; break;
            case pauli::Axis::Y:
                flip_mask |= bit;
                sign_mask |= bit;
                ++y_count;
                break;
            case pauli::Axis::Z: sign_mask |= bit; break;
        }
    }
    // Global factor i^(#Y): P|i> = i^#Y * (-1)^popcount(i & sign_mask) |i ^ flip>.
    static const cd i_pow[4] = {cd{1, 0}, cd{0, 1}, cd{-1, 0}, cd{0, -1}};
    const cd global = i_pow[y_count % 4];

    cd acc{0.0, 0.0};
    const std::size_t dim = state.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        const double sign = (std::popcount(i & sign_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(state[i ^ flip_mask]) * (sign * state[i]);
    }
    return (global * acc).real();
}

DensityMatrix reduced_density_matrix(const StateVector& state,
                                     const std::vector<int>& keep) {
    const int n = state.num_qubits();
    if (keep.empty()) throw input_error("reduced_density_matrix: empty subsystem");
    std::vector<int> kept = keep;
    std::sort(kept.begin(), kept.end());
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    if (kept.size() != keep.size()) {
        throw input_error("reduced_density_matrix: duplicate qubit index");
    }
    if (kept.front() < 0 || kept.back() >= n) {
        throw input_error("reduced_density_matrix: qubit index out of range");
    }
    const int s = static_cast<int>(kept.size());
    std::vector<int> env;
    {
        std::size_t k = 0;
        for (int q = 0; q < n; ++q) {
            if (k < kept.size() && kept[k] == q) {
                ++k;
            } else {
                env.push_back(q);
            }
        }
    }

    const std::size_t sub_dim = std::size_t{1} << s;
    const std::size_t env_dim = std::size_t{1} << (n - s);
    // Full index with kept bits a and environment bits e; both sub-registers
    // keep the global "first qubit = most significant" convention.
    auto full_index = [&](std::size_t a, std::size_t e) {
        std::size_t idx = 0;
        for (int r = 0; r < s; ++r) {
            const std::size_t bit = (a >> (s - 1 - r)) & 1u;
            idx |= bit << (n - 1 - kept[static_cast<std::size_t>(r)]);
        }
        for (int r = 0; r < n - s; ++r) {
            const std::size_t bit = (e >> (n - s - 1 - r)) & 1u;
            idx |= bit << (n - 1 - env[static_cast<std::size_t>(r)]);
        }
        return idx;
    };

    DensityMatrix rho;
    rho.entries = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(sub_dim),
                                         static_cast<Eigen::Index>(sub_dim));
    std::vector<cd> col(sub_dim);
    for (std::size_t e = 0; e < env_dim; ++e) {
        for (std::size_t a = 0; a < sub_dim; ++a) col[a] = state[full_index(a, e)];
        for (std::size_t a = 0; a < sub_dim; ++a) {
            for (std::size_t b = 0; b < sub_dim; ++b) {
                rho.entries(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) +=
                    col[a] * std::conj(col[b]);
            }
        }
    }
    return rho;
}

double overlap(const StateVector& a, const StateVector& b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw input_error("overlap: qubit count mismatch");
    }
    cd inner{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) inner += std::conj(a[i]) * b[i];
    return std::norm(inner);
}

} // namespace qkern::sim
