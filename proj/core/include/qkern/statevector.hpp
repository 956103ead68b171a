#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Dense>

#include "qkern/errors.hpp"
#include "qkern/pauli.hpp"

namespace qkern::sim {

using cd = std::complex<double>;

enum class Coupling { AllPairs, Ring };

/// Data-embedding circuit parameters. The circuit is deterministic:
/// (D(bandwidth * x) * H^n)^layers applied to |0...0>, where D carries one
/// Z phase per qubit and one ZZ phase per coupled pair.
struct EmbeddingConfig {
    int n = 1;
    double bandwidth = 1.0; // in [0, 1]
    int layers = 2;
    Coupling coupling = Coupling::AllPairs;

    static constexpr int kMaxQubits = 24; // 2^n amplitude memory guard

    void validate() const;
    std::vector<std::pair<int, int>> coupling_pairs() const;
};

/// Pure n-qubit state. Qubit 0 is the most significant bit of the amplitude
/// index; bit_of() is the only place that convention is spelled out.
class StateVector {
  public:
    explicit StateVector(int n); // |0...0>
    StateVector(int n, std::vector<cd> amplitudes);

    int num_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    const cd& operator[](std::size_t i) const { return amps_[i]; }
    cd& operator[](std::size_t i) { return amps_[i]; }
    const std::vector<cd>& amplitudes() const { return amps_; }

    double norm_sq() const;
    void normalize();

    static int bit_of(std::size_t index, int qubit, int n) {
        return static_cast<int>((index >> (n - 1 - qubit)) & 1u);
    }

  private:
    int n_;
    std::vector<cd> amps_;
};

struct DensityMatrix {
    Eigen::MatrixXcd entries;

    std::size_t dim() const { return static_cast<std::size_t>(entries.rows()); }
    double purity() const { return (entries * entries).trace().real(); }
};

/// Embeds x (length cfg.n) into a pure state via the diagonal-layer circuit.
StateVector embed(const Eigen::VectorXd& x, const EmbeddingConfig& cfg);

/// <psi| P |psi>, exact. Identity string gives exactly 1.
double pauli_expectation(const StateVector& state, const pauli::PauliString& p);

/// Partial trace onto the qubits in `keep` (nonempty, ascending not required).
DensityMatrix reduced_density_matrix(const StateVector& state,
                                     const std::vector<int>& keep);

/// |<a|b>|^2.
double overlap(const StateVector& a, const StateVector& b);

} // namespace qkern::sim
