#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qkern/errors.hpp"

namespace qkern::pauli {

enum class Axis : std::uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

char axis_char(Axis a);
Axis axis_from_char(char c);

/// An n-qubit Pauli observable label, one symbol per qubit. Qubit 0 is the
/// leftmost symbol of the string form ("XIZY" acts with X on qubit 0).
class PauliString {
  public:
    explicit PauliString(int n);
    PauliString(int n, std::vector<Axis> symbols);
    static PauliString from_string(std::string_view s);

    int n() const { return n_; }
    Axis axis(int qubit) const { return symbols_[static_cast<std::size_t>(qubit)]; }
    void set(int qubit, Axis a) { symbols_[static_cast<std::size_t>(qubit)] = a; }

    /// Non-identity positions, ascending.
    std::vector<int> support() const;
    int weight() const;
    bool is_identity() const { return weight() == 0; }

    std::string str() const;

    /// Orders by support (lexicographic over ascending index tuples), then by
    /// symbols. Pinned so weight maps, feature columns and golden files are
    /// reproducible across runs.
    std::strong_ordering operator<=>(const PauliString& other) const;
    bool operator==(const PauliString& other) const = default;

  private:
    int n_;
    std::vector<Axis> symbols_;
};

/// C(n, k) as an exact 64-bit integer.
long long binomial_coeff(int n, int k);

/// d_H = C(n, H) * 3^H, the number of Pauli strings of weight exactly H.
long long h_body_count(int n, int h);

/// D^(S,H) = C(n-H, S-H): how many size-S qubit subsets contain a fixed
/// size-H subset.
long long degeneracy(int n, int big_s, int h);

/// All weight-H Pauli strings on n qubits, in the pinned deterministic order
/// (supports lexicographic, then symbols with X < Y < Z).
std::vector<PauliString> enumerate_h_body(int n, int h);

} // namespace qkern::pauli
