#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkern/pauli.hpp"

namespace qkern::pauli {

enum class Basis { Pauli, Mercer };

/// Which recovery preset produced a weight map (Custom for hand-built maps).
enum class PresetKind { Gfqk, SubsetLpqk, SizeLpqk, HBody, Custom };

/// A basis choice plus a sparse nonnegative weight per Pauli string; picking
/// weights selects one member of the trace-induced kernel family.
///
/// Storage is sparse by design: the full 4^n map is only materialized for
/// n <= 8 (the gfqk preset refuses larger n).
class KernelSpec {
  public:
    static constexpr int kDenseLimit = 8;

    /// Uniform weights 1/2^n on all 4^n strings.
    static KernelSpec gfqk(int n);
    /// Weights 1/2^S on the 4^S strings supported inside `subset`.
    static KernelSpec s_lpqk(int n, const std::vector<int>& subset);
    /// Weights D^(S,H)/(2^S sqrt(C(n,S))) on every string of weight H <= S.
    static KernelSpec S_lpqk(int n, int big_s);
    /// Weights 1/sqrt(d_H) on the d_H strings of weight exactly H.
    static KernelSpec h_body(int n, int h);
    static KernelSpec custom(int n, std::map<PauliString, double> weights);

    int n() const { return n_; }
    Basis basis() const { return basis_; }
    PresetKind preset() const { return preset_; }
    bool enforce_normalization() const { return enforce_normalization_; }
    void set_enforce_normalization(bool v);

    /// Number of nonzero weights (p).
    std::size_t support_size() const { return weights_.size(); }
    const std::map<PauliString, double>& weights() const { return weights_; }
    double sum_squared_weights() const;

    /// Support as parallel vectors in the pinned Pauli order; this is the
    /// column layout of every FeatureTable built from this spec.
    std::vector<PauliString> support_strings() const;
    std::vector<double> weight_values() const;

    int max_weight() const; // largest Pauli weight in the support

    std::uint64_t hash() const;

    std::string to_json_string() const;
    static KernelSpec from_json_string(const std::string& text);

  private:
    KernelSpec(int n, PresetKind preset, std::map<PauliString, double> weights);
    void validate() const;

    int n_ = 1;
    Basis basis_ = Basis::Pauli;
    PresetKind preset_ = PresetKind::Custom;
    bool enforce_normalization_ = false;
    std::map<PauliString, double> weights_;
    // Preset parameters, kept for serialization round trips.
    std::vector<int> subset_;
    int param_ = -1;
};

std::string preset_name(PresetKind k);

} // namespace qkern::pauli
