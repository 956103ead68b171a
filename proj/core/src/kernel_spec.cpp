#include "qkern/kernel_spec.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "qkern/hash.hpp"

namespace qkern::pauli {

using nlohmann::json;

namespace {

std::vector<int> checked_subset(int n, const std::vector<int>& subset) {
    if (subset.empty()) throw input_error("KernelSpec: subsystem must be nonempty");
    std::set<int> seen;
    for (int q : subset) {
        if (q < 0 || q >= n) throw input_error("KernelSpec: subsystem index out of range");
        if (!seen.insert(q).second) throw input_error("KernelSpec: duplicate subsystem index");
    }
    return {seen.begin(), seen.end()};
}

} // namespace

KernelSpec::KernelSpec(int n, PresetKind preset, std::map<PauliString, double> weights)
    : n_(n), preset_(preset), weights_(std::move(weights)) {
    validate();
}

void KernelSpec::validate() const {
    if (n_ < 1) throw input_error("KernelSpec: qubit count must be >= 1");
    if (weights_.empty()) throw input_error("KernelSpec: empty weight support");
    for (const auto& [p, w] : weights_) {
        if (p.n() != n_) throw input_error("KernelSpec: Pauli string size mismatch");
        if (!(w >= 0.0)) throw input_error("KernelSpec: weights must be nonnegative");
    }
    if (enforce_normalization_) {
        if (std::abs(sum_squared_weights() - 1.0) > 1e-10) {
            throw input_error("KernelSpec: sum of squared weights != 1");
        }
    }
}

void KernelSpec::set_enforce_normalization(bool v) {
    enforce_normalization_ = v;
    validate();
}

double KernelSpec::sum_squared_weights() const {
    double s = 0.0;
    for (const auto& [p, w] : weights_) s += w * w;
    return s;
}

std::vector<PauliString> KernelSpec::support_strings() const {
    std::vector<PauliString> out;
    out.reserve(weights_.size());
    for (const auto& [p, w] : weights_) out.push_back(p);
    return out;
}

std::vector<double> KernelSpec::weight_values() const {
    std::vector<double> out;
    out.reserve(weights_.size());
    for (const auto& [p, w] : weights_) out.push_back(w);
    return out;
}

int KernelSpec::max_weight() const {
    int m = 0;
    for (const auto& [p, w] : weights_) m = std::max(m, p.weight());
    return m;
}

KernelSpec KernelSpec::gfqk(int n) {
    if (n > kDenseLimit) {
        throw capacity_error("gfqk preset materializes 4^n weights; n > 8 refused");
    }
    const double w = 1.0 / static_cast<double>(1ull << n);
    std::map<PauliString, double> weights;
    for (int h = 0; h <= n; ++h) {
        for (auto& p : enumerate_h_body(n, h)) weights.emplace(std::move(p), w);
    }
    KernelSpec spec(n, PresetKind::Gfqk, std::move(weights));
    return spec;
}

KernelSpec KernelSpec::s_lpqk(int n, const std::vector<int>& subset) {
    const auto sub = checked_subset(n, subset);
    const int s = static_cast<int>(sub.size());
    const double w = 1.0 / static_cast<double>(1ull << s);
    // All 4^S strings on the subsystem, embedded with identities elsewhere.
    std::map<PauliString, double> weights;
    const long long combos = 1ll << (2 * s); // 4^S
    for (long long c = 0; c < combos; ++c) {
        PauliString p(n);
        long long rem = c;
        for (int i = s - 1; i >= 0; --i) {
            p.set(sub[static_cast<std::size_t>(i)], static_cast<Axis>(rem % 4));
            rem /= 4;
        }
        weights.emplace(std::move(p), w);
    }
    KernelSpec spec(n, PresetKind::SubsetLpqk, std::move(weights));
    spec.subset_ = sub;
    return spec;
}

KernelSpec KernelSpec::S_lpqk(int n, int big_s) {
    if (big_s < 1 || big_s > n) throw input_error("S_lpqk preset: need 1 <= S <= n");
    const double denom =
        static_cast<double>(1ull << big_s) * std::sqrt(static_cast<double>(binomial_coeff(n, big_s)));
    std::map<PauliString, double> weights;
    for (int h = 0; h <= big_s; ++h) {
        const double w = static_cast<double>(degeneracy(n, big_s, h)) / denom;
        for (auto& p : enumerate_h_body(n, h)) weights.emplace(std::move(p), w);
    }
    KernelSpec spec(n, PresetKind::SizeLpqk, std::move(weights));
    spec.param_ = big_s;
    return spec;
}

KernelSpec KernelSpec::h_body(int n, int h) {
    if (h < 0 || h > n) throw input_error("h_body preset: need 0 <= H <= n");
    const double w = 1.0 / std::sqrt(static_cast<double>(h_body_count(n, h)));
    std::map<PauliString, double> weights;
    for (auto& p : enumerate_h_body(n, h)) weights.emplace(std::move(p), w);
    KernelSpec spec(n, PresetKind::HBody, std::move(weights));
    spec.param_ = h;
    return spec;
}

KernelSpec KernelSpec::custom(int n, std::map<PauliString, double> weights) {
    return KernelSpec(n, PresetKind::Custom, std::move(weights));
}

std::uint64_t KernelSpec::hash() const {
    Fnv1a h;
    h.update_pod(n_);
    h.update_pod(static_cast<int>(basis_));
    for (const auto& [p, w] : weights_) {
        h.update(p.str());
        h.update_pod(w);
    }
    return h.digest();
}

std::string preset_name(PresetKind k) {
    switch (k) {
        case PresetKind::Gfqk: return "gfqk";
        case PresetKind::SubsetLpqk: return "s-lpqk";
        case PresetKind::SizeLpqk: return "S-lpqk";
        case PresetKind::HBody: return "h-body";
        case PresetKind::Custom: return "custom";
    }
    throw input_error("invalid preset kind");
}

std::string KernelSpec::to_json_string() const {
    json j;
    j["n"] = n_;
    j["basis"] = basis_ == Basis::Pauli ? "pauli" : "mercer";
    j["preset"] = preset_name(preset_);
    j["enforce_normalization"] = enforce_normalization_;
    switch (preset_) {
        case PresetKind::SubsetLpqk: j["subset"] = subset_; break;
        case PresetKind::SizeLpqk: j["S"] = param_; break;
        case PresetKind::HBody: j["H"] = param_; break;
        case PresetKind::Custom: {
            json w = json::object();
            for (const auto& [p, v] : weights_) w[p.str()] = v;
            j["weights"] = std::move(w);
            break;
        }
        case PresetKind::Gfqk: break;
    }
    return j.dump();
}

KernelSpec KernelSpec::from_json_string(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw input_error(std::string("KernelSpec: bad JSON: ") + e.what());
    }
    if (!j.contains("n")) throw input_error("KernelSpec: missing qubit count");
    const int n = j.at("n").get<int>();
    const std::string preset = j.value("preset", "custom");
    KernelSpec spec = [&] {
        if (preset == "gfqk") return gfqk(n);
        if (preset == "s-lpqk") return s_lpqk(n, j.at("subset").get<std::vector<int>>());
        if (preset == "S-lpqk") return S_lpqk(n, j.at("S").get<int>());
        if (preset == "h-body") return h_body(n, j.at("H").get<int>());
        if (preset == "custom") {
            std::map<PauliString, double> weights;
            for (const auto& [key, value] : j.at("weights").items()) {
                weights.emplace(PauliString::from_string(key), value.get<double>());
            }
            return custom(n, std::move(weights));
        }
        throw input_error("KernelSpec: unknown preset '" + preset + "'");
    }();
    if (j.value("basis", "pauli") == "mercer") spec.basis_ = Basis::Mercer;
    if (j.value("enforce_normalization", false)) spec.set_enforce_normalization(true);
    return spec;
}

} // namespace qkern::pauli
