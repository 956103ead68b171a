#include "qkern/pauli.hpp"

#include <algorithm>

namespace qkern::pauli {

char axis_char(Axis a) {
    switch (a) {
        case Axis::I: return 'I';
        case Axis::X: return 'X';
        case Axis::Y: return 'Y';
        case Axis::Z: return 'Z';
    }
    throw input_error("invalid Pauli axis");
}

Axis axis_from_char(char c) {
    switch (c) {
        case 'I': return Axis::I;
        case 'X': return Axis::X;
        case 'Y': return Axis::Y;
        case 'Z': return Axis::Z;
        default: throw input_error(std::string("invalid Pauli symbol '") + c + "'");
    }
}

PauliString::PauliString(int n) : n_(n), symbols_(static_cast<std::size_t>(n), static_cast<std::uint8_t>(0)) {
    if (n < 1) throw input_error("PauliString: qubit count must be >= 1");
}

PauliString::PauliString(int n, std::vector<Axis> symbols) : PauliString(n) {
    if (symbols.size() != static_cast<std::size_t>(n)) {
        throw input_error("PauliString: symbol count does not match qubit count");
    }
    for (int q = 0; q < n; ++q) symbols_[static_cast<std::size_t>(q)] = symbols[static_cast<std::size_t>(q)];
}

PauliString PauliString::from_string(std::string_view s) {
    if (s.empty()) throw input_error("PauliString: empty string");
    PauliString p(static_cast<int>(s.size()));
    for (std::size_t q = 0; q < s.size(); ++q) {
        p.symbols_[q] = axis_from_char(s[q]);
    }
    return p;
}

std::vector<int> PauliString::support() const {
    std::vector<int> out;
    for (int q = 0; q < n_; ++q) {
        if (axis(q) != Axis::I) out.push_back(q);
    }
    return out;
}

int PauliString::weight() const {
    int w = 0;
    for (int q = 0; q < n_; ++q) {
        if (axis(q) != Axis::I) ++w;
    }
    return w;
}

std::string PauliString::str() const {
    std::string s(static_cast<std::size_t>(n_), 'I');
    for (int q = 0; q < n_; ++q) s[static_cast<std::size_t>(q)] = axis_char(axis(q));
    return s;
}

std::strong_ordering PauliString::operator<=>(const PauliString& other) const {
    if (auto c = n_ <=> other.n_; c != 0) return c;
    const auto sa = support();
    const auto sb = other.support();
    if (auto c = std::lexicographical_compare_three_way(sa.begin(), sa.end(), sb.begin(), sb.end());
        c != 0) {
        return c;
    }
    return std::lexicographical_compare_three_way(symbols_.begin(), symbols_.end(),
                                                  other.symbols_.begin(), other.symbols_.end());
}

long long binomial_coeff(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i; // exact: the running product is always integral
    }
    return r;
}

long long h_body_count(int n, int h) {
    if (h < 0 || h > n) throw input_error("h_body_count: need 0 <= H <= n");
    long long pow3 = 1;
    for (int i = 0; i < h; ++i) pow3 *= 3;
    return binomial_coeff(n, h) * pow3;
}

long long degeneracy(int n, int big_s, int h) {
    if (h < 0 || big_s < h) throw input_error("degeneracy: need 0 <= H <= S");
    if (big_s > n) throw input_error("degeneracy: need S <= n");
    return binomial_coeff(n - h, big_s - h);
}

std::vector<PauliString> enumerate_h_body(int n, int h) {
    if (n < 1) throw input_error("enumerate_h_body: need n >= 1");
    if (h < 0 || h > n) throw input_error("enumerate_h_body: need 0 <= H <= n");
    std::vector<PauliString> out;
    out.reserve(static_cast<std::size_t>(h_body_count(n, h)));

    // Supports in lexicographic order via an odometer over index tuples.
    std::vector<int> support(static_cast<std::size_t>(h));
    for (int i = 0; i < h; ++i) support[static_cast<std::size_t>(i)] = i;
    const Axis letters[3] = {Axis::X, Axis::Y, Axis::Z};
    for (;;) {
        // All 3^h symbol assignments on this support, first position most
        // significant, X < Y < Z.
        long long combos = 1;
        for (int i = 0; i < h; ++i) combos *= 3;
        for (long long c = 0; c < combos; ++c) {
            PauliString p(n);
            long long rem = c;
            for (int i = h - 1; i >= 0; --i) {
                p.set(support[static_cast<std::size_t>(i)], letters[rem % 3]);
                rem /= 3;
            }
            out.push_back(std::move(p));
        }
        if (h == 0) break;
        // Advance the support odometer.
        int i = h - 1;
        while (i >= 0 && support[static_cast<std::size_t>(i)] == n - h + i) --i;
        if (i < 0) break;
        ++support[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < h; ++j) {
            support[static_cast<std::size_t>(j)] = support[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return out;
}

} // namespace qkern::pauli
