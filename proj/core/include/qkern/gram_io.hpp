#pragma once

#include <string>

#include "qkern/kernels.hpp"

namespace qkern::kernels {

/// CSV layout: one header line
///   # kernel=<hex> estimator=<tag> seed=<u64>
/// then N rows of N comma-separated shortest-round-trip doubles.
std::string gram_to_csv(const GramMatrix& g);
GramMatrix gram_from_csv(const std::string& text);

void write_gram_csv(const std::string& path, const GramMatrix& g);
GramMatrix read_gram_csv(const std::string& path);

std::string gram_to_json_string(const GramMatrix& g);
GramMatrix gram_from_json_string(const std::string& text);

/// Shortest decimal that round-trips the double (<= 17 significant digits).
std::string format_double(double v);

} // namespace qkern::kernels
