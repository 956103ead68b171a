#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "qkern/errors.hpp"

namespace qkern::pipeline {

/// Raw image set as parsed from the IDX pair (pixels in 0..255).
struct RawImages {
    int rows = 0;
    int cols = 0;
    Eigen::MatrixXd pixels; // N x (rows*cols)
    std::vector<int> labels;

    Eigen::Index count() const { return pixels.rows(); }
};

/// Reads the big-endian IDX pair: images magic 0x00000803 (count, rows,
/// cols, u8 pixels), labels magic 0x00000801 (count, u8 labels). Counts must
/// agree.
RawImages parse_idx(const std::string& images_path, const std::string& labels_path);

/// Inverse of parse_idx, used for round-trip checks and synthetic corpora.
void write_idx(const std::string& images_path, const std::string& labels_path,
               const RawImages& raw);

/// Everything fitted on the train split: standardization statistics and the
/// PCA projection (components are column eigenvectors of the train
/// covariance, descending eigenvalue, first nonzero coefficient positive).
struct Preprocessing {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;
    Eigen::MatrixXd components; // d x pca_dim
    std::pair<int, int> class_pair{0, 3};
    std::uint64_t seed = 0;
};

struct Dataset {
    Eigen::MatrixXd features; // N x pca_dim
    Eigen::VectorXd labels;   // +-1 (first class of the pair maps to +1)
    Preprocessing prep;
    std::string split; // "train" or "test"

    std::uint64_t features_hash() const;
};

/// Filters to the class pair, maps labels to +-1, shuffles with the seed,
/// splits, standardizes per feature on train statistics only, then projects
/// both splits through the train-fitted PCA.
std::pair<Dataset, Dataset> prepare(const RawImages& raw,
                                    std::pair<int, int> classes, int n_train,
                                    int n_test, int pca_dim, std::uint64_t seed);

std::string datasets_to_json_string(const Dataset& train, const Dataset& test);
std::pair<Dataset, Dataset> datasets_from_json_string(const std::string& text);

void write_datasets(const std::string& path, const Dataset& train,
                    const Dataset& test);
std::pair<Dataset, Dataset> read_datasets(const std::string& path);

} // namespace qkern::pipeline
