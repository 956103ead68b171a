#include "qkern/mercer.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include <Eigen/Eigenvalues>
#include <nlohmann/json.hpp>

#include "qkern/gram_io.hpp"
#include "qkern/kernels.hpp"
#include "qkern/parallel.hpp"

namespace qkern::mercer {

namespace {

/// Pauli string for a base-4 index (digits I,X,Y,Z; qubit 0 most significant).
pauli::PauliString pauli_at(std::size_t index, int n) {
    pauli::PauliString p(n);
    for (int q = n - 1; q >= 0; --q) {
        p.set(q, static_cast<pauli::Axis>(index % 4));
        index /= 4;
    }
    return p;
}

void check_capacity(int n) {
    if (n > kMaxQubits) {
        throw capacity_error("mercer: the 4^n x 4^n feature operator is capped at n <= 6");
    }
}

} // namespace

Eigen::VectorXd pauli_feature_vector(const Eigen::VectorXd& x,
                                     const sim::EmbeddingConfig& cfg) {
    check_capacity(cfg.n);
    const auto psi = sim::embed(x, cfg);
    const std::size_t dim = std::size_t{1} << (2 * cfg.n); // 4^n
    const double norm = 1.0 / std::sqrt(static_cast<double>(std::size_t{1} << cfg.n));
    Eigen::VectorXd v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v[static_cast<Eigen::Index>(i)] =
            norm * sim::pauli_expectation(psi, pauli_at(i, cfg.n));
    }
    return v;
}

Eigen::MatrixXd feature_gram_operator(const Eigen::MatrixXd& points,
                                      const sim::EmbeddingConfig& cfg) {
    check_capacity(cfg.n);
    if (points.rows() == 0) throw input_error("feature_gram_operator: empty dataset");
    const Eigen::Index dim = Eigen::Index{1} << (2 * cfg.n);
    Eigen::MatrixXd features(points.rows(), dim);
    parallel_for(0, static_cast<std::size_t>(points.rows()), [&](std::size_t r) {
        features.row(static_cast<Eigen::Index>(r)) =
            pauli_feature_vector(points.row(static_cast<Eigen::Index>(r)).transpose(), cfg)
                .transpose();
    });
    Eigen::MatrixXd g = features.transpose() * features / static_cast<double>(points.rows());
    for (Eigen::Index i = 0; i < dim; ++i) {
        for (Eigen::Index j = 0; j < i; ++j) g(i, j) = g(j, i);
    }
    return g;
}

MercerDecomposition diagonalize(const Eigen::MatrixXd& g, std::uint64_t dataset_hash) {
    if (g.rows() != g.cols()) throw input_error("diagonalize: matrix must be square");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
        throw input_error("diagonalize: matrix must be symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(g);
    if (solver.info() != Eigen::Success) {
        throw data_error("diagonalize: eigensolver did not converge");
    }

    const Eigen::Index dim = g.rows();
    MercerDecomposition md;
    md.n = 0;
    while ((Eigen::Index{1} << (2 * md.n)) < dim) ++md.n;
    md.dataset_hash = dataset_hash;
    md.eigenvalues.resize(dim);
    md.basis_coeffs.resize(dim, dim);
    // Eigen sorts ascending; flip to descending and canonicalize each
    // vector's sign by its first nonzero coefficient.
    for (Eigen::Index i = 0; i < dim; ++i) {
        const Eigen::Index src = dim - 1 - i;
        md.eigenvalues[i] = solver.eigenvalues()[src];
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (std::abs(v[r]) > 1e-12) {
                if (v[r] < 0) v = -v;
                break;
            }
        }
        md.basis_coeffs.col(i) = v;
    }
    return md;
}

double eigenfunction(const MercerDecomposition& md, int mode,
                     const Eigen::VectorXd& x, const sim::EmbeddingConfig& cfg) {
    if (mode < 0 || mode >= md.eigenvalues.size()) {
        throw input_error("eigenfunction: mode index out of range");
    }
    const double gamma = md.eigenvalues[mode];
    if (gamma <= MercerDecomposition::kModeTolerance) {
        throw data_error("eigenfunction: eigenvalue below tolerance, mode is degenerate");
    }
    const Eigen::VectorXd bloch = pauli_feature_vector(x, cfg);
    return md.basis_coeffs.col(mode).dot(bloch) / std::sqrt(gamma);
}

double mercer_gtqk(const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                   const Eigen::VectorXd& mode_weights,
                   const MercerDecomposition& md, const sim::EmbeddingConfig& cfg) {
    if (mode_weights.size() != md.eigenvalues.size()) {
        throw input_error("mercer_gtqk: one weight per Mercer mode required");
    }
    if (mode_weights.minCoeff() < 0.0) {
        throw input_error("mercer_gtqk: weights must be nonnegative");
    }
    const double two_n = static_cast<double>(std::size_t{1} << cfg.n);
    const Eigen::VectorXd fx = md.basis_coeffs.transpose() * pauli_feature_vector(x, cfg);
    const Eigen::VectorXd fy = md.basis_coeffs.transpose() * pauli_feature_vector(y, cfg);
    return two_n * (mode_weights.array() * fx.array() * fy.array()).sum();
}

double lego_rkhs_orthogonality(const MercerDecomposition& md,
                               const Eigen::MatrixXd& points,
                               const sim::EmbeddingConfig& cfg, bool enforce_hash) {
    if (enforce_hash && md.dataset_hash != kernels::dataset_hash(points)) {
        throw input_error("lego_rkhs_orthogonality: decomposition was built from a different dataset");
    }
    const Eigen::Index dim = md.eigenvalues.size();
    Eigen::MatrixXd features(points.rows(), dim);
    parallel_for(0, static_cast<std::size_t>(points.rows()), [&](std::size_t r) {
        features.row(static_cast<Eigen::Index>(r)) =
            (md.basis_coeffs.transpose() *
             pauli_feature_vector(points.row(static_cast<Eigen::Index>(r)).transpose(), cfg))
                .transpose();
    });
    const Eigen::MatrixXd corr =
        features.transpose() * features / static_cast<double>(points.rows());
    double max_off = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (md.eigenvalues[i] <= MercerDecomposition::kModeTolerance) continue;
        for (Eigen::Index j = 0; j < dim; ++j) {
            if (j == i || md.eigenvalues[j] <= MercerDecomposition::kModeTolerance) continue;
            max_off = std::max(max_off, std::abs(corr(i, j)));
        }
    }
    return max_off;
}

std::string MercerDecomposition::eigenvalues_to_json_string() const {
    nlohmann::json j;
    j["n"] = n;
    j["dataset_hash"] = hash_hex(dataset_hash);
    auto arr = nlohmann::json::array();
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) arr.push_back(eigenvalues[i]);
    j["eigenvalues"] = std::move(arr);
    return j.dump();
}

void MercerDecomposition::write_basis(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw input_error("write_basis: cannot open '" + path + "'");
    char header[16] = {};
    std::memcpy(header, "MERCERV1", 8);
    const std::uint32_t n32 = static_cast<std::uint32_t>(n);
    std::memcpy(header + 8, &n32, 4); // little-endian on every supported target
    out.write(header, sizeof(header));
    // Column-major f64 payload.
    const Eigen::Index dim = basis_coeffs.rows();
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            const double v = basis_coeffs(r, c);
            out.write(reinterpret_cast<const char*>(&v), sizeof(double));
        }
    }
    if (!out) throw input_error("write_basis: short write to '" + path + "'");
}

Eigen::MatrixXd MercerDecomposition::read_basis(const std::string& path, int* n_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("read_basis: cannot open '" + path + "'");
    char header[16] = {};
    in.read(header, sizeof(header));
    if (!in || std::memcmp(header, "MERCERV1", 8) != 0) {
        throw input_error("read_basis: bad magic in '" + path + "'");
    }
    std::uint32_t n32 = 0;
    std::memcpy(&n32, header + 8, 4);
    if (n_out != nullptr) *n_out = static_cast<int>(n32);
    const Eigen::Index dim = Eigen::Index{1} << (2 * n32);
    Eigen::MatrixXd m(dim, dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
        for (Eigen::Index r = 0; r < dim; ++r) {
            double v = 0.0;
            in.read(reinterpret_cast<char*>(&v), sizeof(double));
            m(r, c) = v;
        }
    }
    if (!in) throw input_error("read_basis: truncated payload in '" + path + "'");
    return m;
}

} // namespace qkern::mercer
