#include "tempalign/feature_space.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "tempalign/parallel.hpp"

namespace tempalign {

namespace {

constexpr double kZeroCoord = 1e-12;

// Smallest leading component set reaching variance_keep. Eigenvalues arrive
// ascending from Eigen's solver; traversal is from the back.
int retained_count(const Eigen::VectorXd& eigenvalues, double variance_keep,
                   double total) {
    int retained = 0;
    double cum = 0.0;
    const double floor_eig = 1e-13 * total;
    for (int i = static_cast<int>(eigenvalues.size()) - 1; i >= 0; --i) {
        const double lambda = std::max(eigenvalues[i], 0.0);
        if (lambda <= floor_eig) break;
        cum += lambda;
        ++retained;
        if (cum >= variance_keep * total) break;
    }
    return std::max(retained, 1);
}

double clamped_total(const Eigen::VectorXd& eigenvalues) {
    double total = 0.0;
    for (int i = 0; i < eigenvalues.size(); ++i) total += std::max(eigenvalues[i], 0.0);
    return total;
}

}  // namespace

PcaResult pca_reduce(const Eigen::MatrixXd& m, double variance_keep) {
    const auto rows = m.rows();
    const auto cols = m.cols();
    if (rows < 2) throw std::invalid_argument("pca_reduce: need at least 2 rows");
    if (!(variance_keep > 0.0) || variance_keep > 1.0)
        throw std::invalid_argument("pca_reduce: variance_keep must be in (0,1]");

    const Eigen::RowVectorXd mean = m.colwise().mean();
    const Eigen::MatrixXd centered = m.rowwise() - mean;
    const double denom = static_cast<double>(rows - 1);

    PcaResult result;
    const double total_sq = centered.squaredNorm();
    if (total_sq == 0.0 || cols == 0) {
        // all-constant input: 1-column zero projection
        result.projected = Eigen::MatrixXd::Zero(rows, 1);
        result.variances = Eigen::VectorXd::Zero(1);
        result.explained_ratio = 1.0;
        result.components = Eigen::MatrixXd::Zero(std::max<Eigen::Index>(cols, 1), 1);
        return result;
    }

    const bool primal = cols <= std::max<Eigen::Index>(rows, 1024);
    if (primal) {
        const Eigen::MatrixXd cov = centered.transpose() * centered / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
        const Eigen::VectorXd& eig = solver.eigenvalues();
        const double total = clamped_total(eig);
        const int retained = retained_count(eig, variance_keep, total);

        result.components.resize(cols, retained);
        result.variances.resize(retained);
        double cum = 0.0;
        for (int c = 0; c < retained; ++c) {
            const int src = static_cast<int>(eig.size()) - 1 - c;
            Eigen::VectorXd comp = solver.eigenvectors().col(src);
            for (int j = 0; j < comp.size(); ++j) {
                if (std::abs(comp[j]) > kZeroCoord) {
                    if (comp[j] < 0) comp = -comp;
                    break;
                }
            }
            result.components.col(c) = comp;
            result.variances[c] = std::max(eig[src], 0.0);
            cum += result.variances[c];
        }
        result.explained_ratio = total > 0 ? cum / total : 1.0;
        result.projected = centered * result.components;
    } else {
        // Wide input: eigendecompose the row Gram matrix instead. Projections
        // are U * sigma, identical to the covariance route.
        const Eigen::MatrixXd gram = centered * centered.transpose();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
        const Eigen::VectorXd& eig = solver.eigenvalues();  // = sigma^2
        const double total = clamped_total(eig) / denom;
        Eigen::VectorXd scaled = eig / denom;
        const int retained = retained_count(scaled, variance_keep, total);

        result.projected.resize(rows, retained);
        result.variances.resize(retained);
        const bool want_components = cols <= 20000;
        if (want_components) result.components.resize(cols, retained);
        double cum = 0.0;
        for (int c = 0; c < retained; ++c) {
            const int src = static_cast<int>(eig.size()) - 1 - c;
            const double sigma = std::sqrt(std::max(eig[src], 0.0));
            Eigen::VectorXd u = solver.eigenvectors().col(src);
            // sign of the implied component Xc^T u / sigma
            for (Eigen::Index j = 0; j < cols; ++j) {
                const double wj = centered.col(j).dot(u);
                if (std::abs(wj) > kZeroCoord * sigma) {
                    if (wj < 0) u = -u;
                    break;
                }
            }
            result.projected.col(c) = u * sigma;
            if (want_components) result.components.col(c) = centered.transpose() * u / sigma;
            result.variances[c] = std::max(eig[src], 0.0) / denom;
            cum += result.variances[c];
        }
        result.explained_ratio = total > 0 ? cum / total : 1.0;
    }
    return result;
}

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("cosine_similarity: length mismatch");
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 || nb == 0.0) return 0.5;
    double cosv = dot / (std::sqrt(na) * std::sqrt(nb));
    cosv = std::clamp(cosv, -1.0, 1.0);
    return (1.0 + cosv) / 2.0;
}

Eigen::MatrixXd joined_feature_matrix(const GoTTensor& gots_g, const GoTTensor& gots_h,
                                      const std::vector<int>& ks, bool log1p_counts) {
    if (gots_g.mode() != gots_h.mode())
        throw std::invalid_argument("node_similarities: directionality mode mismatch");
    for (int k : ks)
        if (gots_g.orbit_count(k) != gots_h.orbit_count(k))
            throw std::invalid_argument("node_similarities: catalog mismatch for k=" +
                                        std::to_string(k));

    const int n_g = gots_g.n_nodes();
    const int n_h = gots_h.n_nodes();
    const int rows = n_g + n_h;

    std::vector<std::vector<std::pair<std::uint32_t, double>>> sparse(rows);
    for (int v = 0; v < n_g; ++v) sparse[v] = gots_g.sparse_row(v, ks);
    for (int v = 0; v < n_h; ++v) sparse[n_g + v] = gots_h.sparse_row(v, ks);

    std::vector<std::uint32_t> support;
    for (const auto& row : sparse)
        for (const auto& [col, val] : row)
            if (val != 0.0) support.push_back(col);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, static_cast<Eigen::Index>(support.size()));
    for (int r = 0; r < rows; ++r) {
        for (const auto& [col, val] : sparse[r]) {
            const auto it = std::lower_bound(support.begin(), support.end(), col);
            const auto j = static_cast<Eigen::Index>(it - support.begin());
            m(r, j) = log1p_counts ? std::log1p(val) : val;
        }
    }
    return m;
}

SimilarityMatrix node_similarities(const GoTTensor& gots_g, const GoTTensor& gots_h,
                                   const std::vector<int>& ks,
                                   const SimilarityOptions& options) {
    const int n_g = gots_g.n_nodes();
    const int n_h = gots_h.n_nodes();
    const int rows = n_g + n_h;
    const Eigen::MatrixXd m =
        joined_feature_matrix(gots_g, gots_h, ks, options.log1p_counts);

    const PcaResult pca = pca_reduce(m, options.variance_keep);
    const auto dim = static_cast<std::size_t>(pca.projected.cols());

    SimilarityMatrix sim;
    sim.n_g = n_g;
    sim.n_h = n_h;
    sim.values.assign(static_cast<std::size_t>(n_g) * n_h, 0.0);
    std::vector<std::vector<double>> proj(rows, std::vector<double>(dim));
    for (int r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < dim; ++c) proj[r][c] = pca.projected(r, static_cast<Eigen::Index>(c));

    parallel_for(n_g, options.threads, [&](int g) {
        for (int h = 0; h < n_h; ++h)
            sim.at(g, h) = cosine_similarity(proj[g], proj[n_g + h]);
    });
    return sim;
}

std::string similarity_tsv(const SimilarityMatrix& sim) {
    std::ostringstream out;
    char buf[32];
    for (int g = 0; g < sim.n_g; ++g) {
        for (int h = 0; h < sim.n_h; ++h) {
            std::snprintf(buf, sizeof(buf), "%.9f", sim.at(g, h));
            out << (h ? "\t" : "") << buf;
        }
        out << "\n";
    }
    return out.str();
}

SimilarityMatrix load_similarity_tsv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    SimilarityMatrix sim;
    std::vector<std::vector<double>> rows;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double x;
        while (ls >> x) row.push_back(x);
        if (row.empty()) continue;
        if (!rows.empty() && rows.front().size() != row.size())
            throw ParseError(path + ":" + std::to_string(line_no) + ": ragged row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(path + ": empty similarity matrix");
    sim.n_g = static_cast<int>(rows.size());
    sim.n_h = static_cast<int>(rows.front().size());
    sim.values.reserve(static_cast<std::size_t>(sim.n_g) * sim.n_h);
    for (const auto& row : rows)
        sim.values.insert(sim.values.end(), row.begin(), row.end());
    return sim;
}

}  // namespace tempalign
