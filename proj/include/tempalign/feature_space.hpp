#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

#include "tempalign/got.hpp"

namespace tempalign {

struct PcaResult {
    Eigen::MatrixXd projected;   // rows x retained components
    Eigen::VectorXd variances;   // retained component variances, descending
    double explained_ratio = 1.0;
    // Retained principal directions as columns (orthonormal). Left empty for
    // very wide inputs where materializing them is not worth the memory; the
    // projection itself never needs them explicitly.
    Eigen::MatrixXd components;
};

// Mean-centers columns and projects onto the smallest leading set of
// principal components whose cumulative explained variance reaches
// variance_keep. An all-constant input degenerates to one zero column with
// explained_ratio 1. Sign convention: the first nonzero coordinate of every
// component is positive, which pins the projection bit-for-bit across runs.
PcaResult pca_reduce(const Eigen::MatrixXd& m, double variance_keep);

// Cosine rescaled from [-1,1] to [0,1]; zero-norm inputs score a neutral 0.5.
double cosine_similarity(std::span<const double> a, std::span<const double> b);

struct SimilarityMatrix {
    int n_g = 0;
    int n_h = 0;
    std::vector<double> values;  // row-major, n_g x n_h

    double at(NodeId g, NodeId h) const { return values[static_cast<std::size_t>(g) * n_h + h]; }
    double& at(NodeId g, NodeId h) { return values[static_cast<std::size_t>(g) * n_h + h]; }
};

struct SimilarityOptions {
    double variance_keep = 0.99;
    bool log1p_counts = false;
    int threads = 1;
};

// Stacked feature rows of both networks (G first, then H), restricted to
// columns that are nonzero somewhere. All-zero columns stay zero after
// centering and carry no component weight, so dropping them changes neither
// projections nor component signs.
Eigen::MatrixXd joined_feature_matrix(const GoTTensor& gots_g, const GoTTensor& gots_h,
                                      const std::vector<int>& ks,
                                      bool log1p_counts = false);

// Flattens both tensors over `ks`, stacks rows (G first, then H), reduces
// jointly with PCA and returns pairwise rescaled cosine between every G row
// and every H row.
SimilarityMatrix node_similarities(const GoTTensor& gots_g, const GoTTensor& gots_h,
                                   const std::vector<int>& ks,
                                   const SimilarityOptions& options = {});

std::string similarity_tsv(const SimilarityMatrix& sim);
SimilarityMatrix load_similarity_tsv(const std::string& path);

}  // namespace tempalign
