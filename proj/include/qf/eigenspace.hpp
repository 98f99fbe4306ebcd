#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "qf/image.hpp"

namespace qf {

/// PCA model over vectorized (row-major) feature images.
///
/// `basis` is d x k, stored column-major so that column j is the contiguous
/// range [j*d, (j+1)*d). Columns are orthonormal and ordered by descending
/// eigenvalue; each column's largest-magnitude entry is positive.
struct EigenModel {
  std::size_t height = 0;
  std::size_t width = 0;
  std::vector<double> mean;
  std::vector<double> basis;
  std::vector<double> eigenvalues;

  std::size_t dim() const { return height * width; }
  std::size_t k() const { return eigenvalues.size(); }
  std::span<const double> column(std::size_t j) const {
    return std::span<const double>(basis).subspan(j * dim(), dim());
  }
};

struct PcaOptions {
  std::size_t k_max = 40;
  /// Components with eigenvalue <= rank_tolerance * largest are dropped.
  double rank_tolerance = 1e-10;
};

/// Fits the model with covariance normalized by n. Uses the n x n Gram
/// matrix when n <= d and the d x d covariance otherwise.
EigenModel fit_pca(std::span<const Image> training, const PcaOptions& options = {});

/// Same fit, forcing the d x d covariance route regardless of n and d.
EigenModel fit_pca_direct(std::span<const Image> training, const PcaOptions& options = {});

std::vector<double> project(const EigenModel& model, const Image& image);

Image reconstruct_from_features(const EigenModel& model,
                                std::span<const double> features);

}  // namespace qf
