#include "qf/eigenspace.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <string>

#include "qf/error.hpp"
#include "qf/linalg.hpp"

namespace qf {
namespace {

struct CenteredData {
  std::size_t n = 0;
  std::size_t d = 0;
  std::vector<double> mean;
  std::vector<double> rows;  // n x d
};

CenteredData center(std::span<const Image> training) {
  if (training.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "PCA needs at least 2 training images, got " +
                    std::to_string(training.size()));
  }
  CenteredData data;
  data.n = training.size();
  data.d = training.front().size();
  if (data.d == 0) {
    throw Error(ErrorCode::kInvalidArgument, "PCA training images are empty");
  }
  for (const Image& img : training) {
    require_same_shape(img, training.front(), "PCA training set");
  }
  data.mean.assign(data.d, 0.0);
  for (const Image& img : training) {
    auto px = img.pixels();
    for (std::size_t j = 0; j < data.d; ++j) data.mean[j] += px[j];
  }
  for (double& m : data.mean) m /= static_cast<double>(data.n);
  data.rows.resize(data.n * data.d);
  for (std::size_t i = 0; i < data.n; ++i) {
    auto px = training[i].pixels();
    for (std::size_t j = 0; j < data.d; ++j) {
      data.rows[i * data.d + j] = px[j] - data.mean[j];
    }
  }
  return data;
}

std::size_t retained_count(const std::vector<double>& eigenvalues,
                           const PcaOptions& options, std::size_t n) {
  const double top = eigenvalues.empty() ? 0.0 : eigenvalues.front();
  if (!(top > 0.0)) {
    throw Error(ErrorCode::kDegenerateTrainingSet,
                "degenerate training set: covariance is zero");
  }
  std::size_t rank = 0;
  while (rank < eigenvalues.size() &&
         eigenvalues[rank] > options.rank_tolerance * top) {
    ++rank;
  }
  const std::size_t k = std::min({options.k_max, rank, n - 1});
  if (k < options.k_max) {
    std::clog << "warning: PCA keeps " << k << " of " << options.k_max
              << " requested components (training rank)\n";
  }
  return k;
}

void fix_sign(std::span<double> column) {
  std::size_t arg = 0;
  for (std::size_t i = 1; i < column.size(); ++i) {
    if (std::abs(column[i]) > std::abs(column[arg])) arg = i;
  }
  if (column[arg] < 0.0) {
    for (double& x : column) x = -x;
  }
}

EigenModel fit_snapshot(const CenteredData& data, const PcaOptions& options) {
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  SymmetricMatrix gram(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a; b < n; ++b) {
      double s = 0.0;
      for (std::size_t j = 0; j < d; ++j) {
        s += data.rows[a * d + j] * data.rows[b * d + j];
      }
      gram(a, b) = gram(b, a) = s / static_cast<double>(n);
    }
  }
  EigenDecomposition eig = symmetric_eigen(std::move(gram));
  const std::size_t k = retained_count(eig.eigenvalues, options, n);

  EigenModel model;
  model.mean = data.mean;
  model.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + k);
  model.basis.assign(d * k, 0.0);
  for (std::size_t c = 0; c < k; ++c) {
    std::span<double> col(model.basis.data() + c * d, d);
    // X^T u maps a Gram eigenvector back into pixel space.
    for (std::size_t i = 0; i < n; ++i) {
      const double u = eig.eigenvectors[i * n + c];
      for (std::size_t j = 0; j < d; ++j) col[j] += u * data.rows[i * d + j];
    }
    // Small eigenvalues lose orthogonality in the back-mapping; one
    // Gram-Schmidt pass against the earlier columns restores it.
    for (std::size_t prev = 0; prev < c; ++prev) {
      const double* other = model.basis.data() + prev * d;
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += other[j] * col[j];
      for (std::size_t j = 0; j < d; ++j) col[j] -= dot * other[j];
    }
    double norm = 0.0;
    for (double x : col) norm += x * x;
    norm = std::sqrt(norm);
    for (double& x : col) x /= norm;
    fix_sign(col);
  }
  return model;
}

EigenModel fit_covariance(const CenteredData& data, const PcaOptions& options) {
  const std::size_t n = data.n;
  const std::size_t d = data.d;
  SymmetricMatrix cov(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.rows.data() + i * d;
    for (std::size_t a = 0; a < d; ++a) {
      for (std::size_t b = a; b < d; ++b) cov(a, b) += row[a] * row[b];
    }
  }
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a; b < d; ++b) {
      cov(a, b) /= static_cast<double>(n);
      cov(b, a) = cov(a, b);
    }
  }
  EigenDecomposition eig = symmetric_eigen(std::move(cov));
  const std::size_t k = retained_count(eig.eigenvalues, options, n);

  EigenModel model;
  model.mean = data.mean;
  model.eigenvalues.assign(eig.eigenvalues.begin(), eig.eigenvalues.begin() + k);
  model.basis.resize(d * k);
  for (std::size_t c = 0; c < k; ++c) {
    std::span<double> col(model.basis.data() + c * d, d);
    for (std::size_t j = 0; j < d; ++j) col[j] = eig.eigenvectors[j * d + c];
    fix_sign(col);
  }
  return model;
}

EigenModel finish(EigenModel model, const Image& shape) {
  model.height = shape.height();
  model.width = shape.width();
  for (double& e : model.eigenvalues) e = std::max(e, 0.0);
  return model;
}

void check_options(const PcaOptions& options) {
  if (options.k_max < 1) {
    throw Error(ErrorCode::kInvalidArgument, "k_max must be >= 1");
  }
}

}  // namespace

EigenModel fit_pca(std::span<const Image> training, const PcaOptions& options) {
  check_options(options);
  const CenteredData data = center(training);
  EigenModel model = data.n <= data.d ? fit_snapshot(data, options)
                                      : fit_covariance(data, options);
  return finish(std::move(model), training.front());
}

EigenModel fit_pca_direct(std::span<const Image> training,
                          const PcaOptions& options) {
  check_options(options);
  const CenteredData data = center(training);
  return finish(fit_covariance(data, options), training.front());
}

std::vector<double> project(const EigenModel& model, const Image& image) {
  if (image.height() != model.height || image.width() != model.width) {
    throw Error(ErrorCode::kDimensionMismatch,
                "project: image is " + std::to_string(image.height()) + "x" +
                    std::to_string(image.width()) + ", model expects " +
                    std::to_string(model.height) + "x" +
                    std::to_string(model.width));
  }
  const std::size_t d = model.dim();
  auto px = image.pixels();
  std::vector<double> centered(d);
  for (std::size_t j = 0; j < d; ++j) centered[j] = px[j] - model.mean[j];
  std::vector<double> features(model.k(), 0.0);
  for (std::size_t c = 0; c < model.k(); ++c) {
    auto col = model.column(c);
    double s = 0.0;
    for (std::size_t j = 0; j < d; ++j) s += col[j] * centered[j];
    features[c] = s;
  }
  return features;
}

Image reconstruct_from_features(const EigenModel& model,
                                std::span<const double> features) {
  if (features.size() != model.k()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "reconstruct: got " + std::to_string(features.size()) +
                    " features, model has " + std::to_string(model.k()));
  }
  std::vector<double> px = model.mean;
  for (std::size_t c = 0; c < model.k(); ++c) {
    auto col = model.column(c);
    for (std::size_t j = 0; j < px.size(); ++j) px[j] += features[c] * col[j];
  }
  return Image(model.height, model.width, std::move(px));
}

}  // namespace qf
