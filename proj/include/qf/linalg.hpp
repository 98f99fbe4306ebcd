#pragma once

#include <cstddef>
#include <vector>

namespace qf {

/// Square symmetric matrix, row-major.
struct SymmetricMatrix {
  std::size_t n = 0;
  std::vector<double> values;

  explicit SymmetricMatrix(std::size_t dim) : n(dim), values(dim * dim, 0.0) {}
  double& operator()(std::size_t r, std::size_t c) { return values[r * n + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values[r * n + c]; }
};

struct EigenDecomposition {
  std::vector<double> eigenvalues;   ///< descending
  std::vector<double> eigenvectors;  ///< n x n row-major; column j pairs with eigenvalues[j]
};

/// Cyclic Jacobi eigendecomposition. Columns come back orthonormal and
/// sorted by descending eigenvalue.
EigenDecomposition symmetric_eigen(SymmetricMatrix a);

}  // namespace qf
