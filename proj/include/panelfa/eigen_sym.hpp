#pragma once

#include <vector>

#include "panelfa/matrix.hpp"

namespace panelfa {

// Spectral decomposition of a symmetric matrix. eigenvalues are sorted
// descending; column j of eigenvectors pairs with eigenvalues[j]. Each
// eigenvector's largest-magnitude entry is positive (ties broken by the
// lowest index), which pins the sign deterministically.
struct EigenDecomposition {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

// Cyclic Jacobi rotations. Sweeps run until every off-diagonal magnitude is
// at or below 1e-12 times the mean absolute diagonal of the input, capped at
// 100 sweeps. Throws Error on a non-square, non-finite, or asymmetric input.
EigenDecomposition sym_eigen(const Matrix& s);

}  // namespace panelfa
