#pragma once

#include <Eigen/Sparse>
#include <vector>

namespace rrlab {

struct EigenPairs {
    std::vector<double> values;              // ascending
    std::vector<Eigen::VectorXd> vectors;    // normalized
    std::vector<double> residuals;           // ||H x - lambda x||
};

/// Lowest eigenpairs of a symmetric positive-definite sparse matrix by
/// shift-invert Lanczos (full reorthogonalization) on H^{-1}, with the solves
/// done through a sparse LDLT factorization.  Deterministic for a fixed seed.
EigenPairs lowest_eigenpairs(const Eigen::SparseMatrix<double>& H, int k, unsigned seed = 12345,
                             int max_iter = 0, double tol = 1e-11);

}  // namespace rrlab
