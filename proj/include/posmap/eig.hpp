#ifndef POSMAP_EIG_HPP
#define POSMAP_EIG_HPP

#include "posmap/matrix.hpp"

#include <utility>
#include <vector>

namespace posmap {

/// Full spectral decomposition of a Hermitian matrix: X = V diag(λ) V†.
struct HermitianSpectrum {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unit-norm columns, column k pairs with eigenvalues[k]
};

/// Cyclic Jacobi eigensolver for Hermitian matrices. Deterministic: sweeps
/// run over (p, q) in a fixed order with no pivot selection, so identical
/// inputs give identical output bit for bit. The input is symmetrized to
/// (X + X†)/2 first; a Hermiticity defect beyond 1e-12·(1 + max|x|) throws
/// NumericalError. Convergence: off-diagonal Frobenius mass < 1e-13·‖X‖_F.
HermitianSpectrum hermitian_eig(const ComplexMatrix& x);

double hermitian_min_eig(const ComplexMatrix& x);

std::pair<double, std::vector<Complex>> hermitian_bottom_eigenpair(const ComplexMatrix& x);

inline bool is_psd(const ComplexMatrix& x, double tol) { return hermitian_min_eig(x) >= -tol; }

} // namespace posmap

#endif
