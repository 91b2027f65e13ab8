#include "posmap/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace posmap {

namespace {

constexpr double kHermTol = 1e-12;
constexpr double kOffTolRel = 1e-13;
constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const ComplexMatrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = 0; q < a.cols(); ++q)
            if (p != q) s += std::norm(a(p, q));
    return std::sqrt(s);
}

} // namespace

HermitianSpectrum hermitian_eig(const ComplexMatrix& x) {
    if (!x.is_square()) throw DimensionError("hermitian_eig: matrix must be square");
    if (x.hermiticity_defect() > kHermTol * (1.0 + x.max_abs()))
        throw NumericalError("hermitian_eig: matrix is not Hermitian within tolerance");

    const std::size_t n = x.rows();
    ComplexMatrix a = x.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = a.frobenius_norm();

    if (n > 1 && scale > 0.0) {
        for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
            if (off_diagonal_norm(a) < kOffTolRel * scale) break;
            for (std::size_t p = 0; p + 1 < n; ++p) {
                for (std::size_t q = p + 1; q < n; ++q) {
                    const Complex beta = a(p, q);
                    const double ab = std::abs(beta);
                    if (ab <= 1e-18 * scale) continue;

                    // unitary 2x2: phase removal diag(1, d) then a real rotation
                    const Complex d = std::conj(beta) / ab;
                    const double alpha = a(p, p).real();
                    const double gamma = a(q, q).real();
                    const double tau = (gamma - alpha) / (2.0 * ab);
                    const double t = (tau >= 0.0) ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                                  : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    // A <- A G with G(p,p)=c, G(p,q)=s, G(q,p)=-d*s, G(q,q)=d*c
                    for (std::size_t r = 0; r < n; ++r) {
                        const Complex arp = a(r, p), arq = a(r, q);
                        a(r, p) = c * arp - d * s * arq;
                        a(r, q) = s * arp + d * c * arq;
                    }
                    // A <- G† A
                    const Complex dc = std::conj(d);
                    for (std::size_t col = 0; col < n; ++col) {
                        const Complex apc = a(p, col), aqc = a(q, col);
                        a(p, col) = c * apc - dc * s * aqc;
                        a(q, col) = s * apc + dc * c * aqc;
                    }
                    // rotation zeroes the pivot pair and keeps the diagonal real
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = alpha - t * ab;
                    a(q, q) = gamma + t * ab;
                    // V <- V G
                    for (std::size_t r = 0; r < n; ++r) {
                        const Complex vrp = v(r, p), vrq = v(r, q);
                        v(r, p) = c * vrp - d * s * vrq;
                        v(r, q) = s * vrp + d * c * vrq;
                    }
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        const double di = a(i, i).real(), dj = a(j, j).real();
        return di < dj || (di == dj && i < j);
    });

    HermitianSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = v(r, order[k]);
    }
    return out;
}

double hermitian_min_eig(const ComplexMatrix& x) {
    return hermitian_eig(x).eigenvalues.front();
}

std::pair<double, std::vector<Complex>> hermitian_bottom_eigenpair(const ComplexMatrix& x) {
    const HermitianSpectrum s = hermitian_eig(x);
    std::vector<Complex> vec(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) vec[r] = s.eigenvectors(r, 0);
    return {s.eigenvalues.front(), vec};
}

} // namespace posmap
