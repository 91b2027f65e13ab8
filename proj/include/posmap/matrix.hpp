#ifndef POSMAP_MATRIX_HPP
#define POSMAP_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace posmap {

using Complex = std::complex<double>;

/// Thrown when operand shapes or indices are incompatible.
struct DimensionError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical contract is violated (e.g. a matrix that must be
/// Hermitian is not, or a quantity that must be real has a large imaginary part).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

    const std::vector<Complex>& data() const { return entries_; }
    std::vector<Complex>& data() { return entries_; }

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scalar);

    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    ComplexMatrix dagger() const;          // conjugate transpose
    ComplexMatrix hermitian_part() const;  // (A + A†)/2, square only

    Complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    /// max_{ij} |a_ij - conj(a_ji)|.
    double hermiticity_defect() const;
    /// Relative test: defect <= tol * (1 + max_abs()).
    bool is_hermitian(double tol = 1e-12) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

/// max_{ij} |a_ij - b_ij|; matrices must have equal shape.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product: (a ⊗ b)_{(i,j),(k,l)} = a_{ik} b_{jl}, composite row
/// index i*rows(b)+j. The first factor is the first tensor leg throughout.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

enum class Leg { First, Second };

/// Partial trace of a square matrix on a d1 ⊗ d2 product space.
/// Tr_first(a⊗b) = Tr(a)·b and Tr_second(a⊗b) = Tr(b)·a.
ComplexMatrix partial_trace(const ComplexMatrix& x, Leg leg, std::size_t d1, std::size_t d2);

/// Partial transpose on one tensor leg of a d1 ⊗ d2 product space.
ComplexMatrix partial_transpose(const ComplexMatrix& x, Leg leg, std::size_t d1, std::size_t d2);

/// Matrix unit e_{ij} in M_n, 1-based indices: e_{ij} e_{kl} = δ_{jk} e_{il}.
ComplexMatrix matrix_unit(std::size_t i, std::size_t j, std::size_t n);

/// p = Σ_{ij} e_{ij} ⊗ e_{ij}, unnormalized: Tr(p) = n, p² = n·p.
/// p/n is the density matrix of the maximally entangled state.
ComplexMatrix max_entangled_p(std::size_t n);

/// Flip (swap) F = Σ_{ij} e_{ij} ⊗ e_{ji}: F(x⊗y) = y⊗x, F² = I.
ComplexMatrix flip_operator(std::size_t n);

/// Conjugation by the antiunitary J (z·e_i⊗e_j ↦ z̄·e_j⊗e_i):
/// (JxJ)_{(a,b),(c,d)} = conj(x_{(b,a),(d,c)}). For real x this is F x F.
/// x must be square on a perfect tensor square H ⊗ H.
ComplexMatrix j_conjugate(const ComplexMatrix& x);

} // namespace posmap

#endif
