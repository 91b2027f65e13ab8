#include "posmap/matrix.hpp"

#include <cmath>

namespace posmap {

namespace {

std::size_t isqrt_exact(std::size_t m, const char* what) {
    std::size_t n = static_cast<std::size_t>(std::lround(std::sqrt(static_cast<double>(m))));
    while (n * n > m) --n;
    while ((n + 1) * (n + 1) <= m) ++n;
    if (n * n != m)
        throw DimensionError(std::string(what) + ": dimension " + std::to_string(m) +
                             " is not a perfect tensor square");
    return n;
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError(std::string(what) + ": shape mismatch " + std::to_string(a.rows()) +
                             "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                             "x" + std::to_string(b.cols()));
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_)
        throw DimensionError("ComplexMatrix: entry count does not match shape");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (auto& e : entries_) e *= scalar;
    return *this;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(rows_, cols_);
    for (std::size_t i = 0; i < entries_.size(); ++i) out.entries_[i] = std::conj(entries_[i]);
    return out;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    if (!is_square()) throw DimensionError("hermitian_part: matrix must be square");
    ComplexMatrix out(rows_, cols_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c)
            out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
    return out;
}

Complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionError("trace: matrix must be square");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_) s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, std::abs(e));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) throw DimensionError("hermiticity_defect: matrix must be square");
    double d = 0.0;
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = r; c < cols_; ++c)
            d = std::max(d, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
    return d;
}

bool ComplexMatrix::is_hermitian(double tol) const {
    return hermiticity_defect() <= tol * (1.0 + max_abs());
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex scalar, ComplexMatrix a) { return a *= scalar; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("operator*: inner dimensions differ");
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double d = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i)
        d = std::max(d, std::abs(a.data()[i] - b.data()[i]));
    return d;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < b.rows(); ++j)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + j, k * b.cols() + l) = aik * b(j, l);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& x, Leg leg, std::size_t d1, std::size_t d2) {
    if (!x.is_square() || x.rows() != d1 * d2)
        throw DimensionError("partial_trace: matrix must be square of size d1*d2");
    if (leg == Leg::First) {
        ComplexMatrix out(d2, d2);
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t l = 0; l < d2; ++l) {
                Complex s = 0.0;
                for (std::size_t i = 0; i < d1; ++i) s += x(i * d2 + j, i * d2 + l);
                out(j, l) = s;
            }
        return out;
    }
    ComplexMatrix out(d1, d1);
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t k = 0; k < d1; ++k) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < d2; ++j) s += x(i * d2 + j, k * d2 + j);
            out(i, k) = s;
        }
    return out;
}

ComplexMatrix partial_transpose(const ComplexMatrix& x, Leg leg, std::size_t d1, std::size_t d2) {
    if (!x.is_square() || x.rows() != d1 * d2)
        throw DimensionError("partial_transpose: matrix must be square of size d1*d2");
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t k = 0; k < d1; ++k)
                for (std::size_t l = 0; l < d2; ++l) {
                    if (leg == Leg::First)
                        out(i * d2 + j, k * d2 + l) = x(k * d2 + j, i * d2 + l);
                    else
                        out(i * d2 + j, k * d2 + l) = x(i * d2 + l, k * d2 + j);
                }
    return out;
}

ComplexMatrix matrix_unit(std::size_t i, std::size_t j, std::size_t n) {
    if (i < 1 || i > n || j < 1 || j > n)
        throw DimensionError("matrix_unit: indices are 1-based and must lie in [1, n]");
    ComplexMatrix out(n, n);
    out(i - 1, j - 1) = 1.0;
    return out;
}

ComplexMatrix max_entangled_p(std::size_t n) {
    ComplexMatrix out(n * n, n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) out(i * n + i, j * n + j) = 1.0;
    return out;
}

ComplexMatrix flip_operator(std::size_t n) {
    ComplexMatrix out(n * n, n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) out(a * n + b, b * n + a) = 1.0;
    return out;
}

ComplexMatrix j_conjugate(const ComplexMatrix& x) {
    if (!x.is_square()) throw DimensionError("j_conjugate: matrix must be square");
    const std::size_t n = isqrt_exact(x.rows(), "j_conjugate");
    ComplexMatrix out(x.rows(), x.cols());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                for (std::size_t d = 0; d < n; ++d)
                    out(a * n + b, c * n + d) = std::conj(x(b * n + a, d * n + c));
    return out;
}

} // namespace posmap
