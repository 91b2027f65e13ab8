#include "posmap/rng.hpp"

#include <cmath>

namespace posmap {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed + kGolden) ^ mix(stream * kGolden + 1)) {}

std::uint64_t CounterRng::next_u64() {
    return mix(key_ + (++counter_) * kGolden);
}

double CounterRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
}

Complex CounterRng::complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
}

std::vector<Complex> random_unit_vector(std::size_t n, CounterRng& rng) {
    std::vector<Complex> v(n);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto& e : v) {
            e = rng.complex_gaussian();
            norm2 += std::norm(e);
        }
    } while (norm2 <= 0.0);
    const double inv = 1.0 / std::sqrt(norm2);
    for (auto& e : v) e *= inv;
    return v;
}

ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, CounterRng& rng) {
    ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rng.complex_gaussian();
    return m;
}

ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng) {
    return random_gaussian_matrix(n, n, rng).hermitian_part();
}

ComplexMatrix random_psd(std::size_t n, CounterRng& rng) {
    const ComplexMatrix g = random_gaussian_matrix(n, n, rng);
    return g * g.dagger();
}

} // namespace posmap
