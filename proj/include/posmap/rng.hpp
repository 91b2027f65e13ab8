#ifndef POSMAP_RNG_HPP
#define POSMAP_RNG_HPP

#include "posmap/matrix.hpp"

#include <cstdint>

namespace posmap {

/// Counter-based generator: output i of stream s under seed k is a pure
/// function hash(k, s, i). Restart r of a search draws from stream r, so the
/// first r1 streams are identical no matter how many restarts run in total,
/// and restarts could be evaluated concurrently without changing results.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t next_u64();
    double uniform();        // [0, 1)
    double gaussian();       // standard normal, Box-Muller
    Complex complex_gaussian();  // independent standard-normal real and imaginary parts

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::vector<Complex> random_unit_vector(std::size_t n, CounterRng& rng);
ComplexMatrix random_gaussian_matrix(std::size_t rows, std::size_t cols, CounterRng& rng);
ComplexMatrix random_hermitian(std::size_t n, CounterRng& rng);
ComplexMatrix random_psd(std::size_t n, CounterRng& rng);  // G G†

} // namespace posmap

#endif
