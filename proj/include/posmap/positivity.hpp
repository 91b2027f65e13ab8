#ifndef POSMAP_POSITIVITY_HPP
#define POSMAP_POSITIVITY_HPP

#include "posmap/eig.hpp"
#include "posmap/supermap.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace posmap {

struct SearchConfig {
    std::uint64_t seed = 0;
    int restarts = 50;
    int max_iters = 200;
    double conv_tol = 1e-12;
    double psd_tol = 1e-9;
    int psd_samples = 50;  // random PSD probe inputs per positivity check

    void validate() const;
};

enum class VerdictStatus { Falsified, NoCounterexample, CertifiedPositive };

const char* to_string(VerdictStatus s);

/// A reproducible counterexample. Re-evaluating it against the map recovers
/// `value` (which is negative beyond tolerance) to within 1e-10.
struct Witness {
    enum class Kind { ChoiEigenvector, ProductPair, PsdInput };
    Kind kind;
    double value = 0.0;
    std::vector<Complex> x;  // eigenvector, or the first product factor
    std::vector<Complex> y;  // second product factor (ProductPair only)
    ComplexMatrix input;     // offending PSD input (PsdInput only)
};

struct SearchStats {
    int restarts_used = 0;
    int psd_samples_used = 0;
    double best_value = 0.0;  // most negative quantity observed
};

struct Verdict {
    VerdictStatus status;
    std::optional<Witness> witness;
    SearchStats stats;
    std::string certificate;  // which sufficient condition fired, empty otherwise

    bool falsified() const { return status == VerdictStatus::Falsified; }
};

/// Re-evaluate a witness against the map it came from.
double evaluate_witness(const SuperMap& phi, const Witness& w);

/// Exact test: CertifiedPositive iff the smallest Choi eigenvalue is ≥ -tol,
/// Falsified otherwise with the bottom eigenvector as witness. Throws
/// NumericalError if the Choi matrix is not Hermitian within tolerance.
Verdict is_cp(const SuperMap& phi, double tol = 1e-9);

struct BlockMinResult {
    double value = 0.0;
    std::vector<Complex> x, y;  // unit vectors attaining value = <x⊗y|C|x⊗y>
};

/// Heuristic minimum of <x⊗y|C_φ|x⊗y> over unit vectors, by alternating
/// exact bottom-eigenvector steps in x and y from seeded restarts. An upper
/// bound on the true minimum; negative values are exact counterexamples.
BlockMinResult block_positivity_min(const SuperMap& phi, const SearchConfig& cfg);

/// Positivity check. CertifiedPositive only through sufficient conditions:
/// the construction history (CP, co-CP, nonnegative sums of such) or a PSD
/// Choi matrix. Falsified carries a product-vector or PSD-input witness.
/// A search that finds nothing yields NoCounterexample, never a certificate.
Verdict is_positive_map(const SuperMap& phi, const SearchConfig& cfg);

struct SchmidtMinResult {
    double value = 0.0;
    std::vector<Complex> z;  // unit vector of Schmidt rank ≤ k attaining value
};

/// Heuristic minimum of <z|C_φ|z> over unit vectors of Schmidt rank ≤ k,
/// alternating exact eigenvector steps over the two factor frames. Results
/// are nonincreasing in k by construction (each k includes the lower-rank
/// searches); at k = min(in, out) the constraint is vacuous and the exact
/// bottom eigenvalue of the Choi matrix is returned.
SchmidtMinResult k_block_positivity_min(const SuperMap& phi, std::size_t k, const SearchConfig& cfg);

/// Σ_t Ad_{V_t} with rank(V_t) ≤ k, each V_t a product of Gaussian factors
/// (out×k)·(k×in). Deterministic in the seed.
SuperMap random_sp_k(std::size_t k, std::size_t in_dim, std::size_t out_dim, std::size_t terms,
                     std::uint64_t seed);

/// Given a unit vector x ∈ H⊗H written x = Σ_i e_i ⊗ x_i, the operator v
/// with v e_i = x_i, so that (1⊗v) p (1⊗v)† = |x><x|.
ComplexMatrix local_filter_from_vector(const std::vector<Complex>& x);

/// Diagnostics for the symmetry φ = φ* = φᵗ, decided at the Choi level:
/// entrywise real, symmetric, and flip-invariant. The map-level residuals
/// ‖C − C_{φ*}‖ and ‖C − C_{φᵗ}‖ are carried for cross-checking; on maps
/// with a Hermitian Choi matrix the two formulations agree.
struct SymmetryDiagnostics {
    bool symmetric = false;
    double imag_defect = 0.0;
    double symmetry_defect = 0.0;
    double flip_defect = 0.0;
    double adjoint_defect = 0.0;    // ‖C − choi(adjoint(φ))‖
    double transpose_defect = 0.0;  // ‖C − choi(transpose_conj(φ))‖
};

SymmetryDiagnostics check_star_t_symmetry(const SuperMap& phi, double tol = 1e-10);

} // namespace posmap

#endif
