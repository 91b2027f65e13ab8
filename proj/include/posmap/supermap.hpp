#ifndef POSMAP_SUPERMAP_HPP
#define POSMAP_SUPERMAP_HPP

#include "posmap/matrix.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace posmap {

/// What the construction history proves about a map. Used as a sufficient
/// certificate only; Unknown just means nothing was established structurally.
enum class MapStructure {
    Unknown,
    CompletelyPositive,    // built from Kraus-form pieces
    CoCompletelyPositive,  // transpose composed with a completely positive map
    PositiveSum,           // nonnegative sum mixing the two kinds above
};

/// Linear map φ: B(C^in) → B(C^out), represented by its Choi matrix
/// C_φ = Σ_{ij} e_{ij} ⊗ φ(e_{ij}), a square matrix of size in·out with the
/// input leg first. Composite index (i, r) = i·out + r.
class SuperMap {
public:
    SuperMap(std::size_t in_dim, std::size_t out_dim, ComplexMatrix choi,
             MapStructure structure = MapStructure::Unknown);

    std::size_t in_dim() const { return in_dim_; }
    std::size_t out_dim() const { return out_dim_; }
    bool is_square() const { return in_dim_ == out_dim_; }
    const ComplexMatrix& choi() const { return choi_; }
    MapStructure structure() const { return structure_; }

    /// Choi entry φ(e_{ij})_{rs}, all indices 0-based.
    const Complex& choi_at(std::size_t i, std::size_t r, std::size_t j, std::size_t s) const {
        return choi_(i * out_dim_ + r, j * out_dim_ + s);
    }

private:
    std::size_t in_dim_, out_dim_;
    ComplexMatrix choi_;
    MapStructure structure_;
};

SuperMap identity_map(std::size_t n);   // choi = p
SuperMap transpose_map(std::size_t n);  // choi = flip F

/// Ad_V: a ↦ V a V† for V of shape out × in.
SuperMap ad_v(const ComplexMatrix& v);

/// a ↦ Tr(a)·1 − a, choi 1⊗1 − p. Positive but not completely positive for n ≥ 2.
SuperMap reduction_map(std::size_t n);

/// a ↦ Tr(a)·1 − μ·a, choi 1⊗1 − μ·p. Its minimum over inputs of Schmidt
/// rank ≤ k product structure is the closed form 1 − μ·k.
SuperMap lambda_mu_map(std::size_t n, double mu);

/// Σ w_i φ_i with w_i ≥ 0. Throws on an empty list, negative weight, or
/// mismatched dimensions.
SuperMap sum_maps(const std::vector<std::pair<double, SuperMap>>& terms);

/// φ(a) by contracting the Choi matrix: φ(a) = Tr_first((aᵗ ⊗ 1)·C_φ).
ComplexMatrix apply(const SuperMap& phi, const ComplexMatrix& a);

/// φ∘ψ by applying φ to ψ's action on matrix units. In debug builds the
/// result is cross-checked against compose_via_entangled_state for square
/// same-dimension operands.
SuperMap compose(const SuperMap& phi, const SuperMap& psi);

/// Same composition computed the other way round: C_{φ∘ψ} = (ψ^{*t} ⊗ φ)(p).
/// Both maps must act on the same square algebra. Kept as an independent
/// route so the two implementations can be checked against each other.
SuperMap compose_via_entangled_state(const SuperMap& phi, const SuperMap& psi);

/// ψ ⊗ φ. The Choi matrix is kron(C_ψ, C_φ) with row/column indices
/// re-wired from (in1, out1, in2, out2) to (in1, in2, out1, out2); this is
/// the only place any index permutation happens.
SuperMap tensor(const SuperMap& psi, const SuperMap& phi);

/// Adjoint under the trace pairing: Tr(φ(a)·b) = Tr(a·φ*(b)). On maps with a
/// Hermitian Choi matrix this coincides with choi(φ*) = j_conjugate(choi(φ)).
SuperMap adjoint(const SuperMap& phi);

/// φᵗ = t∘φ∘t; choi(φᵗ) = choi(φ)ᵗ.
SuperMap transpose_conj(const SuperMap& phi);

/// φ^{*t} = (φ*)ᵗ = (φᵗ)*.
SuperMap star_t(const SuperMap& phi);

/// The functional φ̃ on B(H⊗H): φ̃(x) = Tr(choi(φ)ᵗ · x). On elementary
/// tensors φ̃(a⊗b) = Tr(φ(a)·bᵗ).
Complex tilde_apply(const SuperMap& phi, const ComplexMatrix& x);

/// Tr(C_φ C_ψ). Throws NumericalError if an imaginary part beyond
/// 1e-10·(1+|value|) survives, which means a non-Hermitian Choi slipped in.
double pairing(const SuperMap& phi, const SuperMap& psi);

/// π(x)_{rs} = Σ_m x_{(m,m),(s,r)}; on elementary tensors π(a⊗b) = bᵗa.
ComplexMatrix pi_contract(const ComplexMatrix& x);

/// max-abs distance between Choi matrices (dimensions must match).
double choi_distance(const SuperMap& a, const SuperMap& b);

} // namespace posmap

#endif
