#ifndef POSMAP_CONES_HPP
#define POSMAP_CONES_HPP

#include "posmap/positivity.hpp"

#include <optional>
#include <string>
#include <vector>

namespace posmap {

/// A closed cone of positive maps on B(C^n), described by generators and
/// closed under composition with Ad_u / Ad_v on either side. Symmetric means
/// the generator list is closed under the adjoint and transpose operations.
class MappingCone {
public:
    /// Closes the generators under g ↦ g*, gᵗ, g^{*t}, deduplicating by Choi
    /// distance ≤ 1e-10. Throws if any generator is Falsified by
    /// is_positive_map or dimensions are mixed.
    static MappingCone make_symmetric(std::vector<SuperMap> generators,
                                      const SearchConfig& cfg = {});

    std::size_t dim() const { return dim_; }
    const std::vector<SuperMap>& generators() const { return generators_; }
    bool symmetric() const { return symmetric_; }

private:
    MappingCone(std::size_t dim, std::vector<SuperMap> generators, bool symmetric)
        : dim_(dim), generators_(std::move(generators)), symmetric_(symmetric) {}

    std::size_t dim_;
    std::vector<SuperMap> generators_;
    bool symmetric_;
};

MappingCone cp_cone(std::size_t n);    // generated by the identity map
MappingCone cocp_cone(std::size_t n);  // generated by the transpose map

/// A random element Σ_j w_j · Ad_{u_j} ∘ g_{i_j} ∘ Ad_{v_j} with 1-3 terms,
/// exponential weights and Gaussian u, v, all drawn from the seed.
SuperMap sample_element(const MappingCone& cone, std::uint64_t seed);

enum class MembershipStatus { NotMember, ConsistentWithMembership, Member };

const char* to_string(MembershipStatus s);

struct MembershipReport {
    std::string candidate;
    MembershipStatus status = MembershipStatus::ConsistentWithMembership;
    std::optional<SuperMap> witness_element;  // ψ in the cone exposing the failure
    std::optional<Witness> witness;
    double min_value = 0.0;  // smallest eigenvalue (or pairing) observed
    int trials_used = 0;
    bool cross_check_consistent = true;
    std::string note;
};

/// Hunts for ψ in the cone with (ψ⊗φ)(p) not PSD: every raw generator first,
/// then `trials` seeded sampled elements. Finding one settles NotMember
/// exactly; otherwise the evidence only supports ConsistentWithMembership.
MembershipReport falsify_dual_membership(const MappingCone& cone, const SuperMap& phi, int trials,
                                         const SearchConfig& cfg);

struct DualPairResult {
    double value = 0.0;  // min over searched ψ of Tr(C_φ C_ψ)
    std::optional<SuperMap> element;
    int generator_index = -1;
};

/// Minimizes Tr(C_φ C_ψ) over ψ = Ad_u ∘ g ∘ Ad_v by alternating bottom-
/// eigenvector steps in u and v (‖u‖_F = ‖v‖_F = √n), seeded restarts per
/// generator. Raw generators are always evaluated, so the result is ≤
/// pairing(φ, g) for every generator g. A value below -psd_tol is an exact
/// dual-membership failure.
DualPairResult dual_pair_min(const MappingCone& cone, const SuperMap& phi, const SearchConfig& cfg);

/// Membership of φ in the dual of the cone generated by a single symmetric
/// generator g (g = g* = gᵗ required, checked, error otherwise): decided by
/// running is_positive_map on g ⊗ φ. A falsification is NotMember with the
/// witness attached; a structural certificate is Member; a clean search is
/// ConsistentWithMembership. Cross-checked against falsify_dual_membership
/// on the cone generated by g.
MembershipReport decide_corollary4(const SuperMap& g, const SuperMap& phi, const SearchConfig& cfg);

/// Empirical comparison of three equivalent membership criteria for φ
/// against a cone: (ii) φ∘ψ completely positive, (iii) ψ⊗φ positive on
/// sampled PSD inputs, (iv) (ψ⊗φ)(p) PSD, over generators plus sampled ψ.
/// The two eigenvalue criteria are linked exactly through
/// (ψ⊗φ)(p) = choi(φ∘ψ^{*t}), so each falsification on one side is
/// re-verified on the other; a mismatch marks the report inconsistent.
struct ConeDualityReport {
    bool cond_compose_falsified = false;  // (ii)
    bool cond_tensor_falsified = false;   // (iii)
    bool cond_state_falsified = false;    // (iv)
    double min_compose_eig = 0.0;
    double min_tensor_eig = 0.0;
    double min_state_eig = 0.0;
    int psi_tested = 0;
    bool consistent = true;
    std::string note;
};

ConeDualityReport verify_theorem2(const MappingCone& cone, const SuperMap& phi, int trials,
                                  const SearchConfig& cfg);

/// Checks the composition-stability statement: for α in the cone, γ
/// consistent with the dual cone, and completely positive β, δ, the map
/// (α∘β) ⊗ (γ∘δ) should admit no positivity counterexample. Preconditions
/// are verified and failures throw with the violated hypothesis named.
struct TensorPositivityReport {
    double min_output_eig = 0.0;
    double block_min = 0.0;
    int inputs_checked = 0;
    bool falsified = false;
};

TensorPositivityReport verify_corollary3(const MappingCone& cone, const SuperMap& alpha,
                                         const SuperMap& gamma, const SuperMap& beta,
                                         const SuperMap& delta, const SearchConfig& cfg);

} // namespace posmap

#endif
