#ifndef POSMAP_VERIFY_HPP
#define POSMAP_VERIFY_HPP

#include "posmap/cones.hpp"

#include <string>
#include <vector>

namespace posmap {

/// Outcome of one self-check suite: a pass flag, the worst identity residual
/// seen (0 when the suite has no residual semantics), every numeric the
/// suite reports in a fixed order (the determinism fingerprint), and one
/// text line per check.
struct SuiteResult {
    std::string name;
    bool pass = false;
    double max_residual = 0.0;
    std::vector<double> values;
    std::vector<std::string> lines;
};

/// Composition identities: the entangled-state route to a composite map's
/// choi matrix against the direct route, and the composite functional
/// evaluated through the adjoint/transpose factorization.
SuiteResult run_compose_identity_suite(std::size_t dim, int trials, std::uint64_t seed);

/// Functional identities: φ̃ evaluated as a choi trace form, through the
/// contraction route, against the entangled-state density, and on
/// elementary tensors; plus the identity map's functional.
SuiteResult run_functional_identity_suite(std::size_t dim, int trials, std::uint64_t seed);

/// Adjoint and transpose structure: the conjugation formula on hermitian
/// chois, the transpose computed through t∘φ∘t, the trace-duality defining
/// property on arbitrary maps, and both involutions.
SuiteResult run_adjoint_identity_suite(std::size_t dim, int trials, std::uint64_t seed);

/// Choi-level symmetry decision (real, symmetric, flip-invariant) against
/// the direct map equalities φ = φ* and φ = φᵗ: three canonical maps with
/// known answers, then random hermitian-choi maps, alternating generic ones
/// with ones constructed to be symmetric.
SuiteResult run_symmetry_agreement_suite(std::size_t dim, int trials, std::uint64_t seed);

/// Self-duality of the completely positive maps: pairings of random CP
/// pairs stay nonnegative, and dual-cone sampling of the identity-generated
/// cone never rejects a CP candidate.
SuiteResult run_cp_selfdual_suite(std::size_t dim, int trials, std::uint64_t seed);

/// Three canonical cone/candidate pairs pushed through verify_theorem2:
/// a CP candidate against the CP cone, the identity against the co-CP cone
/// (every criterion fails), the reduction map against the co-CP cone.
SuiteResult run_cone_duality_demo(std::uint64_t seed);

/// Three tensor-stability instances pushed through verify_corollary3,
/// ending with a 2-positive factor against a Schmidt-rank-2 conjugation sum.
SuiteResult run_tensor_stability_demo(std::uint64_t seed);

/// Three canonical single-generator membership decisions through
/// decide_corollary4, plus the pairing search on the undecided case.
SuiteResult run_membership_demo(std::uint64_t seed);

std::string format_sig(double v);                       // 12 significant digits
std::string digest(const std::vector<double>& values);  // comma-joined format_sig

} // namespace posmap

#endif
