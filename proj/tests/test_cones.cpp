#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "posmap/cones.hpp"
#include "posmap/rng.hpp"

#include <cmath>
#include <string>

using namespace posmap;

namespace {

ComplexMatrix canonical_v() {
    ComplexMatrix v(2, 2);
    v(0, 0) = 1.0;
    v(0, 1) = 2.0;
    v(1, 0) = 2.0;
    v(1, 1) = 3.0;
    return v;
}

SuperMap random_cp(std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed, 0xc9ULL);
    return sum_maps({{1.0, ad_v(random_gaussian_matrix(n, n, rng))},
                     {1.0, ad_v(random_gaussian_matrix(n, n, rng))}});
}

} // namespace

TEST_CASE("symmetric closure of generator lists") {
    SearchConfig cfg;
    cfg.restarts = 10;
    cfg.psd_samples = 10;

    const MappingCone ci = MappingCone::make_symmetric({identity_map(2)}, cfg);
    CHECK(ci.generators().size() == 1);
    CHECK(ci.symmetric());
    CHECK(ci.dim() == 2);

    const MappingCone ct = MappingCone::make_symmetric({transpose_map(2)}, cfg);
    CHECK(ct.generators().size() == 1);

    // Ad_{e21} is not adjoint-closed; the closure adds Ad_{e12}
    const MappingCone ca = MappingCone::make_symmetric({ad_v(matrix_unit(2, 1, 2))}, cfg);
    CHECK(ca.generators().size() == 2);

    // closing twice changes nothing
    const MappingCone ca2 = MappingCone::make_symmetric(ca.generators(), cfg);
    CHECK(ca2.generators().size() == ca.generators().size());

    // a generator that fails positivity outright is rejected
    ComplexMatrix neg = max_entangled_p(2);
    neg *= Complex(-1.0);
    CHECK_THROWS_AS(MappingCone::make_symmetric({SuperMap(2, 2, neg)}, cfg), NumericalError);
    CHECK_THROWS_AS(MappingCone::make_symmetric({identity_map(2), identity_map(3)}, cfg),
                    DimensionError);
    CHECK_THROWS_AS(MappingCone::make_symmetric({}, cfg), DimensionError);
}

TEST_CASE("sampled cone elements stay in the cone") {
    const MappingCone ci = cp_cone(2);
    const MappingCone ct = cocp_cone(2);

    const SuperMap a = sample_element(ci, 5);
    const SuperMap b = sample_element(ci, 5);
    CHECK(choi_distance(a, b) == 0.0);
    CHECK(a.structure() == MapStructure::CompletelyPositive);
    CHECK(is_cp(a).status == VerdictStatus::CertifiedPositive);

    const SuperMap c = sample_element(ct, 6);
    CHECK(c.structure() == MapStructure::CoCompletelyPositive);
    // co-CP means the partial transpose of the choi is PSD
    const ComplexMatrix pt = partial_transpose(c.choi(), Leg::Second, 2, 2);
    CHECK(hermitian_min_eig(pt.hermitian_part()) >= -1e-10);

    CHECK(choi_distance(sample_element(ci, 5), sample_element(ci, 7)) > 1e-9);
}

TEST_CASE("hunting dual-membership counterexamples") {
    SearchConfig cfg;
    cfg.psd_samples = 10;

    // the transpose cone does not pair positively with the identity map
    const MembershipReport bad = falsify_dual_membership(cocp_cone(2), identity_map(2), 4, cfg);
    REQUIRE(bad.status == MembershipStatus::NotMember);
    REQUIRE(bad.witness_element.has_value());
    REQUIRE(bad.witness.has_value());
    CHECK(bad.min_value == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(bad.witness->kind == Witness::Kind::ChoiEigenvector);

    // the witness element composes with the candidate into a non-CP map
    const SuperMap composite = compose(identity_map(2), star_t(*bad.witness_element));
    CHECK(evaluate_witness(composite, *bad.witness) ==
          doctest::Approx(bad.min_value).epsilon(1e-9));

    // CP candidates survive both cones that should accept them
    CHECK(falsify_dual_membership(cp_cone(2), ad_v(canonical_v()), 4, cfg).status ==
          MembershipStatus::ConsistentWithMembership);
    CHECK(falsify_dual_membership(cocp_cone(2), transpose_map(2), 4, cfg).status ==
          MembershipStatus::ConsistentWithMembership);
    CHECK(falsify_dual_membership(cocp_cone(2), reduction_map(2), 6, cfg).status ==
          MembershipStatus::ConsistentWithMembership);

    CHECK(bad.trials_used >= 1);
    CHECK(std::string(to_string(MembershipStatus::NotMember)) == "not_member");
    CHECK(std::string(to_string(MembershipStatus::Member)) == "member");
    CHECK(std::string(to_string(MembershipStatus::ConsistentWithMembership)) ==
          "consistent_with_membership");
}

TEST_CASE("pairing minimization over a cone") {
    SearchConfig cfg;
    cfg.restarts = 20;

    // CP against CP: the pairing is a squared overlap, never negative
    const DualPairResult ok = dual_pair_min(cp_cone(2), ad_v(canonical_v()), cfg);
    CHECK(ok.value >= -1e-12);

    // transpose cone against the identity: scaled elements reach -2
    const DualPairResult neg = dual_pair_min(cocp_cone(2), identity_map(2), cfg);
    CHECK(neg.value <= -2.0 + 1e-6);
    REQUIRE(neg.element.has_value());
    CHECK(pairing(identity_map(2), *neg.element) == doctest::Approx(neg.value).epsilon(1e-9));
    CHECK(neg.generator_index == 0);

    // never worse than the raw generators
    const DualPairResult red = dual_pair_min(cocp_cone(2), reduction_map(2), cfg);
    CHECK(red.value <= pairing(reduction_map(2), transpose_map(2)) + 1e-12);
    CHECK(red.value >= -1e-9);  // reduction lies in the dual of the transpose cone

    const DualPairResult tt = dual_pair_min(cocp_cone(2), transpose_map(2), cfg);
    CHECK(tt.value >= -1e-9);
}

TEST_CASE("single-generator dual membership decisions") {
    SearchConfig cfg;
    cfg.restarts = 15;
    cfg.psd_samples = 15;

    // identity generator, CP candidate: certified through the tensor structure
    const MembershipReport member = decide_corollary4(identity_map(2), ad_v(canonical_v()), cfg);
    CHECK(member.status == MembershipStatus::Member);
    CHECK(member.cross_check_consistent);

    // transpose generator, identity candidate: t ⊗ ι is falsified
    const MembershipReport out = decide_corollary4(transpose_map(2), identity_map(2), cfg);
    REQUIRE(out.status == MembershipStatus::NotMember);
    REQUIRE(out.witness.has_value());
    CHECK(out.min_value < -1e-3);
    CHECK(evaluate_witness(tensor(transpose_map(2), identity_map(2)), *out.witness) ==
          doctest::Approx(out.min_value).epsilon(1e-9));
    CHECK(out.cross_check_consistent);
    // the counterexample folds into a cone element whose pairing defect matches
    REQUIRE(out.witness_element.has_value());

    // transpose generator, reduction candidate: no certificate either way
    const MembershipReport open = decide_corollary4(transpose_map(2), reduction_map(2), cfg);
    CHECK(open.status == MembershipStatus::ConsistentWithMembership);
    CHECK(open.cross_check_consistent);

    // the generator must satisfy g = g* = gᵗ
    CHECK_THROWS_AS(decide_corollary4(ad_v(matrix_unit(2, 1, 2)), identity_map(2), cfg),
                    NumericalError);
    CHECK_THROWS_AS(decide_corollary4(identity_map(2), identity_map(3), cfg), DimensionError);
}

TEST_CASE("three equivalent duality criteria stay in step") {
    SearchConfig cfg;
    cfg.restarts = 10;
    cfg.psd_samples = 30;

    // CP candidate against the CP cone: all three criteria clean
    const ConeDualityReport clean = verify_theorem2(cp_cone(2), ad_v(canonical_v()), 6, cfg);
    CHECK(!clean.cond_compose_falsified);
    CHECK(!clean.cond_tensor_falsified);
    CHECK(!clean.cond_state_falsified);
    CHECK(clean.consistent);
    CHECK(clean.psi_tested >= 7);

    // identity against the transpose cone: all three criteria fail together
    const ConeDualityReport bad = verify_theorem2(cocp_cone(2), identity_map(2), 6, cfg);
    CHECK(bad.cond_compose_falsified);
    CHECK(bad.cond_state_falsified);
    CHECK(bad.cond_tensor_falsified);
    CHECK(bad.consistent);
    // the raw transpose generator alone already reaches -1
    CHECK(bad.min_state_eig <= -1.0 + 1e-9);

    // reduction against the transpose cone: consistent with membership
    const ConeDualityReport red = verify_theorem2(cocp_cone(2), reduction_map(2), 6, cfg);
    CHECK(!red.cond_compose_falsified);
    CHECK(!red.cond_state_falsified);
    CHECK(red.consistent);
}

TEST_CASE("tensor stability of composed pairs") {
    SearchConfig cfg;
    cfg.restarts = 10;
    cfg.psd_samples = 30;

    const TensorPositivityReport ok = verify_corollary3(
        cp_cone(2), ad_v(canonical_v()), random_cp(2, 1), random_cp(2, 2), random_cp(2, 3), cfg);
    CHECK(!ok.falsified);
    CHECK(ok.min_output_eig >= -1e-9);
    CHECK(ok.block_min >= -1e-9);
    CHECK(ok.inputs_checked == 30);

    // transpose cone: α = t, γ = reduction (in the dual), CP β and δ
    const TensorPositivityReport tr = verify_corollary3(
        cocp_cone(2), transpose_map(2), reduction_map(2), random_cp(2, 4), identity_map(2), cfg);
    CHECK(!tr.falsified);

    // violated hypotheses are reported by name
    CHECK_THROWS_WITH_AS(verify_corollary3(cocp_cone(2), transpose_map(2), reduction_map(2),
                                           transpose_map(2), identity_map(2), cfg),
                         doctest::Contains("beta"), NumericalError);
    CHECK_THROWS_WITH_AS(verify_corollary3(cocp_cone(2), transpose_map(2), identity_map(2),
                                           random_cp(2, 5), identity_map(2), cfg),
                         doctest::Contains("gamma"), NumericalError);
}
