#include "posmap/cones.hpp"

#include "posmap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace posmap {

namespace {

constexpr std::uint64_t kSampleStream = 0xc0e0000000000000ULL;
constexpr std::uint64_t kDualStream = 0xd0a1000000000000ULL;
constexpr std::uint64_t kProbeStream = 0x9b0e000000000000ULL;

void require_square_same_dim(const SuperMap& m, std::size_t n, const char* what) {
    if (!m.is_square() || m.in_dim() != n)
        throw DimensionError(std::string(what) + ": map must be square on dimension " +
                             std::to_string(n));
}

double state_min_eig(const SuperMap& psi, const SuperMap& phi, std::vector<Complex>* vec_out) {
    const std::size_t n = psi.in_dim();
    const ComplexMatrix w = apply(tensor(psi, phi), max_entangled_p(n));
    auto [lambda, vec] = hermitian_bottom_eigenpair(w.hermitian_part());
    if (vec_out) *vec_out = std::move(vec);
    return lambda;
}

// Given a vector x on the input leg of g ⊗ φ with (g⊗φ)(x̄ x̄†) not PSD,
// fold the local operator w (w ⊗ 1 maps p onto x̄ x̄†) into g: the cone
// element g ∘ Ad_w exposes the same failure through ((g∘Ad_w) ⊗ φ)(p).
SuperMap right_filter_element(const SuperMap& g, const std::vector<Complex>& x) {
    const std::size_t n = g.in_dim();
    ComplexMatrix w(n, n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t j = 0; j < n; ++j) w(a, j) = std::conj(x[a * n + j]);
    return compose(g, ad_v(w));
}

} // namespace

const char* to_string(MembershipStatus s) {
    switch (s) {
        case MembershipStatus::NotMember: return "not_member";
        case MembershipStatus::ConsistentWithMembership: return "consistent_with_membership";
        case MembershipStatus::Member: return "member";
    }
    return "?";
}

MappingCone MappingCone::make_symmetric(std::vector<SuperMap> generators, const SearchConfig& cfg) {
    if (generators.empty()) throw DimensionError("MappingCone: generator list is empty");
    const std::size_t n = generators.front().in_dim();
    for (std::size_t i = 0; i < generators.size(); ++i) {
        require_square_same_dim(generators[i], n, "MappingCone");
        if (is_positive_map(generators[i], cfg).falsified())
            throw NumericalError("MappingCone: generator " + std::to_string(i) +
                                 " is falsified as a positive map");
    }
    std::vector<SuperMap> closed;
    auto push_unique = [&closed](const SuperMap& m) {
        for (const auto& have : closed)
            if (choi_distance(have, m) <= 1e-10) return;
        closed.push_back(m);
    };
    for (const auto& g : generators) {
        push_unique(g);
        push_unique(adjoint(g));
        push_unique(transpose_conj(g));
        push_unique(star_t(g));
    }
    return MappingCone(n, std::move(closed), true);
}

MappingCone cp_cone(std::size_t n) { return MappingCone::make_symmetric({identity_map(n)}); }

MappingCone cocp_cone(std::size_t n) { return MappingCone::make_symmetric({transpose_map(n)}); }

SuperMap sample_element(const MappingCone& cone, std::uint64_t seed) {
    CounterRng rng(seed, kSampleStream);
    const std::size_t n = cone.dim();
    const std::size_t terms = 1 + static_cast<std::size_t>(rng.next_u64() % 3);
    std::vector<std::pair<double, SuperMap>> parts;
    parts.reserve(terms);
    for (std::size_t t = 0; t < terms; ++t) {
        double u = rng.uniform();
        if (u >= 1.0) u = 0.5;
        const double weight = -std::log(1.0 - u);
        const std::size_t gi = static_cast<std::size_t>(rng.next_u64() % cone.generators().size());
        const ComplexMatrix left = random_gaussian_matrix(n, n, rng);
        const ComplexMatrix right = random_gaussian_matrix(n, n, rng);
        parts.emplace_back(weight,
                           compose(ad_v(left), compose(cone.generators()[gi], ad_v(right))));
    }
    return sum_maps(parts);
}

MembershipReport falsify_dual_membership(const MappingCone& cone, const SuperMap& phi, int trials,
                                         const SearchConfig& cfg) {
    cfg.validate();
    require_square_same_dim(phi, cone.dim(), "falsify_dual_membership");
    if (trials < 0) throw DimensionError("falsify_dual_membership: trials must be >= 0");

    MembershipReport rep;
    rep.min_value = std::numeric_limits<double>::infinity();
    auto test = [&](const SuperMap& psi) {
        std::vector<Complex> vec;
        const double m = state_min_eig(psi, phi, &vec);
        ++rep.trials_used;
        rep.min_value = std::min(rep.min_value, m);
        if (m < -cfg.psd_tol) {
            rep.status = MembershipStatus::NotMember;
            rep.witness_element = psi;
            rep.witness = Witness{Witness::Kind::ChoiEigenvector, m, std::move(vec), {}, {}};
            rep.note = "eigenvector of (psi (x) phi)(p), the choi matrix of phi ∘ star_t(psi)";
            return true;
        }
        return false;
    };

    for (const auto& g : cone.generators())
        if (test(g)) return rep;
    for (int t = 0; t < trials; ++t)
        if (test(sample_element(cone, cfg.seed + static_cast<std::uint64_t>(t))))
            return rep;
    rep.status = MembershipStatus::ConsistentWithMembership;
    return rep;
}

DualPairResult dual_pair_min(const MappingCone& cone, const SuperMap& phi, const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t n = cone.dim();
    require_square_same_dim(phi, n, "dual_pair_min");

    DualPairResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t gi = 0; gi < cone.generators().size(); ++gi) {
        const double raw = pairing(phi, cone.generators()[gi]);
        if (raw < best.value) {
            best.value = raw;
            best.element = cone.generators()[gi];
            best.generator_index = static_cast<int>(gi);
        }
    }

    // blocks A_ij = φ(e_ij) read straight out of the choi
    const std::size_t d = n * n;
    auto phi_block = [&phi, n](std::size_t i, std::size_t j, std::size_t a, std::size_t b) {
        return phi.choi_at(i, a, j, b);
    };
    const double root_n = std::sqrt(static_cast<double>(n));

    for (std::size_t gi = 0; gi < cone.generators().size(); ++gi) {
        const SuperMap& g = cone.generators()[gi];
        const SuperMap g_adj = adjoint(g);
        for (int restart = 0; restart < cfg.restarts; ++restart) {
            CounterRng rng(cfg.seed, kDualStream + 1000003ULL * gi + static_cast<std::uint64_t>(restart));
            ComplexMatrix u = random_gaussian_matrix(n, n, rng);
            ComplexMatrix v = random_gaussian_matrix(n, n, rng);
            u *= Complex(root_n / std::max(u.frobenius_norm(), 1e-300));
            v *= Complex(root_n / std::max(v.frobenius_norm(), 1e-300));

            double prev = std::numeric_limits<double>::infinity();
            for (int iter = 0; iter < cfg.max_iters; ++iter) {
                // u-step: f = Σ_ij Tr(A_ij u G_ji u†) is a quadratic form in vec(u)
                std::vector<ComplexMatrix> gcols(n * n, ComplexMatrix(n, n));
                for (std::size_t j = 0; j < n; ++j)
                    for (std::size_t i = 0; i < n; ++i) {
                        ComplexMatrix outer(n, n);
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t b = 0; b < n; ++b)
                                outer(a, b) = v(a, j) * std::conj(v(b, i));
                        gcols[j * n + i] = apply(g, outer);  // g(v e_ji v†)
                    }
                ComplexMatrix q(d, d);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t dd = 0; dd < n; ++dd)
                        for (std::size_t b = 0; b < n; ++b)
                            for (std::size_t cc = 0; cc < n; ++cc) {
                                Complex acc = 0.0;
                                for (std::size_t i = 0; i < n; ++i)
                                    for (std::size_t j = 0; j < n; ++j)
                                        acc += phi_block(i, j, a, b) * gcols[j * n + i](cc, dd);
                                q(a * n + dd, b * n + cc) = acc;
                            }
                auto [lam_u, vec_u] = hermitian_bottom_eigenpair(q.hermitian_part());
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t dd = 0; dd < n; ++dd) u(a, dd) = root_n * vec_u[a * n + dd];

                // v-step: push u through φ and g's adjoint, leaving a form in vec(v)
                ComplexMatrix q2(d, d);
                std::vector<ComplexMatrix> bij(n * n, ComplexMatrix(n, n));
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        ComplexMatrix y(n, n);
                        for (std::size_t a = 0; a < n; ++a)
                            for (std::size_t b = 0; b < n; ++b) {
                                Complex acc = 0.0;
                                for (std::size_t aa = 0; aa < n; ++aa)
                                    for (std::size_t bb = 0; bb < n; ++bb)
                                        acc += std::conj(u(aa, a)) * phi_block(i, j, aa, bb) * u(bb, b);
                                y(a, b) = acc;  // (u† φ(e_ij) u)_{ab}
                            }
                        bij[i * n + j] = apply(g_adj, y);
                    }
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t b = 0; b < n; ++b)
                            for (std::size_t j = 0; j < n; ++j)
                                q2(a * n + i, b * n + j) = bij[i * n + j](a, b);
                auto [lam_v, vec_v] = hermitian_bottom_eigenpair(q2.hermitian_part());
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t i = 0; i < n; ++i) v(a, i) = root_n * vec_v[a * n + i];

                const double value = static_cast<double>(n) * lam_v;
                const bool done = prev - value < cfg.conv_tol;
                prev = value;
                if (done) break;
            }

            const SuperMap candidate = compose(ad_v(u), compose(g, ad_v(v)));
            const double exact = pairing(phi, candidate);
            if (exact < best.value) {
                best.value = exact;
                best.element = candidate;
                best.generator_index = static_cast<int>(gi);
            }
        }
    }
    return best;
}

MembershipReport decide_corollary4(const SuperMap& g, const SuperMap& phi, const SearchConfig& cfg) {
    cfg.validate();
    if (!g.is_square() || !phi.is_square() || g.in_dim() != phi.in_dim())
        throw DimensionError("decide_corollary4: generator and candidate must be square maps on "
                             "the same algebra");
    const SymmetryDiagnostics sym = check_star_t_symmetry(g);
    if (!sym.symmetric)
        throw NumericalError("decide_corollary4: generator must satisfy g = g* = g^t (choi real, "
                             "symmetric, flip-invariant)");

    const Verdict verdict = is_positive_map(tensor(g, phi), cfg);
    MembershipReport rep;
    rep.trials_used = 1;
    rep.min_value = verdict.stats.best_value;
    rep.witness = verdict.witness;

    if (verdict.falsified()) {
        rep.status = MembershipStatus::NotMember;
        // fold the counterexample into a cone element so the failure is
        // visible as ((g ∘ Ad_w) ⊗ φ)(p) not PSD, the dual-membership form
        const Witness& w = *verdict.witness;
        bool confirmed = false;
        if (w.kind == Witness::Kind::ProductPair) {
            SuperMap psi = right_filter_element(g, w.x);
            if (state_min_eig(psi, phi, nullptr) < -cfg.psd_tol) {
                rep.witness_element = std::move(psi);
                confirmed = true;
            }
        } else if (w.kind == Witness::Kind::PsdInput) {
            const HermitianSpectrum spec = hermitian_eig(w.input);
            const std::size_t dim = w.input.rows();
            for (std::size_t col = 0; col < dim && !confirmed; ++col) {
                if (spec.eigenvalues[col] <= 1e-12) continue;
                std::vector<Complex> x(dim);
                for (std::size_t rr = 0; rr < dim; ++rr) x[rr] = spec.eigenvectors(rr, col);
                SuperMap psi = right_filter_element(g, x);
                if (state_min_eig(psi, phi, nullptr) < -cfg.psd_tol) {
                    rep.witness_element = std::move(psi);
                    confirmed = true;
                }
            }
        }
        rep.cross_check_consistent = confirmed;
        if (!confirmed) rep.note = "counterexample did not translate into a cone element";
        return rep;
    }

    rep.status = verdict.status == VerdictStatus::CertifiedPositive
                     ? MembershipStatus::Member
                     : MembershipStatus::ConsistentWithMembership;
    if (!verdict.certificate.empty()) rep.note = verdict.certificate;

    const MembershipReport probe =
        falsify_dual_membership(MappingCone::make_symmetric({g}, cfg), phi, 8, cfg);
    rep.cross_check_consistent = probe.status != MembershipStatus::NotMember;
    if (!rep.cross_check_consistent)
        rep.note = "dual sampling found a counterexample the positivity search missed";
    return rep;
}

ConeDualityReport verify_theorem2(const MappingCone& cone, const SuperMap& phi, int trials,
                                  const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t n = cone.dim();
    require_square_same_dim(phi, n, "verify_theorem2");

    ConeDualityReport rep;
    rep.min_compose_eig = std::numeric_limits<double>::infinity();
    rep.min_tensor_eig = std::numeric_limits<double>::infinity();
    rep.min_state_eig = std::numeric_limits<double>::infinity();
    std::optional<SuperMap> compose_witness, state_witness;

    std::vector<SuperMap> psis = cone.generators();
    for (int t = 0; t < trials; ++t)
        psis.push_back(sample_element(cone, cfg.seed + static_cast<std::uint64_t>(t)));

    const int tensor_probes = std::max(1, cfg.psd_samples / std::max(1, int(psis.size())));
    for (std::size_t pi = 0; pi < psis.size(); ++pi) {
        const SuperMap& psi = psis[pi];
        ++rep.psi_tested;

        const double m2 = hermitian_min_eig(compose(phi, psi).choi().hermitian_part());
        if (m2 < rep.min_compose_eig) {
            rep.min_compose_eig = m2;
            if (m2 < -cfg.psd_tol) compose_witness = psi;
        }

        const SuperMap prod = tensor(psi, phi);
        for (int j = 0; j < tensor_probes; ++j) {
            CounterRng rng(cfg.seed, kProbeStream + 4099ULL * pi + static_cast<std::uint64_t>(j));
            const double m3 = hermitian_min_eig(apply(prod, random_psd(n * n, rng)));
            rep.min_tensor_eig = std::min(rep.min_tensor_eig, m3);
        }

        const double m4 = state_min_eig(psi, phi, nullptr);
        if (m4 < rep.min_state_eig) {
            rep.min_state_eig = m4;
            if (m4 < -cfg.psd_tol) state_witness = psi;
        }
    }

    rep.cond_compose_falsified = rep.min_compose_eig < -cfg.psd_tol;
    rep.cond_tensor_falsified = rep.min_tensor_eig < -cfg.psd_tol;
    rep.cond_state_falsified = rep.min_state_eig < -cfg.psd_tol;

    // (ψ⊗φ)(p) = choi(φ ∘ ψ^{*t}) ties the two eigenvalue criteria together
    // exactly, so every one-sided falsification must re-verify on the other
    // side after the ψ ↦ ψ^{*t} swap
    if (rep.cond_compose_falsified && compose_witness) {
        const double other = state_min_eig(star_t(*compose_witness), phi, nullptr);
        if (std::abs(other - rep.min_compose_eig) > 1e-9) {
            rep.consistent = false;
            rep.note = "compose-side counterexample failed to re-verify on the state side";
        } else {
            rep.cond_state_falsified = true;
        }
    }
    if (rep.cond_state_falsified && state_witness) {
        const double other =
            hermitian_min_eig(compose(phi, star_t(*state_witness)).choi().hermitian_part());
        if (std::abs(other - rep.min_state_eig) > 1e-9) {
            rep.consistent = false;
            rep.note = "state-side counterexample failed to re-verify on the compose side";
        } else {
            rep.cond_compose_falsified = true;
        }
    }
    if (rep.cond_tensor_falsified && !rep.cond_compose_falsified && !rep.cond_state_falsified) {
        rep.consistent = false;
        rep.note = "tensor-side counterexample with both eigenvalue criteria clean";
    }
    return rep;
}

TensorPositivityReport verify_corollary3(const MappingCone& cone, const SuperMap& alpha,
                                         const SuperMap& gamma, const SuperMap& beta,
                                         const SuperMap& delta, const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t n = cone.dim();
    require_square_same_dim(alpha, n, "verify_corollary3 (alpha)");
    require_square_same_dim(gamma, n, "verify_corollary3 (gamma)");
    if (beta.out_dim() != n)
        throw DimensionError("verify_corollary3: beta must map into the cone's algebra");
    if (delta.out_dim() != n)
        throw DimensionError("verify_corollary3: delta must map into the cone's algebra");

    if (is_cp(beta).falsified())
        throw NumericalError("verify_corollary3: hypothesis failed, beta is not completely positive");
    if (is_cp(delta).falsified())
        throw NumericalError("verify_corollary3: hypothesis failed, delta is not completely positive");
    if (is_positive_map(alpha, cfg).falsified())
        throw NumericalError("verify_corollary3: hypothesis failed, alpha is not a positive map");
    if (falsify_dual_membership(cone, gamma, 4, cfg).status == MembershipStatus::NotMember)
        throw NumericalError("verify_corollary3: hypothesis failed, gamma is outside the dual cone");

    const SuperMap left = compose(alpha, beta);
    const SuperMap right = compose(gamma, delta);
    const SuperMap prod = tensor(left, right);

    TensorPositivityReport rep;
    rep.block_min = block_positivity_min(prod, cfg).value;
    rep.min_output_eig = std::numeric_limits<double>::infinity();
    for (int j = 0; j < cfg.psd_samples; ++j) {
        CounterRng rng(cfg.seed, kProbeStream + 7919ULL + static_cast<std::uint64_t>(j));
        const double m = hermitian_min_eig(apply(prod, random_psd(prod.in_dim(), rng)));
        rep.min_output_eig = std::min(rep.min_output_eig, m);
        ++rep.inputs_checked;
    }
    rep.falsified = rep.block_min < -cfg.psd_tol || rep.min_output_eig < -cfg.psd_tol;
    return rep;
}

} // namespace posmap
