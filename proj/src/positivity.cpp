#include "posmap/positivity.hpp"

#include "posmap/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace posmap {

namespace {

// stream ids keep every consumer of the seed on its own counter sequence
constexpr std::uint64_t kBlockStream = 0x0b10c0000000000ULL;
constexpr std::uint64_t kPsdStream = 0x05d0000000000000ULL;
constexpr std::uint64_t kSchmidtStream = 0x5c30000000000000ULL;
constexpr std::uint64_t kSpkStream = 0x5b4b000000000000ULL;

ComplexMatrix hermitized_choi(const SuperMap& phi, const char* what) {
    if (phi.choi().hermiticity_defect() > 1e-12 * (1.0 + phi.choi().max_abs()))
        throw NumericalError(std::string(what) + ": choi matrix is not Hermitian within tolerance");
    return phi.choi().hermitian_part();
}

// M(y)_{ij} = Σ_{r,s} conj(y_r) C[(i,r),(j,s)] y_s
ComplexMatrix contract_output(const ComplexMatrix& c, std::size_t k, std::size_t n,
                              const std::vector<Complex>& y) {
    ComplexMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < n; ++r) {
                const Complex yr = std::conj(y[r]);
                if (yr == Complex(0.0)) continue;
                for (std::size_t s = 0; s < n; ++s) acc += yr * c(i * n + r, j * n + s) * y[s];
            }
            m(i, j) = acc;
        }
    return m.hermitian_part();
}

// N(x)_{rs} = Σ_{i,j} conj(x_i) C[(i,r),(j,s)] x_j
ComplexMatrix contract_input(const ComplexMatrix& c, std::size_t k, std::size_t n,
                             const std::vector<Complex>& x) {
    ComplexMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            Complex acc = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                const Complex xi = std::conj(x[i]);
                if (xi == Complex(0.0)) continue;
                for (std::size_t j = 0; j < k; ++j) acc += xi * c(i * n + r, j * n + s) * x[j];
            }
            m(r, s) = acc;
        }
    return m.hermitian_part();
}

double product_form(const ComplexMatrix& c, std::size_t k, std::size_t n,
                    const std::vector<Complex>& x, const std::vector<Complex>& y) {
    const ComplexMatrix m = contract_input(c, k, n, x);
    Complex acc = 0.0;
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) acc += std::conj(y[r]) * m(r, s) * y[s];
    return acc.real();
}

double vector_form(const ComplexMatrix& c, const std::vector<Complex>& z) {
    Complex acc = 0.0;
    for (std::size_t a = 0; a < c.rows(); ++a) {
        const Complex za = std::conj(z[a]);
        if (za == Complex(0.0)) continue;
        for (std::size_t b = 0; b < c.cols(); ++b) acc += za * c(a, b) * z[b];
    }
    return acc.real();
}

// modified Gram-Schmidt; rank-deficient columns are replaced by deterministic
// orthonormal fill-ins with a zero diagonal in R, which leaves Q R unchanged
std::pair<ComplexMatrix, ComplexMatrix> qr_columns(const ComplexMatrix& a) {
    const std::size_t dim = a.rows(), r = a.cols();
    ComplexMatrix q(dim, r), rr(r, r);
    const double scale = a.max_abs();
    for (std::size_t c = 0; c < r; ++c) {
        std::vector<Complex> v(dim);
        for (std::size_t t = 0; t < dim; ++t) v[t] = a(t, c);
        for (std::size_t kcol = 0; kcol < c; ++kcol) {
            Complex proj = 0.0;
            for (std::size_t t = 0; t < dim; ++t) proj += std::conj(q(t, kcol)) * v[t];
            rr(kcol, c) = proj;
            for (std::size_t t = 0; t < dim; ++t) v[t] -= proj * q(t, kcol);
        }
        double nrm = 0.0;
        for (const auto& e : v) nrm += std::norm(e);
        nrm = std::sqrt(nrm);
        if (nrm > 1e-13 * (1.0 + scale)) {
            rr(c, c) = nrm;
            for (std::size_t t = 0; t < dim; ++t) q(t, c) = v[t] / nrm;
            continue;
        }
        rr(c, c) = 0.0;
        for (std::size_t basis = 0; basis < dim; ++basis) {
            std::vector<Complex> w(dim, Complex(0.0));
            w[basis] = 1.0;
            for (std::size_t kcol = 0; kcol < c; ++kcol) {
                const Complex proj = std::conj(q(basis, kcol));
                for (std::size_t t = 0; t < dim; ++t) w[t] -= proj * q(t, kcol);
            }
            double wn = 0.0;
            for (const auto& e : w) wn += std::norm(e);
            wn = std::sqrt(wn);
            if (wn > 0.5) {
                for (std::size_t t = 0; t < dim; ++t) q(t, c) = w[t] / wn;
                break;
            }
        }
    }
    return {q, rr};
}

} // namespace

void SearchConfig::validate() const {
    if (restarts < 1) throw DimensionError("SearchConfig: restarts must be >= 1");
    if (max_iters < 1) throw DimensionError("SearchConfig: max_iters must be >= 1");
    if (conv_tol <= 0.0 || psd_tol <= 0.0)
        throw DimensionError("SearchConfig: tolerances must be positive");
    if (psd_samples < 0) throw DimensionError("SearchConfig: psd_samples must be >= 0");
}

const char* to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::Falsified: return "falsified";
        case VerdictStatus::NoCounterexample: return "no_counterexample";
        case VerdictStatus::CertifiedPositive: return "certified_positive";
    }
    return "?";
}

double evaluate_witness(const SuperMap& phi, const Witness& w) {
    switch (w.kind) {
        case Witness::Kind::ChoiEigenvector:
            return vector_form(phi.choi().hermitian_part(), w.x);
        case Witness::Kind::ProductPair:
            return product_form(phi.choi().hermitian_part(), phi.in_dim(), phi.out_dim(), w.x, w.y);
        case Witness::Kind::PsdInput:
            return hermitian_min_eig(apply(phi, w.input));
    }
    throw NumericalError("evaluate_witness: unknown witness kind");
}

Verdict is_cp(const SuperMap& phi, double tol) {
    const ComplexMatrix c = hermitized_choi(phi, "is_cp");
    const auto [lambda, vec] = hermitian_bottom_eigenpair(c);
    Verdict v;
    v.stats.best_value = lambda;
    if (lambda >= -tol) {
        v.status = VerdictStatus::CertifiedPositive;
        v.certificate = "choi-psd";
    } else {
        v.status = VerdictStatus::Falsified;
        v.witness = Witness{Witness::Kind::ChoiEigenvector, lambda, vec, {}, {}};
    }
    return v;
}

BlockMinResult block_positivity_min(const SuperMap& phi, const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t k = phi.in_dim(), n = phi.out_dim();
    const ComplexMatrix c = hermitized_choi(phi, "block_positivity_min");

    BlockMinResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        CounterRng rng(cfg.seed, kBlockStream + static_cast<std::uint64_t>(restart));
        std::vector<Complex> x = random_unit_vector(k, rng);
        std::vector<Complex> y = random_unit_vector(n, rng);
        double prev = product_form(c, k, n, x, y);
        for (int iter = 0; iter < cfg.max_iters; ++iter) {
            std::tie(std::ignore, x) = hermitian_bottom_eigenpair(contract_output(c, k, n, y));
            auto [lambda, ynew] = hermitian_bottom_eigenpair(contract_input(c, k, n, x));
            y = std::move(ynew);
            if (prev - lambda < cfg.conv_tol) {
                prev = lambda;
                break;
            }
            prev = lambda;
        }
        const double value = product_form(c, k, n, x, y);
        if (value < best.value) best = {value, x, y};
    }
    return best;
}

Verdict is_positive_map(const SuperMap& phi, const SearchConfig& cfg) {
    cfg.validate();
    Verdict v;
    switch (phi.structure()) {
        case MapStructure::CompletelyPositive:
            v.status = VerdictStatus::CertifiedPositive;
            v.certificate = "cp-by-construction";
            return v;
        case MapStructure::CoCompletelyPositive:
            v.status = VerdictStatus::CertifiedPositive;
            v.certificate = "co-cp-by-construction";
            return v;
        case MapStructure::PositiveSum:
            v.status = VerdictStatus::CertifiedPositive;
            v.certificate = "positive-sum-by-construction";
            return v;
        case MapStructure::Unknown:
            break;
    }

    const ComplexMatrix c = hermitized_choi(phi, "is_positive_map");
    const double min_eig = hermitian_min_eig(c);
    if (min_eig >= -cfg.psd_tol) {
        v.status = VerdictStatus::CertifiedPositive;
        v.certificate = "choi-psd";
        v.stats.best_value = min_eig;
        return v;
    }

    const BlockMinResult block = block_positivity_min(phi, cfg);
    v.stats.restarts_used = cfg.restarts;
    v.stats.best_value = block.value;
    if (block.value < -cfg.psd_tol) {
        v.status = VerdictStatus::Falsified;
        v.witness = Witness{Witness::Kind::ProductPair, block.value, block.x, block.y, {}};
        return v;
    }

    for (int j = 0; j < cfg.psd_samples; ++j) {
        CounterRng rng(cfg.seed, kPsdStream + static_cast<std::uint64_t>(j));
        const ComplexMatrix a = random_psd(phi.in_dim(), rng);
        const double m = hermitian_min_eig(apply(phi, a));
        v.stats.psd_samples_used = j + 1;
        v.stats.best_value = std::min(v.stats.best_value, m);
        if (m < -cfg.psd_tol) {
            v.status = VerdictStatus::Falsified;
            v.witness = Witness{Witness::Kind::PsdInput, m, {}, {}, a};
            return v;
        }
    }
    v.status = VerdictStatus::NoCounterexample;
    return v;
}

namespace {

// one alternating search at exactly Schmidt rank ≤ r, factorizing the vector
// as the matrix A Bᵀ with the idle factor kept column-orthonormal so each
// half-step is a plain bottom-eigenvector problem
SchmidtMinResult schmidt_rank_search(const ComplexMatrix& c, std::size_t k, std::size_t n,
                                     std::size_t r, const SearchConfig& cfg) {
    SchmidtMinResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (int restart = 0; restart < cfg.restarts; ++restart) {
        CounterRng rng(cfg.seed,
                       kSchmidtStream + 1000003ULL * static_cast<std::uint64_t>(r) +
                           static_cast<std::uint64_t>(restart));
        ComplexMatrix a = random_gaussian_matrix(k, r, rng);
        ComplexMatrix b = qr_columns(random_gaussian_matrix(n, r, rng)).first;
        double prev = std::numeric_limits<double>::infinity();
        for (int iter = 0; iter < cfg.max_iters; ++iter) {
            // A-step: B has orthonormal columns, so <z|z> = ‖A‖_F²
            ComplexMatrix h(k * r, k * r);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t ca = 0; ca < r; ++ca)
                    for (std::size_t j = 0; j < k; ++j)
                        for (std::size_t cb = 0; cb < r; ++cb) {
                            Complex acc = 0.0;
                            for (std::size_t rr = 0; rr < n; ++rr)
                                for (std::size_t ss = 0; ss < n; ++ss)
                                    acc += std::conj(b(rr, ca)) * c(i * n + rr, j * n + ss) * b(ss, cb);
                            h(i * r + ca, j * r + cb) = acc;
                        }
            auto [lam_a, veca] = hermitian_bottom_eigenpair(h.hermitian_part());
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t ca = 0; ca < r; ++ca) a(i, ca) = veca[i * r + ca];

            // re-factor so A becomes orthonormal: A Bᵀ = Q (B Rᵀ)ᵀ
            auto [qa, ra] = qr_columns(a);
            a = qa;
            b = b * ra.transpose();

            // B-step
            ComplexMatrix g(n * r, n * r);
            for (std::size_t rr = 0; rr < n; ++rr)
                for (std::size_t ca = 0; ca < r; ++ca)
                    for (std::size_t ss = 0; ss < n; ++ss)
                        for (std::size_t cb = 0; cb < r; ++cb) {
                            Complex acc = 0.0;
                            for (std::size_t i = 0; i < k; ++i)
                                for (std::size_t j = 0; j < k; ++j)
                                    acc += std::conj(a(i, ca)) * c(i * n + rr, j * n + ss) * a(j, cb);
                            g(rr * r + ca, ss * r + cb) = acc;
                        }
            auto [lam_b, vecb] = hermitian_bottom_eigenpair(g.hermitian_part());
            for (std::size_t rr = 0; rr < n; ++rr)
                for (std::size_t ca = 0; ca < r; ++ca) b(rr, ca) = vecb[rr * r + ca];

            const bool done = prev - lam_b < cfg.conv_tol;
            prev = lam_b;
            if (done) break;

            auto [qb, rb] = qr_columns(b);
            b = qb;
            a = a * rb.transpose();
        }
        // exact value of the assembled vector z = vec(A Bᵀ)
        const ComplexMatrix m = a * b.transpose();
        std::vector<Complex> z(k * n);
        double nrm = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t rr = 0; rr < n; ++rr) {
                z[i * n + rr] = m(i, rr);
                nrm += std::norm(m(i, rr));
            }
        nrm = std::sqrt(nrm);
        if (nrm == 0.0) continue;
        for (auto& e : z) e /= nrm;
        const double value = vector_form(c, z);
        if (value < best.value) best = {value, z};
    }
    return best;
}

} // namespace

SchmidtMinResult k_block_positivity_min(const SuperMap& phi, std::size_t k, const SearchConfig& cfg) {
    cfg.validate();
    const std::size_t in = phi.in_dim(), out = phi.out_dim();
    const std::size_t mindim = std::min(in, out);
    if (k < 1 || k > mindim)
        throw DimensionError("k_block_positivity_min: k must lie in [1, min(in_dim, out_dim)]");
    const ComplexMatrix c = hermitized_choi(phi, "k_block_positivity_min");

    // rank min(in, out) puts no constraint on z at all, so the bottom Choi
    // eigenpair is the exact answer and dominates every lower rank
    if (k == mindim) {
        auto [lambda, vec] = hermitian_bottom_eigenpair(c);
        return {lambda, vec};
    }

    // cumulative over ranks 1..k: makes the result nonincreasing in k by
    // construction, since rank-r vectors are also rank-(r+1) vectors
    SchmidtMinResult best;
    best.value = std::numeric_limits<double>::infinity();
    for (std::size_t r = 1; r <= k; ++r) {
        SchmidtMinResult cand = schmidt_rank_search(c, in, out, r, cfg);
        if (cand.value < best.value) best = std::move(cand);
    }
    return best;
}

SuperMap random_sp_k(std::size_t k, std::size_t in_dim, std::size_t out_dim, std::size_t terms,
                     std::uint64_t seed) {
    if (k < 1 || k > std::min(in_dim, out_dim))
        throw DimensionError("random_sp_k: k must lie in [1, min(in_dim, out_dim)]");
    if (terms < 1) throw DimensionError("random_sp_k: terms must be >= 1");
    CounterRng rng(seed, kSpkStream);
    std::vector<std::pair<double, SuperMap>> parts;
    parts.reserve(terms);
    for (std::size_t t = 0; t < terms; ++t) {
        const ComplexMatrix v =
            random_gaussian_matrix(out_dim, k, rng) * random_gaussian_matrix(k, in_dim, rng);
        parts.emplace_back(1.0, ad_v(v));
    }
    return sum_maps(parts);
}

ComplexMatrix local_filter_from_vector(const std::vector<Complex>& x) {
    std::size_t n = 0;
    while ((n + 1) * (n + 1) <= x.size()) ++n;
    if (n * n != x.size() || n == 0)
        throw DimensionError("local_filter_from_vector: length is not a perfect tensor square");
    double nrm = 0.0;
    for (const auto& e : x) nrm += std::norm(e);
    if (std::abs(std::sqrt(nrm) - 1.0) > 1e-8)
        throw NumericalError("local_filter_from_vector: input must be a unit vector");
    ComplexMatrix v(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t r = 0; r < n; ++r) v(r, i) = x[i * n + r];
    return v;
}

SymmetryDiagnostics check_star_t_symmetry(const SuperMap& phi, double tol) {
    if (!phi.is_square())
        throw DimensionError("check_star_t_symmetry: map must be square");
    const ComplexMatrix& c = phi.choi();
    const std::size_t n = phi.in_dim();
    SymmetryDiagnostics d;
    for (const auto& e : c.data()) d.imag_defect = std::max(d.imag_defect, std::abs(e.imag()));
    d.symmetry_defect = max_abs_diff(c, c.transpose());
    double flip = 0.0;  // F C F just permutes entries: [(a,b),(c,d)] -> [(b,a),(d,c)]
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t cc = 0; cc < n; ++cc)
                for (std::size_t dd = 0; dd < n; ++dd)
                    flip = std::max(flip, std::abs(c(a * n + b, cc * n + dd) -
                                                   c(b * n + a, dd * n + cc)));
    d.flip_defect = flip;
    d.adjoint_defect = choi_distance(phi, adjoint(phi));
    d.transpose_defect = choi_distance(phi, transpose_conj(phi));
    d.symmetric = d.imag_defect <= tol && d.symmetry_defect <= tol && d.flip_defect <= tol;
    return d;
}

} // namespace posmap
