#include "posmap/supermap.hpp"

#include <cassert>
#include <cmath>

namespace posmap {

namespace {

void require_square(const SuperMap& m, const char* what) {
    if (!m.is_square()) throw DimensionError(std::string(what) + ": map must be square");
}

// structure algebra for composition: knowledge only, never a claim about
// spectra. t∘t cancels, so co-CP ∘ co-CP is CP, and mixing with sums stays
// a nonnegative sum of CP and co-CP pieces.
MapStructure compose_structure(MapStructure f, MapStructure g) {
    using S = MapStructure;
    if (f == S::Unknown || g == S::Unknown) return S::Unknown;
    if (f == S::CompletelyPositive && g == S::CompletelyPositive) return S::CompletelyPositive;
    if (f == S::CoCompletelyPositive && g == S::CoCompletelyPositive) return S::CompletelyPositive;
    if ((f == S::CompletelyPositive && g == S::CoCompletelyPositive) ||
        (f == S::CoCompletelyPositive && g == S::CompletelyPositive))
        return S::CoCompletelyPositive;
    return S::PositiveSum;
}

MapStructure tensor_structure(MapStructure a, MapStructure b) {
    using S = MapStructure;
    if (a == S::CompletelyPositive && b == S::CompletelyPositive) return S::CompletelyPositive;
    if (a == S::CoCompletelyPositive && b == S::CoCompletelyPositive) return S::CoCompletelyPositive;
    return S::Unknown;  // a mixed tensor is exactly the case nothing certifies
}

MapStructure sum_structure(MapStructure a, MapStructure b) {
    using S = MapStructure;
    if (a == S::Unknown || b == S::Unknown) return S::Unknown;
    if (a == b) return a;
    return S::PositiveSum;
}

} // namespace

SuperMap::SuperMap(std::size_t in_dim, std::size_t out_dim, ComplexMatrix choi, MapStructure structure)
    : in_dim_(in_dim), out_dim_(out_dim), choi_(std::move(choi)), structure_(structure) {
    if (in_dim_ == 0 || out_dim_ == 0) throw DimensionError("SuperMap: dimensions must be positive");
    if (!choi_.is_square() || choi_.rows() != in_dim_ * out_dim_)
        throw DimensionError("SuperMap: choi must be square of size in_dim*out_dim");
}

SuperMap identity_map(std::size_t n) {
    return {n, n, max_entangled_p(n), MapStructure::CompletelyPositive};
}

SuperMap transpose_map(std::size_t n) {
    return {n, n, flip_operator(n), MapStructure::CoCompletelyPositive};
}

SuperMap ad_v(const ComplexMatrix& v) {
    const std::size_t out = v.rows(), in = v.cols();
    ComplexMatrix choi(in * out, in * out);
    for (std::size_t i = 0; i < in; ++i)
        for (std::size_t j = 0; j < in; ++j)
            for (std::size_t r = 0; r < out; ++r)
                for (std::size_t s = 0; s < out; ++s)
                    choi(i * out + r, j * out + s) = v(r, i) * std::conj(v(s, j));
    return {in, out, std::move(choi), MapStructure::CompletelyPositive};
}

SuperMap reduction_map(std::size_t n) {
    ComplexMatrix choi = kron(ComplexMatrix::identity(n), ComplexMatrix::identity(n));
    choi -= max_entangled_p(n);
    return {n, n, std::move(choi)};
}

SuperMap lambda_mu_map(std::size_t n, double mu) {
    ComplexMatrix choi = kron(ComplexMatrix::identity(n), ComplexMatrix::identity(n));
    ComplexMatrix p = max_entangled_p(n);
    p *= Complex(mu);
    choi -= p;
    return {n, n, std::move(choi)};
}

SuperMap sum_maps(const std::vector<std::pair<double, SuperMap>>& terms) {
    if (terms.empty()) throw DimensionError("sum_maps: empty term list");
    const std::size_t in = terms.front().second.in_dim(), out = terms.front().second.out_dim();
    ComplexMatrix choi(in * out, in * out);
    MapStructure structure = terms.front().second.structure();
    for (const auto& [w, m] : terms) {
        if (w < 0.0) throw DimensionError("sum_maps: weights must be nonnegative");
        if (m.in_dim() != in || m.out_dim() != out)
            throw DimensionError("sum_maps: mixed dimensions in term list");
        ComplexMatrix scaled = m.choi();
        scaled *= Complex(w);
        choi += scaled;
        structure = sum_structure(structure, m.structure());
    }
    return {in, out, std::move(choi), structure};
}

ComplexMatrix apply(const SuperMap& phi, const ComplexMatrix& a) {
    const std::size_t k = phi.in_dim(), n = phi.out_dim();
    if (a.rows() != k || a.cols() != k)
        throw DimensionError("apply: input must match the map's input dimension");
    ComplexMatrix out(n, n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            const Complex aij = a(i, j);
            if (aij == Complex(0.0)) continue;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) out(r, s) += aij * phi.choi_at(i, r, j, s);
        }
    return out;
}

SuperMap compose(const SuperMap& phi, const SuperMap& psi) {
    if (psi.out_dim() != phi.in_dim())
        throw DimensionError("compose: inner dimensions differ");
    const std::size_t k = psi.in_dim(), n = phi.out_dim();
    ComplexMatrix choi(k * n, k * n);
    ComplexMatrix unit(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            unit(i, j) = 1.0;
            const ComplexMatrix img = apply(phi, apply(psi, unit));
            unit(i, j) = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                for (std::size_t s = 0; s < n; ++s) choi(i * n + r, j * n + s) = img(r, s);
        }
    SuperMap out{k, n, std::move(choi), compose_structure(phi.structure(), psi.structure())};
#ifndef NDEBUG
    if (psi.is_square() && phi.is_square() && psi.in_dim() == phi.in_dim()) {
        const SuperMap alt = compose_via_entangled_state(phi, psi);
        assert(choi_distance(out, alt) <= 1e-9 * (1.0 + out.choi().max_abs()) &&
               "compose: direct and entangled-state routes disagree");
    }
#endif
    return out;
}

SuperMap compose_via_entangled_state(const SuperMap& phi, const SuperMap& psi) {
    require_square(phi, "compose_via_entangled_state");
    require_square(psi, "compose_via_entangled_state");
    if (phi.in_dim() != psi.in_dim())
        throw DimensionError("compose_via_entangled_state: maps must act on the same algebra");
    const std::size_t n = phi.in_dim();
    const SuperMap big = tensor(star_t(psi), phi);
    ComplexMatrix choi = apply(big, max_entangled_p(n));
    return {n, n, std::move(choi), compose_structure(phi.structure(), psi.structure())};
}

SuperMap tensor(const SuperMap& psi, const SuperMap& phi) {
    const std::size_t k1 = psi.in_dim(), n1 = psi.out_dim();
    const std::size_t k2 = phi.in_dim(), n2 = phi.out_dim();
    const std::size_t in = k1 * k2, out = n1 * n2;
    ComplexMatrix choi(in * out, in * out);
    for (std::size_t i1 = 0; i1 < k1; ++i1)
        for (std::size_t i2 = 0; i2 < k2; ++i2)
            for (std::size_t r1 = 0; r1 < n1; ++r1)
                for (std::size_t r2 = 0; r2 < n2; ++r2) {
                    const std::size_t row = (i1 * k2 + i2) * out + (r1 * n2 + r2);
                    for (std::size_t j1 = 0; j1 < k1; ++j1)
                        for (std::size_t j2 = 0; j2 < k2; ++j2)
                            for (std::size_t s1 = 0; s1 < n1; ++s1)
                                for (std::size_t s2 = 0; s2 < n2; ++s2) {
                                    const std::size_t col = (j1 * k2 + j2) * out + (s1 * n2 + s2);
                                    choi(row, col) =
                                        psi.choi_at(i1, r1, j1, s1) * phi.choi_at(i2, r2, j2, s2);
                                }
                }
    return {in, out, std::move(choi), tensor_structure(psi.structure(), phi.structure())};
}

SuperMap adjoint(const SuperMap& phi) {
    // φ*(b)_{rs} = Tr(φ(e_{sr})·b) turns into a pure index rewiring of the choi
    const std::size_t k = phi.in_dim(), n = phi.out_dim();
    ComplexMatrix choi(n * k, n * k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t r = 0; r < k; ++r)
                for (std::size_t s = 0; s < k; ++s)
                    choi(i * k + r, j * k + s) = phi.choi_at(s, j, r, i);
    return {n, k, std::move(choi), phi.structure()};
}

SuperMap transpose_conj(const SuperMap& phi) {
    return {phi.in_dim(), phi.out_dim(), phi.choi().transpose(), phi.structure()};
}

SuperMap star_t(const SuperMap& phi) {
    return transpose_conj(adjoint(phi));
}

Complex tilde_apply(const SuperMap& phi, const ComplexMatrix& x) {
    const std::size_t d = phi.in_dim() * phi.out_dim();
    if (!x.is_square() || x.rows() != d)
        throw DimensionError("tilde_apply: argument must be square of size in_dim*out_dim");
    Complex s = 0.0;
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) s += phi.choi()(b, a) * x(b, a);
    return s;
}

double pairing(const SuperMap& phi, const SuperMap& psi) {
    if (phi.in_dim() != psi.in_dim() || phi.out_dim() != psi.out_dim())
        throw DimensionError("pairing: maps must share dimensions");
    Complex s = 0.0;
    const std::size_t d = phi.choi().rows();
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) s += phi.choi()(a, b) * psi.choi()(b, a);
    if (std::abs(s.imag()) > 1e-10 * (1.0 + std::abs(s.real())))
        throw NumericalError("pairing: non-negligible imaginary part; choi matrices not Hermitian");
    return s.real();
}

ComplexMatrix pi_contract(const ComplexMatrix& x) {
    if (!x.is_square()) throw DimensionError("pi_contract: matrix must be square");
    std::size_t n = 0;
    while ((n + 1) * (n + 1) <= x.rows()) ++n;
    if (n * n != x.rows())
        throw DimensionError("pi_contract: dimension is not a perfect tensor square");
    ComplexMatrix out(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t s = 0; s < n; ++s) {
            Complex acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) acc += x(m * n + m, s * n + r);
            out(r, s) = acc;
        }
    return out;
}

double choi_distance(const SuperMap& a, const SuperMap& b) {
    if (a.in_dim() != b.in_dim() || a.out_dim() != b.out_dim())
        throw DimensionError("choi_distance: maps must share dimensions");
    return max_abs_diff(a.choi(), b.choi());
}

} // namespace posmap
