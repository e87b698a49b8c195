#pragma once

#include "scpn/superfield.hpp"

#include <vector>

namespace scpn {

/// Constant jet value of the body coefficient, or zero when there is no body.
template <class F>
F body_value(const SuperScalar<F>& s)
{
    const Jet<F>* b = s.body();
    return b ? b->value() : F{};
}

/// Inverse of an even scalar; `what` names the quantity in the ZeroBody /
/// ParityError diagnostic.
template <class F>
SuperScalar<F> invert_even(const SuperScalar<F>& s, const std::string& what)
{
    require(s.is_even(), ErrorKind::ParityError, what + " must be even");
    if (field_traits<F>::is_zero(body_value(s))) raise(ErrorKind::ZeroBody, what);
    return ginvert(s);
}

/// sum_k conj(u_k) v_k.
template <class F>
SuperScalar<F> inner(const SuperVector<F>& u, const SuperVector<F>& v)
{
    require(u.size() == v.size(), ErrorKind::DimensionMismatch,
            "inner product of sizes " + std::to_string(u.size()) + " and " + std::to_string(v.size()));
    SuperScalar<F> acc(u[0].algebra());
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k].is_zero() || v[k].is_zero()) continue;
        acc += gconj(u[k]) * v[k];
    }
    return acc;
}

/// z_0 = psi_0, z_j = psi_j - sum_{k<j} (z_k^dagger psi_j / |z_k|^2) z_k.
/// Also returns the inverse squared norms 1/|z_j|^2 it had to compute.
template <class F>
struct GramSchmidtResult {
    std::vector<SuperVector<F>> z;
    std::vector<SuperScalar<F>> inv_norm2;
};

template <class F>
GramSchmidtResult<F> gram_schmidt_full(const std::vector<SuperVector<F>>& psis)
{
    GramSchmidtResult<F> out;
    for (std::size_t j = 0; j < psis.size(); ++j) {
        SuperVector<F> z = psis[j];
        // Exact arithmetic: classical Gram-Schmidt. Floating point: modified
        // Gram-Schmidt with one re-orthogonalization pass; both agree exactly
        // in exact arithmetic, the latter keeps rounding from piling up.
        const int passes = field_traits<F>::exact ? 1 : 2;
        for (int pass = 0; pass < passes; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                const SuperScalar<F> c = inner(out.z[k], field_traits<F>::exact ? psis[j] : z) * out.inv_norm2[k];
                if (c.is_zero()) continue;
                z = z - c * out.z[k];
            }
        const SuperScalar<F> n2 = inner(z, z);
        if (field_traits<F>::is_zero(body_value(n2)))
            raise(ErrorKind::LinearDependence, "|z_" + std::to_string(j) + "|^2 has vanishing body");
        out.inv_norm2.push_back(ginvert(n2));
        out.z.push_back(std::move(z));
    }
    return out;
}

template <class F>
std::vector<SuperVector<F>> gram_schmidt(const std::vector<SuperVector<F>>& psis)
{
    return gram_schmidt_full(psis).z;
}

/// z z^dagger / |z|^2, with 1/|z|^2 supplied when already known.
template <class F>
SuperMatrix<F> projector_from(const SuperVector<F>& z, const SuperScalar<F>& inv_norm2)
{
    // |z|^2 is even, hence central.
    return outer(z, z) * inv_norm2;
}

template <class F>
SuperMatrix<F> projector_from(const SuperVector<F>& z)
{
    const SuperScalar<F> n2 = inner(z, z);
    if (field_traits<F>::is_zero(body_value(n2))) raise(ErrorKind::ZeroBody, "|z|^2 has vanishing body");
    return projector_from(z, ginvert(n2));
}

template <class F>
SuperMatrix<F> mat_commutator(const SuperMatrix<F>& a, const SuperMatrix<F>& b)
{
    require(a.size() == b.size(), ErrorKind::DimensionMismatch, "commutator of different sizes");
    return a * b - b * a;
}

/// Dense inverse of a matrix over the scalar field; nullopt when singular.
template <class F>
std::optional<std::vector<F>> invert_field_matrix(std::vector<F> m, std::size_t n)
{
    std::vector<F> inv(n * n, F{});
    for (std::size_t i = 0; i < n; ++i) inv[i * n + i] = field_traits<F>::from_int(1);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = n;
        double best = 0.0;
        for (std::size_t r = col; r < n; ++r) {
            const double a = field_traits<F>::abs(m[r * n + col]);
            if (!field_traits<F>::is_zero(m[r * n + col]) && a > best) {
                best = a;
                pivot = r;
                if constexpr (field_traits<F>::exact) break; // any nonzero pivot is exact
            }
        }
        if (pivot == n) return std::nullopt;
        if (pivot != col)
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(m[pivot * n + c], m[col * n + c]);
                std::swap(inv[pivot * n + c], inv[col * n + c]);
            }
        const F p = field_traits<F>::inverse(m[col * n + col]);
        for (std::size_t c = 0; c < n; ++c) {
            m[col * n + c] *= p;
            inv[col * n + c] *= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || field_traits<F>::is_zero(m[r * n + col])) continue;
            const F f = m[r * n + col];
            for (std::size_t c = 0; c < n; ++c) {
                m[r * n + c] -= f * m[col * n + c];
                inv[r * n + c] -= f * inv[col * n + c];
            }
        }
    }
    return inv;
}

/// Inverse of a matrix with even entries: invert the numeric body B, then
/// sum the Neumann series of N = B^{-1}(M - B), which is nilpotent because
/// it raises Grassmann degree or jet degree.
template <class F>
SuperMatrix<F> mat_invert_even(const SuperMatrix<F>& m, const Frame<F>& frame)
{
    const std::size_t n = m.size();
    std::vector<F> body(n * n, F{});
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            require(m(i, j).is_even(), ErrorKind::ParityError,
                    "entry (" + std::to_string(i) + "," + std::to_string(j) + ") is not even");
            body[i * n + j] = body_value(m(i, j));
        }
    auto inv = invert_field_matrix(body, n);
    if (!inv) raise(ErrorKind::SingularBody, "body matrix is singular");

    SuperMatrix<F> binv(frame.algebra, n), b(frame.algebra, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            binv(i, j) = frame.constant((*inv)[i * n + j]);
            b(i, j) = frame.constant(body[i * n + j]);
        }
    const SuperMatrix<F> nil = binv * (m - b);
    SuperMatrix<F> sum = SuperMatrix<F>::identity(frame, n);
    SuperMatrix<F> power = sum;
    const int bound = frame.algebra->generator_count() + frame.orders.plus + frame.orders.minus + 1;
    for (int k = 1; k <= bound; ++k) {
        power = scale(power * nil, -field_traits<F>::from_int(1));
        if (is_zero(power)) break;
        sum = sum + power;
    }
    return sum * binv;
}

/// Frame (algebra, base point, orders) read off the first nonzero entry.
template <class F>
std::optional<Frame<F>> frame_of(const SuperMatrix<F>& m)
{
    for (const auto& e : m.entries())
        if (!e.is_zero()) {
            const Jet<F>& j = e.terms().front().coeff;
            return Frame<F>{e.algebra(), j.base(), j.orders()};
        }
    return std::nullopt;
}

template <class F>
SuperMatrix<F> mat_invert_even(const SuperMatrix<F>& m)
{
    auto frame = frame_of(m);
    if (!frame) raise(ErrorKind::SingularBody, "zero matrix");
    return mat_invert_even(m, *frame);
}

template <class F>
struct Expansion {
    std::vector<SuperScalar<F>> coeffs;
    SuperVector<F> residual;
};

/// Coefficients c with w = sum_k c_k basis_k (c_k act from the left).
/// Solved through the Gram-Schmidt factorization basis_l = z_l + sum_{m<l} r_ml z_m:
/// the z-coordinates c'_m = z_m^dagger w / |z_m|^2 satisfy c'_m = c_m + sum_{l>m} r_ml c_l,
/// which is back-substituted. Basis entries must be even (hence central).
template <class F>
Expansion<F> expand_in_basis(const SuperVector<F>& w, const std::vector<SuperVector<F>>& basis, const Frame<F>& frame)
{
    const std::size_t m = basis.size();
    for (const auto& v : basis) {
        require(v.size() == w.size(), ErrorKind::DimensionMismatch, "basis and target sizes differ");
        for (const auto& x : v) require(x.is_even(), ErrorKind::ParityError, "basis vectors need even entries");
    }
    const GramSchmidtResult<F> gs = gram_schmidt_full(basis);
    std::vector<SuperScalar<F>> c(m, frame.zero());
    for (std::size_t k = m; k-- > 0;) {
        SuperScalar<F> ck = inner(gs.z[k], w) * gs.inv_norm2[k];
        for (std::size_t l = k + 1; l < m; ++l) ck -= (inner(gs.z[k], basis[l]) * gs.inv_norm2[k]) * c[l];
        c[k] = std::move(ck);
    }
    Expansion<F> out;
    SuperVector<F> recon = SuperVector<F>::zeros(frame.algebra, w.size());
    for (std::size_t k = 0; k < m; ++k) recon = recon + c[k] * basis[k];
    out.residual = w - recon;
    out.coeffs = std::move(c);
    return out;
}

template <class F>
SuperVector<F> cross_product3(const SuperVector<F>& u, const SuperVector<F>& v)
{
    require(u.size() == 3 && v.size() == 3, ErrorKind::DimensionMismatch, "cross product needs 3-vectors");
    for (std::size_t k = 0; k < 3; ++k)
        require(u[k].is_even() && v[k].is_even(), ErrorKind::ParityError, "cross product needs even components");
    return SuperVector<F>({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]});
}

} // namespace scpn
