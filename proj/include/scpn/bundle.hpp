#pragma once

#include "scpn/linalg.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace scpn {

/// Orders used by a bundle: psi_j are kept at (w+1, w) so that
/// Gamma_j psi_j = d+ psi_{j-1} is available at the square working orders
/// (w, w) where everything else lives.
inline JetOrders extended_orders(int w) { return {w + 1, w}; }
inline JetOrders square_orders(int w) { return {w, w}; }

/// Truncation that tolerates zero elements (which carry no orders).
template <class F>
SuperScalar<F> fit(const SuperScalar<F>& s, JetOrders o)
{
    return truncate(s, o);
}
template <class F>
SuperVector<F> fit(const SuperVector<F>& v, JetOrders o)
{
    return truncate(v, o);
}
template <class F>
SuperMatrix<F> fit(const SuperMatrix<F>& m, JetOrders o)
{
    return truncate(m, o);
}

/// Left multiplication by theta+.
template <class F>
SuperScalar<F> theta_plus_times(const SuperScalar<F>& s)
{
    const Mask bit = Mask{1} << AlgebraContext::theta_plus;
    std::vector<typename SuperScalar<F>::Term> parts;
    for (const auto& t : s.terms())
        if (!(t.mask & bit)) parts.push_back({t.mask | bit, t.coeff}); // theta+ is generator 0: no crossings
    return SuperScalar<F>::from_terms(s.algebra(), std::move(parts));
}

/// b + i theta+ f: the assembly used for parameters and supervectors.
template <class F>
SuperScalar<F> assemble(const SuperScalar<F>& f_or_b_first, const SuperScalar<F>& theta_part)
{
    return f_or_b_first + theta_plus_times(theta_part).scaled_by_field(field_traits<F>::i());
}
template <class F>
SuperVector<F> assemble(const SuperVector<F>& first, const SuperVector<F>& theta_part)
{
    std::vector<SuperScalar<F>> out;
    for (std::size_t k = 0; k < first.size(); ++k) out.push_back(assemble(first[k], theta_part[k]));
    return SuperVector<F>(std::move(out));
}

/// Drops every monomial containing theta+ or theta-.
template <class F>
SuperScalar<F> theta_free_part(const SuperScalar<F>& s)
{
    std::vector<typename SuperScalar<F>::Term> parts;
    for (const auto& t : s.terms())
        if ((t.mask & 3u) == 0) parts.push_back(t);
    return SuperScalar<F>::from_terms(s.algebra(), std::move(parts));
}
template <class F>
SuperVector<F> theta_free_part(const SuperVector<F>& v)
{
    return map_entries(v, [](const SuperScalar<F>& x) { return theta_free_part(x); });
}

/// True when no stored monomial carries any generator.
template <class F>
bool is_fermion_free(const SuperVector<F>& v)
{
    for (const auto& x : v)
        for (const auto& t : x.terms())
            if (t.mask != 0) return false;
    return true;
}

/// A named residual already reduced to numbers.
struct Residual {
    std::string name;
    double norm = 0.0;
    bool exact_zero = true;
};

template <class X>
Residual make_residual(std::string name, const X& x)
{
    return {std::move(name), max_abs(x), is_zero(x)};
}

/// CP2 component fields (all holomorphic, theta-free) and parameters.
template <class F>
struct FermionicParam {
    SuperScalar<F> f;
    SuperScalar<F> b;
};

template <class F>
struct CP2Parts {
    SuperVector<F> psi0b, psi0f, psi1b, psi1f, psi2b, psi2f;
    std::array<FermionicParam<F>, 2> alpha;
    std::array<FermionicParam<F>, 3> beta;
    SuperScalar<F> A0, A1;
};

template <class F>
struct SolutionBundle {
    std::string kind; // "cp2", "cp2-special", "cpn-diagonal", "bosonic"
    int n = 0;
    Frame<F> frame;   // square working orders (w, w)
    std::vector<SuperVector<F>> psi_ext;   // psi_j at (w+1, w)
    std::vector<SuperVector<F>> psi;       // psi_j at (w, w)
    std::vector<SuperVector<F>> gamma_psi; // [j] = Gamma_j psi_j = d+ psi_{j-1}; [0] unused (zero)
    std::vector<std::vector<SuperScalar<F>>> alpha; // [j][k] = alpha_k^{(j)}, j >= 1; [0] empty
    std::vector<SuperVector<F>> z;
    std::vector<SuperScalar<F>> inv_norm2;
    std::vector<SuperMatrix<F>> P;
    std::optional<SuperVector<F>> psi0_full; // psi_0 at construction orders (bosonic oracle input)
    std::optional<CP2Parts<F>> cp2;
    std::vector<Residual> special;         // closed-form comparisons (cp2-special)
    std::vector<Residual> special_display; // printed-line comparisons, informational

    int working_order() const { return frame.orders.plus; }
};

/// Derives psi, Gamma_j psi_j, z, 1/|z|^2 and P from psi_ext.
template <class F>
void finalize_bundle(SolutionBundle<F>& b)
{
    const int w = b.frame.orders.plus;
    b.psi.clear();
    b.gamma_psi.assign(b.psi_ext.size(), SuperVector<F>::zeros(b.frame.algebra, b.n));
    for (std::size_t j = 0; j < b.psi_ext.size(); ++j) {
        b.psi.push_back(fit(b.psi_ext[j], square_orders(w)));
        if (j >= 1) b.gamma_psi[j] = super_derive(b.psi_ext[j - 1], Direction::plus);
    }
    auto gs = gram_schmidt_full(b.psi);
    b.z = std::move(gs.z);
    b.inv_norm2 = std::move(gs.inv_norm2);
    b.P.clear();
    for (std::size_t j = 0; j < b.z.size(); ++j) b.P.push_back(projector_from(b.z[j], b.inv_norm2[j]));
}

/// Negative control: psi_1[component] += eps * s, with s the body value of
/// that component (or 1 when it vanishes); everything downstream is rebuilt.
template <class F>
SolutionBundle<F> perturb_bundle(SolutionBundle<F> b, const F& eps, std::size_t component)
{
    require(b.psi_ext.size() >= 2, ErrorKind::IndexOutOfRange, "bundle has no psi_1");
    require(component < static_cast<std::size_t>(b.n), ErrorKind::IndexOutOfRange, "perturbed component");
    SuperScalar<F>& x = b.psi_ext[1][component];
    F s = body_value(x);
    if (field_traits<F>::is_zero(s)) s = field_traits<F>::from_int(1);
    const Frame<F> ext = b.frame.with_orders(extended_orders(b.working_order()));
    x += ext.constant(eps * s);
    finalize_bundle(b);
    b.cp2.reset(); // component data no longer describes the perturbed tower
    b.special.clear();
    b.special_display.clear();
    return b;
}

/// sum_k alpha_k^{(j)} psi_k - Gamma_j psi_j for j = 1..n-1.
template <class F>
std::vector<SuperVector<F>> system_residuals(const SolutionBundle<F>& b)
{
    std::vector<SuperVector<F>> out;
    for (std::size_t j = 1; j < b.psi.size(); ++j) {
        SuperVector<F> lhs = SuperVector<F>::zeros(b.frame.algebra, b.n);
        for (std::size_t k = 0; k < b.alpha[j].size(); ++k)
            if (!b.alpha[j][k].is_zero()) lhs = lhs + b.alpha[j][k] * b.psi[k];
        out.push_back(lhs - b.gamma_psi[j]);
    }
    return out;
}

} // namespace scpn
