#pragma once

#include "scpn/bundle.hpp"

#include <array>
#include <utility>

namespace scpn {

/// Free data of the CP^2 construction. All fields are holomorphic and
/// theta-free; they live at the construction orders of `frame`.
template <class F>
struct CP2FreeData {
    Frame<F> frame;
    SuperVector<F> psi0b;
    std::array<FermionicParam<F>, 2> alpha; // alpha_0, alpha_1
    std::array<FermionicParam<F>, 3> beta;  // beta_0, beta_1, beta_2
    SuperVector<F> psi2f;
};

/// x+ orders consumed between the free data and psi_2.
inline constexpr int kCP2ConsumedOrders = 3;

/// Checks parities (f odd, b even, psi even/odd as appropriate), the
/// vector sizes and holomorphy. Throws ParityError / DimensionMismatch.
template <class F>
void validate_cp2_data(const CP2FreeData<F>& d);

template <class F>
SuperVector<F> compute_psi0f(const CP2FreeData<F>& d);

template <class F>
std::pair<SuperScalar<F>, SuperScalar<F>> compute_A0_A1(const CP2FreeData<F>& d);

template <class F>
SuperVector<F> compute_psi1b(const CP2FreeData<F>& d);

template <class F>
SuperVector<F> compute_psi1f(const CP2FreeData<F>& d, const SuperVector<F>& psi0f, const SuperVector<F>& psi1b);

template <class F>
SuperVector<F> compute_psi2b(const CP2FreeData<F>& d, const SuperVector<F>& psi0f, const SuperVector<F>& psi1b,
                             const SuperVector<F>& psi1f);

/// Full construction: components, assembled psi_k = psi_k^b + i theta+ psi_k^f,
/// Gram-Schmidt and projectors at working orders (w, w),
/// w = min(d+ - 4, d-).
template <class F>
SolutionBundle<F> build_cp2_solution(const CP2FreeData<F>& d);

/// alpha_0 = beta_0 = beta_1 = 0, then build_cp2_solution, plus comparisons
/// with the closed forms of the special case (stored in bundle.special and
/// bundle.special_display).
template <class F>
SolutionBundle<F> build_cp2_special(CP2FreeData<F> d);

/// The four component equations, left minus right, at (d+ - 4, d-).
template <class F>
std::array<SuperVector<F>, 4> cp2_component_residuals(const CP2Parts<F>& parts);

/// Both residuals of the CP^2 system: alpha_0 psi_0 + alpha_1 psi_1 - d+ psi_0
/// and beta_0 psi_0 + beta_1 psi_1 + beta_2 psi_2 - d+ psi_1.
template <class F>
std::pair<SuperVector<F>, SuperVector<F>> system_residual_cp2(const SolutionBundle<F>& b);

/// Classical projector tower of a pure-body holomorphic u, computed with
/// plain jet arithmetic only (no Grassmann layer), returned at square orders
/// min(d+ - (n-1), d-).
template <class F>
struct ProjectorSet {
    std::vector<SuperVector<F>> z;
    std::vector<SuperMatrix<F>> P;
    JetOrders orders;
};

template <class F>
ProjectorSet<F> bosonic_tower(const SuperVector<F>& u, int n);

} // namespace scpn
