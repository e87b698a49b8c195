#pragma once

#include "scpn/bundle.hpp"

#include <utility>
#include <vector>

namespace scpn {

/// Gamma_j = eta I with eta = eta^f + i theta+ eta^b, eta^b constant.
template <class F>
struct DiagonalGammaData {
    Frame<F> frame; // construction orders
    int n = 0;
    SuperScalar<F> eta_f;
    SuperScalar<F> eta_b;
    SuperVector<F> psi0b;
    SuperVector<F> psi_last_f; // free odd psi_{N-1}^f
};

/// psi_j^b = (-i/eta^b)^j d+^j psi0b (j <= N-2),
/// psi_{N-1}^b = (eta^f/eta^b) psi_{N-1}^f + (-i/eta^b)^{N-1} d+^{N-1} psi0b,
/// psi_j^f = eta^f (-i/eta^b)^{j+1} d+^{j+1} psi0b (j <= N-2);
/// working orders w = min(d+ - N, d-).
template <class F>
SolutionBundle<F> build_diagonal_gamma_solution(const DiagonalGammaData<F>& d);

/// (I - sum_{k<=j} P_k) Gamma_j psi_j for 1 <= j <= N-2.
template <class F>
SuperVector<F> check_general_constraint(const SolutionBundle<F>& b, int j);

/// For j = 0..N-1 the pair
///   d- z_j + ((Gamma_j psi_j)^dagger z_j / |z_{j-1}|^2) z_{j-1}     at (w, w-1)
///   d+(z_j / |z_j|^2) - (1/|z_j|^2)(I - sum_{k<=j} P_k) Gamma_{j+1} psi_{j+1}   at (w-1, w)
/// with Gamma_N psi_N = 0 and the j = 0 correction term absent.
template <class F>
std::vector<std::pair<SuperVector<F>, SuperVector<F>>> prop3_residuals(const SolutionBundle<F>& b);

/// B_m = (1/|z_m|^2)(I - sum_{k<=m} P_k)(Gamma_{m+1} psi_{m+1}) z_m^dagger for
/// -1 <= m <= N-1 (B_{-1} = 0, B_{N-1} = 0 since Gamma_N psi_N = 0).
template <class F>
SuperMatrix<F> b_matrix(const SolutionBundle<F>& b, int m);

/// I - sum_{k<=j} P_k.
template <class F>
SuperMatrix<F> complement_projector(const SolutionBundle<F>& b, int j);

} // namespace scpn
