#pragma once

#include "scpn/bundle.hpp"

#include <string>
#include <utility>
#include <vector>

namespace scpn {

struct CheckResult {
    std::string name;
    double norm = 0.0;
    bool exact_zero = true;
    bool pass = true;
    bool informational = false; // reported but excluded from the overall verdict
};

struct SkippedCheck {
    std::string name;
    std::string reason;
};

struct VerifyOptions {
    double tolerance = 1e-9;
    std::vector<std::string> checks; // empty: every applicable check
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    std::vector<SkippedCheck> skipped;
    bool pass = true;
};

/// Names accepted by VerifyOptions::checks, in report order.
const std::vector<std::string>& all_check_names();

/// Throws ConfigParseError for names outside all_check_names().
void validate_check_names(const std::vector<std::string>& names);

/// [d+ d- P, P] and P^2 - P, both at (w-1, w-1) / (w, w).
template <class F>
std::pair<SuperMatrix<F>, SuperMatrix<F>> el_commutator_residual(const SuperMatrix<F>& P);

/// Xi = [P, d- P] at (w, w-1).
template <class F>
SuperMatrix<F> xi_field(const SuperMatrix<F>& P);

/// d+ Xi + d- Xi^dagger at (w-1, w-1).
template <class F>
SuperMatrix<F> conservation_residual(const SuperMatrix<F>& P);

enum class HolomorphyType { holomorphic, anti_holomorphic, constant, mixed };
std::string to_string(HolomorphyType t);

/// Residual norms of (d- P_j) P_j and (d+ P_j) P_j.
template <class F>
std::pair<SuperMatrix<F>, SuperMatrix<F>> holomorphy_residuals(const SolutionBundle<F>& b, int j);

/// Classification from the two residuals; float residuals count as zero
/// below tolerance * max(1, max |P_j|).
template <class F>
HolomorphyType holomorphy_type(const SolutionBundle<F>& b, int j, double tolerance = 1e-9);

/// 2 Tr(d- P d+ P) at (w-1, w-1).
template <class F>
SuperScalar<F> lagrangian_density(const SuperMatrix<F>& P);

/// 2(|D+ Phi|^2 - |D- Phi|^2) with D Phi = dPhi - Phi (Phi^dagger dPhi);
/// requires Phi^dagger Phi = 1 (ZeroBody otherwise).
template <class F>
SuperScalar<F> lagrangian_from_phi(const SuperVector<F>& phi);

/// Constant unitary V applied to the whole tower: psi -> V psi, hence
/// z -> V z and P -> V P V^dagger. Throws NotUnitary.
template <class F>
SolutionBundle<F> apply_gauge(const SolutionBundle<F>& b, const std::vector<F>& V);

/// Runs every selected check; failures are verdicts, not exceptions.
template <class F>
VerificationReport verify_all(const SolutionBundle<F>& b, const VerifyOptions& opts);

} // namespace scpn
