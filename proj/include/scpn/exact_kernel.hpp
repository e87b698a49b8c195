#pragma once

#include "scpn/grassmann.hpp"
#include "scpn/jet.hpp"

namespace scpn::kernels {

using ExactSuper = Grassmann<Jet<GaussRational>>;

/// Product of exact super scalars computed over Gaussian integers with one
/// shared denominator per operand; output monomials are independent and are
/// distributed over OpenMP threads when available. Bit-identical to
/// reference_product.
ExactSuper fraction_free_product(const ExactSuper& a, const ExactSuper& b);

/// Same arithmetic restricted to one pair of jets.
Jet<GaussRational> fraction_free_jet_product(const Jet<GaussRational>& a, const Jet<GaussRational>& b);

/// Number of OpenMP threads the kernels will use (1 without OpenMP).
int kernel_threads();

} // namespace scpn::kernels
