#pragma once

// Run configuration: JSON parsing, seeded random draws of construction data
// and instantiation of the (backend-independent) descriptors on a backend.

#include "scpn/cp2.hpp"
#include "scpn/cpn.hpp"
#include "scpn/serialize.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace scpn {

enum class Backend { exact, floating };
std::string to_string(Backend b);
Backend parse_backend(const std::string& s);

/// sum over terms of (product of generators, in the listed order) * poly(x+).
/// Generator indices count the fermionic generators only: 2a -> eta_a,
/// 2a+1 -> etabar_a.
struct FieldDesc {
    struct Term {
        std::vector<int> gens;
        std::vector<ScalarLiteral> poly; // lowest degree first
    };
    std::vector<Term> terms;
};

struct ParamDesc {
    FieldDesc f, b;
};

struct CP2Desc {
    std::vector<FieldDesc> psi0b;   // 3 components
    std::array<ParamDesc, 2> alpha; // alpha_0, alpha_1
    std::array<ParamDesc, 3> beta;  // beta_0..beta_2
    std::vector<FieldDesc> psi2f;   // 3 components
    bool special = false;
};

struct DiagDesc {
    ParamDesc eta;
    std::vector<FieldDesc> psi0b;      // n components
    std::vector<FieldDesc> psi_last_f; // n components
};

/// Fermion-free tower psi_j = (-i)^j d+^j u, built as the diagonal case with eta = i theta+.
struct BosonicDesc {
    std::vector<FieldDesc> u;
};

using ConstructionDesc = std::variant<CP2Desc, DiagDesc, BosonicDesc>;

struct RunConfig {
    int n = 3;
    Backend backend = Backend::exact;
    int pairs = 3;
    std::optional<JetOrders> orders; // default (n + 3, n + 3)
    std::optional<ScalarLiteral> base_point; // empty: "random"
    std::uint64_t seed = 1;
    double tolerance = 1e-9;
    std::string family = "cp2"; // cp2 | cp2-special | cpn-diagonal | bosonic
    std::optional<ConstructionDesc> construction; // empty: random draw from `family`
    std::vector<std::string> checks;
    std::string bundle_out, report_out;

    JetOrders effective_orders() const { return orders ? *orders : JetOrders{n + 3, n + 3}; }
};

/// Throws ConfigParseError on malformed documents or invalid values.
RunConfig parse_config(const Json& j);
RunConfig load_config_file(const std::string& path);
Json load_json_file(const std::string& path);

FieldDesc parse_field(const Json& j);

/// Seeded draws: coefficients are Gaussian rationals with numerator and
/// denominator magnitudes <= 7, polynomials have degree 3, odd fields carry
/// a single fermionic generator.
class Drawer {
public:
    explicit Drawer(std::uint64_t seed) : rng_(seed) {}
    GaussRational scalar();
    FieldDesc even_field(int degree = 3);
    FieldDesc odd_field(int pairs, int degree = 3);
    FieldDesc constant(const GaussRational& c);
    ConstructionDesc construction(const std::string& family, int n, int pairs);
    GaussRational base_point();

private:
    std::mt19937_64 rng_;
};

template <class F>
SuperScalar<F> instantiate(const FieldDesc& d, const Frame<F>& frame);

template <class F>
SuperVector<F> instantiate(const std::vector<FieldDesc>& d, const Frame<F>& frame);

template <class F>
SolutionBundle<F> build_from_desc(const ConstructionDesc& d, const Frame<F>& frame, int n);

/// Outcome of building a bundle from a config: base-point resampling applied.
template <class F>
struct BuildOutcome {
    SolutionBundle<F> bundle;
    Json effective_config; // what the report records (final base point included)
};

/// Draws (if needed) and builds. With a random base point, construction is
/// retried up to 20 times on ZeroBody / SingularBody / LinearDependence.
template <class F>
BuildOutcome<F> build_from_config(const RunConfig& cfg);

Json config_to_json(const RunConfig& cfg, const std::optional<ScalarLiteral>& final_base);

} // namespace scpn
