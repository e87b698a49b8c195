#pragma once

// JSON encodings of scalars, superfields, bundles and reports. Exact values
// are written as "a/b+c/d*i" literals (lowest terms), float values as JSON
// numbers or [re, im] pairs. Key order is fixed so that output is
// byte-stable.

#include "scpn/bundle.hpp"
#include "scpn/verifier.hpp"

#include <json.hpp>

#include <string>

namespace scpn {

using Json = nlohmann::ordered_json;

/// A scalar literal that may carry either an exact or a float value.
struct ScalarLiteral {
    bool is_exact = true;
    GaussRational exact;
    Complex approx;

    static ScalarLiteral of(GaussRational q) { return {true, std::move(q), {}}; }
    static ScalarLiteral of(Complex c) { return {false, {}, c}; }
};

/// Strings and integers parse exactly; non-integer numbers, [re, im] pairs and
/// {"re", "im"} objects with numeric parts parse as float. ConfigParseError
/// on anything else.
ScalarLiteral parse_scalar(const Json& j);

Complex to_complex(const GaussRational& q);

/// Converts to the backend field; float literals are rejected by the exact
/// backend (ConfigParseError).
template <class F>
F scalar_as(const ScalarLiteral& s);

Json scalar_to_json(const GaussRational& q);
Json scalar_to_json(const Complex& c);

template <class F>
F scalar_from_json(const Json& j)
{
    return scalar_as<F>(parse_scalar(j));
}

/// Mask <-> generator index list (0 = th+, 1 = th-, 2a+2 = eta_a, 2a+3 = etabar_a).
Json mask_to_json(Mask m);
Mask mask_from_json(const Json& j, const AlgebraContext& alg);

template <class F>
Json jet_to_json(const Jet<F>& j)
{
    Json cells = Json::array();
    for (const auto& c : j.cells()) cells.push_back(scalar_to_json(c));
    return Json{{"base", scalar_to_json(j.base())}, {"orders", {j.orders().plus, j.orders().minus}}, {"coeffs", std::move(cells)}};
}

template <class F>
Jet<F> jet_from_json(const Json& j, const F& base)
{
    try {
        const JetOrders o{j.at("orders").at(0).get<int>(), j.at("orders").at(1).get<int>()};
        Jet<F> out(base, o);
        if (j.contains("base"))
            require(scalar_from_json<F>(j["base"]) == base, ErrorKind::BasePointMismatch, "jet base point differs from the bundle's");
        const Json& cells = j.at("coeffs");
        require(cells.size() == o.cells(), ErrorKind::ConfigParseError, "jet cell count does not match its orders");
        for (int p = 0; p <= o.plus; ++p)
            for (int q = 0; q <= o.minus; ++q)
                out.at(p, q) = scalar_from_json<F>(cells.at(static_cast<std::size_t>(p * (o.minus + 1) + q)));
        return out;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ConfigParseError, std::string("malformed jet: ") + e.what());
    }
}

template <class F>
Json superscalar_to_json(const SuperScalar<F>& s)
{
    Json out = Json::array();
    for (const auto& t : s.terms()) out.push_back(Json{{"monomial", mask_to_json(t.mask)}, {"coeff", jet_to_json(t.coeff)}});
    return out;
}

template <class F>
SuperScalar<F> superscalar_from_json(const Json& j, const AlgebraPtr& alg, const F& base)
{
    require(j.is_array(), ErrorKind::ConfigParseError, "superfield must be a list of terms");
    std::vector<typename SuperScalar<F>::Term> terms;
    for (const auto& t : j) {
        require(t.is_object() && t.contains("monomial") && t.contains("coeff"), ErrorKind::ConfigParseError,
                "superfield term needs monomial and coeff");
        terms.push_back({mask_from_json(t["monomial"], *alg), jet_from_json<F>(t["coeff"], base)});
    }
    return SuperScalar<F>::from_terms(alg, std::move(terms));
}

template <class F>
Json supervector_to_json(const SuperVector<F>& v)
{
    Json out = Json::array();
    for (const auto& c : v) out.push_back(superscalar_to_json(c));
    return out;
}

template <class F>
SuperVector<F> supervector_from_json(const Json& j, const AlgebraPtr& alg, const F& base)
{
    require(j.is_array(), ErrorKind::ConfigParseError, "supervector must be a list");
    std::vector<SuperScalar<F>> comps;
    for (const auto& c : j) comps.push_back(superscalar_from_json<F>(c, alg, base));
    return SuperVector<F>(std::move(comps));
}

/// Bundle file: the inputs (psi_ext, alpha, psi0_full, CP2 components) plus
/// the generating config; derived data is recomputed on load.
template <class F>
Json bundle_to_json(const SolutionBundle<F>& b, const Json& config);

/// Throws ConfigParseError on malformed input. Closed-form comparisons of
/// the special case are not stored and therefore not restored.
template <class F>
SolutionBundle<F> bundle_from_json(const Json& j);

/// True when the document looks like a bundle file.
bool is_bundle_json(const Json& j);

/// {"config", "checks": [{"name", "norm", "exact_zero", "pass"}], "skipped", "pass"}.
Json report_to_json(const VerificationReport& r, const Json& config);

} // namespace scpn
