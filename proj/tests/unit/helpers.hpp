#pragma once

// Shared fixtures for the unit tests: frames, random elements and small
// constructors for hand-written superfields.

#include "scpn/config.hpp"
#include "scpn/cp2.hpp"
#include "scpn/cpn.hpp"
#include "scpn/verifier.hpp"

#include <doctest.h>

#include <random>

namespace scpn::test {

using Q = GaussRational;
using S = SuperScalar<Q>;
using V = SuperVector<Q>;
using M = SuperMatrix<Q>;

inline Q q(long a, long b = 1, long c = 0, long d = 1) { return Q(mpq_class(a, b), mpq_class(c, d)); }
inline Q lit(const char* s) { return Q::parse(s); }

template <class F = Q>
Frame<F> frame(int pairs, JetOrders o, F base = F(lit("1/2+1/3*i")))
{
    return Frame<F>{make_algebra(pairs), std::move(base), o};
}

/// Random Gaussian rational with small numerators and denominators.
inline Q random_q(std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
    return Q(mpq_class(num(rng), den(rng)), mpq_class(num(rng), den(rng)));
}

/// Random superfield: a handful of monomials, each with a full random jet.
template <class F = Q>
SuperScalar<F> random_superfield(std::mt19937_64& rng, const Frame<F>& fr, int terms = 4)
{
    std::uniform_int_distribution<Mask> mask(0, fr.algebra->full_mask());
    SuperScalar<F> out = fr.zero();
    for (int t = 0; t < terms; ++t) {
        Jet<F> j(fr.base, fr.orders);
        for (auto& c : j.cells()) {
            if constexpr (field_traits<F>::exact)
                c = random_q(rng);
            else
                c = to_complex(random_q(rng));
        }
        out += fr.from_jet(std::move(j), mask(rng));
    }
    return out;
}

/// Random element of the bare Grassmann algebra over Q(i).
inline Grassmann<Q> random_element(std::mt19937_64& rng, const AlgebraPtr& alg, int terms = 6)
{
    std::uniform_int_distribution<Mask> mask(0, alg->full_mask());
    std::vector<Grassmann<Q>::Term> parts;
    for (int t = 0; t < terms; ++t) parts.push_back({mask(rng), random_q(rng)});
    return Grassmann<Q>::from_terms(alg, std::move(parts));
}

/// Polynomial in x+ (lowest degree first) times a monomial.
template <class F = Q>
SuperScalar<F> poly(const Frame<F>& fr, std::vector<F> coeffs, Mask mask = 0)
{
    return fr.polynomial(coeffs, mask);
}

inline Mask bit(int g) { return Mask{1} << g; }

template <class X>
bool zero(const X& x)
{
    return is_zero(x);
}

/// Bundle from a seeded random draw of `family` at a fixed base point.
template <class F = Q>
SolutionBundle<F> draw_bundle(const std::string& family, int n, int pairs, JetOrders o, std::uint64_t seed,
                              const char* base = "1/2+1/3*i")
{
    RunConfig c;
    c.n = n;
    c.pairs = pairs;
    c.orders = o;
    c.seed = seed;
    c.family = family;
    c.base_point = ScalarLiteral::of(lit(base));
    return build_from_config<F>(c).bundle;
}

inline ErrorKind kind_of(const std::function<void()>& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an scpn::Error");
    return ErrorKind::ConfigParseError;
}

} // namespace scpn::test
