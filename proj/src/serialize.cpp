#include "scpn/serialize.hpp"

#include <cmath>
#include <limits>

namespace scpn {

ScalarLiteral parse_scalar(const Json& j)
{
    if (j.is_string()) return ScalarLiteral::of(GaussRational::parse(j.get<std::string>()));
    if (j.is_number_integer()) return ScalarLiteral::of(GaussRational(j.get<long>()));
    if (j.is_number()) return ScalarLiteral::of(Complex(j.get<double>(), 0.0));
    auto part = [](const Json& x) -> ScalarLiteral {
        if (x.is_string() || x.is_number_integer()) return parse_scalar(x);
        if (x.is_number()) return ScalarLiteral::of(Complex(x.get<double>(), 0.0));
        raise(ErrorKind::ConfigParseError, "bad scalar component " + x.dump());
    };
    auto combine = [](const ScalarLiteral& re, const ScalarLiteral& im) {
        if (re.is_exact && im.is_exact)
            return ScalarLiteral::of(re.exact + im.exact * GaussRational::i());
        const Complex a = re.is_exact ? to_complex(re.exact) : re.approx;
        const Complex b = im.is_exact ? to_complex(im.exact) : im.approx;
        return ScalarLiteral::of(a + b * Complex(0.0, 1.0));
    };
    if (j.is_array() && j.size() == 2) return combine(part(j[0]), part(j[1]));
    if (j.is_object() && j.contains("re")) return combine(part(j["re"]), j.contains("im") ? part(j["im"]) : ScalarLiteral::of(GaussRational(0)));
    raise(ErrorKind::ConfigParseError, "bad scalar literal " + j.dump());
}

Complex to_complex(const GaussRational& q) { return {q.re().get_d(), q.im().get_d()}; }

template <>
GaussRational scalar_as<GaussRational>(const ScalarLiteral& s)
{
    if (!s.is_exact) raise(ErrorKind::ConfigParseError, "float literal given to the exact backend");
    return s.exact;
}

template <>
Complex scalar_as<Complex>(const ScalarLiteral& s)
{
    return s.is_exact ? to_complex(s.exact) : s.approx;
}

Json scalar_to_json(const GaussRational& q) { return q.to_string(); }

Json scalar_to_json(const Complex& c)
{
    if (c.imag() == 0.0) return c.real();
    return Json::array({c.real(), c.imag()});
}

Json mask_to_json(Mask m)
{
    Json out = Json::array();
    for (int g = 0; m; ++g, m >>= 1)
        if (m & 1) out.push_back(g);
    return out;
}

Mask mask_from_json(const Json& j, const AlgebraContext& alg)
{
    require(j.is_array(), ErrorKind::ConfigParseError, "monomial must be a list of generator indices");
    Mask m = 0;
    int last = -1;
    for (const auto& g : j) {
        require(g.is_number_integer(), ErrorKind::ConfigParseError, "generator index must be an integer");
        const int k = g.get<int>();
        require(k > last && k < alg.generator_count(), ErrorKind::ConfigParseError,
                "monomial indices must be increasing and below " + std::to_string(alg.generator_count()));
        m |= Mask{1} << k;
        last = k;
    }
    return m;
}

namespace {

template <class F>
const char* backend_name()
{
    return field_traits<F>::exact ? "exact" : "float";
}

template <class F>
Json scalars_to_json(const std::vector<SuperScalar<F>>& xs)
{
    Json out = Json::array();
    for (const auto& x : xs) out.push_back(superscalar_to_json(x));
    return out;
}

template <class F>
Json param_to_json(const FermionicParam<F>& p)
{
    return Json{{"f", superscalar_to_json(p.f)}, {"b", superscalar_to_json(p.b)}};
}

template <class F>
FermionicParam<F> param_from_json(const Json& j, const AlgebraPtr& alg, const F& base)
{
    return {superscalar_from_json<F>(j.at("f"), alg, base), superscalar_from_json<F>(j.at("b"), alg, base)};
}

} // namespace

template <class F>
Json bundle_to_json(const SolutionBundle<F>& b, const Json& config)
{
    Json out;
    out["format"] = "scpn-bundle";
    out["config"] = config;
    out["kind"] = b.kind;
    out["backend"] = backend_name<F>();
    out["n"] = b.n;
    out["pairs"] = b.frame.algebra->pair_count();
    out["base_point"] = scalar_to_json(b.frame.base);
    out["working_order"] = b.working_order();
    Json psi = Json::array();
    for (const auto& p : b.psi_ext) psi.push_back(supervector_to_json(p));
    out["psi_ext"] = std::move(psi);
    Json alpha = Json::array();
    for (const auto& row : b.alpha) alpha.push_back(scalars_to_json(row));
    out["alpha"] = std::move(alpha);
    out["psi0_full"] = b.psi0_full ? supervector_to_json(*b.psi0_full) : Json(nullptr);
    if (b.cp2) {
        const auto& c = *b.cp2;
        Json cp2;
        cp2["psi0b"] = supervector_to_json(c.psi0b);
        cp2["psi0f"] = supervector_to_json(c.psi0f);
        cp2["psi1b"] = supervector_to_json(c.psi1b);
        cp2["psi1f"] = supervector_to_json(c.psi1f);
        cp2["psi2b"] = supervector_to_json(c.psi2b);
        cp2["psi2f"] = supervector_to_json(c.psi2f);
        cp2["alpha"] = Json::array({param_to_json(c.alpha[0]), param_to_json(c.alpha[1])});
        cp2["beta"] = Json::array({param_to_json(c.beta[0]), param_to_json(c.beta[1]), param_to_json(c.beta[2])});
        cp2["A0"] = superscalar_to_json(c.A0);
        cp2["A1"] = superscalar_to_json(c.A1);
        out["cp2"] = std::move(cp2);
    } else {
        out["cp2"] = nullptr;
    }
    return out;
}

bool is_bundle_json(const Json& j) { return j.is_object() && j.value("format", "") == "scpn-bundle"; }

template <class F>
SolutionBundle<F> bundle_from_json(const Json& j)
{
    require(is_bundle_json(j), ErrorKind::ConfigParseError, "not a bundle file");
    try {
        require(j.at("backend").get<std::string>() == backend_name<F>(), ErrorKind::ConfigParseError,
                "bundle backend does not match the requested backend");
        SolutionBundle<F> b;
        b.kind = j.at("kind").get<std::string>();
        b.n = j.at("n").get<int>();
        const int pairs = j.at("pairs").get<int>();
        require(pairs >= 0 && 2 * pairs + 2 <= kMaxGenerators, ErrorKind::ConfigParseError, "pair count out of range");
        const AlgebraPtr alg = make_algebra(pairs);
        const F base = scalar_from_json<F>(j.at("base_point"));
        const int w = j.at("working_order").get<int>();
        require(w >= 1, ErrorKind::ConfigParseError, "working order must be positive");
        b.frame = Frame<F>{alg, base, square_orders(w)};
        for (const auto& p : j.at("psi_ext")) b.psi_ext.push_back(supervector_from_json<F>(p, alg, base));
        require(b.n >= 2 && b.psi_ext.size() == static_cast<std::size_t>(b.n), ErrorKind::ConfigParseError,
                "psi_ext must hold n vectors");
        for (const auto& p : b.psi_ext) {
            require(p.size() == static_cast<std::size_t>(b.n), ErrorKind::ConfigParseError, "psi_ext vectors need n components");
            for (const auto& c : p)
                if (auto o = orders_of(c))
                    require(*o == extended_orders(w), ErrorKind::ConfigParseError, "psi_ext must sit at (w+1, w)");
        }
        for (const auto& row : j.at("alpha")) {
            std::vector<SuperScalar<F>> r;
            for (const auto& x : row) r.push_back(superscalar_from_json<F>(x, alg, base));
            b.alpha.push_back(std::move(r));
        }
        require(b.alpha.size() == static_cast<std::size_t>(b.n), ErrorKind::ConfigParseError, "alpha must have n rows");
        for (std::size_t r = 1; r < b.alpha.size(); ++r)
            require(b.alpha[r].size() == r + 1, ErrorKind::ConfigParseError, "alpha row j needs j+1 entries");
        if (!j.at("psi0_full").is_null()) b.psi0_full = supervector_from_json<F>(j["psi0_full"], alg, base);
        if (!j.at("cp2").is_null()) {
            const Json& c = j["cp2"];
            CP2Parts<F> parts;
            parts.psi0b = supervector_from_json<F>(c.at("psi0b"), alg, base);
            parts.psi0f = supervector_from_json<F>(c.at("psi0f"), alg, base);
            parts.psi1b = supervector_from_json<F>(c.at("psi1b"), alg, base);
            parts.psi1f = supervector_from_json<F>(c.at("psi1f"), alg, base);
            parts.psi2b = supervector_from_json<F>(c.at("psi2b"), alg, base);
            parts.psi2f = supervector_from_json<F>(c.at("psi2f"), alg, base);
            for (int k = 0; k < 2; ++k) parts.alpha[k] = param_from_json<F>(c.at("alpha").at(k), alg, base);
            for (int k = 0; k < 3; ++k) parts.beta[k] = param_from_json<F>(c.at("beta").at(k), alg, base);
            parts.A0 = superscalar_from_json<F>(c.at("A0"), alg, base);
            parts.A1 = superscalar_from_json<F>(c.at("A1"), alg, base);
            b.cp2 = std::move(parts);
        }
        finalize_bundle(b);
        return b;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ConfigParseError, std::string("malformed bundle: ") + e.what());
    }
}

Json report_to_json(const VerificationReport& r, const Json& config)
{
    Json out;
    out["config"] = config;
    Json checks = Json::array();
    for (const auto& c : r.checks) {
        Json e;
        e["name"] = c.name;
        e["norm"] = std::isfinite(c.norm) ? Json(c.norm) : Json(nullptr);
        e["exact_zero"] = c.exact_zero;
        e["pass"] = c.pass;
        if (c.informational) e["informational"] = true;
        checks.push_back(std::move(e));
    }
    out["checks"] = std::move(checks);
    Json skipped = Json::array();
    for (const auto& s : r.skipped) skipped.push_back(Json{{"name", s.name}, {"reason", s.reason}});
    out["skipped"] = std::move(skipped);
    out["pass"] = r.pass;
    return out;
}

template Json bundle_to_json(const SolutionBundle<GaussRational>&, const Json&);
template Json bundle_to_json(const SolutionBundle<Complex>&, const Json&);
template SolutionBundle<GaussRational> bundle_from_json(const Json&);
template SolutionBundle<Complex> bundle_from_json(const Json&);

} // namespace scpn
