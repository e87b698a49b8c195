#include "scpn/config.hpp"

#include <fstream>
#include <sstream>

namespace scpn {

std::string to_string(Backend b) { return b == Backend::exact ? "exact" : "float"; }

Backend parse_backend(const std::string& s)
{
    if (s == "exact") return Backend::exact;
    if (s == "float") return Backend::floating;
    raise(ErrorKind::ConfigParseError, "unknown backend '" + s + "' (expected exact or float)");
}

namespace {

const std::vector<std::string>& families()
{
    static const std::vector<std::string> f{"cp2", "cp2-special", "cpn-diagonal", "bosonic"};
    return f;
}

void check_family(const std::string& f)
{
    for (const auto& x : families())
        if (x == f) return;
    raise(ErrorKind::ConfigParseError, "unknown construction type '" + f + "'");
}

std::vector<ScalarLiteral> parse_poly(const Json& j)
{
    require(j.is_array(), ErrorKind::ConfigParseError, "polynomial must be a coefficient list");
    std::vector<ScalarLiteral> out;
    for (const auto& c : j) out.push_back(parse_scalar(c));
    return out;
}

std::vector<FieldDesc> parse_fields(const Json& j, std::size_t n, const std::string& what)
{
    require(j.is_array() && j.size() == n, ErrorKind::ConfigParseError, what + " needs " + std::to_string(n) + " components");
    std::vector<FieldDesc> out;
    for (const auto& x : j) out.push_back(parse_field(x));
    return out;
}

ParamDesc parse_param(const Json& j, const std::string& what)
{
    require(j.is_object() && j.contains("f") && j.contains("b"), ErrorKind::ConfigParseError, what + " needs f and b parts");
    return {parse_field(j["f"]), parse_field(j["b"])};
}

const Json& member(const Json& j, const char* key)
{
    require(j.contains(key), ErrorKind::ConfigParseError, std::string("missing '") + key + "'");
    return j[key];
}

ConstructionDesc parse_construction(const std::string& type, const Json& c, int n)
{
    if (type == "cp2" || type == "cp2-special") {
        require(n == 3, ErrorKind::ConfigParseError, "CP2 constructions need model.n = 3");
        CP2Desc d;
        d.special = type == "cp2-special";
        d.psi0b = parse_fields(member(c, "psi0b"), 3, "psi0b");
        d.psi2f = parse_fields(member(c, "psi2f"), 3, "psi2f");
        const Json& a = member(c, "alpha");
        const Json& b = member(c, "beta");
        require(a.is_array() && a.size() == 2, ErrorKind::ConfigParseError, "alpha needs 2 parameters");
        require(b.is_array() && b.size() == 3, ErrorKind::ConfigParseError, "beta needs 3 parameters");
        for (int k = 0; k < 2; ++k) d.alpha[k] = parse_param(a[k], "alpha" + std::to_string(k));
        for (int k = 0; k < 3; ++k) d.beta[k] = parse_param(b[k], "beta" + std::to_string(k));
        return d;
    }
    if (type == "cpn-diagonal") {
        DiagDesc d;
        d.eta = parse_param(member(c, "eta"), "eta");
        d.psi0b = parse_fields(member(c, "psi0b"), static_cast<std::size_t>(n), "psi0b");
        d.psi_last_f = parse_fields(member(c, "psi_last_f"), static_cast<std::size_t>(n), "psi_last_f");
        return d;
    }
    BosonicDesc d;
    d.u = parse_fields(member(c, "u"), static_cast<std::size_t>(n), "u");
    return d;
}

template <class T>
T get_as(const Json& j, const char* what)
{
    try {
        return j.get<T>();
    } catch (const nlohmann::json::exception&) {
        raise(ErrorKind::ConfigParseError, std::string("bad value for ") + what + ": " + j.dump());
    }
}

} // namespace

FieldDesc parse_field(const Json& j)
{
    FieldDesc d;
    if (j.is_null()) return d;
    require(j.is_array(), ErrorKind::ConfigParseError, "field must be a coefficient list or a list of terms");
    if (!j.empty() && j[0].is_object()) {
        for (const auto& t : j) {
            require(t.is_object() && t.contains("poly"), ErrorKind::ConfigParseError, "field term needs 'poly'");
            FieldDesc::Term term;
            if (t.contains("gens")) {
                require(t["gens"].is_array(), ErrorKind::ConfigParseError, "'gens' must be a list");
                for (const auto& g : t["gens"]) term.gens.push_back(get_as<int>(g, "gens"));
            }
            term.poly = parse_poly(t["poly"]);
            d.terms.push_back(std::move(term));
        }
    } else {
        d.terms.push_back({{}, parse_poly(j)});
    }
    return d;
}

RunConfig parse_config(const Json& j)
{
    require(j.is_object(), ErrorKind::ConfigParseError, "config must be a JSON object");
    RunConfig c;
    if (j.contains("model")) {
        const Json& m = j["model"];
        if (m.contains("n")) c.n = get_as<int>(m["n"], "model.n");
        if (m.contains("kind")) c.family = get_as<std::string>(m["kind"], "model.kind");
    }
    require(c.n >= 2, ErrorKind::ConfigParseError, "model.n must be at least 2");
    if (j.contains("backend")) c.backend = parse_backend(get_as<std::string>(j["backend"], "backend"));
    if (j.contains("algebra") && j["algebra"].contains("pairs")) c.pairs = get_as<int>(j["algebra"]["pairs"], "algebra.pairs");
    require(c.pairs >= 0 && 2 * c.pairs + 2 <= kMaxGenerators, ErrorKind::ConfigParseError,
            "algebra.pairs must lie in [0, " + std::to_string((kMaxGenerators - 2) / 2) + "]");
    if (j.contains("jet")) {
        const Json& o = j["jet"];
        c.orders = JetOrders{get_as<int>(member(o, "order_plus"), "jet.order_plus"),
                             get_as<int>(member(o, "order_minus"), "jet.order_minus")};
        require(c.orders->plus >= 0 && c.orders->minus >= 0, ErrorKind::ConfigParseError, "jet orders must be non-negative");
    }
    if (j.contains("base_point")) {
        const Json& b = j["base_point"];
        if (!(b.is_string() && b.get<std::string>() == "random")) c.base_point = parse_scalar(b);
    }
    if (j.contains("seed")) c.seed = get_as<std::uint64_t>(j["seed"], "seed");
    if (j.contains("tolerance")) c.tolerance = get_as<double>(j["tolerance"], "tolerance");
    require(c.tolerance > 0, ErrorKind::ConfigParseError, "tolerance must be positive");
    if (j.contains("construction")) {
        const Json& k = j["construction"];
        require(k.is_object(), ErrorKind::ConfigParseError, "construction must be an object");
        const std::string type = get_as<std::string>(member(k, "type"), "construction.type");
        if (type == "random") {
            if (k.contains("family")) c.family = get_as<std::string>(k["family"], "construction.family");
        } else {
            c.family = type;
            check_family(type);
            c.construction = parse_construction(type, k, c.n);
        }
    }
    check_family(c.family);
    if ((c.family == "cp2" || c.family == "cp2-special") && c.n != 3)
        raise(ErrorKind::ConfigParseError, "CP2 constructions need model.n = 3");
    if (j.contains("checks")) {
        for (const auto& x : j["checks"]) c.checks.push_back(get_as<std::string>(x, "checks"));
        validate_check_names(c.checks);
    }
    if (j.contains("output")) {
        const Json& o = j["output"];
        if (o.contains("bundle")) c.bundle_out = get_as<std::string>(o["bundle"], "output.bundle");
        if (o.contains("report")) c.report_out = get_as<std::string>(o["report"], "output.report");
    }
    return c;
}

Json load_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) raise(ErrorKind::ConfigParseError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return Json::parse(ss.str());
    } catch (const nlohmann::json::parse_error& e) {
        raise(ErrorKind::ConfigParseError, "malformed JSON in '" + path + "': " + e.what());
    }
}

RunConfig load_config_file(const std::string& path) { return parse_config(load_json_file(path)); }

// --- random draws -----------------------------------------------------------

GaussRational Drawer::scalar()
{
    std::uniform_int_distribution<int> num(-7, 7), den(1, 7);
    const int a = num(rng_), b = den(rng_), c = num(rng_), d = den(rng_);
    return GaussRational(mpq_class(a, b), mpq_class(c, d));
}

FieldDesc Drawer::even_field(int degree)
{
    FieldDesc::Term t;
    for (int k = 0; k <= degree; ++k) t.poly.push_back(ScalarLiteral::of(scalar()));
    return FieldDesc{{std::move(t)}};
}

FieldDesc Drawer::odd_field(int pairs, int degree)
{
    require(pairs >= 1, ErrorKind::ConfigParseError, "odd fields need algebra.pairs >= 1");
    std::uniform_int_distribution<int> gen(0, 2 * pairs - 1);
    FieldDesc::Term t;
    t.gens.push_back(gen(rng_));
    for (int k = 0; k <= degree; ++k) t.poly.push_back(ScalarLiteral::of(scalar()));
    return FieldDesc{{std::move(t)}};
}

FieldDesc Drawer::constant(const GaussRational& c) { return FieldDesc{{{{}, {ScalarLiteral::of(c)}}}}; }

GaussRational Drawer::base_point() { return scalar(); }

ConstructionDesc Drawer::construction(const std::string& family, int n, int pairs)
{
    if (family == "cp2" || family == "cp2-special") {
        CP2Desc d;
        d.special = family == "cp2-special";
        for (int k = 0; k < 3; ++k) d.psi0b.push_back(even_field());
        for (auto& a : d.alpha) a = {odd_field(pairs), even_field()};
        for (auto& b : d.beta) b = {odd_field(pairs), even_field()};
        for (int k = 0; k < 3; ++k) d.psi2f.push_back(odd_field(pairs));
        return d;
    }
    if (family == "cpn-diagonal") {
        DiagDesc d;
        GaussRational eb;
        do
            eb = scalar();
        while (eb.is_zero());
        d.eta = {odd_field(pairs), constant(eb)};
        for (int k = 0; k < n; ++k) d.psi0b.push_back(even_field());
        for (int k = 0; k < n; ++k) d.psi_last_f.push_back(odd_field(pairs));
        return d;
    }
    BosonicDesc d;
    for (int k = 0; k < n; ++k) d.u.push_back(even_field());
    return d;
}

// --- instantiation ----------------------------------------------------------

template <class F>
SuperScalar<F> instantiate(const FieldDesc& d, const Frame<F>& frame)
{
    SuperScalar<F> out = frame.zero();
    const int ngen = frame.algebra->generator_count();
    for (const auto& t : d.terms) {
        Mask mask = 0;
        int sign = 1;
        for (int g : t.gens) {
            require(g >= 0 && g + 2 < ngen, ErrorKind::ConfigParseError,
                    "fermionic generator index " + std::to_string(g) + " outside the algebra");
            const Mask bit = Mask{1} << (g + 2);
            require(!(mask & bit), ErrorKind::ConfigParseError, "repeated generator in a field term");
            sign *= mul_sign(mask, bit);
            mask |= bit;
        }
        std::vector<F> coeffs;
        for (const auto& c : t.poly) coeffs.push_back(scalar_as<F>(c));
        SuperScalar<F> term = frame.polynomial(coeffs, mask);
        if (sign < 0) term = -term;
        out += term;
    }
    return out;
}

template <class F>
SuperVector<F> instantiate(const std::vector<FieldDesc>& d, const Frame<F>& frame)
{
    std::vector<SuperScalar<F>> comps;
    for (const auto& x : d) comps.push_back(instantiate(x, frame));
    return SuperVector<F>(std::move(comps));
}

template <class F>
SolutionBundle<F> build_from_desc(const ConstructionDesc& desc, const Frame<F>& frame, int n)
{
    if (const auto* c = std::get_if<CP2Desc>(&desc)) {
        CP2FreeData<F> d{frame, instantiate(c->psi0b, frame), {}, {}, instantiate(c->psi2f, frame)};
        for (int k = 0; k < 2; ++k) d.alpha[k] = {instantiate(c->alpha[k].f, frame), instantiate(c->alpha[k].b, frame)};
        for (int k = 0; k < 3; ++k) d.beta[k] = {instantiate(c->beta[k].f, frame), instantiate(c->beta[k].b, frame)};
        return c->special ? build_cp2_special(std::move(d)) : build_cp2_solution(d);
    }
    if (const auto* c = std::get_if<DiagDesc>(&desc)) {
        DiagonalGammaData<F> d{frame, n, instantiate(c->eta.f, frame), instantiate(c->eta.b, frame),
                               instantiate(c->psi0b, frame), instantiate(c->psi_last_f, frame)};
        return build_diagonal_gamma_solution(d);
    }
    const auto& c = std::get<BosonicDesc>(desc);
    DiagonalGammaData<F> d{frame, n, frame.zero(), frame.one(), instantiate(c.u, frame),
                           SuperVector<F>::zeros(frame.algebra, static_cast<std::size_t>(n))};
    SolutionBundle<F> b = build_diagonal_gamma_solution(d);
    b.kind = "bosonic";
    return b;
}

Json config_to_json(const RunConfig& cfg, const std::optional<ScalarLiteral>& final_base)
{
    const JetOrders o = cfg.effective_orders();
    Json j;
    j["model"] = Json{{"n", cfg.n}, {"kind", cfg.family}};
    j["backend"] = to_string(cfg.backend);
    j["algebra"] = Json{{"pairs", cfg.pairs}};
    j["jet"] = Json{{"order_plus", o.plus}, {"order_minus", o.minus}};
    auto lit = [&](const ScalarLiteral& s) {
        return cfg.backend == Backend::exact ? scalar_to_json(scalar_as<GaussRational>(s)) : scalar_to_json(scalar_as<Complex>(s));
    };
    if (final_base)
        j["base_point"] = lit(*final_base);
    else
        j["base_point"] = "random";
    j["base_point_policy"] = cfg.base_point ? "fixed" : "random";
    j["seed"] = cfg.seed;
    j["tolerance"] = cfg.tolerance;
    j["construction"] = cfg.construction ? "explicit" : "random";
    Json checks = Json::array();
    for (const auto& c : cfg.checks) checks.push_back(c);
    j["checks"] = std::move(checks);
    return j;
}

template <class F>
BuildOutcome<F> build_from_config(const RunConfig& cfg)
{
    Drawer drawer(cfg.seed);
    const ConstructionDesc desc = cfg.construction ? *cfg.construction : drawer.construction(cfg.family, cfg.n, cfg.pairs);
    const AlgebraPtr alg = make_algebra(cfg.pairs);
    const JetOrders orders = cfg.effective_orders();
    const int tries = cfg.base_point ? 1 : 20;
    for (int attempt = 1;; ++attempt) {
        const ScalarLiteral base = cfg.base_point ? *cfg.base_point : ScalarLiteral::of(drawer.base_point());
        try {
            Frame<F> frame{alg, scalar_as<F>(base), orders};
            SolutionBundle<F> b = build_from_desc(desc, frame, cfg.n);
            return {std::move(b), config_to_json(cfg, base)};
        } catch (const Error& e) {
            const bool degenerate = e.kind() == ErrorKind::ZeroBody || e.kind() == ErrorKind::SingularBody ||
                                    e.kind() == ErrorKind::LinearDependence;
            if (!degenerate || attempt >= tries) throw;
        }
    }
}

#define SCPN_INSTANTIATE_CONFIG(F)                                                                                 \
    template SuperScalar<F> instantiate(const FieldDesc&, const Frame<F>&);                                        \
    template SuperVector<F> instantiate(const std::vector<FieldDesc>&, const Frame<F>&);                           \
    template SolutionBundle<F> build_from_desc(const ConstructionDesc&, const Frame<F>&, int);                     \
    template BuildOutcome<F> build_from_config(const RunConfig&);

SCPN_INSTANTIATE_CONFIG(GaussRational)
SCPN_INSTANTIATE_CONFIG(Complex)

} // namespace scpn
