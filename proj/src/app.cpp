#include "scpn/app.hpp"

#include "scpn/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace scpn {

namespace {

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

JetOrders parse_jet_order(const std::string& s)
{
    const auto parts = split_list(s);
    try {
        if (parts.size() == 1) {
            const int d = std::stoi(parts[0]);
            return {d, d};
        }
        if (parts.size() == 2) return {std::stoi(parts[0]), std::stoi(parts[1])};
    } catch (const std::exception&) {
    }
    raise(ErrorKind::ConfigParseError, "--jet-order expects 'd' or 'd+,d-', got '" + s + "'");
}

void apply_overrides(RunConfig& c, const CliOptions& o)
{
    if (!o.backend.empty()) c.backend = parse_backend(o.backend);
    if (o.seed) c.seed = *o.seed;
    if (o.tolerance) {
        require(*o.tolerance > 0, ErrorKind::ConfigParseError, "--tolerance must be positive");
        c.tolerance = *o.tolerance;
    }
    if (o.n) {
        require(*o.n >= 2, ErrorKind::ConfigParseError, "--n must be at least 2");
        require(!c.construction || *o.n == c.n, ErrorKind::ConfigParseError, "--n conflicts with the explicit construction");
        c.n = *o.n;
    }
    if (!o.base_point.empty()) {
        if (o.base_point == "random")
            c.base_point.reset();
        else
            c.base_point = ScalarLiteral::of(GaussRational::parse(o.base_point));
    }
    if (!o.jet_order.empty()) c.orders = parse_jet_order(o.jet_order);
    if (!o.checks.empty()) {
        c.checks = split_list(o.checks);
        validate_check_names(c.checks);
    }
}

template <class F>
F parse_perturbation(const std::string& s)
{
    try {
        return scalar_as<F>(ScalarLiteral::of(GaussRational::parse(s)));
    } catch (const Error&) {
    }
    double v = 0;
    try {
        std::size_t used = 0;
        v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
    } catch (const std::exception&) {
        raise(ErrorKind::ConfigParseError, "bad --perturb value '" + s + "'");
    }
    if constexpr (field_traits<F>::exact)
        return GaussRational(mpq_class(v), mpq_class(0));
    else
        return Complex(v, 0.0);
}

void write_text(const std::string& path, const std::string& text, std::ostream& fallback)
{
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) raise(ErrorKind::ConfigParseError, "cannot write '" + path + "'");
    f << text;
}

std::string format_norm(double x)
{
    if (!std::isfinite(x)) return "n/a";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", x);
    return buf;
}

/// Maps library errors onto the exit-code contract.
int report_error(const Error& e, std::ostream& err)
{
    err << e.what() << "\n";
    return (e.kind() == ErrorKind::ConfigParseError || e.kind() == ErrorKind::UnknownCase) ? kExitConfig
                                                                                            : kExitConstruction;
}

struct Loaded {
    Json doc;
    bool is_bundle = false;
};

Loaded load_input(const CliOptions& o)
{
    require(!o.config.empty(), ErrorKind::ConfigParseError, "--config is required");
    Loaded l{load_json_file(o.config)};
    l.is_bundle = is_bundle_json(l.doc);
    return l;
}

struct Outcome {
    Json config;
    VerificationReport report;
};

template <class F>
Outcome verify_config(const RunConfig& cfg, const std::string& perturb, SolutionBundle<F>* keep = nullptr)
{
    BuildOutcome<F> built = build_from_config<F>(cfg);
    SolutionBundle<F> b = std::move(built.bundle);
    if (!perturb.empty()) {
        b = perturb_bundle(std::move(b), parse_perturbation<F>(perturb), 0);
        built.effective_config["perturb"] = perturb;
    }
    VerifyOptions opts{cfg.tolerance, cfg.checks};
    Outcome out{built.effective_config, verify_all(b, opts)};
    if (keep) *keep = std::move(b);
    return out;
}

void print_table(const VerificationReport& r, std::ostream& out)
{
    char line[160];
    std::snprintf(line, sizeof line, "%-22s %-12s %-11s %s\n", "check", "norm", "exact_zero", "pass");
    out << line;
    for (const auto& c : r.checks) {
        std::snprintf(line, sizeof line, "%-22s %-12s %-11s %s%s\n", c.name.c_str(), format_norm(c.norm).c_str(),
                      c.exact_zero ? "yes" : "no", c.pass ? "yes" : "NO", c.informational ? "  (informational)" : "");
        out << line;
    }
    for (const auto& s : r.skipped) out << "skipped: " << s.name << " (" << s.reason << ")\n";
    out << "overall: " << (r.pass ? "PASS" : "FAIL") << "\n";
}

template <class F>
int run_demo(const RunConfig& cfg, const std::string& name, std::ostream& out)
{
    SolutionBundle<F> b;
    const Outcome res = verify_config<F>(cfg, "", &b);
    const JetOrders o = cfg.effective_orders();
    out << "demo " << name << ": backend " << to_string(cfg.backend) << ", n = " << cfg.n << ", K = " << cfg.pairs
        << ", jet orders (" << o.plus << "," << o.minus << "), working order " << b.working_order() << ", seed "
        << cfg.seed << ", base point " << res.config["base_point"].dump() << "\n";
    if (name == "cp2-special" && b.cp2) {
        const SuperScalar<F>& a1b = b.cp2->alpha[1].b;
        out << "instantiation: A0 = 0, A1 = -i/alpha1.b\n";
        for (const auto& r : b.special) {
            if (r.name == "A0") out << "  A0 - 0            : norm " << format_norm(r.norm) << (r.exact_zero ? " (exact zero)" : "") << "\n";
            if (r.name == "A1") out << "  A1 + i/alpha1.b   : norm " << format_norm(r.norm) << (r.exact_zero ? " (exact zero)" : "") << "\n";
        }
        std::ostringstream v;
        v << body_value(b.cp2->A1);
        out << "  A1 at the base point = " << v.str();
        std::ostringstream a;
        a << body_value(a1b);
        out << ", alpha1.b at the base point = " << a.str() << "\n";
    }
    print_table(res.report, out);
    return res.report.pass ? kExitOk : kExitVerification;
}

template <class F>
int construct_impl(const RunConfig& cfg, const CliOptions& o, std::ostream& out)
{
    BuildOutcome<F> built = build_from_config<F>(cfg);
    const std::string path = !o.out.empty() ? o.out : cfg.bundle_out;
    write_text(path, bundle_to_json(built.bundle, built.effective_config).dump() + "\n", out);
    return kExitOk;
}

template <class F>
int verify_bundle_impl(const Json& doc, const CliOptions& o, std::ostream& out)
{
    SolutionBundle<F> b = bundle_from_json<F>(doc);
    Json config = doc.value("config", Json::object());
    double tol = config.value("tolerance", 1e-9);
    if (o.tolerance) tol = *o.tolerance;
    std::vector<std::string> checks;
    if (!o.checks.empty()) checks = split_list(o.checks);
    validate_check_names(checks);
    if (!o.perturb.empty()) {
        b = perturb_bundle(std::move(b), parse_perturbation<F>(o.perturb), 0);
        config["perturb"] = o.perturb;
    }
    const VerificationReport r = verify_all(b, VerifyOptions{tol, checks});
    write_text(o.report, report_to_json(r, config).dump(2) + "\n", out);
    return r.pass ? kExitOk : kExitVerification;
}

template <class F>
int verify_config_impl(const RunConfig& cfg, const CliOptions& o, std::ostream& out)
{
    const Outcome res = verify_config<F>(cfg, o.perturb);
    const std::string path = !o.report.empty() ? o.report : cfg.report_out;
    write_text(path, report_to_json(res.report, res.config).dump(2) + "\n", out);
    return res.report.pass ? kExitOk : kExitVerification;
}

RunConfig demo_config(const CliOptions& o)
{
    RunConfig c;
    const std::string& k = o.demo_case;
    if (k == "cp2-general" || k == "cp2-special") {
        require(!o.n || *o.n == 3, ErrorKind::ConfigParseError, "CP2 demos have n = 3");
        c.family = k == "cp2-general" ? "cp2" : "cp2-special";
        c.seed = k == "cp2-general" ? 11 : 12;
        c.orders = JetOrders{7, 7};
    } else if (k == "cpn-diagonal") {
        c.n = o.n.value_or(4);
        c.pairs = 2;
        c.family = "cpn-diagonal";
        c.seed = 13;
        c.orders = JetOrders{c.n + 4, c.n + 4};
    } else if (k == "bosonic-veronese") {
        c.n = o.n.value_or(3);
        c.pairs = 0;
        c.family = "bosonic";
        c.backend = Backend::floating;
        c.base_point = ScalarLiteral::of(GaussRational(mpq_class(1, 2), mpq_class(1, 3)));
        BosonicDesc d;
        for (int j = 0; j < c.n; ++j) {
            FieldDesc::Term t;
            t.poly.assign(static_cast<std::size_t>(j), ScalarLiteral::of(GaussRational(0)));
            const double binom = std::tgamma(c.n) / (std::tgamma(j + 1) * std::tgamma(c.n - j));
            t.poly.push_back(ScalarLiteral::of(Complex(std::sqrt(std::round(binom)), 0.0)));
            d.u.push_back(FieldDesc{{std::move(t)}});
        }
        c.construction = d;
    } else {
        raise(ErrorKind::UnknownCase, "unknown demo case '" + k +
                                          "' (expected cp2-general, cp2-special, cpn-diagonal, bosonic-veronese)");
    }
    CliOptions rest = o;
    rest.n.reset();
    apply_overrides(c, rest);
    if (k == "bosonic-veronese")
        require(c.backend == Backend::floating, ErrorKind::ConfigParseError,
                "bosonic-veronese uses sqrt(binomial) weights and needs the float backend");
    return c;
}

} // namespace

int cmd_construct(const CliOptions& o, std::ostream& out, std::ostream& err)
{
    try {
        const Loaded in = load_input(o);
        require(!in.is_bundle, ErrorKind::ConfigParseError, "construct needs a run config, not a bundle");
        RunConfig cfg = parse_config(in.doc);
        apply_overrides(cfg, o);
        return cfg.backend == Backend::exact ? construct_impl<GaussRational>(cfg, o, out) : construct_impl<Complex>(cfg, o, out);
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int cmd_verify(const CliOptions& o, std::ostream& out, std::ostream& err)
{
    try {
        const Loaded in = load_input(o);
        if (in.is_bundle) {
            const std::string backend = in.doc.value("backend", "exact");
            if (!o.backend.empty() && o.backend != backend)
                raise(ErrorKind::ConfigParseError, "bundle was built with the " + backend + " backend");
            return parse_backend(backend) == Backend::exact ? verify_bundle_impl<GaussRational>(in.doc, o, out)
                                                            : verify_bundle_impl<Complex>(in.doc, o, out);
        }
        RunConfig cfg = parse_config(in.doc);
        apply_overrides(cfg, o);
        return cfg.backend == Backend::exact ? verify_config_impl<GaussRational>(cfg, o, out)
                                             : verify_config_impl<Complex>(cfg, o, out);
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int cmd_demo(const CliOptions& o, std::ostream& out, std::ostream& err)
{
    try {
        const RunConfig cfg = demo_config(o);
        return cfg.backend == Backend::exact ? run_demo<GaussRational>(cfg, o.demo_case, out)
                                             : run_demo<Complex>(cfg, o.demo_case, out);
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& err)
{
    try {
        RunConfig cfg;
        if (!o.config.empty()) {
            const Loaded in = load_input(o);
            require(!in.is_bundle, ErrorKind::ConfigParseError, "sweep needs a run config, not a bundle");
            cfg = parse_config(in.doc);
        }
        apply_overrides(cfg, o);
        require(o.count >= 1, ErrorKind::ConfigParseError, "--count must be positive");
        Json runs = Json::array();
        bool all = true;
        for (int k = 0; k < o.count; ++k) {
            RunConfig c = cfg;
            c.seed = cfg.seed + static_cast<std::uint64_t>(k);
            Json entry;
            entry["seed"] = c.seed;
            try {
                const Outcome res = c.backend == Backend::exact ? verify_config<GaussRational>(c, o.perturb)
                                                                : verify_config<Complex>(c, o.perturb);
                entry["base_point"] = res.config["base_point"];
                Json failed = Json::array();
                double worst = 0;
                for (const auto& ch : res.report.checks) {
                    if (!ch.pass && !ch.informational) failed.push_back(ch.name);
                    if (!ch.informational) worst = std::max(worst, ch.norm);
                }
                entry["max_norm"] = std::isfinite(worst) ? Json(worst) : Json(nullptr);
                entry["failed"] = std::move(failed);
                entry["pass"] = res.report.pass;
                all = all && res.report.pass;
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::ConfigParseError) throw;
                entry["error"] = e.what();
                entry["pass"] = false;
                all = false;
            }
            runs.push_back(std::move(entry));
        }
        Json doc;
        doc["config"] = config_to_json(cfg, cfg.base_point);
        doc["runs"] = std::move(runs);
        doc["pass"] = all;
        write_text(o.report, doc.dump(2) + "\n", out);
        return all ? kExitOk : kExitVerification;
    } catch (const Error& e) {
        return report_error(e, err);
    }
}

} // namespace scpn
