#include "helpers.hpp"

#include "scpn/app.hpp"
#include "scpn/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace scpn;
using namespace scpn::test;

namespace {

namespace fs = std::filesystem;

std::string cfg(const std::string& name) { return std::string(SCPN_CONFIG_DIR) + "/" + name; }

fs::path scratch_dir()
{
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("scpn_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

struct Run {
    int code;
    std::string out, err;
};

template <class Cmd>
Run run(Cmd cmd, const CliOptions& o)
{
    std::ostringstream out, err;
    const int code = cmd(o, out, err);
    return {code, out.str(), err.str()};
}

Json parse_json(const std::string& s) { return Json::parse(s); }

std::vector<std::string> check_names(const Json& report)
{
    std::vector<std::string> names;
    for (const auto& c : report["checks"]) names.push_back(c["name"].get<std::string>());
    return names;
}

} // namespace

TEST_CASE("scalar literals")
{
    CHECK(parse_scalar(Json("1/2+1/3*i")).exact == q(1, 2, 1, 3));
    CHECK(parse_scalar(Json("-i")).exact == -Q::i());
    CHECK(parse_scalar(Json(3)).exact == Q(3));
    CHECK(parse_scalar(Json("2/4")).exact == q(1, 2));
    CHECK(!parse_scalar(Json(0.25)).is_exact);
    CHECK(!parse_scalar(Json::array({0.5, -1.0})).is_exact);
    CHECK(parse_scalar(Json::array({0.5, -1.0})).approx == Complex(0.5, -1.0));
    CHECK(kind_of([] { scalar_as<Q>(parse_scalar(Json(0.25))); }) == ErrorKind::ConfigParseError);
    CHECK(scalar_as<Complex>(parse_scalar(Json("1/4"))) == Complex(0.25, 0));
    CHECK(kind_of([] { parse_scalar(Json("1/0")); }) == ErrorKind::ConfigParseError);
    CHECK(kind_of([] { parse_scalar(Json("abc")); }) == ErrorKind::ConfigParseError);
    CHECK(kind_of([] { parse_scalar(Json(true)); }) == ErrorKind::ConfigParseError);
    // emitted in lowest terms, round-trips
    const Q x = q(6, 4, -2, 6);
    CHECK(scalar_to_json(x) == Json("3/2-1/3*i"));
    CHECK(parse_scalar(scalar_to_json(x)).exact == x);
}

TEST_CASE("config parsing")
{
    SUBCASE("valid file")
    {
        const RunConfig c = load_config_file(cfg("cp2_special.json"));
        CHECK(c.n == 3);
        CHECK(c.backend == Backend::exact);
        CHECK(c.pairs == 1);
        CHECK(c.effective_orders() == JetOrders{7, 7});
        REQUIRE(c.construction);
        CHECK(std::holds_alternative<CP2Desc>(*c.construction));
        CHECK(std::get<CP2Desc>(*c.construction).special);
    }
    SUBCASE("defaults")
    {
        const RunConfig c = parse_config(Json::parse(R"({"model": {"n": 4, "kind": "cpn-diagonal"}})"));
        CHECK(c.effective_orders() == JetOrders{7, 7});
        CHECK(!c.base_point);
    }
    SUBCASE("errors")
    {
        CHECK(kind_of([] { load_config_file(cfg("malformed.json")); }) == ErrorKind::ConfigParseError);
        CHECK(kind_of([] { load_config_file(cfg("does_not_exist.json")); }) == ErrorKind::ConfigParseError);
        const char* bad[] = {
            R"([1, 2])",
            R"({"model": {"n": 1}})",
            R"({"model": {"n": 3}, "backend": "quad"})",
            R"({"model": {"n": 3}, "algebra": {"pairs": 8}})",
            R"({"model": {"n": 3}, "jet": {"order_plus": -1, "order_minus": 3}})",
            R"({"model": {"n": 3}, "tolerance": 0})",
            R"({"model": {"n": 3}, "checks": ["el", "nonsense"]})",
            R"({"model": {"n": 4}, "construction": {"type": "cp2"}})",
            R"({"model": {"n": 4}})",
            R"({"model": {"n": 3}, "construction": {"type": "hexagon"}})",
            R"({"model": {"n": 3}, "base_point": "1/0"})",
        };
        for (const char* s : bad) {
            CAPTURE(s);
            CHECK(kind_of([&] { parse_config(Json::parse(s)); }) == ErrorKind::ConfigParseError);
        }
        CHECK(kind_of([] { parse_field(Json::parse(R"([{"gens": 0, "poly": ["1"]}])")); }) == ErrorKind::ConfigParseError);
        CHECK(kind_of([] { parse_field(Json::parse(R"({"poly": 1})")); }) == ErrorKind::ConfigParseError);
    }
    SUBCASE("field generator indices count fermions only")
    {
        const auto fr = frame(2, {2, 2});
        const FieldDesc d = parse_field(Json::parse(R"([{"gens": [0, 3], "poly": ["1", "2"]}])"));
        const S expect = poly(fr, {Q(1), Q(2)}, bit(AlgebraContext::eta(0)) | bit(AlgebraContext::eta_bar(1)));
        CHECK(instantiate(d, fr) == expect);
        // out-of-range generator
        const FieldDesc far = parse_field(Json::parse(R"([{"gens": [4], "poly": ["1"]}])"));
        CHECK(kind_of([&] { instantiate(far, fr); }) != ErrorKind{});
    }
}

TEST_CASE("bundle serialization round trip")
{
    SUBCASE("exact")
    {
        const auto b = draw_bundle("cp2", 3, 1, {6, 6}, 2);
        const Json j = bundle_to_json(b, Json::object());
        CHECK(is_bundle_json(j));
        const auto back = bundle_from_json<Q>(Json::parse(j.dump()));
        REQUIRE(back.P.size() == 3);
        for (int k = 0; k < 3; ++k) CHECK(back.P[k] == b.P[k]);
        CHECK(back.working_order() == b.working_order());
        CHECK(bundle_to_json(back, Json::object()).dump() == j.dump());
    }
    SUBCASE("float")
    {
        const auto b = draw_bundle<Complex>("cpn-diagonal", 3, 1, {6, 6}, 2);
        const Json j = bundle_to_json(b, Json::object());
        const auto back = bundle_from_json<Complex>(Json::parse(j.dump()));
        for (int k = 0; k < 3; ++k) CHECK(max_abs(back.P[k] - b.P[k]) < 1e-12);
    }
    SUBCASE("jet encoding")
    {
        const std::vector<Q> c{Q(1), q(1, 3)};
        const Jet<Q> jet = Jet<Q>::polynomial_plus(lit("1/2"), {2, 1}, c);
        const Json j = jet_to_json(jet);
        std::vector<std::string> keys;
        for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
        CHECK(keys == std::vector<std::string>{"base", "orders", "coeffs"});
        CHECK(jet_from_json<Q>(j, lit("1/2")) == jet);
        CHECK(kind_of([&] { jet_from_json<Q>(j, Q(0)); }) == ErrorKind::BasePointMismatch);
    }
    SUBCASE("malformed bundle")
    {
        Json j = bundle_to_json(draw_bundle("cp2", 3, 1, {6, 6}, 2), Json::object());
        j.erase("psi_ext");
        CHECK(!is_bundle_json(Json::object()));
        CHECK(kind_of([&] { bundle_from_json<Q>(j); }) == ErrorKind::ConfigParseError);
    }
}

TEST_CASE("report json")
{
    VerificationReport r;
    r.checks.push_back({"system", 0.0, true, true, false});
    r.checks.push_back({"el", 0.5, false, false, false});
    r.pass = false;
    const Json j = report_to_json(r, Json{{"seed", 1}});
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys.front() == "config");
    CHECK(keys[1] == "checks");
    CHECK(keys.back() == "pass");
    std::vector<std::string> ck;
    for (auto it = j["checks"][0].begin(); it != j["checks"][0].end(); ++it) ck.push_back(it.key());
    CHECK(ck == std::vector<std::string>{"name", "norm", "exact_zero", "pass"});
    CHECK(j["pass"] == false);
    CHECK(j["checks"][1]["norm"] == 0.5);
}

TEST_CASE("construct and verify commands")
{
    const fs::path dir = scratch_dir();

    SUBCASE("special config: construct, then verify the bundle")
    {
        CliOptions o;
        o.config = cfg("cp2_special.json");
        o.out = (dir / "special_bundle.json").string();
        const Run c = run(cmd_construct, o);
        CHECK(c.code == kExitOk);
        CHECK(c.err.empty());
        REQUIRE(fs::exists(o.out));
        CHECK(is_bundle_json(Json::parse(read_file(o.out))));

        CliOptions v;
        v.config = o.out;
        v.checks = "system,constraint,idempotency,trace";
        const Run r = run(cmd_verify, v);
        CHECK(r.code == kExitOk);
        const Json rep = parse_json(r.out);
        CHECK(check_names(rep) == std::vector<std::string>{"system", "constraint", "idempotency", "trace"});
        for (const auto& ch : rep["checks"]) CHECK(ch["exact_zero"] == true);
        CHECK(rep["pass"] == true);

        // a bundle cannot be verified with the other backend
        v.backend = "float";
        CHECK(run(cmd_verify, v).code == kExitConfig);
    }
    SUBCASE("zero alpha1.b is a construction error")
    {
        CliOptions o;
        o.config = cfg("cp2_zero_alpha1b.json");
        const Run r = run(cmd_construct, o);
        CHECK(r.code == kExitConstruction);
        CHECK(r.err.find("ZeroBody: alpha1.b") != std::string::npos);
        CHECK(run(cmd_verify, o).code == kExitConstruction);
    }
    SUBCASE("malformed config")
    {
        CliOptions o;
        o.config = cfg("malformed.json");
        CHECK(run(cmd_construct, o).code == kExitConfig);
        CHECK(run(cmd_verify, o).code == kExitConfig);
        CHECK(run(cmd_sweep, o).code == kExitConfig);
        CliOptions none;
        CHECK(run(cmd_construct, none).code == kExitConfig);
    }
    SUBCASE("bad overrides")
    {
        CliOptions o;
        o.config = cfg("cp2_special.json");
        o.checks = "el,bogus";
        CHECK(run(cmd_verify, o).code == kExitConfig);
        o.checks.clear();
        o.jet_order = "seven";
        CHECK(run(cmd_verify, o).code == kExitConfig);
        o.jet_order.clear();
        o.base_point = "1/2+";
        CHECK(run(cmd_verify, o).code == kExitConfig);
    }
    SUBCASE("check selection from a config")
    {
        CliOptions o;
        o.config = cfg("cp2_special.json");
        o.checks = "el,conservation";
        const Run r = run(cmd_verify, o);
        CHECK(r.code == kExitOk);
        CHECK(check_names(parse_json(r.out)) == std::vector<std::string>{"el", "conservation"});
    }
    SUBCASE("exact verify is byte-identical across runs")
    {
        CliOptions o;
        o.config = cfg("cp2_special.json");
        o.checks = "system,constraint,hermiticity";
        o.report = (dir / "report_a.json").string();
        CHECK(run(cmd_verify, o).code == kExitOk);
        const std::string a = read_file(o.report);
        o.report = (dir / "report_b.json").string();
        CHECK(run(cmd_verify, o).code == kExitOk);
        CHECK(a == read_file(o.report));
        CHECK(!a.empty());
    }
    SUBCASE("perturbation flips the verdict")
    {
        CliOptions o;
        o.config = cfg("cp2_special.json");
        o.checks = "constraint,el,trace";
        o.perturb = "1";
        const Run r = run(cmd_verify, o);
        CHECK(r.code == kExitVerification);
        const Json rep = parse_json(r.out);
        CHECK(rep["pass"] == false);
        CHECK(rep["checks"][0]["pass"] == false);
        CHECK(rep["checks"][1]["pass"] == false);
        CHECK(rep["checks"][2]["pass"] == true);

        o.backend = "float";
        o.perturb = "1e-3";
        CHECK(run(cmd_verify, o).code == kExitVerification);
        o.perturb.clear();
        CHECK(run(cmd_verify, o).code == kExitOk);
    }
}

TEST_CASE("demo command")
{
    SUBCASE("cp2-special")
    {
        CliOptions o;
        o.demo_case = "cp2-special";
        o.checks = "system,special_closed_forms,special_display";
        const Run r = run(cmd_demo, o);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("A0 = 0, A1 = -i/alpha1.b") != std::string::npos);
        CHECK(r.out.find("overall: PASS") != std::string::npos);
    }
    SUBCASE("bosonic-veronese")
    {
        CliOptions o;
        o.demo_case = "bosonic-veronese";
        const Run r = run(cmd_demo, o);
        CHECK(r.code == kExitOk);
        CHECK(r.out.find("bosonic_oracle") != std::string::npos);
        o.backend = "exact";
        CHECK(run(cmd_demo, o).code == kExitConfig);
    }
    SUBCASE("unknown case and bad n")
    {
        CliOptions o;
        o.demo_case = "cp5-exotic";
        const Run r = run(cmd_demo, o);
        CHECK(r.code == kExitConfig);
        CHECK(r.err.find("unknown demo case") != std::string::npos);
        o.demo_case = "cp2-general";
        o.n = 4;
        CHECK(run(cmd_demo, o).code == kExitConfig);
    }
}

TEST_CASE("sweep command")
{
    CliOptions o;
    o.n = 3;
    o.jet_order = "6";
    o.checks = "system,constraint";
    o.seed = 100;
    o.count = 3;
    Json doc = Json::object();
    {
        std::ostringstream out, err;
        o.backend = "exact";
        const int code = cmd_sweep(o, out, err);
        CHECK(code == kExitOk);
        doc = Json::parse(out.str());
    }
    REQUIRE(doc.contains("runs"));
    REQUIRE(doc["runs"].size() == 3);
    for (std::size_t k = 0; k < 3; ++k) CHECK(doc["runs"][k]["seed"] == 100 + k);
    o.count = 0;
    CHECK(run(cmd_sweep, o).code == kExitConfig);
}

#ifdef SCPN_CLI_PATH
TEST_CASE("scpn binary exit codes")
{
    const fs::path dir = scratch_dir();
    auto sh = [&](const std::string& args) {
        const std::string cmd = std::string(SCPN_CLI_PATH) + " " + args + " > " + (dir / "stdout.txt").string() +
                                " 2> " + (dir / "stderr.txt").string();
        const int raw = std::system(cmd.c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(sh("construct --config " + cfg("malformed.json")) == 1);
    CHECK(sh("construct --config " + cfg("cp2_zero_alpha1b.json")) == 2);
    CHECK(read_file(dir / "stderr.txt").find("ZeroBody: alpha1.b") != std::string::npos);
    CHECK(sh("frobnicate") == 1);
    CHECK(sh("verify --config " + cfg("cp2_special.json") + " --backend quad") == 1);
    CHECK(sh("verify --config " + cfg("cp2_special.json") + " --checks system,trace") == 0);
    CHECK(Json::parse(read_file(dir / "stdout.txt"))["pass"] == true);
    CHECK(sh("verify --config " + cfg("cp2_special.json") + " --checks constraint --perturb 1") == 3);
    CHECK(sh("demo --case nope") == 1);
}
#endif
