// scpn: construct and verify super CP^{N-1} sigma-model solutions.

#include "scpn/app.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv)
{
    CLI::App app{"Construct and verify super CP^{N-1} sigma-model solutions"};
    app.require_subcommand(1);
    scpn::CliOptions o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", o.config, "Run config (or bundle file for verify)");
        sub->add_option("--backend", o.backend, "exact | float")->check(CLI::IsMember({"exact", "float"}));
        sub->add_option("--seed", o.seed, "Seed for random draws");
        sub->add_option("--jet-order", o.jet_order, "Jet orders: d or d+,d-");
        sub->add_option("--base-point", o.base_point, "Base point literal (a/b+c/d*i) or 'random'");
        sub->add_option("--tolerance", o.tolerance, "Float acceptance tolerance (relative)");
        sub->add_option("--checks", o.checks, "Comma-separated subset of checks");
        sub->add_option("--n", o.n, "Model dimension N");
    };

    auto* construct = app.add_subcommand("construct", "Build a solution bundle and write it as JSON");
    add_common(construct);
    construct->add_option("--out", o.out, "Bundle output path (default: stdout)");

    auto* verify = app.add_subcommand("verify", "Verify a config or bundle and write the report");
    add_common(verify);
    verify->add_option("--report", o.report, "Report output path (default: stdout)");
    verify->add_option("--perturb", o.perturb, "Relative perturbation of psi_1 (negative control)");

    auto* demo = app.add_subcommand("demo", "Run a preset case and print a summary table");
    add_common(demo);
    demo->add_option("--case", o.demo_case, "cp2-general | cp2-special | cpn-diagonal | bosonic-veronese")->required();

    auto* sweep = app.add_subcommand("sweep", "Verify a range of consecutive seeds");
    add_common(sweep);
    sweep->add_option("--report", o.report, "Sweep summary output path (default: stdout)");
    sweep->add_option("--perturb", o.perturb, "Relative perturbation of psi_1");
    sweep->add_option("--count", o.count, "Number of seeds");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : scpn::kExitConfig;
    }

    if (*construct) return scpn::cmd_construct(o, std::cout, std::cerr);
    if (*verify) return scpn::cmd_verify(o, std::cout, std::cerr);
    if (*demo) return scpn::cmd_demo(o, std::cout, std::cerr);
    return scpn::cmd_sweep(o, std::cout, std::cerr);
}
