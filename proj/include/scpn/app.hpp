#pragma once

// Command implementations behind the `scpn` executable. Each returns the
// process exit code:
//   0 success, 1 configuration error, 2 construction error,
//   3 verification failed.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace scpn {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitConstruction = 2;
inline constexpr int kExitVerification = 3;

struct CliOptions {
    std::string config;     // config or bundle file
    std::string out;        // bundle output
    std::string report;     // report output ("" = stdout)
    std::string backend;    // "" = from config
    std::string base_point; // literal or "random"
    std::string jet_order;  // "7" or "7,7"
    std::string checks;     // comma separated
    std::string perturb;    // relative perturbation of psi_1 (literal or decimal)
    std::string demo_case;
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<int> n;
    int count = 10; // sweep: number of consecutive seeds
};

int cmd_construct(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_demo(const CliOptions& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const CliOptions& o, std::ostream& out, std::ostream& err);

} // namespace scpn
