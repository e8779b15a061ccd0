#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hl::cli {

// process exit codes shared by all commands
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;       // bad invocation or unreadable input
inline constexpr int exit_verification = 2; // failed check or solver disagreement
inline constexpr int exit_resource = 3;    // time limit, memory cap, scope overflow

struct GenerateArgs {
    std::string family;
    std::vector<int> params;
    std::uint64_t seed = 0;
    std::string cycle_mode = "boundary_only";
    double radius = 0.0; // vr families only; <= 0 picks suggest_radius
    std::string out;     // path base; writes <out>.complex.json and <out>.cycle.json
};
int cmd_generate(const GenerateArgs& args, std::ostream& out, std::ostream& err);

struct SolveArgs {
    std::string instance;  // path base of <base>.complex.json / <base>.cycle.json
    std::string algo = "hasse"; // conn | hasse | brute | both
    std::string td_file;   // optional PACE .td file for the chosen algorithm's graph
    std::string td_map;    // its sidecar; defaults to td_file + ".map.json"
    double time_limit_s = 0.0;
    std::uint64_t mem_cap_entries = 0;
    std::string witness_out; // optional witness JSON
};
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err);

int cmd_verify(const std::string& instance, const std::string& witness_path,
               std::ostream& out, std::ostream& err);

struct BenchArgs {
    std::string config; // JSON config path
    std::string out;    // CSV path
};
int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err);

} // namespace hl::cli
