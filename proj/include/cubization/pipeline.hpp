#pragma once

// Batch pipeline behind the CLI: select a group, run the staged verification
// suites, emit machine-readable reports. Report files never contain timings,
// so reruns with one seed are byte-identical.

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "cubization/groups.hpp"

namespace cubization {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kOutDirEnvVar = "CUBIZATION_OUT_DIR";

struct RunConfig {
    std::string preset_name;  // one of preset(), mutually exclusive with group_path
    std::string group_path;   // group JSON, multiplication-table or permutation format
    std::string graph_path;   // generic graph JSON for the separating-edge branch
    std::vector<int> orbit;   // orbit edge ids for the separating-edge branch
    int k = 2;
    std::uint64_t cap_cover = 100000;
    int cap_walls = 20;
    int cap_census = 64;
    std::size_t cap_closure = 1000000;
    std::uint64_t seed = 0;
    std::uint64_t samples = 500;
    int max_word_len = 16;
    int j_max = 0;  // 0 picks a small default
    std::string out_dir;
    bool write_dot = false;
};

using Report = nlohmann::json;

GroupWithGenerators select_group(const RunConfig& config);
std::string resolve_out_dir(const RunConfig& config);

Report cmd_cover(const RunConfig& config);
Report cmd_walls(const RunConfig& config);
Report cmd_cubulate(const RunConfig& config);
Report cmd_wreath(const RunConfig& config);
Report cmd_verify_all(const RunConfig& config);

bool report_ok(const Report& report);

}  // namespace cubization
