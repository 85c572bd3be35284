// command-line front end: subcommand per pipeline stage, exit 0 on success,
// 1 when a check fails, 2 on bad input. Timing goes to stderr only; report
// files stay byte-stable.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"

#include "cubization/errors.hpp"
#include "cubization/pipeline.hpp"

namespace {

void add_common(CLI::App* cmd, cubization::RunConfig& cfg, bool group_opts, bool graph_opts) {
    if (group_opts) {
        cmd->add_option("--preset", cfg.preset_name,
                        "preset group: trivial, cyclic:n, dihedral:n, "
                        "elementary_abelian_2:m, burnside_2_3, comma-joined products");
        cmd->add_option("--group", cfg.group_path, "group JSON file");
    }
    if (graph_opts) {
        cmd->add_option("--graph", cfg.graph_path,
                        "graph JSON file for the separating-edge branch");
        cmd->add_option("--orbit", cfg.orbit, "orbit edge ids, with --graph");
    }
    cmd->add_option("--k", cfg.k, "phase modulus, k >= 2");
    cmd->add_option("--cap-cover", cfg.cap_cover, "largest cover materialized");
    cmd->add_option("--cap-walls", cfg.cap_walls, "largest wall count cubulated");
    cmd->add_option("--cap-census", cfg.cap_census, "largest wall count in the cube census");
    cmd->add_option("--cap-closure", cfg.cap_closure, "permutation closure cap");
    cmd->add_option("--samples", cfg.samples, "sampled words per randomized suite");
    cmd->add_option("--seed", cfg.seed, "RNG seed");
    cmd->add_option("--max-word-len", cfg.max_word_len, "longest sampled word prefix");
    cmd->add_option("--j-max", cfg.j_max, "displacement horizon (0 = small default)");
    cmd->add_option("--out", cfg.out_dir,
                    "report directory; env CUBIZATION_OUT_DIR overrides");
    cmd->add_flag("--dot", cfg.write_dot, "also write DOT files");
}

void print_summary(const cubization::Report& r) {
    std::cout << r["command"].get<std::string>() << ": "
              << (cubization::report_ok(r) ? "ok" : "FAILED") << "\n";
    if (r.contains("failed_checks"))
        for (const auto& name : r["failed_checks"])
            std::cout << "  failed: " << name.get<std::string>() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"homology covers of Cayley graphs: cubization, walls, dual skeletons"};
    app.require_subcommand(1);
    cubization::RunConfig cfg;

    CLI::App* cover = app.add_subcommand("cover", "build and audit a cover and its lift group");
    add_common(cover, cfg, true, false);
    CLI::App* walls = app.add_subcommand("walls", "wall space of a cover (or bridge orbit)");
    add_common(walls, cfg, true, true);
    CLI::App* cubulate = app.add_subcommand("cubulate", "dual cube-complex 1-skeleton");
    add_common(cubulate, cfg, true, true);
    CLI::App* wreath = app.add_subcommand("wreath", "wreath product Z_k wr base");
    add_common(wreath, cfg, true, false);
    CLI::App* verify = app.add_subcommand("verify-all", "full verification matrix");
    add_common(verify, cfg, false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    auto started = std::chrono::steady_clock::now();
    cubization::Report report;
    try {
        if (cover->parsed()) report = cubization::cmd_cover(cfg);
        else if (walls->parsed()) report = cubization::cmd_walls(cfg);
        else if (cubulate->parsed()) report = cubization::cmd_cubulate(cfg);
        else if (wreath->parsed()) report = cubization::cmd_wreath(cfg);
        else report = cubization::cmd_verify_all(cfg);
    } catch (const cubization::BridgePresent& e) {
        std::cerr << "error: " << e.what()
                  << " (rerun with --graph/--orbit for the separating-edge branch)\n";
        return 2;
    } catch (const cubization::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cubization::SizeLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cubization::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    print_summary(report);
    std::string dir = cubization::resolve_out_dir(cfg);
    if (!dir.empty()) std::cout << "reports in " << dir << "\n";
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
    std::fprintf(stderr, "elapsed %.2fs\n", elapsed.count());
    return cubization::report_ok(report) ? 0 : 1;
}
