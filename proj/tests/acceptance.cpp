// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Each criterion re-derives its expected values from first principles
// (closed forms, brute enumeration, independent BFS) rather than trusting
// the library's own bookkeeping.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cubization/cover.hpp"
#include "cubization/cubulate.hpp"
#include "cubization/groups.hpp"
#include "cubization/multigraph.hpp"
#include "cubization/pipeline.hpp"
#include "cubization/walls.hpp"

#include "oracles.hpp"

using namespace cubization;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

struct Instance {
    std::string name;
    int k = 2;
    CoverSystem sys;

    std::string tag() const { return name + " k=" + std::to_string(k); }
    bool materialized() const { return sys.cover.has_value(); }
};

std::vector<Instance> build_matrix() {
    std::vector<std::string> names;
    for (int n = 2; n <= 8; ++n) names.push_back("cyclic:" + std::to_string(n));
    for (int n = 3; n <= 5; ++n) names.push_back("dihedral:" + std::to_string(n));
    for (int m = 2; m <= 3; ++m) names.push_back("elementary_abelian_2:" + std::to_string(m));
    std::vector<Instance> out;
    for (const std::string& name : names)
        for (int k = 2; k <= 4; ++k) {
            GroupWithGenerators gw = preset(name);
            Instance inst;
            inst.name = name;
            inst.k = k;
            inst.sys = make_cover_system(gw.group, gw.gens, k);
            out.push_back(std::move(inst));
        }
    return out;
}

// |V| * k^rank, capped; the acceptance-side materializability oracle
bool count_fits(const CoverSystem& sys, std::uint64_t cap, std::uint64_t& count) {
    unsigned __int128 x = static_cast<unsigned>(sys.group.order);
    for (int i = 0; i < sys.rank; ++i) {
        x *= static_cast<unsigned>(sys.k);
        if (x > cap) return false;
    }
    count = static_cast<std::uint64_t>(x);
    return count <= cap;
}

std::uint64_t separating_walls(const WallSpace& space, std::size_t x, std::size_t y) {
    std::uint64_t c = 0;
    for (const Wall& w : space.walls) c += w.separates(x, y) ? 1 : 0;
    return c;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void run_criterion(int idx, const char* title, const std::function<Outcome()>& body,
                   int& failures) {
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = fail(std::string("exception: ") + e.what());
    }
    std::printf("[%s] C%d: %s%s%s\n", o.ok ? "PASS" : "FAIL", idx, title,
                o.detail.empty() ? "" : " -- ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
}

}  // namespace

int main() {
    unsetenv(kOutDirEnvVar);  // keep pipeline reports out of the environment's way
    int failures = 0;
    std::vector<Instance> matrix = build_matrix();

    // C1: cover sizes, uniform fibers, uniform degree across the preset matrix
    run_criterion(1, "cover structure across the preset matrix", [&]() -> Outcome {
        auto t0 = Clock::now();
        int built = 0;
        for (Instance& inst : matrix) {
            std::uint64_t expected = 0;
            bool fits = count_fits(inst.sys, 100000, expected);
            if (fits != inst.sys.materializable(100000))
                return fail("materializability disagrees with the size oracle on " + inst.tag());
            if (!fits) continue;
            CoverGraph& cg = ensure_cover(inst.sys, 100000);
            if (static_cast<std::uint64_t>(cg.graph.vertex_count) != expected)
                return fail(inst.tag() + ": cover has " +
                            std::to_string(cg.graph.vertex_count) + " vertices, expected " +
                            std::to_string(expected));
            std::vector<std::uint64_t> per_base(inst.sys.base.vertex_count, 0);
            for (std::uint64_t v = 0; v < expected; ++v) ++per_base[cg.base_of(v)];
            for (std::uint64_t f : per_base)
                if (f != cg.fiber) return fail(inst.tag() + ": non-uniform fiber");
            int want = 2 * inst.sys.gens.pair_count();
            for (int v = 0; v < cg.graph.vertex_count; ++v)
                if (cg.graph.degree(v) != want)
                    return fail(inst.tag() + ": cover vertex of degree " +
                                std::to_string(cg.graph.degree(v)) + ", expected " +
                                std::to_string(want));
            ++built;
        }
        double dt = seconds_since(t0);
        if (dt >= 60.0) return fail("over the 60 s budget");
        std::ostringstream d;
        d << built << " of " << matrix.size() << " instances materialized, " << std::fixed;
        d.precision(1);
        d << dt << "s";
        return {true, d.str()};
    }, failures);

    // C2: the lift group acts freely and transitively with order |V|*k^rank,
    // and lifts are determined by the basepoint image (exhaustive <= 1e3)
    run_criterion(2, "lift group is regular on every materialized cover", [&]() -> Outcome {
        int audited = 0, exhaustive = 0;
        for (Instance& inst : matrix) {
            if (!inst.materialized()) continue;
            std::uint64_t n = inst.sys.cover->graph.vertex_count;
            if (n <= 1024) {
                SabidussiReport s = verify_sabidussi(inst.sys);
                if (!s.ok || s.group_order != n || s.cover_vertices != n)
                    return fail(inst.tag() + ": permutation audit failed");
            } else {
                RegularityReport g = verify_regularity(inst.sys, 100000);
                if (!g.ok || g.reached_states != g.expected_states || g.expected_states != n)
                    return fail(inst.tag() + ": state-closure audit failed");
            }
            ++audited;
            if (n > 1000) continue;
            CubizationExplicit ex = cubization_group_explicit(inst.sys, 2048);
            if (static_cast<std::uint64_t>(ex.group.order) != n)
                return fail(inst.tag() + ": explicit closure has wrong order");
            std::vector<std::uint64_t> base_images;
            base_images.reserve(ex.group.order);
            for (int i = 0; i < ex.group.order; ++i) {
                Lift lift = lift_formula(inst.sys, ex.element_g[i], ex.element_offset[i]);
                base_images.push_back(apply_lift_vertex(inst.sys, lift, 0));
            }
            std::sort(base_images.begin(), base_images.end());
            if (std::adjacent_find(base_images.begin(), base_images.end()) != base_images.end())
                return fail(inst.tag() + ": two lifts share a basepoint image");
            if (base_images.size() != n || base_images.back() != n - 1)
                return fail(inst.tag() + ": basepoint orbit misses cover vertices");
            ++exhaustive;
        }
        std::ostringstream d;
        d << audited << " instances audited, lift uniqueness exhaustive on " << exhaustive;
        return {true, d.str()};
    }, failures);

    // C3: composed lifts of trivial-product words have k-torsion, randomized
    run_criterion(3, "k-th power of every trivial-word lift is the identity", [&]() -> Outcome {
        auto t0 = Clock::now();
        std::vector<std::string> names;
        for (int n = 2; n <= 8; ++n) names.push_back("cyclic:" + std::to_string(n));
        for (int n = 3; n <= 5; ++n) names.push_back("dihedral:" + std::to_string(n));
        for (int m = 2; m <= 3; ++m) names.push_back("elementary_abelian_2:" + std::to_string(m));
        std::uint64_t words = 0;
        for (std::size_t pi = 0; pi < names.size(); ++pi)
            for (int k = 2; k <= 3; ++k) {
                GroupWithGenerators gw = preset(names[pi]);
                CoverSystem sys = make_cover_system(gw.group, gw.gens, k);
                std::vector<Word> shortest = element_words(sys.group, sys.gens);
                std::mt19937_64 rng(1000 + 31 * pi + static_cast<std::uint64_t>(k));
                for (int t = 0; t < 1000; ++t) {
                    Word w;
                    int len = 1 + static_cast<int>(rng() % 12);
                    for (int i = 0; i < len; ++i)
                        w.letters.push_back(static_cast<int>(rng() % sys.gens.size()));
                    int g = evaluate_word(sys.group, sys.gens, w);
                    const Word& tail = shortest[sys.group.inv(g)];
                    w.letters.insert(w.letters.end(), tail.letters.begin(), tail.letters.end());
                    LemmaCheck c = lemma_power_identity(sys, w);
                    if (!c.base_product_trivial || !c.kth_power_identity || !c.probes_fixed)
                        return fail(names[pi] + " k=" + std::to_string(k) +
                                    ": word of length " + std::to_string(w.letters.size()) +
                                    " violates the torsion identity");
                    ++words;
                }
            }
        double dt = seconds_since(t0);
        if (dt >= 30.0) return fail("over the 30 s budget");
        std::ostringstream d;
        d << words << " words, zero failures, " << std::fixed;
        d.precision(1);
        d << dt << "s";
        return {true, d.str()};
    }, failures);

    // C4: exponent bounds at both scales: exact closure for the small group,
    // sampled torsion plus the exact order string for the large one
    run_criterion(4, "cubization exponent bounds", [&]() -> Outcome {
        auto t0 = Clock::now();
        GroupWithGenerators small = preset("elementary_abelian_2:2");
        CoverSystem sys = make_cover_system(small.group, small.gens, 2);
        CubizationExplicit ex = cubization_group_explicit(sys, 256);
        if (ex.group.order != 128)
            return fail("explicit closure has order " + std::to_string(ex.group.order) +
                        ", expected 128");
        if (exponent(ex.group) != 4)
            return fail("exponent is " + std::to_string(exponent(ex.group)) + ", expected 4");
        int witness = -1;
        for (int i = 0; i < ex.group.order; ++i) {
            int ord = element_order(ex.group, i);
            if (4 % ord != 0) return fail("element order " + std::to_string(ord) +
                                          " does not divide 4");
            if (ord == 4 && witness < 0) witness = i;
        }
        if (witness < 0) return fail("no element of order 4");

        GroupWithGenerators big = preset("burnside_2_3");
        CoverSystem sysb = make_cover_system(big.group, big.gens, 2);
        if (sysb.materializable(100000)) return fail("expected the implicit regime");
        if (cubization_order(sysb) != "7247757312")
            return fail("cubization order reported as " + cubization_order(sysb));
        ExponentCheck e = cubization_exponent_check(sysb, 500, 2026, 16);
        if (e.bound != 6 || e.samples != 500 || !e.all_orders_divide_bound)
            return fail("sampled order " + std::to_string(e.max_order_observed) +
                        " does not divide 6");
        double dt = seconds_since(t0);
        if (dt >= 120.0) return fail("over the 2 min budget");
        std::ostringstream d;
        d << "exponent 4 witness at element " << witness
          << "; 500 sampled words, max order " << e.max_order_observed << ", " << std::fixed;
        d.precision(1);
        d << dt << "s";
        return {true, d.str()};
    }, failures);

    // C5: k components per deleted edge fiber, 2^(k-1)-1 walls per base edge,
    // metric axioms and invariance exhaustive on small spaces
    run_criterion(5, "wall structure on every materialized instance", [&]() -> Outcome {
        int checked = 0, exhaustive = 0;
        for (Instance& inst : matrix) {
            if (!inst.materialized()) continue;
            CoverGraph& cg = *inst.sys.cover;
            for (int e = 0; e < inst.sys.base.edge_count(); ++e)
                if (edge_preimage_components(cg, e).size() != static_cast<std::size_t>(inst.k))
                    return fail(inst.tag() + ": edge " + std::to_string(e) +
                                " fiber has the wrong component count");
            WallSpace space = wall_space_from_cover(inst.sys.base, cg);
            std::uint64_t per_edge = (1ull << (inst.k - 1)) - 1;
            std::vector<std::uint64_t> wall_count(inst.sys.base.edge_count(), 0);
            for (const Wall& w : space.walls) ++wall_count[w.base_edge];
            for (std::uint64_t c : wall_count)
                if (c != per_edge)
                    return fail(inst.tag() + ": wrong wall count per base edge");
            ++checked;

            if (space.point_count > 200) continue;
            std::size_t n = space.point_count;
            std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, 0));
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y) d[x][y] = wall_distance(space, x, y);
            for (std::size_t x = 0; x < n; ++x)
                if (d[x][x] != 0) return fail(inst.tag() + ": nonzero self-distance");
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    if (d[x][y] != d[y][x]) return fail(inst.tag() + ": asymmetric distance");
            for (std::size_t x = 0; x < n; ++x)
                for (std::size_t y = 0; y < n; ++y)
                    for (std::size_t z = 0; z < n; ++z)
                        if (d[x][z] > d[x][y] + d[y][z])
                            return fail(inst.tag() + ": triangle inequality fails");
            std::vector<Lift> gens = cubization_generators(inst.sys);
            PhaseVec e0(inst.sys.k, inst.sys.rank);
            e0.add_at(0, 1);
            std::vector<std::vector<std::uint32_t>> perms;
            for (const Lift& lift : gens)
                perms.push_back(lift_to_permutation(inst.sys, lift, 100000));
            perms.push_back(lift_to_permutation(inst.sys, deck_transformation(inst.sys, e0),
                                                100000));
            for (const auto& p : perms) {
                act_on_walls(space, p);  // throws if a wall image is not a wall
                for (std::size_t x = 0; x < n; ++x)
                    for (std::size_t y = 0; y < n; ++y)
                        if (d[p[x]][p[y]] != d[x][y])
                            return fail(inst.tag() + ": action does not preserve distance");
            }
            ++exhaustive;
        }
        std::ostringstream d;
        d << checked << " instances, metric and invariance exhaustive on " << exhaustive;
        return {true, d.str()};
    }, failures);

    // C6: displacement of the generator lift grows strictly on cycle covers,
    // against the closed form d(0, s^j 0) = j
    run_criterion(6, "generator displacement strictly increasing on cycles", [&]() -> Outcome {
        for (int n = 4; n <= 20; ++n) {
            GroupWithGenerators gw = preset("cyclic:" + std::to_string(n));
            CoverSystem sys = make_cover_system(gw.group, gw.gens, 2);
            CoverGraph& cg = ensure_cover(sys, 100000);
            WallSpace space = wall_space_from_cover(sys.base, cg);
            std::vector<std::uint32_t> perm =
                lift_to_permutation(sys, cubization_generators(sys)[0], 100000);
            std::vector<std::uint64_t> disp = orbit_displacement(space, perm, 0, n - 1);
            std::uint64_t point = 0;
            for (int j = 1; j <= n - 1; ++j) {
                point = perm[point];
                std::uint64_t by_definition = separating_walls(space, 0, point);
                if (disp[j - 1] != by_definition || by_definition != static_cast<std::uint64_t>(j))
                    return fail("cyclic:" + std::to_string(n) + " j=" + std::to_string(j) +
                                ": displacement " + std::to_string(disp[j - 1]) +
                                ", oracle " + std::to_string(by_definition));
            }
        }
        return {true, "n = 4..20, displacement equals j for j = 1..n-1"};
    }, failures);

    // C7: the triangle dual is the 3-cube; every produced dual is median at
    // <= 500 vertices; the principal embedding is isometric at <= 200 points
    run_criterion(7, "dual skeletons are cube-complex 1-skeletons", [&]() -> Outcome {
        Instance* tri = nullptr;
        for (Instance& inst : matrix)
            if (inst.name == "cyclic:3" && inst.k == 2) tri = &inst;
        if (tri == nullptr || !tri->materialized()) return fail("triangle instance missing");
        WallSpace tspace = wall_space_from_cover(tri->sys.base, *tri->sys.cover);
        DualSkeleton tsk = dual_skeleton(tspace, 16);
        if (tsk.vertices.size() != 8 || tsk.edges.size() != 12)
            return fail("triangle dual is not the 3-cube skeleton: " +
                        std::to_string(tsk.vertices.size()) + " vertices, " +
                        std::to_string(tsk.edges.size()) + " edges");
        if (max_cube_dimension(tspace) != 3) return fail("triangle max cube dimension wrong");
        std::vector<std::uint64_t> census = cube_census(tspace);
        if (census != std::vector<std::uint64_t>{0, 0, 0, 1})
            return fail("triangle cube census wrong");

        int duals = 0, medians = 0, embeds = 0;
        for (Instance& inst : matrix) {
            if (!inst.materialized()) continue;
            std::uint64_t per_edge = (1ull << (inst.k - 1)) - 1;
            if (per_edge * inst.sys.base.edge_count() > 16) continue;
            WallSpace space = wall_space_from_cover(inst.sys.base, *inst.sys.cover);
            DualSkeleton sk = dual_skeleton(space, 16);
            ++duals;
            std::vector<Orientation> brute = enumerate_consistent(space, 16);
            std::sort(brute.begin(), brute.end());
            if (brute != sk.vertices)
                return fail(inst.tag() + ": flip component differs from brute enumeration");
            if (sk.vertices.size() <= 500) {
                if (!is_median_graph(static_cast<int>(sk.vertices.size()), sk.edges))
                    return fail(inst.tag() + ": dual skeleton is not median");
                ++medians;
            }
            if (space.point_count <= 200) {
                std::vector<std::vector<int>> adj(sk.vertices.size());
                for (const auto& [u, v] : sk.edges) {
                    adj[u].push_back(v);
                    adj[v].push_back(u);
                }
                for (std::size_t x = 0; x < space.point_count; ++x) {
                    std::vector<int> dist(sk.vertices.size(), -1);
                    std::queue<int> q;
                    dist[sk.principal[x]] = 0;
                    q.push(static_cast<int>(sk.principal[x]));
                    while (!q.empty()) {
                        int v = q.front();
                        q.pop();
                        for (int u : adj[v])
                            if (dist[u] < 0) {
                                dist[u] = dist[v] + 1;
                                q.push(u);
                            }
                    }
                    for (std::size_t y = 0; y < space.point_count; ++y)
                        if (dist[sk.principal[y]] !=
                            static_cast<int>(wall_distance(space, x, y)))
                            return fail(inst.tag() + ": embedding is not isometric at (" +
                                        std::to_string(x) + ", " + std::to_string(y) + ")");
                }
                ++embeds;
            }
        }
        std::ostringstream d;
        d << duals << " duals (incl. the 3-cube), median on " << medians
          << ", isometric embedding on " << embeds;
        return {true, d.str()};
    }, failures);

    // C8: formula and BFS lift constructions coincide on small covers, all g
    run_criterion(8, "lift constructions agree on all group elements", [&]() -> Outcome {
        int instances = 0;
        std::uint64_t pairs = 0;
        for (Instance& inst : matrix) {
            if (!inst.materialized()) continue;
            if (inst.sys.cover->graph.vertex_count > 1000) continue;
            ++instances;
            for (int g = 0; g < inst.sys.group.order; ++g) {
                std::vector<PhaseVec> offsets;
                offsets.emplace_back(inst.sys.k, inst.sys.rank);
                PhaseVec patterned(inst.sys.k, inst.sys.rank);
                for (int i = 0; i < inst.sys.rank; ++i) patterned.add_at(i, (g + i) % inst.sys.k);
                offsets.push_back(patterned);
                for (const PhaseVec& off : offsets) {
                    Lift a = lift_formula(inst.sys, g, off);
                    Lift b = lift_bfs(inst.sys, g, off, 100000);
                    if (lift_to_permutation(inst.sys, a, 100000) !=
                        lift_to_permutation(inst.sys, b, 100000))
                        return fail(inst.tag() + ": constructions differ at g=" +
                                    std::to_string(g));
                    ++pairs;
                }
            }
        }
        std::ostringstream d;
        d << instances << " covers, " << pairs << " (g, offset) pairs, zero mismatches";
        return {true, d.str()};
    }, failures);

    // C9: the wreath model over the 3-cycle base
    run_criterion(9, "wreath product model", [&]() -> Outcome {
        auto t0 = Clock::now();
        GroupWithGenerators base = preset("cyclic:3");
        auto [wg, wgens] = wreath_product(2, base.group, base.gens);
        if (wg.order != 24) return fail("order " + std::to_string(wg.order) + ", expected 24");
        if (exponent(wg) != 6)
            return fail("exponent " + std::to_string(exponent(wg)) + ", expected 6");
        if (wgens.pair_count() != 2)
            return fail("expected 2 generator pairs, got " + std::to_string(wgens.pair_count()));
        if (oracle::generated_size(wg, wgens.to_element) != 24)
            return fail("distinguished generators do not generate");
        double dt = seconds_since(t0);
        if (dt >= 1.0) return fail("over the 1 s budget");
        return {true, "order 24, exponent 6, generated by 2 pairs"};
    }, failures);

    // C10: the full verification sweep is reproducible byte for byte
    run_criterion(10, "verification sweep reports are deterministic", [&]() -> Outcome {
        fs::path a = fs::temp_directory_path() / "acceptance_sweep_a";
        fs::path b = fs::temp_directory_path() / "acceptance_sweep_b";
        fs::remove_all(a);
        fs::remove_all(b);
        RunConfig config;
        config.out_dir = a.string();
        Report r1 = cmd_verify_all(config);
        config.out_dir = b.string();
        Report r2 = cmd_verify_all(config);
        std::string bytes_a = slurp(a / "verify_all.json");
        std::string bytes_b = slurp(b / "verify_all.json");
        fs::remove_all(a);
        fs::remove_all(b);
        if (!report_ok(r1) || !report_ok(r2)) return fail("verification sweep reported failures");
        if (bytes_a.empty()) return fail("no report written");
        if (bytes_a != bytes_b) return fail("reports differ between runs");
        std::ostringstream d;
        d << "two runs, " << bytes_a.size() << " identical bytes";
        return {true, d.str()};
    }, failures);

    if (failures == 0)
        std::printf("acceptance: all 10 criteria passed\n");
    else
        std::printf("acceptance: %d criteria FAILED\n", failures);
    return failures == 0 ? 0 : 1;
}
