// Pipeline commands behind the CLI. Reports are plain JSON objects; keys
// serialize alphabetically and nothing time- or path-dependent goes into
// them, so a rerun with the same config and seed is byte-identical.

#include "cubization/pipeline.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <numeric>
#include <optional>
#include <queue>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "cubization/bitset.hpp"
#include "cubization/cover.hpp"
#include "cubization/cubulate.hpp"
#include "cubization/errors.hpp"
#include "cubization/json_io.hpp"
#include "cubization/multigraph.hpp"
#include "cubization/phase.hpp"
#include "cubization/rng.hpp"
#include "cubization/walls.hpp"

namespace cubization {
namespace {

constexpr std::size_t kAuditPoints = 200;   // cap for the quadratic/cubic audits
constexpr std::uint64_t kSabidussiCap = 1024;
constexpr std::uint64_t kLiftAgreementCap = 1000;
constexpr int kBruteWallCap = 16;
constexpr std::uint64_t kDotVertexCap = 4096;

struct CheckSet {
    Json checks = Json::object();
    std::vector<std::string> failed;
    bool all = true;

    void add(const std::string& name, bool ok) {
        checks[name] = ok;
        if (!ok) {
            all = false;
            failed.push_back(name);
        }
    }
};

void finalize(Report& r, const RunConfig& config, const std::string& stem, CheckSet& cs) {
    r["checks"] = cs.checks;
    if (!cs.failed.empty()) r["failed_checks"] = cs.failed;
    r["ok"] = cs.all;
    std::string dir = resolve_out_dir(config);
    if (!dir.empty()) {
        std::filesystem::create_directories(dir);
        write_text_file(dir + "/" + stem + ".json", r.dump(2) + "\n");
    }
}

void emit_extra(const RunConfig& config, const std::string& filename, const std::string& body) {
    std::string dir = resolve_out_dir(config);
    if (dir.empty()) return;
    std::filesystem::create_directories(dir);
    write_text_file(dir + "/" + filename, body);
}

Json config_echo(const RunConfig& c) {
    // out_dir and write_dot are deliberately absent: they must not change
    // report bytes
    Json j;
    if (!c.preset_name.empty()) j["preset"] = c.preset_name;
    if (!c.group_path.empty()) j["group"] = c.group_path;
    if (!c.graph_path.empty()) j["graph"] = c.graph_path;
    if (!c.orbit.empty()) j["orbit"] = c.orbit;
    j["k"] = c.k;
    j["cap_cover"] = c.cap_cover;
    j["cap_walls"] = c.cap_walls;
    j["cap_census"] = c.cap_census;
    j["seed"] = c.seed;
    j["samples"] = c.samples;
    j["max_word_len"] = c.max_word_len;
    if (c.j_max > 0) j["j_max"] = c.j_max;
    return j;
}

std::string power_string(int base, int exp) {
    mpz_class b = base, p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(exp));
    return p.get_str();
}

bool lift_equal(const Lift& a, const Lift& b) {
    return a.g == b.g && a.offset == b.offset && a.twist == b.twist &&
           a.correction == b.correction;
}

std::uint64_t permutation_order(const std::vector<std::uint32_t>& perm) {
    std::vector<char> seen(perm.size(), 0);
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < perm.size(); ++i) {
        if (seen[i]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = i; !seen[j]; j = perm[j]) {
            seen[j] = 1;
            ++len;
        }
        order = std::lcm(order, len);
    }
    return order;
}

// ---- wall-space audits -------------------------------------------------

// point -> packed wall membership; Hamming distance of two rows is the wall
// pseudo-metric by definition
struct SideMasks {
    std::size_t words = 0;
    std::vector<std::uint64_t> bits;

    std::uint64_t dist(std::size_t u, std::size_t v) const {
        const std::uint64_t* a = bits.data() + u * words;
        const std::uint64_t* b = bits.data() + v * words;
        std::uint64_t d = 0;
        for (std::size_t w = 0; w < words; ++w) d += std::popcount(a[w] ^ b[w]);
        return d;
    }
};

SideMasks make_side_masks(const WallSpace& space) {
    SideMasks m;
    m.words = (space.walls.size() + 63) / 64;
    if (m.words == 0) m.words = 1;
    m.bits.assign(space.point_count * m.words, 0);
    for (std::size_t w = 0; w < space.walls.size(); ++w)
        for (std::size_t p : space.walls[w].side.members())
            m.bits[p * m.words + w / 64] |= std::uint64_t{1} << (w % 64);
    return m;
}

Json metric_audit(const WallSpace& space, const SideMasks& m, bool& ok) {
    std::size_t n = std::min(space.point_count, kAuditPoints);
    bool zero_ok = true, tri_ok = true, agree_ok = true;
    for (std::size_t u = 0; u < n; ++u) zero_ok = zero_ok && m.dist(u, u) == 0;
    for (std::size_t u = 0; u < n && tri_ok; ++u)
        for (std::size_t v = 0; v < n && tri_ok; ++v) {
            std::uint64_t duv = m.dist(u, v);
            for (std::size_t w = 0; w < n; ++w)
                if (m.dist(u, w) > duv + m.dist(v, w)) {
                    tri_ok = false;
                    break;
                }
        }
    // the mask distance must be the wall-counting distance, spot checked
    for (std::size_t i = 0; i < std::min<std::size_t>(n, 50); ++i) {
        std::size_t v = (i * 31 + 7) % space.point_count;
        if (wall_distance(space, i, v) != m.dist(i, v)) agree_ok = false;
    }
    ok = zero_ok && tri_ok && agree_ok;
    Json j;
    j["points_audited"] = n;
    j["zero_self_distance"] = zero_ok;
    j["triangle_inequality"] = tri_ok;
    j["agrees_with_wall_count"] = agree_ok;
    return j;
}

bool invariance_audit(const WallSpace& space, const SideMasks& m,
                      const std::vector<std::uint32_t>& perm) {
    std::size_t n = std::min(space.point_count, kAuditPoints);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = u + 1; v < n; ++v)
            if (m.dist(u, v) != m.dist(perm[u], perm[v])) return false;
    return true;
}

bool adjacent_separated(const SideMasks& m,
                        const std::vector<std::pair<int, int>>& edges) {
    for (const auto& [u, v] : edges)
        if (m.dist(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) == 0) return false;
    return true;
}

// ---- dual-skeleton audits ----------------------------------------------

std::vector<std::vector<int>> skeleton_adjacency(const DualSkeleton& sk) {
    std::vector<std::vector<int>> adj(sk.vertices.size());
    for (const auto& [a, b] : sk.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    return adj;
}

// recompute the flip component from the full 2^w enumeration and compare
bool brute_component_matches(const WallSpace& space, const DualSkeleton& sk) {
    std::vector<Orientation> all = enumerate_consistent(space, kBruteWallCap);
    std::set<Orientation> allset(all.begin(), all.end());
    int w = static_cast<int>(space.walls.size());
    std::set<Orientation> comp;
    std::queue<Orientation> q;
    Orientation start = principal_orientation(space, 0);
    comp.insert(start);
    q.push(start);
    while (!q.empty()) {
        Orientation o = q.front();
        q.pop();
        for (int i = 0; i < w; ++i) {
            Orientation flipped = o ^ (Orientation{1} << i);
            if (allset.count(flipped) && comp.insert(flipped).second) q.push(flipped);
        }
    }
    std::vector<Orientation> got(comp.begin(), comp.end());
    return got == sk.vertices;
}

// distances between principal vertices in the skeleton must equal wall
// distances of the underlying points (audited prefix only)
bool embedding_isometric(const WallSpace& space, const SideMasks& m, const DualSkeleton& sk) {
    std::size_t n = std::min(space.point_count, kAuditPoints);
    std::vector<std::vector<int>> adj = skeleton_adjacency(sk);
    std::vector<int> dist(sk.vertices.size());
    for (std::size_t p = 0; p < n; ++p) {
        std::fill(dist.begin(), dist.end(), -1);
        std::queue<int> q;
        dist[sk.principal[p]] = 0;
        q.push(static_cast<int>(sk.principal[p]));
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (int u : adj[v])
                if (dist[u] < 0) {
                    dist[u] = dist[v] + 1;
                    q.push(u);
                }
        }
        for (std::size_t r = 0; r < n; ++r) {
            int d = dist[sk.principal[r]];
            if (d < 0 || static_cast<std::uint64_t>(d) != m.dist(p, r)) return false;
        }
    }
    return true;
}

// ---- lemma and lift sampling --------------------------------------------

// random words with trivial base product: a random prefix completed by a
// shortest word for the inverse of its product (mirror completions are
// useless here, the partner lift is exactly the inverse lift)
struct TrivialWordSampler {
    const FiniteGroup& group;
    const GeneratorSet& gens;
    std::vector<Word> shortest;
    std::mt19937_64 rng;

    TrivialWordSampler(const FiniteGroup& g, const GeneratorSet& gs, std::uint64_t seed)
        : group(g), gens(gs), shortest(element_words(g, gs)), rng(seed) {}

    Word next(int max_prefix) {
        Word w;
        if (gens.size() == 0) return w;
        int len = bounded_int(rng, 1, std::max(1, max_prefix));
        for (int i = 0; i < len; ++i)
            w.letters.push_back(bounded_int(rng, 0, gens.size() - 1));
        int g = evaluate_word(group, gens, w);
        const Word& back = shortest[group.inv(g)];
        w.letters.insert(w.letters.end(), back.letters.begin(), back.letters.end());
        structural_require(evaluate_word(group, gens, w) == FiniteGroup::identity,
                           "trivial-word completion failed");
        return w;
    }
};

Json run_lemma_suite(const CoverSystem& system, std::uint64_t samples, std::uint64_t seed,
                     int max_word_len, bool& ok) {
    TrivialWordSampler sampler(system.group, system.gens, seed ^ 0x5bd1e995u);
    std::uint64_t passed = 0;
    Json witness;
    for (std::uint64_t i = 0; i < samples; ++i) {
        Word w = sampler.next(max_word_len);
        LemmaCheck c = lemma_power_identity(system, w);
        bool good = c.base_product_trivial && c.kth_power_identity && c.probes_fixed;
        if (good) {
            ++passed;
        } else if (witness.is_null()) {
            witness = Json{{"letters", w.letters}, {"lift_power_order", c.lift_power_order}};
        }
    }
    ok = passed == samples;
    Json j;
    j["samples"] = samples;
    j["passed"] = passed;
    if (!witness.is_null()) j["first_failure"] = witness;
    return j;
}

// deck translations: basis translations have order k, commute, and a mixed
// translation still has order dividing k
Json deck_group_checks(const CoverSystem& system, bool& ok) {
    int probe = std::min(system.rank, 6);
    bool orders_ok = true, commute_ok = true, mixed_ok = true;
    std::vector<Lift> tau;
    for (int i = 0; i < probe; ++i) {
        PhaseVec e(system.k, system.rank);
        e.add_at(i, 1);
        tau.push_back(deck_transformation(system, e));
        if (lift_order(system, tau.back(), static_cast<std::uint64_t>(system.k) + 1) !=
            static_cast<std::uint64_t>(system.k))
            orders_ok = false;
    }
    for (int i = 0; i < probe; ++i)
        for (int j = i + 1; j < probe; ++j)
            if (!lift_equal(compose_lifts(system, tau[i], tau[j]),
                            compose_lifts(system, tau[j], tau[i])))
                commute_ok = false;
    if (system.rank > 0) {
        PhaseVec mix(system.k, system.rank);
        for (int i = 0; i < system.rank; ++i) mix.add_at(i, 1 + i % (system.k - 1));
        Lift t = deck_transformation(system, mix);
        Lift acc = identity_lift(system);
        for (int p = 0; p < system.k; ++p) acc = compose_lifts(system, acc, t);
        mixed_ok = acc.is_identity();
    }
    ok = orders_ok && commute_ok && mixed_ok;
    Json j;
    j["basis_translations_checked"] = probe;
    j["orders_equal_k"] = orders_ok;
    j["translations_commute"] = commute_ok;
    j["mixed_translation_kth_power_identity"] = mixed_ok;
    return j;
}

// formula-level spot checks that stay valid far beyond materializable size
Json formula_spot_checks(const CoverSystem& system, std::uint64_t seed, bool& ok) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    const FiniteGroup& G = system.group;
    bool inverse_ok = true, assoc_ok = true, order_bound_ok = true;
    int trips = std::min(G.order, 24);
    for (int t = 0; t < trips; ++t) {
        int g = bounded_int(rng, 0, G.order - 1);
        PhaseVec a(system.k, system.rank);
        for (int i = 0; i < system.rank; ++i)
            a.add_at(i, bounded_int(rng, 0, system.k - 1));
        Lift L = lift_formula(system, g, a);
        Lift Linv = inverse_lift(system, L);
        if (!compose_lifts(system, L, Linv).is_identity() ||
            !compose_lifts(system, Linv, L).is_identity())
            inverse_ok = false;
        int h = bounded_int(rng, 0, G.order - 1);
        Lift M = lift_formula(system, h, PhaseVec(system.k, system.rank));
        // composite of lifts must be the lift the formula predicts
        Lift composite = compose_lifts(system, L, M);
        Lift predicted = lift_formula(system, G.mult(g, h), composite.offset);
        if (!lift_equal(composite, predicted)) assoc_ok = false;
    }
    // the order of a generator lift divides k * (base element order)
    std::vector<Lift> lifts = cubization_generators(system);
    for (std::size_t s = 0; s < lifts.size(); ++s) {
        std::uint64_t bound =
            static_cast<std::uint64_t>(system.k) *
            static_cast<std::uint64_t>(element_order(G, system.gens.to_element[s]));
        std::uint64_t ord = lift_order(system, lifts[s], bound + 1);
        if (ord == 0 || bound % ord != 0) order_bound_ok = false;
    }
    ok = inverse_ok && assoc_ok && order_bound_ok;
    Json j;
    j["round_trips"] = trips;
    j["inverse_round_trip"] = inverse_ok;
    j["composition_matches_formula"] = assoc_ok;
    j["generator_order_bound"] = order_bound_ok;
    return j;
}

Json lift_agreement_audit(CoverSystem& system, std::uint64_t cap, bool& ok) {
    ok = true;
    std::uint64_t checked = 0;
    for (int g = 0; g < system.group.order; ++g) {
        std::vector<PhaseVec> offsets;
        offsets.emplace_back(system.k, system.rank);
        if (system.rank > 0) {
            PhaseVec a(system.k, system.rank);
            for (int i = 0; i < system.rank; ++i) a.add_at(i, (g + i) % system.k);
            offsets.push_back(std::move(a));
        }
        for (const PhaseVec& a : offsets) {
            Lift formula = lift_formula(system, g, a);
            Lift bfs = lift_bfs(system, g, a, cap);
            if (!lift_equal(formula, bfs)) ok = false;
            ++checked;
        }
    }
    Json j;
    j["elements"] = system.group.order;
    j["lifts_checked"] = checked;
    j["formula_matches_bfs"] = ok;
    return j;
}

Json sabidussi_json(const SabidussiReport& s) {
    Json j;
    j["cover_vertices"] = s.cover_vertices;
    j["group_order"] = s.group_order;
    j["generators_are_automorphisms"] = s.generators_are_automorphisms;
    j["action_free_and_transitive"] = s.action_free_and_transitive;
    j["labeled_isomorphism"] = s.labeled_isomorphism;
    j["lift_pairs_complete"] = s.lift_pairs_complete;
    return j;
}

Json regularity_json(const RegularityReport& s) {
    Json j;
    j["expected_states"] = s.expected_states;
    j["reached_states"] = s.reached_states;
    j["generators_are_automorphisms"] = s.generators_are_automorphisms;
    j["closure_complete"] = s.closure_complete;
    return j;
}

Json exponent_json(const ExponentCheck& e) {
    Json j;
    j["base_exponent"] = e.base_exponent;
    j["bound"] = e.bound;
    j["samples"] = e.samples;
    j["max_order_observed"] = e.max_order_observed;
    j["all_orders_divide_bound"] = e.all_orders_divide_bound;
    if (!e.witness.letters.empty()) j["witness_word"] = e.witness.letters;
    return j;
}

// ---- wall-space construction shared by walls/cubulate --------------------

struct SpaceBundle {
    WallSpace space;
    Json source;
    std::vector<std::pair<int, int>> edges;  // cover edges; empty on the bridge branch
    bool cover_route = false;
    int base_edge_count = 0;
    int k = 2;
    bool has_action = false;
    std::string action_symbol;
    std::vector<std::uint32_t> gen_perm;
    bool has_deck = false;
    std::vector<std::uint32_t> deck_perm;
};

SpaceBundle build_space(const RunConfig& config) {
    SpaceBundle b;
    if (!config.graph_path.empty()) {
        if (!config.preset_name.empty() || !config.group_path.empty())
            throw ValidationError("--graph excludes --preset/--group");
        if (config.orbit.empty())
            throw ValidationError("the separating-edge branch needs --orbit edge ids");
        Multigraph g = graph_from_json(load_json_file(config.graph_path));
        b.space = wall_space_from_bridge(g, config.orbit);
        b.source = Json{{"graph", config.graph_path}, {"orbit", config.orbit}};
        return b;
    }
    GroupWithGenerators gw = select_group(config);
    CoverSystem sys = make_cover_system(gw.group, gw.gens, config.k);
    if (!sys.materializable(config.cap_cover))
        throw CapExceeded("cover has " + cubization_order(sys) +
                          " vertices over the cap; walls need a materialized cover");
    CoverGraph& cg = ensure_cover(sys, config.cap_cover);
    b.space = wall_space_from_cover(sys.base, cg);
    b.cover_route = true;
    b.base_edge_count = sys.base.edge_count();
    b.k = sys.k;
    b.source = Json{{"cover_vertices", static_cast<std::uint64_t>(cg.graph.vertex_count)},
                    {"fiber", cg.fiber},
                    {"rank", sys.rank},
                    {"k", sys.k}};
    if (!config.preset_name.empty()) b.source["preset"] = config.preset_name;
    if (!config.group_path.empty()) b.source["group"] = config.group_path;
    b.edges.reserve(cg.graph.edge_count());
    for (int e = 0; e < cg.graph.edge_count(); ++e) b.edges.push_back(cg.graph.edge_ends(e));
    if (sys.gens.size() > 0) {
        std::vector<Lift> lifts = cubization_generators(sys);
        b.gen_perm = lift_to_permutation(sys, lifts[0], config.cap_cover);
        b.action_symbol = sys.gens.symbols[0];
        b.has_action = true;
    }
    if (sys.rank > 0) {
        PhaseVec e0(sys.k, sys.rank);
        e0.add_at(0, 1);
        b.deck_perm = lift_to_permutation(sys, deck_transformation(sys, e0), config.cap_cover);
        b.has_deck = true;
    }
    return b;
}

int default_j_max(const RunConfig& config, std::size_t points) {
    if (config.j_max > 0) return config.j_max;
    return static_cast<int>(std::min<std::size_t>(points > 0 ? points - 1 : 0, 8));
}

}  // namespace

GroupWithGenerators select_group(const RunConfig& config) {
    if (!config.preset_name.empty() && !config.group_path.empty())
        throw ValidationError("give either a preset or a group file, not both");
    if (!config.preset_name.empty()) return preset(config.preset_name);
    if (!config.group_path.empty()) return any_group_from_json(load_json_file(config.group_path));
    throw ValidationError("no group selected: use --preset or --group");
}

std::string resolve_out_dir(const RunConfig& config) {
    if (const char* env = std::getenv(kOutDirEnvVar); env && *env) return env;
    return config.out_dir;
}

bool report_ok(const Report& report) {
    return report.contains("ok") && report["ok"].is_boolean() && report["ok"].get<bool>();
}

Report cmd_cover(const RunConfig& config) {
    GroupWithGenerators gw = select_group(config);
    CoverSystem sys = make_cover_system(gw.group, gw.gens, config.k);
    const Multigraph& base = sys.base;

    Report r;
    r["command"] = "cover";
    r["tool_version"] = kToolVersion;
    r["config"] = config_echo(config);
    r["group"] = Json{{"order", sys.group.order},
                      {"generator_pairs", sys.gens.pair_count()},
                      {"symbols", sys.gens.symbols}};
    r["base_graph"] = Json{{"vertices", base.vertex_count},
                           {"edges", base.edge_count()},
                           {"cycle_rank", sys.rank}};

    CheckSet cs;
    bool degree_ok = true;
    for (int v = 0; v < base.vertex_count; ++v)
        if (base.degree(v) != base.symbol_count) degree_ok = false;
    cs.add("base_degree_uniform", degree_ok);
    cs.add("cycle_rank_formula",
           sys.rank == base.edge_count() - base.vertex_count + 1);

    bool mat = sys.materializable(config.cap_cover);
    Json cov;
    cov["k"] = sys.k;
    cov["rank"] = sys.rank;
    cov["regime"] = mat ? "explicit" : "implicit";
    cov["fiber"] = power_string(sys.k, sys.rank);
    cov["cubization_order"] = cubization_order(sys);

    if (mat) {
        CoverGraph& cg = ensure_cover(sys, config.cap_cover);
        std::uint64_t vcount = static_cast<std::uint64_t>(cg.graph.vertex_count);
        std::uint64_t ecount = static_cast<std::uint64_t>(cg.graph.edge_count());
        cov["vertices"] = vcount;
        cov["edges"] = ecount;
        cs.add("cover_vertex_count",
               vcount == static_cast<std::uint64_t>(base.vertex_count) * cg.fiber);
        cs.add("cover_edge_count",
               ecount == static_cast<std::uint64_t>(base.edge_count()) * cg.fiber);
        cs.add("cover_connected", is_connected(cg.graph));
        bool cdeg = true;
        for (int v = 0; v < cg.graph.vertex_count; ++v)
            if (cg.graph.degree(v) != base.symbol_count) cdeg = false;
        cs.add("cover_degree_uniform", cdeg);
    }

    bool deck_ok = true;
    r["deck"] = deck_group_checks(sys, deck_ok);
    cs.add("deck_group", deck_ok);

    if (mat && sys.cover_vertex_count() <= kSabidussiCap) {
        SabidussiReport s = verify_sabidussi(sys, kSabidussiCap);
        r["sabidussi"] = sabidussi_json(s);
        cs.add("sabidussi", s.ok);
    } else if (mat) {
        RegularityReport g = verify_regularity(sys, config.cap_cover);
        r["regularity"] = regularity_json(g);
        cs.add("regularity", g.ok);
    }
    bool formula_ok = true;
    r["formula_checks"] = formula_spot_checks(sys, config.seed, formula_ok);
    cs.add("formula_checks", formula_ok);

    if (mat && sys.cover_vertex_count() <= kLiftAgreementCap) {
        bool agree = true;
        r["lift_agreement"] = lift_agreement_audit(sys, config.cap_cover, agree);
        cs.add("lift_formula_matches_bfs", agree);
    }

    if (sys.gens.size() > 0) {
        bool lemma_ok = true;
        r["lemma"] = run_lemma_suite(sys, config.samples, config.seed, config.max_word_len,
                                     lemma_ok);
        cs.add("lemma_suite", lemma_ok);
        ExponentCheck e =
            cubization_exponent_check(sys, config.samples, config.seed, config.max_word_len);
        r["exponent"] = exponent_json(e);
        cs.add("exponent_bound", e.all_orders_divide_bound);
    }

    r["cover"] = cov;
    finalize(r, config, "cover_report", cs);
    if (config.write_dot && mat && sys.cover_vertex_count() <= kDotVertexCap)
        emit_extra(config, "cover.dot", multigraph_to_dot(sys.cover->graph, "cover"));
    return r;
}

Report cmd_walls(const RunConfig& config) {
    Report r;
    r["command"] = "walls";
    r["tool_version"] = kToolVersion;
    r["config"] = config_echo(config);

    SpaceBundle b = build_space(config);
    const WallSpace& space = b.space;
    r["source"] = b.source;
    r["space"] = Json{{"points", space.point_count}, {"walls", space.walls.size()}};

    CheckSet cs;
    SideMasks masks = make_side_masks(space);
    if (b.cover_route) {
        std::size_t per_edge = (std::size_t{1} << (b.k - 1)) - 1;
        cs.add("wall_count_formula",
               space.walls.size() == per_edge * static_cast<std::size_t>(b.base_edge_count));
        cs.add("adjacent_points_separated", adjacent_separated(masks, b.edges));
    } else {
        cs.add("one_wall_per_orbit_edge", true);  // construction validated the orbit
    }

    bool metric_ok = true;
    r["metric"] = metric_audit(space, masks, metric_ok);
    cs.add("pseudo_metric", metric_ok);

    if (b.has_action) {
        WallAction act = act_on_walls(space, b.gen_perm);
        cs.add("generator_preserves_distance", invariance_audit(space, masks, b.gen_perm));
        int jmax = default_j_max(config, space.point_count);
        Json action;
        action["symbol"] = b.action_symbol;
        action["wall_permutation_order"] = permutation_order(act.wall_image);
        action["displacement"] = orbit_displacement(space, b.gen_perm, 0, jmax);
        r["action"] = action;
    }
    if (b.has_deck) {
        WallAction act = act_on_walls(space, b.deck_perm);
        cs.add("deck_preserves_distance", invariance_audit(space, masks, b.deck_perm));
        int jmax = std::min(default_j_max(config, space.point_count), b.k);
        Json deck;
        deck["wall_permutation_order"] = permutation_order(act.wall_image);
        deck["displacement"] = orbit_displacement(space, b.deck_perm, 0, jmax);
        r["deck_action"] = deck;
    }

    finalize(r, config, "walls_report", cs);
    if (!resolve_out_dir(config).empty())
        emit_extra(config, "walls.json", wall_space_to_json(space).dump(2) + "\n");
    return r;
}

Report cmd_cubulate(const RunConfig& config) {
    Report r;
    r["command"] = "cubulate";
    r["tool_version"] = kToolVersion;
    r["config"] = config_echo(config);

    SpaceBundle b = build_space(config);
    const WallSpace& space = b.space;
    r["source"] = b.source;
    r["space"] = Json{{"points", space.point_count}, {"walls", space.walls.size()}};

    DualSkeleton sk = dual_skeleton(space, config.cap_walls);
    Json dual;
    dual["vertices"] = sk.vertices.size();
    dual["edges"] = sk.edges.size();

    CheckSet cs;
    cs.add("principal_vertices_mapped", sk.principal.size() == space.point_count);

    if (static_cast<int>(space.walls.size()) <= kBruteWallCap)
        cs.add("matches_brute_enumeration", brute_component_matches(space, sk));

    bool median_checked = sk.vertices.size() <= static_cast<std::size_t>(kDefaultMedianCap);
    dual["median_checked"] = median_checked;
    if (median_checked)
        cs.add("median_graph",
               is_median_graph(static_cast<int>(sk.vertices.size()), sk.edges,
                               kDefaultMedianCap));

    std::vector<std::uint64_t> census = cube_census(space, config.cap_census);
    int max_dim = 0;
    for (std::size_t d = 0; d < census.size(); ++d)
        if (census[d] > 0) max_dim = static_cast<int>(d);
    dual["cube_census"] = census;
    dual["max_cube_dimension"] = max_dim;
    cs.add("max_cube_agrees_with_census",
           max_dim == max_cube_dimension(space, config.cap_census));

    SideMasks masks = make_side_masks(space);
    cs.add("embedding_isometric", embedding_isometric(space, masks, sk));

    if (b.has_action) {
        WallAction act = act_on_walls(space, b.gen_perm);
        std::vector<std::uint32_t> dperm = act_on_dual(space, sk, act, b.gen_perm);
        Json action;
        action["symbol"] = b.action_symbol;
        action["skeleton_automorphism_order"] = permutation_order(dperm);
        r["action"] = action;
        cs.add("action_transported", true);  // act_on_dual validates internally
    }

    r["dual"] = dual;
    finalize(r, config, "cubulate_report", cs);
    if (!resolve_out_dir(config).empty())
        emit_extra(config, "skeleton.json", skeleton_to_json(sk).dump(2) + "\n");
    if (config.write_dot && sk.vertices.size() <= kDotVertexCap)
        emit_extra(config, "skeleton.dot", skeleton_to_dot(sk, "dual"));
    return r;
}

Report cmd_wreath(const RunConfig& config) {
    if (config.k < 2) throw ValidationError("wreath product needs k >= 2");
    GroupWithGenerators base = select_group(config);

    Report r;
    r["command"] = "wreath";
    r["tool_version"] = kToolVersion;
    r["config"] = config_echo(config);
    r["base"] = Json{{"order", base.group.order},
                     {"generator_pairs", base.gens.pair_count()},
                     {"exponent", exponent(base.group)}};

    auto [w, wgens] = wreath_product(config.k, base.group, base.gens, config.cap_closure);
    // k^|base| * |base|, one factor at a time with an overflow guard
    std::uint64_t expected = static_cast<std::uint64_t>(base.group.order);
    for (int i = 0; i < base.group.order; ++i) {
        if (expected > std::numeric_limits<std::uint64_t>::max() /
                           static_cast<std::uint64_t>(config.k))
            throw SizeLimitError("wreath order overflows");
        expected *= static_cast<std::uint64_t>(config.k);
    }
    std::uint64_t exp = exponent(w);
    std::uint64_t bound = static_cast<std::uint64_t>(config.k) * exponent(base.group);

    Json wr;
    wr["order"] = w.order;
    wr["expected_order"] = expected;
    wr["exponent"] = exp;
    wr["generator_pairs"] = wgens.pair_count();
    r["wreath"] = wr;

    CheckSet cs;
    cs.add("order_formula", static_cast<std::uint64_t>(w.order) == expected);
    cs.add("exponent_divides_k_times_base_exponent", exp != 0 && bound % exp == 0);
    cs.add("generator_pairs_m_plus_1", wgens.pair_count() == base.gens.pair_count() + 1);
    bool axioms = true;
    try {
        w.validate();
        wgens.validate(w);
    } catch (const std::logic_error&) {
        axioms = false;
    }
    cs.add("group_axioms", axioms);

    finalize(r, config, "wreath_report", cs);
    return r;
}

namespace {

// one (preset, k) cell of the verification matrix
Json run_instance(const std::string& name, int k, const RunConfig& config, bool& all_ok) {
    Json j;
    j["preset"] = name;
    j["k"] = k;
    GroupWithGenerators gw = preset(name);
    CoverSystem sys = make_cover_system(gw.group, gw.gens, k);
    j["base"] = Json{{"order", sys.group.order},
                     {"edges", sys.base.edge_count()},
                     {"rank", sys.rank}};
    j["cubization_order"] = cubization_order(sys);

    CheckSet cs;
    std::uint64_t lemma_samples = std::min<std::uint64_t>(config.samples, 100);

    if (!sys.materializable(config.cap_cover)) {
        j["regime"] = "implicit";
        bool f_ok = true;
        j["formula_checks"] = formula_spot_checks(sys, config.seed, f_ok);
        cs.add("formula_checks", f_ok);
        bool lemma_ok = true;
        j["lemma"] = run_lemma_suite(sys, std::min<std::uint64_t>(lemma_samples, 25),
                                     config.seed, config.max_word_len, lemma_ok);
        cs.add("lemma_suite", lemma_ok);
        j["checks"] = cs.checks;
        j["ok"] = cs.all;
        all_ok = all_ok && cs.all;
        return j;
    }

    j["regime"] = "explicit";
    CoverGraph& cg = ensure_cover(sys, config.cap_cover);
    std::uint64_t vcount = static_cast<std::uint64_t>(cg.graph.vertex_count);
    j["cover"] = Json{{"vertices", vcount},
                      {"edges", cg.graph.edge_count()},
                      {"fiber", cg.fiber}};
    cs.add("cover_vertex_count",
           vcount == static_cast<std::uint64_t>(sys.base.vertex_count) * cg.fiber);
    cs.add("cover_edge_count",
           static_cast<std::uint64_t>(cg.graph.edge_count()) ==
               static_cast<std::uint64_t>(sys.base.edge_count()) * cg.fiber);
    bool cdeg = true;
    for (int v = 0; v < cg.graph.vertex_count; ++v)
        if (cg.graph.degree(v) != sys.base.symbol_count) cdeg = false;
    cs.add("cover_degree_uniform", cdeg);
    cs.add("cover_connected", is_connected(cg.graph));

    if (vcount <= kSabidussiCap) {
        SabidussiReport s = verify_sabidussi(sys, kSabidussiCap);
        j["sabidussi"] = sabidussi_json(s);
        cs.add("sabidussi", s.ok);
    } else {
        RegularityReport g = verify_regularity(sys, config.cap_cover);
        j["regularity"] = regularity_json(g);
        cs.add("regularity", g.ok);
    }

    if (vcount <= kLiftAgreementCap) {
        bool agree = true;
        j["lift_agreement"] = lift_agreement_audit(sys, config.cap_cover, agree);
        cs.add("lift_formula_matches_bfs", agree);
    }

    bool lemma_ok = true;
    j["lemma"] = run_lemma_suite(sys, lemma_samples, config.seed, config.max_word_len, lemma_ok);
    cs.add("lemma_suite", lemma_ok);

    ExponentCheck e = cubization_exponent_check(sys, lemma_samples, config.seed,
                                                config.max_word_len);
    j["exponent"] = exponent_json(e);
    cs.add("exponent_bound", e.all_orders_divide_bound);

    // walls
    WallSpace space = wall_space_from_cover(sys.base, cg);
    SideMasks masks = make_side_masks(space);
    std::size_t per_edge = (std::size_t{1} << (k - 1)) - 1;
    j["walls"] = space.walls.size();
    cs.add("wall_count_formula",
           space.walls.size() == per_edge * static_cast<std::size_t>(sys.base.edge_count()));
    std::vector<std::pair<int, int>> edges;
    edges.reserve(cg.graph.edge_count());
    for (int ed = 0; ed < cg.graph.edge_count(); ++ed) edges.push_back(cg.graph.edge_ends(ed));
    cs.add("adjacent_points_separated", adjacent_separated(masks, edges));
    bool metric_ok = true;
    j["metric"] = metric_audit(space, masks, metric_ok);
    cs.add("pseudo_metric", metric_ok);

    std::vector<std::uint32_t> gen_perm;
    if (sys.gens.size() > 0) {
        std::vector<Lift> lifts = cubization_generators(sys);
        gen_perm = lift_to_permutation(sys, lifts[0], config.cap_cover);
        act_on_walls(space, gen_perm);  // validates walls map to walls
        cs.add("generator_preserves_distance", invariance_audit(space, masks, gen_perm));
    }
    if (sys.rank > 0) {
        PhaseVec e0(sys.k, sys.rank);
        e0.add_at(0, 1);
        std::vector<std::uint32_t> deck_perm =
            lift_to_permutation(sys, deck_transformation(sys, e0), config.cap_cover);
        act_on_walls(space, deck_perm);
        cs.add("deck_preserves_distance", invariance_audit(space, masks, deck_perm));
    }

    // dual skeleton, only when the wall count allows the brute cross-check
    if (static_cast<int>(space.walls.size()) <= kBruteWallCap) {
        DualSkeleton sk = dual_skeleton(space, kBruteWallCap);
        Json dual;
        dual["vertices"] = sk.vertices.size();
        dual["edges"] = sk.edges.size();
        cs.add("matches_brute_enumeration", brute_component_matches(space, sk));
        bool median_checked = sk.vertices.size() <= static_cast<std::size_t>(kDefaultMedianCap);
        dual["median_checked"] = median_checked;
        if (median_checked)
            cs.add("median_graph",
                   is_median_graph(static_cast<int>(sk.vertices.size()), sk.edges,
                                   kDefaultMedianCap));
        cs.add("embedding_isometric", embedding_isometric(space, masks, sk));
        std::vector<std::uint64_t> census = cube_census(space, config.cap_census);
        int max_dim = 0;
        for (std::size_t d = 0; d < census.size(); ++d)
            if (census[d] > 0) max_dim = static_cast<int>(d);
        dual["max_cube_dimension"] = max_dim;
        if (!gen_perm.empty()) {
            WallAction act = act_on_walls(space, gen_perm);
            act_on_dual(space, sk, act, gen_perm);
            cs.add("dual_action_transported", true);
        }
        j["dual"] = dual;
    }

    j["checks"] = cs.checks;
    if (!cs.failed.empty()) j["failed_checks"] = cs.failed;
    j["ok"] = cs.all;
    all_ok = all_ok && cs.all;
    return j;
}

Json displacement_monotone_special(const RunConfig& config, bool& ok) {
    ok = true;
    Json tables = Json::object();
    for (int n = 4; n <= 20; ++n) {
        GroupWithGenerators gw = preset("cyclic:" + std::to_string(n));
        CoverSystem sys = make_cover_system(gw.group, gw.gens, 2);
        CoverGraph& cg = ensure_cover(sys, config.cap_cover);
        WallSpace space = wall_space_from_cover(sys.base, cg);
        std::vector<Lift> lifts = cubization_generators(sys);
        std::vector<std::uint32_t> perm = lift_to_permutation(sys, lifts[0], config.cap_cover);
        std::vector<std::uint64_t> disp = orbit_displacement(space, perm, 0, n - 1);
        for (std::size_t i = 1; i < disp.size(); ++i)
            if (disp[i] <= disp[i - 1]) ok = false;
        if (disp.empty() || disp[0] == 0) ok = false;
        tables[std::to_string(n)] = disp;
    }
    Json j;
    j["range"] = Json::array({4, 20});
    j["strictly_increasing"] = ok;
    j["displacement"] = tables;
    return j;
}

Json small_exponent_special(bool& ok) {
    // the 4-point elementary abelian square at k = 2: the cubization is an
    // explicit 128-element group of exponent exactly 4
    GroupWithGenerators gw = preset("elementary_abelian_2:2");
    CoverSystem sys = make_cover_system(gw.group, gw.gens, 2);
    CubizationExplicit cub = cubization_group_explicit(sys, 4096);
    std::uint64_t exp = exponent(cub.group);
    int witness = -1;
    bool orders_ok = true;
    for (int g = 0; g < cub.group.order; ++g) {
        int ord = element_order(cub.group, g);
        if (4 % ord != 0) orders_ok = false;
        if (ord == 4 && witness < 0) witness = g;
    }
    ok = exp == 4 && witness >= 0 && orders_ok;
    Json j;
    j["group_order"] = cub.group.order;
    j["exponent"] = exp;
    j["all_orders_divide_4"] = orders_ok;
    j["witness_element"] = witness;
    if (witness >= 0) {
        j["witness_base_element"] = cub.element_g[witness];
        j["witness_order"] = element_order(cub.group, witness);
    }
    return j;
}

Json torsion_sample_special(const RunConfig& config, bool& ok) {
    // the 27-element unitriangular group at k = 2: far beyond materialization,
    // every sampled word must have lift order dividing 6
    GroupWithGenerators gw = preset("burnside_2_3");
    CoverSystem sys = make_cover_system(gw.group, gw.gens, 2);
    ExponentCheck e = cubization_exponent_check(sys, config.samples, config.seed,
                                                config.max_word_len);
    std::string order = cubization_order(sys);
    ok = e.all_orders_divide_bound && e.bound == 6;
    Json j;
    j["cubization_order"] = order;
    j["exponent_samples"] = exponent_json(e);
    bool deck_ok = true;
    j["deck"] = deck_group_checks(sys, deck_ok);
    ok = ok && deck_ok;
    bool lemma_ok = true;
    j["lemma"] = run_lemma_suite(sys, std::min<std::uint64_t>(config.samples, 100), config.seed,
                                 config.max_word_len, lemma_ok);
    ok = ok && lemma_ok;
    return j;
}

Json wreath_special(const RunConfig& config, bool& ok) {
    GroupWithGenerators base = preset("cyclic:3");
    auto [w, wgens] = wreath_product(2, base.group, base.gens, config.cap_closure);
    std::uint64_t exp = exponent(w);
    ok = w.order == 24 && exp == 6 && wgens.pair_count() == 2;
    Json j;
    j["order"] = w.order;
    j["exponent"] = exp;
    j["generator_pairs"] = wgens.pair_count();
    return j;
}

}  // namespace

Report cmd_verify_all(const RunConfig& config) {
    Report r;
    r["command"] = "verify_all";
    r["tool_version"] = kToolVersion;
    r["config"] = config_echo(config);

    std::vector<std::string> presets;
    for (int n = 2; n <= 8; ++n) presets.push_back("cyclic:" + std::to_string(n));
    for (int n = 3; n <= 5; ++n) presets.push_back("dihedral:" + std::to_string(n));
    presets.push_back("elementary_abelian_2:2");
    presets.push_back("elementary_abelian_2:3");

    bool all_ok = true;
    Json instances = Json::array();
    for (const std::string& name : presets)
        for (int k : {2, 3, 4}) instances.push_back(run_instance(name, k, config, all_ok));
    r["instances"] = instances;

    Json special;
    bool disp_ok = true, exp4_ok = true, torsion_ok = true, wreath_ok = true;
    special["displacement_monotone"] = displacement_monotone_special(config, disp_ok);
    special["small_exponent"] = small_exponent_special(exp4_ok);
    special["torsion_sample"] = torsion_sample_special(config, torsion_ok);
    special["wreath"] = wreath_special(config, wreath_ok);
    r["special"] = special;

    CheckSet cs;
    cs.add("matrix_instances", all_ok);
    cs.add("displacement_monotone", disp_ok);
    cs.add("small_exponent_exact_4", exp4_ok);
    cs.add("torsion_sample_bound_6", torsion_ok);
    cs.add("wreath_z2_wr_z3", wreath_ok);

    finalize(r, config, "verify_all", cs);
    return r;
}

}  // namespace cubization
