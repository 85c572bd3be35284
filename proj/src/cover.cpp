#include "cubization/cover.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <queue>
#include <string>
#include <unordered_map>

#include "cubization/errors.hpp"
#include "cubization/rng.hpp"

namespace cubization {

namespace {

// k^rank saturated to UINT64_MAX on overflow
std::uint64_t pow_saturated(int k, int rank, bool& exact) {
    exact = true;
    std::uint64_t f = 1;
    for (int i = 0; i < rank; ++i) {
        if (f > UINT64_MAX / static_cast<std::uint64_t>(k)) {
            exact = false;
            return UINT64_MAX;
        }
        f *= static_cast<std::uint64_t>(k);
    }
    return f;
}

int base_dart_of(const Multigraph& base, int vertex, int symbol) {
    return vertex * base.symbol_count + symbol;
}

// dart lookup table for a cover graph: entry (v, s) -> dart id with source v
// and symbol s, relying on the Cayley property that it is unique
std::vector<int> dart_at_table(const Multigraph& g) {
    std::vector<int> table(static_cast<std::size_t>(g.vertex_count) * g.symbol_count, -1);
    for (int d = 0; d < static_cast<int>(g.darts.size()); ++d) {
        std::size_t slot = static_cast<std::size_t>(g.darts[d].source) * g.symbol_count +
                           g.darts[d].symbol;
        structural_require(table[slot] == -1, "duplicate (vertex, symbol) dart in cover");
        table[slot] = d;
    }
    for (int x : table) structural_require(x != -1, "missing (vertex, symbol) dart in cover");
    return table;
}

bool permutation_is_symbol_automorphism(const Multigraph& g, const std::vector<int>& dart_at,
                                        const std::vector<std::uint32_t>& perm) {
    for (const Dart& d : g.darts) {
        int image_dart = dart_at[static_cast<std::size_t>(perm[d.source]) * g.symbol_count +
                                 d.symbol];
        if (g.darts[image_dart].target != static_cast<int>(perm[d.target])) return false;
    }
    return true;
}

}  // namespace

VoltageData assign_voltages(const Multigraph& base, const SpanningTree& tree, int k) {
    if (k < 2 || k > 255) throw ValidationError("voltage modulus must be in [2, 255]");
    VoltageData v;
    v.k = k;
    v.dart_basis.assign(base.darts.size(), -1);
    v.dart_sign.assign(base.darts.size(), 0);
    for (int e = 0; e < base.edge_count(); ++e) {
        if (tree.edge_in_tree[e]) continue;
        int d = base.edge_dart[e];
        int i = v.rank++;
        v.basis_dart.push_back(d);
        v.dart_basis[d] = i;
        v.dart_sign[d] = 1;
        v.dart_basis[base.darts[d].opposite] = i;
        v.dart_sign[base.darts[d].opposite] = -1;
    }
    structural_require(v.rank == cycle_rank(base), "voltage rank disagrees with cycle rank");
    return v;
}

CoverGraph build_cover(const Multigraph& base, const VoltageData& voltages, std::uint64_t cap) {
    bool exact = true;
    std::uint64_t fiber = pow_saturated(voltages.k, voltages.rank, exact);
    std::uint64_t nv = static_cast<std::uint64_t>(base.vertex_count);
    if (!exact || (nv > 0 && fiber > UINT64_MAX / nv))
        throw CapExceeded("cover size exceeds 64 bits, cap is " + std::to_string(cap));
    std::uint64_t vcount = fiber * nv;
    if (vcount > cap)
        throw CapExceeded("cover would have " + std::to_string(vcount) + " vertices, cap is " +
                          std::to_string(cap));
    std::uint64_t ecount = static_cast<std::uint64_t>(base.edge_count()) * fiber;
    structural_require(ecount <= static_cast<std::uint64_t>(INT32_MAX) / 2,
                       "cover edge count overflows");

    CoverGraph c;
    c.base_vertex_count = base.vertex_count;
    c.k = voltages.k;
    c.rank = voltages.rank;
    c.fiber = fiber;
    Multigraph& g = c.graph;
    g.vertex_count = static_cast<int>(vcount);
    g.symbol_count = base.symbol_count;
    g.symbol_names = base.symbol_names;
    g.darts.resize(static_cast<std::size_t>(ecount) * 2);
    g.edge_dart.resize(static_cast<std::size_t>(ecount));

    std::vector<std::uint64_t> kpow(voltages.rank + 1, 1);
    for (int i = 0; i < voltages.rank; ++i)
        kpow[i + 1] = kpow[i] * static_cast<std::uint64_t>(voltages.k);

    for (int e = 0; e < base.edge_count(); ++e) {
        int d = base.edge_dart[e];
        const Dart& fwd = base.darts[d];
        const Dart& bwd = base.darts[fwd.opposite];
        int bi = voltages.dart_basis[d];
        int sign = voltages.dart_sign[d];
        for (std::uint64_t t = 0; t < fiber; ++t) {
            std::uint64_t t2 = t;
            if (bi >= 0) {
                int digit = static_cast<int>(t / kpow[bi] % voltages.k);
                int digit2 = (digit + sign + voltages.k) % voltages.k;
                t2 = t + (static_cast<std::uint64_t>(digit2) - digit) * kpow[bi];
            }
            int ce = static_cast<int>(static_cast<std::uint64_t>(e) * fiber + t);
            int a = 2 * ce;
            g.darts[a].source = static_cast<int>(c.vertex_id(fwd.source, t));
            g.darts[a].target = static_cast<int>(c.vertex_id(fwd.target, t2));
            g.darts[a].symbol = fwd.symbol;
            g.darts[a].edge = ce;
            g.darts[a].opposite = a + 1;
            g.darts[a + 1].source = g.darts[a].target;
            g.darts[a + 1].target = g.darts[a].source;
            g.darts[a + 1].symbol = bwd.symbol;
            g.darts[a + 1].edge = ce;
            g.darts[a + 1].opposite = a;
            g.edge_dart[ce] = a;
        }
    }
    g.build_adjacency();
    structural_require(is_connected(g), "homology cover is not connected");
    return c;
}

bool CoverSystem::materializable(std::uint64_t cap) const {
    bool exact = true;
    std::uint64_t f = pow_saturated(k, rank, exact);
    if (!exact) return false;
    if (f > cap) return false;
    return f * static_cast<std::uint64_t>(base.vertex_count) <= cap;
}

std::uint64_t CoverSystem::cover_vertex_count() const {
    bool exact = true;
    std::uint64_t f = pow_saturated(k, rank, exact);
    if (!exact || f > UINT64_MAX / std::max<std::uint64_t>(1, base.vertex_count))
        throw SizeLimitError("cover vertex count exceeds 64 bits");
    return f * static_cast<std::uint64_t>(base.vertex_count);
}

CoverSystem make_cover_system(const FiniteGroup& group, const GeneratorSet& gens, int k) {
    if (k < 2 || k > 255) throw ValidationError("cover modulus k must be in [2, 255]");
    gens.validate(group);
    CoverSystem s;
    s.group = group;
    s.gens = gens;
    s.base = build_cayley(group, gens);
    s.tree = spanning_tree(s.base);
    s.voltages = assign_voltages(s.base, s.tree, k);
    s.k = k;
    s.rank = s.voltages.rank;
    bool exact = true;
    s.fiber = pow_saturated(k, s.rank, exact);
    return s;
}

CoverGraph& ensure_cover(CoverSystem& system, std::uint64_t cap) {
    if (!system.cover) system.cover = build_cover(system.base, system.voltages, cap);
    return *system.cover;
}

bool Lift::is_identity() const {
    if (g != 0 || !offset.is_zero() || !twist.is_identity()) return false;
    for (const PhaseVec& c : correction)
        if (!c.is_zero()) return false;
    return true;
}

Lift lift_formula(const CoverSystem& system, int g, const PhaseVec& offset) {
    const Multigraph& base = system.base;
    const VoltageData& vol = system.voltages;
    if (g < 0 || g >= system.group.order)
        throw ValidationError("lift_formula: element out of range");
    if (offset.k != vol.k || offset.rank() != vol.rank)
        throw ValidationError("lift_formula: offset has wrong shape");

    Lift L;
    L.g = g;
    L.offset = offset;
    L.correction.assign(base.vertex_count, PhaseVec(vol.k, vol.rank));

    // corrections follow tree darts: c(w) = c(v) + voltage(image of v->w dart)
    for (int v : system.tree.order) {
        int pd = system.tree.parent_dart[v];
        if (pd < 0) continue;
        int u = base.darts[pd].source;
        L.correction[v] = L.correction[u];
        int image = base_dart_of(base, system.group.mult(g, u), base.darts[pd].symbol);
        vol.add_dart_voltage(L.correction[v], image);
    }

    // twist column i from the non-tree dart carrying +e_i
    L.twist = PhaseMatrix(vol.k, vol.rank);
    for (int i = 0; i < vol.rank; ++i) {
        int d = vol.basis_dart[i];
        int u = base.darts[d].source;
        int w = base.darts[d].target;
        PhaseVec col = L.correction[u];
        vol.add_dart_voltage(col, base_dart_of(base, system.group.mult(g, u), base.darts[d].symbol));
        col = col - L.correction[w];
        for (int r = 0; r < vol.rank; ++r) L.twist.set(r, i, col.digits[r]);
    }
    structural_require(phase_matrix_invertible(L.twist), "lift twist is singular");

    // defining consistency on every dart, not just the tree and basis ones
    for (int d = 0; d < static_cast<int>(base.darts.size()); ++d) {
        int u = base.darts[d].source;
        int w = base.darts[d].target;
        PhaseVec lhs = L.correction[u];
        vol.add_dart_voltage(lhs, base_dart_of(base, system.group.mult(g, u), base.darts[d].symbol));
        PhaseVec rhs = L.correction[w] + L.twist.apply(vol.dart_voltage(d));
        structural_require(lhs == rhs, "lift consistency fails on a dart");
    }
    return L;
}

CoverPoint apply_lift(const CoverSystem& system, const Lift& lift, const CoverPoint& p) {
    CoverPoint q;
    q.base_vertex = static_cast<int>(system.group.mult(lift.g, p.base_vertex));
    q.phase = lift.offset + lift.correction[p.base_vertex] + lift.twist.apply(p.phase);
    return q;
}

std::uint64_t apply_lift_vertex(const CoverSystem& system, const Lift& lift,
                                std::uint64_t vertex) {
    int nv = system.base.vertex_count;
    CoverPoint p;
    p.base_vertex = static_cast<int>(vertex % nv);
    p.phase = PhaseVec::from_rank(system.k, system.rank, vertex / nv);
    CoverPoint q = apply_lift(system, lift, p);
    return q.phase.to_rank() * nv + q.base_vertex;
}

Lift compose_lifts(const CoverSystem& system, const Lift& outer, const Lift& inner) {
    structural_require(outer.correction.size() == inner.correction.size(),
                       "compose_lifts shape mismatch");
    Lift r;
    r.g = static_cast<int>(system.group.mult(outer.g, inner.g));
    r.twist = outer.twist * inner.twist;
    r.offset = outer.offset + outer.correction[inner.g] + outer.twist.apply(inner.offset);
    r.correction.resize(outer.correction.size());
    for (std::size_t v = 0; v < r.correction.size(); ++v) {
        int gv = static_cast<int>(system.group.mult(inner.g, static_cast<int>(v)));
        r.correction[v] =
            (outer.correction[gv] - outer.correction[inner.g]) + outer.twist.apply(inner.correction[v]);
    }
    return r;
}

Lift identity_lift(const CoverSystem& system) {
    Lift L = lift_formula(system, 0, PhaseVec(system.k, system.rank));
    structural_require(L.is_identity(), "lift of identity with zero offset is not trivial");
    return L;
}

Lift inverse_lift(const CoverSystem& system, const Lift& lift) {
    int gi = static_cast<int>(system.group.inv(lift.g));
    Lift L = lift_formula(system, gi, PhaseVec(system.k, system.rank));
    L.offset = -(L.correction[lift.g] + L.twist.apply(lift.offset));
    structural_require(compose_lifts(system, L, lift).is_identity(),
                       "inverse lift does not invert");
    return L;
}

std::uint64_t lift_order(const CoverSystem& system, const Lift& lift, std::uint64_t cap) {
    Lift acc = lift;
    std::uint64_t n = 1;
    while (!acc.is_identity()) {
        acc = compose_lifts(system, acc, lift);
        if (++n > cap) throw SizeLimitError("lift order exceeds cap " + std::to_string(cap));
    }
    return n;
}

Lift deck_transformation(const CoverSystem& system, const PhaseVec& translation) {
    if (translation.k != system.k || translation.rank() != system.rank)
        throw ValidationError("deck translation has wrong shape");
    Lift L;
    L.g = 0;
    L.offset = translation;
    L.twist = PhaseMatrix::identity(system.k, system.rank);
    L.correction.assign(system.base.vertex_count, PhaseVec(system.k, system.rank));
    return L;
}

Lift lift_word(const CoverSystem& system, const std::vector<Lift>& symbol_lifts,
               const Word& word) {
    Lift acc = identity_lift(system);
    for (int letter : word.letters) {
        if (letter < 0 || letter >= static_cast<int>(symbol_lifts.size()))
            throw ValidationError("word letter out of range");
        acc = compose_lifts(system, acc, symbol_lifts[letter]);
    }
    return acc;
}

std::vector<std::uint32_t> lift_to_permutation(CoverSystem& system, const Lift& lift,
                                               std::uint64_t cap) {
    CoverGraph& cover = ensure_cover(system, cap);
    std::uint64_t n = cover.graph.vertex_count;
    std::vector<std::uint32_t> perm(n);
    std::vector<char> seen(n, 0);
    for (std::uint64_t v = 0; v < n; ++v) {
        std::uint64_t w = apply_lift_vertex(system, lift, v);
        structural_require(w < n && !seen[w], "lift image is not a permutation");
        seen[w] = 1;
        perm[v] = static_cast<std::uint32_t>(w);
    }
    return perm;
}

bool is_cover_automorphism(CoverSystem& system, const std::vector<std::uint32_t>& perm,
                           std::uint64_t cap) {
    CoverGraph& cover = ensure_cover(system, cap);
    std::vector<int> dart_at = dart_at_table(cover.graph);
    return permutation_is_symbol_automorphism(cover.graph, dart_at, perm);
}

Lift lift_bfs(CoverSystem& system, int g, const PhaseVec& offset, std::uint64_t cap) {
    CoverGraph& cover = ensure_cover(system, cap);
    const Multigraph& cg = cover.graph;
    if (g < 0 || g >= system.group.order)
        throw ValidationError("lift_bfs: element out of range");
    if (offset.k != system.k || offset.rank() != system.rank)
        throw ValidationError("lift_bfs: offset has wrong shape");

    std::vector<int> dart_at = dart_at_table(cg);
    const std::int64_t unset = -1;
    std::vector<std::int64_t> image(cg.vertex_count, unset);
    std::uint64_t basepoint = 0;  // (identity vertex, zero phase)
    image[basepoint] =
        static_cast<std::int64_t>(cover.vertex_id(static_cast<int>(system.group.mult(g, 0)),
                                                  offset.to_rank()));
    std::queue<std::uint64_t> q;
    q.push(basepoint);
    std::uint64_t reached = 1;
    while (!q.empty()) {
        std::uint64_t v = q.front();
        q.pop();
        std::uint64_t iv = static_cast<std::uint64_t>(image[v]);
        for (int a = cg.adj_offset[v]; a < cg.adj_offset[v + 1]; ++a) {
            const Dart& d = cg.darts[cg.adj_darts[a]];
            int idart = dart_at[iv * cg.symbol_count + d.symbol];
            std::int64_t want = cg.darts[idart].target;
            if (image[d.target] == unset) {
                image[d.target] = want;
                ++reached;
                q.push(static_cast<std::uint64_t>(d.target));
            } else {
                structural_require(image[d.target] == want,
                                   "BFS lift propagation is inconsistent");
            }
        }
    }
    structural_require(reached == static_cast<std::uint64_t>(cg.vertex_count),
                       "BFS lift did not reach the whole cover");

    // extract the normal form from the images of the zero fiber and the unit
    // phases over the basepoint, then cross-check every vertex
    int nv = system.base.vertex_count;
    Lift L;
    L.g = g;
    L.offset = offset;
    L.correction.assign(nv, PhaseVec(system.k, system.rank));
    for (int v = 0; v < nv; ++v) {
        std::uint64_t img = static_cast<std::uint64_t>(image[v]);
        L.correction[v] = cover.phase_of(img) - offset;
        structural_require(cover.base_of(img) == static_cast<int>(system.group.mult(g, v)),
                           "BFS lift moves a vertex off the expected base image");
    }
    L.twist = PhaseMatrix(system.k, system.rank);
    for (int i = 0; i < system.rank; ++i) {
        PhaseVec unit(system.k, system.rank);
        unit.add_at(i, 1);
        std::uint64_t v = cover.vertex_id(0, unit.to_rank());
        PhaseVec col = cover.phase_of(static_cast<std::uint64_t>(image[v])) - offset;
        for (int r = 0; r < system.rank; ++r) L.twist.set(r, i, col.digits[r]);
    }
    for (std::uint64_t v = 0; v < static_cast<std::uint64_t>(cg.vertex_count); ++v)
        structural_require(apply_lift_vertex(system, L, v) ==
                               static_cast<std::uint64_t>(image[v]),
                           "BFS lift disagrees with its extracted normal form");
    return L;
}

std::vector<Lift> cubization_generators(const CoverSystem& system) {
    std::vector<Lift> lifts;
    lifts.reserve(system.gens.symbols.size());
    for (std::size_t s = 0; s < system.gens.symbols.size(); ++s) {
        int dart = base_dart_of(system.base, 0, static_cast<int>(s));
        lifts.push_back(lift_formula(system, static_cast<int>(system.gens.to_element[s]),
                                     system.voltages.dart_voltage(dart)));
    }
    return lifts;
}

namespace {

// per-base-element normal forms, the closure works on (g, offset rank) states
struct LiftTable {
    std::vector<Lift> by_element;  // lift_formula(g, 0) for every g

    explicit LiftTable(const CoverSystem& system) {
        by_element.reserve(system.group.order);
        for (int g = 0; g < system.group.order; ++g)
            by_element.push_back(lift_formula(system, g, PhaseVec(system.k, system.rank)));
    }

    // state of left * right given as (g, offset) pairs
    std::pair<int, PhaseVec> product(const CoverSystem& system, int g1, const PhaseVec& a1,
                                     int g2, const PhaseVec& a2) const {
        const Lift& L1 = by_element[g1];
        int g = static_cast<int>(system.group.mult(g1, g2));
        PhaseVec a = a1 + L1.correction[g2] + L1.twist.apply(a2);
        return {g, a};
    }
};

}  // namespace

CubizationExplicit cubization_group_explicit(const CoverSystem& system, std::uint32_t cap) {
    std::uint64_t expected = system.cover_vertex_count();
    if (expected > cap)
        throw CapExceeded("explicit cubization closure of " + std::to_string(expected) +
                          " elements exceeds cap " + std::to_string(cap));
    LiftTable lifts(system);
    std::vector<Lift> gen_lifts = cubization_generators(system);
    int nv = system.base.vertex_count;

    auto key_of = [&](int g, const PhaseVec& a) { return a.to_rank() * nv + g; };
    std::unordered_map<std::uint64_t, std::uint32_t> index;
    std::vector<int> element_g;
    std::vector<PhaseVec> element_offset;
    element_g.push_back(0);
    element_offset.push_back(PhaseVec(system.k, system.rank));
    index.emplace(key_of(0, element_offset[0]), 0);

    for (std::uint32_t at = 0; at < element_g.size(); ++at) {
        int g = element_g[at];
        PhaseVec a = element_offset[at];  // copy, the vectors reallocate
        for (const Lift& s : gen_lifts) {
            auto [g2, a2] = lifts.product(system, g, a, s.g, s.offset);
            std::uint64_t key = key_of(g2, a2);
            if (index.emplace(key, static_cast<std::uint32_t>(element_g.size())).second) {
                element_g.push_back(g2);
                element_offset.push_back(a2);
                if (element_g.size() > cap)
                    throw CapExceeded("cubization closure exceeds cap " + std::to_string(cap));
            }
        }
    }
    std::uint32_t n = static_cast<std::uint32_t>(element_g.size());
    structural_require(n == expected, "cubization closure misses some lifts");

    CubizationExplicit out;
    out.element_g = std::move(element_g);
    out.element_offset = std::move(element_offset);
    out.group.order = static_cast<int>(n);
    out.group.table.assign(static_cast<std::size_t>(n) * n, 0);
    for (std::uint32_t i = 0; i < n; ++i)
        for (std::uint32_t j = 0; j < n; ++j) {
            auto [g, a] = lifts.product(system, out.element_g[i], out.element_offset[i],
                                        out.element_g[j], out.element_offset[j]);
            auto it = index.find(key_of(g, a));
            structural_require(it != index.end(), "cubization table leaves the closure");
            out.group.table[static_cast<std::size_t>(i) * n + j] = it->second;
        }
    out.group.inverse.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        bool found = false;
        for (std::uint32_t j = 0; j < n; ++j)
            if (out.group.mult(i, j) == 0 && out.group.mult(j, i) == 0) {
                out.group.inverse[i] = j;
                found = true;
                break;
            }
        structural_require(found, "cubization element has no inverse");
    }
    out.group.validate();

    out.gens.symbols = system.gens.symbols;
    out.gens.partner = system.gens.partner;
    out.gens.to_element.resize(gen_lifts.size());
    for (std::size_t s = 0; s < gen_lifts.size(); ++s) {
        auto it = index.find(key_of(gen_lifts[s].g, gen_lifts[s].offset));
        structural_require(it != index.end(), "generator lift missing from closure");
        out.gens.to_element[s] = it->second;
    }
    out.gens.validate(out.group);
    return out;
}

SabidussiReport verify_sabidussi(CoverSystem& system, std::uint64_t cap) {
    SabidussiReport r;
    CoverGraph& cover = ensure_cover(system, cap);
    const Multigraph& cg = cover.graph;
    r.cover_vertices = cg.vertex_count;
    if (r.cover_vertices > cap)
        throw CapExceeded("explicit Sabidussi audit capped at " + std::to_string(cap));

    CubizationExplicit cub = cubization_group_explicit(system, static_cast<std::uint32_t>(cap));
    int order = cub.group.order;
    r.group_order = static_cast<std::uint64_t>(order);

    std::vector<int> dart_at = dart_at_table(cg);
    std::vector<std::vector<std::uint32_t>> perms(order);
    r.generators_are_automorphisms = true;
    for (int i = 0; i < order; ++i) {
        Lift L = lift_formula(system, cub.element_g[i], cub.element_offset[i]);
        perms[i] = lift_to_permutation(system, L, cap);
        if (!permutation_is_symbol_automorphism(cg, dart_at, perms[i]))
            r.generators_are_automorphisms = false;
    }

    // the orbit map gamma -> gamma(basepoint) must be a bijection
    std::vector<char> hit(cg.vertex_count, 0);
    bool bijective = order == cg.vertex_count;
    std::vector<std::uint32_t> beta(order);
    for (int i = 0; i < order && bijective; ++i) {
        beta[i] = perms[i][0];
        if (hit[beta[i]]) bijective = false;
        hit[beta[i]] = 1;
    }
    r.action_free_and_transitive = bijective;

    // cover darts match right multiplication by the lifted generators
    r.labeled_isomorphism = bijective;
    if (bijective) {
        for (int i = 0; i < order && r.labeled_isomorphism; ++i)
            for (std::size_t s = 0; s < cub.gens.symbols.size(); ++s) {
                int d = dart_at[static_cast<std::size_t>(beta[i]) * cg.symbol_count +
                                static_cast<int>(s)];
                int product = cub.group.mult(i, cub.gens.to_element[s]);
                if (cg.darts[d].target != static_cast<int>(beta[product])) {
                    r.labeled_isomorphism = false;
                    break;
                }
            }
    }

    // every (g, a) pair appears exactly once among the closure states
    std::vector<char> seen_pair(static_cast<std::size_t>(system.group.order) * cover.fiber, 0);
    bool complete = static_cast<std::uint64_t>(order) ==
                    static_cast<std::uint64_t>(system.group.order) * cover.fiber;
    for (int i = 0; i < order && complete; ++i) {
        std::size_t key = static_cast<std::size_t>(cub.element_offset[i].to_rank()) *
                              system.group.order +
                          cub.element_g[i];
        if (seen_pair[key]) complete = false;
        seen_pair[key] = 1;
    }
    r.lift_pairs_complete = complete;

    r.ok = r.generators_are_automorphisms && r.action_free_and_transitive &&
           r.labeled_isomorphism && r.lift_pairs_complete;
    return r;
}

RegularityReport verify_regularity(CoverSystem& system, std::uint64_t cap) {
    RegularityReport r;
    CoverGraph& cover = ensure_cover(system, cap);
    const Multigraph& cg = cover.graph;
    r.expected_states = static_cast<std::uint64_t>(system.group.order) * cover.fiber;
    structural_require(r.expected_states == static_cast<std::uint64_t>(cg.vertex_count),
                       "cover size disagrees with |G| * k^rank");

    LiftTable lifts(system);
    std::vector<Lift> gen_lifts = cubization_generators(system);
    int nv = system.base.vertex_count;
    auto key_of = [&](int g, const PhaseVec& a) { return a.to_rank() * nv + g; };

    std::vector<char> seen(r.expected_states, 0);
    std::queue<std::pair<int, PhaseVec>> q;
    q.emplace(0, PhaseVec(system.k, system.rank));
    seen[key_of(0, PhaseVec(system.k, system.rank))] = 1;
    r.reached_states = 1;
    while (!q.empty()) {
        auto [g, a] = q.front();
        q.pop();
        for (const Lift& s : gen_lifts) {
            auto [g2, a2] = lifts.product(system, g, a, s.g, s.offset);
            std::uint64_t key = key_of(g2, a2);
            if (!seen[key]) {
                seen[key] = 1;
                ++r.reached_states;
                q.emplace(g2, a2);
            }
        }
    }
    r.closure_complete = r.reached_states == r.expected_states;

    std::vector<int> dart_at = dart_at_table(cg);
    r.generators_are_automorphisms = true;
    for (const Lift& s : gen_lifts) {
        std::vector<std::uint32_t> perm = lift_to_permutation(system, s, cap);
        if (!permutation_is_symbol_automorphism(cg, dart_at, perm))
            r.generators_are_automorphisms = false;
    }
    r.ok = r.closure_complete && r.generators_are_automorphisms;
    return r;
}

LemmaCheck lemma_power_identity(const CoverSystem& system, const Word& word) {
    LemmaCheck c;
    int base = evaluate_word(system.group, system.gens, word);
    c.base_product_trivial = base == 0;
    if (!c.base_product_trivial)
        throw ValidationError("lemma word does not evaluate to the identity in the base group");

    std::vector<Lift> gen_lifts = cubization_generators(system);
    Lift L = lift_word(system, gen_lifts, word);
    structural_require(L.g == 0, "lift of a trivial word moved the base");
    structural_require(L.twist.is_identity(), "lift of a trivial word twists the fiber");
    for (const PhaseVec& v : L.correction)
        structural_require(v.is_zero(), "lift of a trivial word has nonzero correction");

    Lift acc = L;
    for (int i = 1; i < system.k; ++i) acc = compose_lifts(system, acc, L);
    c.kth_power_identity = acc.is_identity();
    c.lift_power_order = lift_order(system, L, static_cast<std::uint64_t>(system.k) + 1);

    // re-apply the lift k times to probe points, independent of the normal
    // form composition above
    c.probes_fixed = true;
    for (int v = 0; v < system.base.vertex_count && c.probes_fixed; ++v) {
        CoverPoint p;
        p.base_vertex = v;
        p.phase = PhaseVec(system.k, system.rank);
        if (system.rank > 0 && v % 3 == 1) p.phase.add_at(v % system.rank, 1);
        CoverPoint q = p;
        for (int i = 0; i < system.k; ++i) q = apply_lift(system, L, q);
        if (q.base_vertex != p.base_vertex || !(q.phase == p.phase)) c.probes_fixed = false;
    }
    return c;
}

ExponentCheck cubization_exponent_check(const CoverSystem& system, std::uint64_t samples,
                                        std::uint64_t seed, int max_word_len) {
    ExponentCheck c;
    c.base_exponent = exponent(system.group);
    c.bound = static_cast<std::uint64_t>(system.k) * c.base_exponent;
    c.samples = samples;
    if (max_word_len < 1) throw ValidationError("max word length must be positive");
    int nsym = static_cast<int>(system.gens.symbols.size());
    if (nsym == 0) {
        c.max_order_observed = 1;
        return c;
    }

    std::vector<Lift> gen_lifts = cubization_generators(system);
    std::mt19937_64 rng(seed);
    for (std::uint64_t i = 0; i < samples; ++i) {
        Word w;
        int len = bounded_int(rng, 1, max_word_len);
        w.letters.reserve(len);
        for (int j = 0; j < len; ++j) w.letters.push_back(bounded_int(rng, 0, nsym - 1));
        Lift L = lift_word(system, gen_lifts, w);
        std::uint64_t order = lift_order(system, L, c.bound + 1);
        if (order > c.bound || c.bound % order != 0) c.all_orders_divide_bound = false;
        if (order > c.max_order_observed) {
            c.max_order_observed = order;
            c.witness = w;
        }
    }
    return c;
}

std::string cubization_order(const CoverSystem& system) {
    mpz_class total(static_cast<unsigned long>(system.group.order));
    mpz_class fiber;
    mpz_ui_pow_ui(fiber.get_mpz_t(), static_cast<unsigned long>(system.k),
                  static_cast<unsigned long>(system.rank));
    total *= fiber;
    return total.get_str();
}

}  // namespace cubization
