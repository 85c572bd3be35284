#pragma once

// Z_k homology cover of a base multigraph, lifts of base automorphisms,
// and the group generated by the distinguished lifts of the generators.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cubization/groups.hpp"
#include "cubization/multigraph.hpp"
#include "cubization/phase.hpp"

namespace cubization {

inline constexpr std::uint64_t kDefaultCoverCap = 100000;

// Voltages live on darts: tree darts carry zero, the i-th non-tree edge
// carries +e_i on its canonical dart and -e_i on the opposite one.
struct VoltageData {
    int k = 2;
    int rank = 0;
    std::vector<int> dart_basis;  // basis index per dart, -1 on tree darts
    std::vector<int> dart_sign;   // +1 canonical, -1 opposite, 0 on tree darts
    std::vector<int> basis_dart;  // canonical dart carrying +e_i, per basis index

    PhaseVec dart_voltage(int dart) const {
        PhaseVec v(k, rank);
        if (dart_basis[dart] >= 0) v.add_at(dart_basis[dart], dart_sign[dart]);
        return v;
    }

    // acc += voltage(dart), avoiding a temporary
    void add_dart_voltage(PhaseVec& acc, int dart) const {
        if (dart_basis[dart] >= 0) acc.add_at(dart_basis[dart], dart_sign[dart]);
    }
};

VoltageData assign_voltages(const Multigraph& base, const SpanningTree& tree, int k);

// Cover vertices are (base vertex, phase in Z_k^rank); the id of (v, x) is
// rank(x) * base_vertex_count + v, so the phase-zero fiber keeps base ids.
struct CoverGraph {
    Multigraph graph;
    int base_vertex_count = 0;
    int k = 2;
    int rank = 0;
    std::uint64_t fiber = 1;  // k^rank

    std::uint64_t vertex_id(int base_vertex, std::uint64_t phase_rank) const {
        return phase_rank * base_vertex_count + base_vertex;
    }
    int base_of(std::uint64_t vertex) const { return static_cast<int>(vertex % base_vertex_count); }
    std::uint64_t phase_rank_of(std::uint64_t vertex) const { return vertex / base_vertex_count; }
    PhaseVec phase_of(std::uint64_t vertex) const {
        return PhaseVec::from_rank(k, rank, phase_rank_of(vertex));
    }
};

CoverGraph build_cover(const Multigraph& base, const VoltageData& voltages,
                       std::uint64_t cap = kDefaultCoverCap);

// Base graph, tree and voltages are always present; the cover graph itself is
// materialized on demand because the fiber can be far beyond desk scale.
struct CoverSystem {
    FiniteGroup group;
    GeneratorSet gens;
    Multigraph base;
    SpanningTree tree;
    VoltageData voltages;
    int k = 2;
    int rank = 0;
    std::uint64_t fiber = 1;  // k^rank, valid only when materializable()
    std::optional<CoverGraph> cover;

    bool materializable(std::uint64_t cap = kDefaultCoverCap) const;
    std::uint64_t cover_vertex_count() const;  // throws SizeLimitError on overflow
};

CoverSystem make_cover_system(const FiniteGroup& group, const GeneratorSet& gens, int k);
CoverGraph& ensure_cover(CoverSystem& system, std::uint64_t cap = kDefaultCoverCap);

// A lift of the base automorphism v -> g v acts on cover vertices by
// (v, x) -> (g v, offset + correction[v] + twist x), correction[identity] = 0.
// Lifts of a fixed g form a coset of the deck group; pairs (g, offset) biject
// with lifts, so twist and correction are functions of g alone.
struct Lift {
    int g = 0;
    PhaseVec offset;
    PhaseMatrix twist;
    std::vector<PhaseVec> correction;  // indexed by base vertex

    bool is_identity() const;
};

Lift lift_formula(const CoverSystem& system, int g, const PhaseVec& offset);
Lift lift_bfs(CoverSystem& system, int g, const PhaseVec& offset,
              std::uint64_t cap = kDefaultCoverCap);

// abstract cover point, usable without materializing the cover graph
struct CoverPoint {
    int base_vertex = 0;
    PhaseVec phase;
};

CoverPoint apply_lift(const CoverSystem& system, const Lift& lift, const CoverPoint& p);
std::uint64_t apply_lift_vertex(const CoverSystem& system, const Lift& lift, std::uint64_t vertex);

// outer after inner, as functions on the cover
Lift compose_lifts(const CoverSystem& system, const Lift& outer, const Lift& inner);
Lift inverse_lift(const CoverSystem& system, const Lift& lift);
Lift identity_lift(const CoverSystem& system);
std::uint64_t lift_order(const CoverSystem& system, const Lift& lift,
                         std::uint64_t cap = 1000000);
Lift deck_transformation(const CoverSystem& system, const PhaseVec& translation);
Lift lift_word(const CoverSystem& system, const std::vector<Lift>& symbol_lifts, const Word& word);

std::vector<std::uint32_t> lift_to_permutation(CoverSystem& system, const Lift& lift,
                                               std::uint64_t cap = kDefaultCoverCap);

// true when the vertex permutation maps every dart to a dart with the same symbol
bool is_cover_automorphism(CoverSystem& system, const std::vector<std::uint32_t>& perm,
                           std::uint64_t cap = kDefaultCoverCap);

// one lift per generator symbol: the lift of v -> s v moving the basepoint
// along the sigma dart at the identity vertex
std::vector<Lift> cubization_generators(const CoverSystem& system);

// explicit closure of the generator lifts; element i is the lift with state
// (g_i, a_i), the multiplication table composes normal forms
struct CubizationExplicit {
    FiniteGroup group;
    GeneratorSet gens;              // same symbol names and pairing as the base
    std::vector<int> element_g;     // base element per group element
    std::vector<PhaseVec> element_offset;
};

// builds a dense multiplication table, so the cap stays small
CubizationExplicit cubization_group_explicit(const CoverSystem& system,
                                             std::uint32_t cap = 4096);

// Sabidussi-style audit that the cover is the Cayley graph of the cubization
// group with respect to the lifted generators, via explicit permutations.
// Requires a materializable cover; intended for small instances.
struct SabidussiReport {
    std::uint64_t cover_vertices = 0;
    std::uint64_t group_order = 0;
    bool generators_are_automorphisms = false;
    bool action_free_and_transitive = false;
    bool labeled_isomorphism = false;
    bool lift_pairs_complete = false;  // every (g, a) pair realized exactly once
    bool ok = false;
};

SabidussiReport verify_sabidussi(CoverSystem& system, std::uint64_t cap = 1024);

// Scalable variant: closes the (g, a) normal-form states instead of building
// permutations, checking the same regularity facts on the materialized cover.
struct RegularityReport {
    std::uint64_t expected_states = 0;
    std::uint64_t reached_states = 0;
    bool generators_are_automorphisms = false;
    bool closure_complete = false;
    bool ok = false;
};

RegularityReport verify_regularity(CoverSystem& system, std::uint64_t cap = kDefaultCoverCap);

// For a word with trivial base product, the k-th power of its lift is the
// identity. Throws ValidationError when the base product is not trivial.
struct LemmaCheck {
    std::uint64_t lift_power_order = 0;  // order of the composed lift
    bool base_product_trivial = false;
    bool kth_power_identity = false;
    bool probes_fixed = false;
};

LemmaCheck lemma_power_identity(const CoverSystem& system, const Word& word);

struct ExponentCheck {
    std::uint64_t base_exponent = 0;
    std::uint64_t bound = 0;  // k * base exponent
    std::uint64_t samples = 0;
    std::uint64_t max_order_observed = 0;
    bool all_orders_divide_bound = true;
    Word witness;  // word whose lift attains max_order_observed
};

ExponentCheck cubization_exponent_check(const CoverSystem& system, std::uint64_t samples,
                                        std::uint64_t seed, int max_word_len);

// |G| * k^rank as an exact big integer, no materialization needed
std::string cubization_order(const CoverSystem& system);

}  // namespace cubization
