#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cubization {

// Finite group given by dense multiplication and inverse tables. Element 0 is
// always the identity. Groups built from permutation generators index their
// elements in breadth-first discovery order from the identity, so every
// downstream artifact (covers, walls, dual complexes) is reproducible.
struct FiniteGroup {
    int order = 0;
    std::vector<uint32_t> table;    // row-major: table[a * order + b] = a*b
    std::vector<uint32_t> inverse;  // inverse[a]

    int mult(int a, int b) const { return static_cast<int>(table[static_cast<std::size_t>(a) * order + b]); }
    int inv(int a) const { return static_cast<int>(inverse[a]); }
    static constexpr int identity = 0;

    // Checks the group axioms. Associativity is exhaustive for order <= 64
    // and sampled (seeded) above that.
    void validate() const;
};

// Symmetric generating set: 2m formal symbols paired by a fixed-point-free
// involution. A symbol and its partner stay distinct even when they map to
// the same group involution; that is what produces double edges in the
// Cayley multigraph.
struct GeneratorSet {
    std::vector<std::string> symbols;
    std::vector<int> to_element;
    std::vector<int> partner;

    int size() const { return static_cast<int>(symbols.size()); }
    int pair_count() const { return size() / 2; }  // m

    int symbol_index(const std::string& name) const;  // -1 when absent
    void validate(const FiniteGroup& g) const;
};

// A word over a generator set, as symbol indices.
struct Word {
    std::vector<int> letters;
};

struct PermutationClosure {
    FiniteGroup group;
    std::vector<std::vector<int>> elements;  // permutation per element index
    std::vector<int> generator_elements;     // element index of each input generator
};

inline constexpr std::size_t kDefaultClosureCap = 1000000;

// Closure of a set of permutations of {0..d-1} under composition, elements
// indexed breadth-first from the identity (generators applied on the right,
// in input order).
PermutationClosure close_permutations(const std::vector<std::vector<int>>& generators,
                                      std::size_t cap = kDefaultClosureCap);
FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                    std::size_t cap = kDefaultClosureCap);

int evaluate_word(const FiniteGroup& g, const GeneratorSet& gens, const Word& w);
int element_order(const FiniteGroup& g, int a);
uint64_t exponent(const FiniteGroup& g);

// a shortest word in the generators for every element, by BFS in symbol order
std::vector<Word> element_words(const FiniteGroup& g, const GeneratorSet& gens);

// Restricted wreath product Z_k wr base: pairs (f : base -> Z_k, b) with the
// usual twisted product. Also returns the distinguished generating set: the
// delta function at the identity plus lifts of the base generators (m+1
// generator pairs for an m-generated base).
std::pair<FiniteGroup, GeneratorSet> wreath_product(int k, const FiniteGroup& base,
                                                    const GeneratorSet& base_gens,
                                                    std::size_t cap = kDefaultClosureCap);

struct GroupWithGenerators {
    FiniteGroup group;
    GeneratorSet gens;
};

// Preset families: "trivial", "cyclic:n", "dihedral:n" (n >= 3),
// "elementary_abelian_2:m", "burnside_2_3", and comma-joined direct
// products ("cyclic:3,cyclic:2").
GroupWithGenerators preset(const std::string& name);

GroupWithGenerators direct_product(const GroupWithGenerators& a, const GroupWithGenerators& b);

// Canonical symbol names for m generator pairs: a/A, b/B, ...
std::pair<std::string, std::string> symbol_pair_names(int i);

}  // namespace cubization
