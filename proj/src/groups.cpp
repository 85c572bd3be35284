#include "cubization/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

#include "cubization/errors.hpp"

namespace cubization {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }
};

// apply a, then b
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = b[a[i]];
    return r;
}

bool is_permutation(const std::vector<int>& p) {
    std::vector<char> seen(p.size(), 0);
    for (int x : p) {
        if (x < 0 || static_cast<std::size_t>(x) >= p.size() || seen[x]) return false;
        seen[x] = 1;
    }
    return true;
}

// Dense tables are quadratic in the order; refuse to materialize monsters.
constexpr int kMaxTableOrder = 20000;

}  // namespace

void FiniteGroup::validate() const {
    structural_require(order > 0, "group order must be positive");
    structural_require(table.size() == static_cast<std::size_t>(order) * order, "mult table size");
    structural_require(inverse.size() == static_cast<std::size_t>(order), "inverse table size");
    for (int g = 0; g < order; ++g) {
        if (mult(identity, g) != g || mult(g, identity) != g)
            throw ValidationError("identity law fails at element " + std::to_string(g));
        if (mult(g, inv(g)) != identity || mult(inv(g), g) != identity)
            throw ValidationError("inverse law fails at element " + std::to_string(g));
    }
    auto check = [&](int a, int b, int c) {
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
            throw ValidationError("associativity fails at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
    };
    if (order <= 64) {
        for (int a = 0; a < order; ++a)
            for (int b = 0; b < order; ++b)
                for (int c = 0; c < order; ++c) check(a, b, c);
    } else {
        std::mt19937_64 eng(0x5eedu);
        for (int t = 0; t < 10000; ++t)
            check(static_cast<int>(eng() % order), static_cast<int>(eng() % order),
                  static_cast<int>(eng() % order));
    }
    // Latin square rows/columns (cancellation).
    std::vector<char> seen(order);
    for (int a = 0; a < order; ++a) {
        std::fill(seen.begin(), seen.end(), 0);
        for (int b = 0; b < order; ++b) {
            int p = mult(a, b);
            if (seen[p]) throw ValidationError("row " + std::to_string(a) + " is not a permutation");
            seen[p] = 1;
        }
    }
}

int GeneratorSet::symbol_index(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
        if (symbols[i] == name) return i;
    return -1;
}

void GeneratorSet::validate(const FiniteGroup& g) const {
    if (size() % 2 != 0) throw ValidationError("generator set must have even size");
    if (to_element.size() != symbols.size() || partner.size() != symbols.size())
        throw ValidationError("generator set field sizes disagree");
    for (int s = 0; s < size(); ++s) {
        if (partner[s] < 0 || partner[s] >= size() || partner[s] == s)
            throw ValidationError("partner must be a fixed-point-free involution");
        if (partner[partner[s]] != s) throw ValidationError("partner is not an involution");
        if (to_element[s] < 0 || to_element[s] >= g.order)
            throw ValidationError("generator image out of range");
        if (to_element[partner[s]] != g.inv(to_element[s]))
            throw ValidationError("partner symbol must map to the inverse element");
        for (int t = 0; t < s; ++t)
            if (symbols[t] == symbols[s]) throw ValidationError("duplicate symbol name " + symbols[s]);
    }
    // Closure of the images must reach the whole group.
    std::vector<char> reached(g.order, 0);
    reached[FiniteGroup::identity] = 1;
    std::queue<int> q;
    q.push(FiniteGroup::identity);
    int n = 1;
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int s = 0; s < size(); ++s) {
            int w = g.mult(u, to_element[s]);
            if (!reached[w]) {
                reached[w] = 1;
                ++n;
                q.push(w);
            }
        }
    }
    if (n != g.order) throw ValidationError("generator images do not generate the group");
}

PermutationClosure close_permutations(const std::vector<std::vector<int>>& generators,
                                      std::size_t cap) {
    if (generators.empty()) throw ValidationError("need at least one permutation generator");
    const std::size_t degree = generators[0].size();
    for (const auto& p : generators) {
        if (p.size() != degree) throw ValidationError("permutations act on different sets");
        if (!is_permutation(p)) throw ValidationError("input is not a permutation");
    }

    std::vector<int> id(degree);
    std::iota(id.begin(), id.end(), 0);

    PermutationClosure out;
    std::unordered_map<std::vector<int>, int, VecHash> index;
    out.elements.push_back(id);
    index.emplace(id, 0);
    for (std::size_t head = 0; head < out.elements.size(); ++head) {
        // note: out.elements may reallocate; copy the current element
        std::vector<int> cur = out.elements[head];
        for (const auto& gen : generators) {
            std::vector<int> nxt = compose(cur, gen);
            auto it = index.find(nxt);
            if (it == index.end()) {
                if (out.elements.size() >= cap)
                    throw SizeLimitError("permutation closure exceeds cap " + std::to_string(cap));
                index.emplace(nxt, static_cast<int>(out.elements.size()));
                out.elements.push_back(std::move(nxt));
            }
        }
    }

    const int n = static_cast<int>(out.elements.size());
    if (n > kMaxTableOrder)
        throw SizeLimitError("order " + std::to_string(n) + " too large for a dense mult table");
    out.group.order = n;
    out.group.table.assign(static_cast<std::size_t>(n) * n, 0);
    out.group.inverse.assign(n, 0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            auto it = index.find(compose(out.elements[a], out.elements[b]));
            structural_require(it != index.end(), "closure not closed under products");
            out.group.table[static_cast<std::size_t>(a) * n + b] = static_cast<uint32_t>(it->second);
            if (it->second == FiniteGroup::identity) out.group.inverse[a] = static_cast<uint32_t>(b);
        }
    }
    out.generator_elements.reserve(generators.size());
    for (const auto& gen : generators) out.generator_elements.push_back(index.at(gen));
    return out;
}

FiniteGroup group_from_permutations(const std::vector<std::vector<int>>& generators,
                                    std::size_t cap) {
    return close_permutations(generators, cap).group;
}

int evaluate_word(const FiniteGroup& g, const GeneratorSet& gens, const Word& w) {
    int acc = FiniteGroup::identity;
    for (int s : w.letters) {
        if (s < 0 || s >= gens.size())
            throw ValidationError("word uses unknown symbol index " + std::to_string(s));
        acc = g.mult(acc, gens.to_element[s]);
    }
    return acc;
}

int element_order(const FiniteGroup& g, int a) {
    structural_require(a >= 0 && a < g.order, "element index out of range");
    int x = a, d = 1;
    while (x != FiniteGroup::identity) {
        x = g.mult(x, a);
        ++d;
        structural_require(d <= g.order, "element order exceeds group order");
    }
    return d;
}

uint64_t exponent(const FiniteGroup& g) {
    uint64_t e = 1;
    for (int a = 0; a < g.order; ++a) e = std::lcm<uint64_t>(e, element_order(g, a));
    return e;
}

std::vector<Word> element_words(const FiniteGroup& g, const GeneratorSet& gens) {
    std::vector<Word> words(g.order);
    std::vector<char> seen(g.order, 0);
    seen[FiniteGroup::identity] = 1;
    std::queue<int> q;
    q.push(FiniteGroup::identity);
    int reached = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int s = 0; s < gens.size(); ++s) {
            int w = g.mult(v, gens.to_element[s]);
            if (seen[w]) continue;
            seen[w] = 1;
            ++reached;
            words[w] = words[v];
            words[w].letters.push_back(s);
            q.push(w);
        }
    }
    structural_require(reached == g.order, "generators do not reach every element");
    return words;
}

std::pair<std::string, std::string> symbol_pair_names(int i) {
    if (i < 26)
        return {std::string(1, static_cast<char>('a' + i)), std::string(1, static_cast<char>('A' + i))};
    return {"g" + std::to_string(i), "G" + std::to_string(i)};
}

std::pair<FiniteGroup, GeneratorSet> wreath_product(int k, const FiniteGroup& base,
                                                    const GeneratorSet& base_gens,
                                                    std::size_t cap) {
    if (k < 2) throw ValidationError("wreath product needs k >= 2");
    const int nb = base.order;

    uint64_t fibre = 1;  // k^|base|
    for (int i = 0; i < nb; ++i) {
        fibre *= static_cast<uint64_t>(k);
        if (fibre * nb > cap)
            throw SizeLimitError("wreath product order k^|base|*|base| exceeds cap " +
                                 std::to_string(cap));
    }
    const uint64_t order64 = fibre * static_cast<uint64_t>(nb);
    if (order64 > static_cast<uint64_t>(kMaxTableOrder))
        throw SizeLimitError("wreath product order too large for a dense mult table");
    const int n = static_cast<int>(order64);

    // element index = rank(f) * |base| + b, rank(f) = sum f(x) k^x
    auto decode_f = [&](uint64_t rank, std::vector<int>& f) {
        for (int x = 0; x < nb; ++x) {
            f[x] = static_cast<int>(rank % k);
            rank /= k;
        }
    };
    auto encode = [&](const std::vector<int>& f, int b) {
        uint64_t rank = 0;
        for (int x = nb - 1; x >= 0; --x) rank = rank * k + f[x];
        return static_cast<int>(rank * nb + b);
    };

    FiniteGroup w;
    w.order = n;
    w.table.assign(static_cast<std::size_t>(n) * n, 0);
    w.inverse.assign(n, 0);
    std::vector<int> f1(nb), f2(nb), fr(nb);
    for (int e1 = 0; e1 < n; ++e1) {
        int b1 = e1 % nb;
        decode_f(static_cast<uint64_t>(e1) / nb, f1);
        for (int e2 = 0; e2 < n; ++e2) {
            int b2 = e2 % nb;
            decode_f(static_cast<uint64_t>(e2) / nb, f2);
            // (f1,b1)(f2,b2) = (f1 + b1.f2, b1 b2) with (b1.f2)(x) = f2(b1^-1 x)
            int b1i = base.inv(b1);
            for (int x = 0; x < nb; ++x) fr[x] = (f1[x] + f2[base.mult(b1i, x)]) % k;
            int p = encode(fr, base.mult(b1, b2));
            w.table[static_cast<std::size_t>(e1) * n + e2] = static_cast<uint32_t>(p);
            if (p == FiniteGroup::identity) w.inverse[e1] = static_cast<uint32_t>(e2);
        }
    }

    // Distinguished generators: lifts of the base generators, then the delta
    // function at the identity.
    GeneratorSet gens;
    const int m = base_gens.pair_count();
    std::vector<int> sym_of_pair;  // first symbol index of each pair in base_gens
    {
        std::vector<char> used(base_gens.size(), 0);
        for (int s = 0; s < base_gens.size(); ++s) {
            if (used[s]) continue;
            used[s] = used[base_gens.partner[s]] = 1;
            sym_of_pair.push_back(s);
        }
    }
    std::vector<int> zero(nb, 0);
    for (int i = 0; i < m; ++i) {
        auto [lo, up] = symbol_pair_names(i);
        int s = sym_of_pair[i];
        int e = encode(zero, base_gens.to_element[s]);
        int ei = encode(zero, base.inv(base_gens.to_element[s]));
        gens.symbols.push_back(lo);
        gens.to_element.push_back(e);
        gens.symbols.push_back(up);
        gens.to_element.push_back(ei);
        gens.partner.push_back(2 * i + 1);
        gens.partner.push_back(2 * i);
    }
    std::vector<int> delta(nb, 0), delta_inv(nb, 0);
    delta[FiniteGroup::identity] = 1;
    delta_inv[FiniteGroup::identity] = (k - 1) % k;
    {
        auto [lo, up] = symbol_pair_names(m);
        gens.symbols.push_back(lo);
        gens.to_element.push_back(encode(delta, FiniteGroup::identity));
        gens.symbols.push_back(up);
        gens.to_element.push_back(encode(delta_inv, FiniteGroup::identity));
        gens.partner.push_back(2 * m + 1);
        gens.partner.push_back(2 * m);
    }
    gens.validate(w);
    return {std::move(w), std::move(gens)};
}

GroupWithGenerators direct_product(const GroupWithGenerators& a, const GroupWithGenerators& b) {
    const int na = a.group.order, nb = b.group.order;
    const uint64_t order64 = static_cast<uint64_t>(na) * nb;
    if (order64 > static_cast<uint64_t>(kMaxTableOrder))
        throw SizeLimitError("direct product too large for a dense mult table");
    const int n = static_cast<int>(order64);

    FiniteGroup g;
    g.order = n;
    g.table.assign(static_cast<std::size_t>(n) * n, 0);
    g.inverse.assign(n, 0);
    for (int x1 = 0; x1 < na; ++x1)
        for (int y1 = 0; y1 < nb; ++y1)
            for (int x2 = 0; x2 < na; ++x2)
                for (int y2 = 0; y2 < nb; ++y2) {
                    int e1 = x1 * nb + y1, e2 = x2 * nb + y2;
                    int p = a.group.mult(x1, x2) * nb + b.group.mult(y1, y2);
                    g.table[static_cast<std::size_t>(e1) * n + e2] = static_cast<uint32_t>(p);
                    if (p == FiniteGroup::identity) g.inverse[e1] = static_cast<uint32_t>(e2);
                }

    GeneratorSet gens;
    int pair = 0;
    auto push_pair = [&](int e, int ei) {
        auto [lo, up] = symbol_pair_names(pair);
        gens.symbols.push_back(lo);
        gens.to_element.push_back(e);
        gens.symbols.push_back(up);
        gens.to_element.push_back(ei);
        gens.partner.push_back(2 * pair + 1);
        gens.partner.push_back(2 * pair);
        ++pair;
    };
    auto push_factor = [&](const GeneratorSet& fg, auto embed) {
        std::vector<char> used(fg.size(), 0);
        for (int s = 0; s < fg.size(); ++s) {
            if (used[s]) continue;
            used[s] = used[fg.partner[s]] = 1;
            push_pair(embed(fg.to_element[s]), embed(fg.to_element[fg.partner[s]]));
        }
    };
    push_factor(a.gens, [&](int e) { return e * nb; });
    push_factor(b.gens, [&](int e) { return e; });
    gens.validate(g);
    return {std::move(g), std::move(gens)};
}

namespace {

GroupWithGenerators preset_single(const std::string& name) {
    auto split = name.find(':');
    std::string fam = name.substr(0, split);
    auto param = [&]() {
        if (split == std::string::npos)
            throw ValidationError("preset " + fam + " needs a parameter, e.g. " + fam + ":3");
        int v;
        std::istringstream is(name.substr(split + 1));
        if (!(is >> v) || !is.eof()) throw ValidationError("bad preset parameter in " + name);
        return v;
    };

    if (fam == "trivial") {
        FiniteGroup g;
        g.order = 1;
        g.table = {0};
        g.inverse = {0};
        return {std::move(g), GeneratorSet{}};
    }
    if (fam == "cyclic") {
        int n = param();
        if (n < 1) throw ValidationError("cyclic:n needs n >= 1");
        std::vector<int> rot(n);
        for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
        auto clo = close_permutations({rot});
        GeneratorSet gens;
        gens.symbols = {"a", "A"};
        gens.to_element = {clo.generator_elements[0], clo.group.inv(clo.generator_elements[0])};
        gens.partner = {1, 0};
        gens.validate(clo.group);
        return {std::move(clo.group), std::move(gens)};
    }
    if (fam == "dihedral") {
        int n = param();
        if (n < 3) throw ValidationError("dihedral:n needs n >= 3");
        std::vector<int> rot(n), flip(n);
        for (int i = 0; i < n; ++i) rot[i] = (i + 1) % n;
        for (int i = 0; i < n; ++i) flip[i] = (n - i) % n;
        auto clo = close_permutations({rot, flip});
        structural_require(clo.group.order == 2 * n, "dihedral closure has wrong order");
        GeneratorSet gens;
        int r = clo.generator_elements[0], f = clo.generator_elements[1];
        gens.symbols = {"a", "A", "b", "B"};
        gens.to_element = {r, clo.group.inv(r), f, f};
        gens.partner = {1, 0, 3, 2};
        gens.validate(clo.group);
        return {std::move(clo.group), std::move(gens)};
    }
    if (fam == "elementary_abelian_2") {
        int m = param();
        if (m < 1) throw ValidationError("elementary_abelian_2:m needs m >= 1");
        std::vector<std::vector<int>> gens_p;
        for (int i = 0; i < m; ++i) {
            std::vector<int> p(2 * m);
            std::iota(p.begin(), p.end(), 0);
            std::swap(p[2 * i], p[2 * i + 1]);
            gens_p.push_back(std::move(p));
        }
        auto clo = close_permutations(gens_p);
        structural_require(clo.group.order == (1 << m), "elementary abelian closure has wrong order");
        GeneratorSet gens;
        for (int i = 0; i < m; ++i) {
            auto [lo, up] = symbol_pair_names(i);
            gens.symbols.push_back(lo);
            gens.symbols.push_back(up);
            int e = clo.generator_elements[i];
            gens.to_element.push_back(e);
            gens.to_element.push_back(e);
            gens.partner.push_back(2 * i + 1);
            gens.partner.push_back(2 * i);
        }
        gens.validate(clo.group);
        return {std::move(clo.group), std::move(gens)};
    }
    if (fam == "burnside_2_3") {
        // Upper unitriangular 3x3 matrices over F_3, acting on themselves by
        // right multiplication. Elements (x,y,z) are packed as x + 3y + 9z.
        auto mul = [](int p, int q) {
            int x1 = p % 3, y1 = (p / 3) % 3, z1 = p / 9;
            int x2 = q % 3, y2 = (q / 3) % 3, z2 = q / 9;
            int x = (x1 + x2) % 3, y = (y1 + y2) % 3, z = (z1 + z2 + x1 * y2) % 3;
            return x + 3 * y + 9 * z;
        };
        std::vector<int> pa(27), pb(27);
        const int a = 1, b = 3;  // (1,0,0) and (0,1,0)
        for (int p = 0; p < 27; ++p) {
            pa[p] = mul(p, a);
            pb[p] = mul(p, b);
        }
        auto clo = close_permutations({pa, pb});
        structural_require(clo.group.order == 27, "unitriangular closure has wrong order");
        GeneratorSet gens;
        int ea = clo.generator_elements[0], eb = clo.generator_elements[1];
        gens.symbols = {"a", "A", "b", "B"};
        gens.to_element = {ea, clo.group.inv(ea), eb, clo.group.inv(eb)};
        gens.partner = {1, 0, 3, 2};
        gens.validate(clo.group);
        return {std::move(clo.group), std::move(gens)};
    }
    throw ValidationError("unknown preset family: " + fam);
}

}  // namespace

GroupWithGenerators preset(const std::string& name) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : name) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.empty() || parts[0].empty()) throw ValidationError("empty preset name");

    GroupWithGenerators acc = preset_single(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) acc = direct_product(acc, preset_single(parts[i]));
    return acc;
}

}  // namespace cubization
