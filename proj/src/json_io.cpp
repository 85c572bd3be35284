#include "cubization/json_io.hpp"

#include <fstream>
#include <sstream>

#include "cubization/errors.hpp"

namespace cubization {

namespace {

const Json& need(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key))
        throw ValidationError(std::string("missing key \"") + key + "\"");
    return j.at(key);
}

int need_int(const Json& j, const char* key, long long lo, long long hi) {
    const Json& v = need(j, key);
    if (!v.is_number_integer())
        throw ValidationError(std::string("key \"") + key + "\" is not an integer");
    long long x = v.get<long long>();
    if (x < lo || x > hi)
        throw ValidationError(std::string("key \"") + key + "\" out of range");
    return static_cast<int>(x);
}

}  // namespace

Json group_to_json(const FiniteGroup& group, const GeneratorSet& gens) {
    Json j;
    j["order"] = group.order;
    j["mult"] = group.table;
    Json list = Json::array();
    for (int s = 0; s < gens.size(); ++s) {
        Json g;
        g["symbol"] = gens.symbols[s];
        g["element"] = gens.to_element[s];
        g["partner"] = gens.partner[s];
        list.push_back(std::move(g));
    }
    j["gens"] = std::move(list);
    return j;
}

GroupWithGenerators group_from_json(const Json& j) {
    GroupWithGenerators out;
    int order = need_int(j, "order", 1, 100000);
    out.group.order = order;
    const Json& mult = need(j, "mult");
    if (!mult.is_array() || mult.size() != static_cast<std::size_t>(order) * order)
        throw ValidationError("mult table must hold order^2 entries");
    out.group.table.reserve(mult.size());
    for (const Json& v : mult) {
        if (!v.is_number_integer()) throw ValidationError("mult entry is not an integer");
        long long x = v.get<long long>();
        if (x < 0 || x >= order) throw ValidationError("mult entry out of range");
        out.group.table.push_back(static_cast<uint32_t>(x));
    }
    out.group.inverse.assign(order, 0);
    for (int a = 0; a < order; ++a) {
        bool found = false;
        for (int b = 0; b < order && !found; ++b)
            if (out.group.mult(a, b) == 0 && out.group.mult(b, a) == 0) {
                out.group.inverse[a] = static_cast<uint32_t>(b);
                found = true;
            }
        if (!found) throw ValidationError("group element has no inverse");
    }
    try {
        out.group.validate();
    } catch (const std::logic_error& e) {
        throw ValidationError(std::string("group table invalid: ") + e.what());
    }

    const Json& gens = need(j, "gens");
    if (!gens.is_array()) throw ValidationError("gens must be an array");
    for (const Json& g : gens) {
        const Json& sym = need(g, "symbol");
        if (!sym.is_string()) throw ValidationError("generator symbol must be a string");
        out.gens.symbols.push_back(sym.get<std::string>());
        out.gens.to_element.push_back(need_int(g, "element", 0, order - 1));
        out.gens.partner.push_back(
            need_int(g, "partner", 0, static_cast<long long>(gens.size()) - 1));
    }
    try {
        out.gens.validate(out.group);
    } catch (const std::logic_error& e) {
        throw ValidationError(std::string("generator set invalid: ") + e.what());
    }
    return out;
}

GroupWithGenerators permutation_group_from_json(const Json& j, std::size_t cap) {
    int degree = need_int(j, "degree", 1, 1000000);
    const Json& gens = need(j, "generators");
    if (!gens.is_array() || gens.empty())
        throw ValidationError("permutation input needs a nonempty generator list");
    std::vector<std::vector<int>> perms;
    for (const Json& p : gens) {
        if (!p.is_array() || p.size() != static_cast<std::size_t>(degree))
            throw ValidationError("generator permutation has wrong degree");
        std::vector<int> perm;
        perm.reserve(degree);
        for (const Json& v : p) {
            if (!v.is_number_integer()) throw ValidationError("permutation entry not integer");
            long long x = v.get<long long>();
            if (x < 0 || x >= degree) throw ValidationError("permutation entry out of range");
            perm.push_back(static_cast<int>(x));
        }
        perms.push_back(std::move(perm));
    }

    PermutationClosure closure = close_permutations(perms, cap);
    GroupWithGenerators out;
    out.group = std::move(closure.group);
    for (std::size_t i = 0; i < perms.size(); ++i) {
        auto [lo, up] = symbol_pair_names(static_cast<int>(i));
        int e = closure.generator_elements[i];
        out.gens.symbols.push_back(lo);
        out.gens.to_element.push_back(e);
        out.gens.partner.push_back(static_cast<int>(out.gens.symbols.size()));
        out.gens.symbols.push_back(up);
        out.gens.to_element.push_back(out.group.inv(e));
        out.gens.partner.push_back(static_cast<int>(out.gens.symbols.size()) - 2);
    }
    out.gens.validate(out.group);
    return out;
}

GroupWithGenerators any_group_from_json(const Json& j) {
    if (j.is_object() && j.contains("degree")) return permutation_group_from_json(j);
    return group_from_json(j);
}

Json graph_to_json(const Multigraph& g) {
    Json j;
    j["vertices"] = g.vertex_count;
    Json edges = Json::array();
    for (int e = 0; e < g.edge_count(); ++e) {
        const Dart& d = g.darts[g.edge_dart[e]];
        Json je;
        je["u"] = d.source;
        je["v"] = d.target;
        je["sym"] = g.symbol_names[d.symbol];
        edges.push_back(std::move(je));
    }
    j["edges"] = std::move(edges);
    return j;
}

Multigraph graph_from_json(const Json& j) {
    int n = need_int(j, "vertices", 1, 1000000);
    const Json& edges = need(j, "edges");
    if (!edges.is_array()) throw ValidationError("edges must be an array");
    std::vector<Multigraph::EdgeSpec> specs;
    for (const Json& e : edges) {
        Multigraph::EdgeSpec spec;
        spec.u = need_int(e, "u", 0, n - 1);
        spec.v = need_int(e, "v", 0, n - 1);
        const Json& sym = need(e, "sym");
        if (!sym.is_string()) throw ValidationError("edge sym must be a string");
        spec.label = sym.get<std::string>();
        specs.push_back(std::move(spec));
    }
    return Multigraph::from_edges(n, specs);
}

Json wall_space_to_json(const WallSpace& space) {
    Json j;
    j["points"] = space.point_count;
    Json walls = Json::array();
    for (const Wall& w : space.walls) {
        Json jw;
        jw["side"] = w.side.members();
        jw["edge"] = w.base_edge;
        jw["mask"] = w.mask;
        walls.push_back(std::move(jw));
    }
    j["walls"] = std::move(walls);
    return j;
}

Json lift_to_json(const Lift& lift) {
    Json j;
    j["g"] = lift.g;
    j["a"] = lift.offset.digits;
    Json rows = Json::array();
    for (int r = 0; r < lift.twist.n; ++r) {
        Json row = Json::array();
        for (int c = 0; c < lift.twist.n; ++c) row.push_back(lift.twist.at(r, c));
        rows.push_back(std::move(row));
    }
    j["M"] = std::move(rows);
    Json corr = Json::array();
    for (const PhaseVec& c : lift.correction) corr.push_back(c.digits);
    j["c"] = std::move(corr);
    return j;
}

Json skeleton_to_json(const DualSkeleton& s) {
    Json j;
    j["walls"] = s.wall_count;
    j["vertices"] = s.vertices;
    Json edges = Json::array();
    for (auto [a, b] : s.edges) edges.push_back(Json::array({a, b}));
    j["edges"] = std::move(edges);
    j["principal"] = s.principal;
    return j;
}

std::string multigraph_to_dot(const Multigraph& g, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (int v = 0; v < g.vertex_count; ++v) out << "  v" << v << ";\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        const Dart& d = g.darts[g.edge_dart[e]];
        out << "  v" << d.source << " -- v" << d.target << " [label=\""
            << g.symbol_names[d.symbol] << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string skeleton_to_dot(const DualSkeleton& s, const std::string& name) {
    std::ostringstream out;
    out << "graph " << name << " {\n";
    for (std::size_t v = 0; v < s.vertices.size(); ++v)
        out << "  o" << v << " [label=\"" << s.vertices[v] << "\"];\n";
    for (auto [a, b] : s.edges) out << "  o" << a << " -- o" << b << ";\n";
    out << "}\n";
    return out.str();
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw ValidationError("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path);
    out << content;
}

}  // namespace cubization
