#pragma once

// JSON import/export for groups, graphs, wall spaces, lifts and skeletons,
// plus DOT export. Import validates everything and throws ValidationError.

#include <string>

#include "json.hpp"

#include "cubization/cover.hpp"
#include "cubization/cubulate.hpp"
#include "cubization/groups.hpp"
#include "cubization/multigraph.hpp"
#include "cubization/walls.hpp"

namespace cubization {

using Json = nlohmann::json;

// {"order": n, "mult": [row-major], "gens": [{"symbol", "element", "partner"}]}
Json group_to_json(const FiniteGroup& group, const GeneratorSet& gens);
GroupWithGenerators group_from_json(const Json& j);

// {"degree": d, "generators": [[...], ...]}, symbols are auto-named pairs
GroupWithGenerators permutation_group_from_json(const Json& j,
                                                std::size_t cap = kDefaultClosureCap);

// dispatches on the keys of the two formats above
GroupWithGenerators any_group_from_json(const Json& j);

// {"vertices": n, "edges": [{"u", "v", "sym"}...]}
Json graph_to_json(const Multigraph& g);
Multigraph graph_from_json(const Json& j);

// {"points": n, "walls": [{"side": [indices], "edge": e, "mask": m}...]}
Json wall_space_to_json(const WallSpace& space);

// {"g": element, "a": [digits], "M": [[row]...], "c": [[digits]...]}
Json lift_to_json(const Lift& lift);

Json skeleton_to_json(const DualSkeleton& s);

std::string multigraph_to_dot(const Multigraph& g, const std::string& name);
std::string skeleton_to_dot(const DualSkeleton& s, const std::string& name);

Json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cubization
