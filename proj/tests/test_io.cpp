#include <cstdio>
#include <string>

#include "doctest.h"

#include "cubization/cover.hpp"
#include "cubization/errors.hpp"
#include "cubization/json_io.hpp"
#include "oracles.hpp"

using namespace cubization;

namespace {

std::string temp_path(const std::string& stem) {
    return std::string("io_test_") + stem + ".json";
}

}  // namespace

TEST_CASE("group table round trip") {
    for (const char* name : {"cyclic:4", "dihedral:3", "burnside_2_3"}) {
        auto [g, gens] = preset(name);
        Json j = group_to_json(g, gens);
        GroupWithGenerators back = group_from_json(j);
        CHECK(back.group.order == g.order);
        CHECK(back.group.table == g.table);
        CHECK(back.group.inverse == g.inverse);
        CHECK(back.gens.symbols == gens.symbols);
        CHECK(back.gens.to_element == gens.to_element);
        CHECK(back.gens.partner == gens.partner);
    }
}

TEST_CASE("permutation group import") {
    Json j = {{"degree", 3}, {"generators", {{1, 2, 0}}}};
    GroupWithGenerators p = permutation_group_from_json(j);
    CHECK(p.group.order == 3);
    CHECK(p.gens.size() == 2);  // the generator and its inverse
    CHECK(p.gens.partner[0] == 1);
    p.gens.validate(p.group);

    // an involution generator still yields a distinct symbol pair
    Json inv = {{"degree", 2}, {"generators", {{1, 0}}}};
    GroupWithGenerators q = permutation_group_from_json(inv);
    CHECK(q.group.order == 2);
    CHECK(q.gens.size() == 2);
    CHECK(q.gens.to_element[0] == q.gens.to_element[1]);
}

TEST_CASE("any_group_from_json dispatches on shape") {
    auto [g, gens] = preset("cyclic:3");
    CHECK(any_group_from_json(group_to_json(g, gens)).group.order == 3);
    Json perm = {{"degree", 4}, {"generators", {{1, 0, 3, 2}, {2, 3, 0, 1}}}};
    GroupWithGenerators p = any_group_from_json(perm);
    CHECK(p.group.order == 4);
    for (int a = 1; a < 4; ++a) CHECK(element_order(p.group, a) == 2);
}

TEST_CASE("malformed group JSON is rejected") {
    auto [g, gens] = preset("cyclic:3");
    Json good = group_to_json(g, gens);

    Json j = good;
    j.erase("mult");
    CHECK_THROWS_AS(group_from_json(j), ValidationError);

    j = good;
    j["mult"][4] = 99;  // out of range entry
    CHECK_THROWS_AS(group_from_json(j), ValidationError);

    j = good;
    j["mult"][1] = 0;  // breaks the latin square / associativity
    CHECK_THROWS_AS(group_from_json(j), ValidationError);

    j = good;
    j["order"] = -3;
    CHECK_THROWS_AS(group_from_json(j), ValidationError);

    j = good;
    j["gens"][0]["partner"] = 0;  // partner must be fixed-point-free
    CHECK_THROWS_AS(group_from_json(j), ValidationError);

    CHECK_THROWS_AS(any_group_from_json(Json::object()), ValidationError);
    CHECK_THROWS_AS(permutation_group_from_json({{"degree", 2}, {"generators", {{0, 2}}}}),
                    ValidationError);
}

TEST_CASE("graph JSON round trip") {
    Multigraph m = Multigraph::from_edges(4, {{0, 1, "x"}, {1, 2, "y"}, {1, 2, "y2"}, {3, 3, "l"}});
    Json j = graph_to_json(m);
    Multigraph back = graph_from_json(j);
    CHECK(back.vertex_count == 4);
    CHECK(back.edge_count() == 4);
    for (int e = 0; e < 4; ++e) CHECK(back.edge_ends(e) == m.edge_ends(e));

    Json bad = j;
    bad["edges"][0]["u"] = 9;
    CHECK_THROWS_AS(graph_from_json(bad), ValidationError);
    bad = j;
    bad.erase("vertices");
    CHECK_THROWS_AS(graph_from_json(bad), ValidationError);
}

TEST_CASE("wall space export shape") {
    auto [g, gens] = preset("cyclic:3");
    CoverSystem sys = make_cover_system(g, gens, 2);
    WallSpace s = wall_space_from_cover(sys.base, ensure_cover(sys));
    Json j = wall_space_to_json(s);
    CHECK(j["points"] == 6);
    REQUIRE(j["walls"].size() == 3);
    for (const auto& w : j["walls"]) {
        CHECK(w.contains("side"));
        CHECK(w.contains("edge"));
        CHECK(w["mask"] == 1);
        CHECK(w["side"].size() == 3);  // halves of the hexagon
        CHECK(w["side"][0] == 0);     // canonical side starts at point 0
    }
}

TEST_CASE("lift export shape") {
    auto [g, gens] = preset("cyclic:3");
    CoverSystem sys = make_cover_system(g, gens, 2);
    std::vector<Lift> lifts = cubization_generators(sys);
    Json j = lift_to_json(lifts[0]);
    CHECK(j["g"] == lifts[0].g);
    CHECK(j["a"].size() == (std::size_t)sys.rank);
    CHECK(j["M"].size() == (std::size_t)sys.rank);
    CHECK(j["c"].size() == (std::size_t)sys.base.vertex_count);
}

TEST_CASE("skeleton export and DOT output") {
    auto [g, gens] = preset("cyclic:3");
    CoverSystem sys = make_cover_system(g, gens, 2);
    WallSpace s = wall_space_from_cover(sys.base, ensure_cover(sys));
    DualSkeleton sk = dual_skeleton(s);
    Json j = skeleton_to_json(sk);
    CHECK(j["walls"] == 3);
    CHECK(j["vertices"].size() == 8);
    CHECK(j["edges"].size() == 12);
    CHECK(j["principal"].size() == 6);

    std::string dot = skeleton_to_dot(sk, "dual");
    CHECK(dot.find("graph dual") != std::string::npos);
    CHECK(dot.find("--") != std::string::npos);

    std::string gdot = multigraph_to_dot(sys.cover->graph, "cover");
    CHECK(gdot.find("graph cover") != std::string::npos);
}

TEST_CASE("file IO") {
    std::string path = temp_path("roundtrip");
    write_text_file(path, "{\"vertices\": 2, \"edges\": [{\"u\":0,\"v\":1,\"sym\":\"e\"}]}\n");
    Json j = load_json_file(path);
    CHECK(graph_from_json(j).edge_count() == 1);

    write_text_file(path, "{not json");
    CHECK_THROWS_AS(load_json_file(path), ValidationError);
    CHECK_THROWS_AS(load_json_file("definitely_missing_file.json"), ValidationError);
    std::remove(path.c_str());
}
