#include <doctest.h>

#include <cmath>

#include "pathhom/digraph.hpp"
#include "testutil.hpp"

using namespace pathhom;
using testutil::cycle;
using testutil::line;

TEST_CASE("parse: arrows and isolated vertices") {
    auto r = parse_digraph("a -> b\nb -> c");
    CHECK(r.digraph.num_vertices() == 3);
    CHECK(r.digraph.num_arrows() == 2);
    CHECK(r.digraph.names() == std::vector<std::string>{"a", "b", "c"});

    auto iso = parse_digraph("vertices: x\n");
    CHECK(iso.digraph.num_vertices() == 1);
    CHECK(iso.digraph.num_arrows() == 0);
}

TEST_CASE("parse: loops are hard errors, duplicates warn, junk reports the line") {
    CHECK_THROWS_AS(parse_digraph("a -> a"), ParseError);
    auto r = parse_digraph("a -> b\na->b  # same arrow again");
    CHECK(r.digraph.num_arrows() == 1);
    REQUIRE(r.warnings.size() == 1);
    CHECK(r.warnings[0].find("line 2") != std::string::npos);
    try {
        parse_digraph("a -> b\nnonsense line");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
    }
}

TEST_CASE("parse: comments and whitespace") {
    auto r = parse_digraph("# header\n  a   ->   b \n\nvertices: c d\n");
    CHECK(r.digraph.num_vertices() == 4);
    CHECK(r.digraph.num_arrows() == 1);
}

TEST_CASE("distances: pinned examples") {
    Digraph c3 = cycle(3);
    DistanceMatrix d(c3);
    CHECK(d(0, 2) == ExtDist(2));
    CHECK(d(0, 0) == ExtDist(0));

    Digraph iso = Digraph::make({"u", "v"}, {});
    DistanceMatrix di(iso);
    CHECK(di(0, 1) == ExtDist::infinity());
}

TEST_CASE("distances: BFS agrees with enumeration oracle and quasi-metric laws") {
    testutil::Rng rng(0xd15);
    for (int trial = 0; trial < 40; ++trial) {
        Digraph x = testutil::random_digraph(rng, 7, 30);
        DistanceMatrix d(x);
        int n = x.num_vertices();
        for (int u = 0; u < n; ++u) {
            CHECK(d(u, u) == ExtDist(0));
            for (int v = 0; v < n; ++v) {
                CHECK(d(u, v) == testutil::dist_oracle(x, u, v));
                if (u != v) CHECK((d(u, v) == ExtDist(1)) == x.has_arrow(u, v));
                for (int w = 0; w < n; ++w) CHECK(d(u, w) <= d(u, v) + d(v, w));
            }
        }
    }
}

TEST_CASE("box product: definition, unit, distance formula") {
    Digraph c3 = cycle(3);
    Digraph b = box_product(c3, c3);
    DistanceMatrix db(b);
    int v00 = b.require_index("(0,0)");
    int v12 = b.require_index("(1,2)");
    CHECK(db(v00, v12) == ExtDist(3));

    Digraph pt = Digraph::make({"p"}, {});
    Digraph unit = box_product(c3, pt);
    CHECK(unit.num_vertices() == 3);
    CHECK(unit.num_arrows() == 3);

    Digraph i1 = line(0, 1);
    Digraph sq = box_product(i1, i1);
    CHECK(sq.num_vertices() == 4);
    CHECK(sq.num_arrows() == 4);
    CHECK(sq.has_arrow(sq.require_index("(0,0)"), sq.require_index("(0,1)")));
    CHECK(sq.has_arrow(sq.require_index("(0,0)"), sq.require_index("(1,0)")));
    CHECK(sq.has_arrow(sq.require_index("(0,1)"), sq.require_index("(1,1)")));
    CHECK(sq.has_arrow(sq.require_index("(1,0)"), sq.require_index("(1,1)")));
}

TEST_CASE("box product: dist((x,y),(x',y')) = dist(x,x') + dist(y,y') on random digraphs") {
    testutil::Rng rng(0xb0c);
    for (int trial = 0; trial < 10; ++trial) {
        Digraph x = testutil::random_digraph(rng, 4, 35);
        Digraph y = testutil::random_digraph(rng, 4, 35);
        Digraph b = box_product(x, y);
        DistanceMatrix dx(x), dy(y), db(b);
        int ny = y.num_vertices();
        for (int i = 0; i < x.num_vertices(); ++i)
            for (int j = 0; j < ny; ++j)
                for (int k = 0; k < x.num_vertices(); ++k)
                    for (int l = 0; l < ny; ++l)
                        CHECK(db(i * ny + j, k * ny + l) == dx(i, k) + dy(j, l));
    }
}

TEST_CASE("d_power") {
    Digraph c3 = cycle(3);
    Digraph d2 = d_power(c3, 2);
    CHECK(d2.num_arrows() == 6);  // complete on 3 vertices
    CHECK(d_power(c3, 1) == c3);
    Digraph iso = Digraph::make({"u", "v"}, {});
    CHECK(d_power(iso, 5) == iso);
}

TEST_CASE("induced subdigraphs") {
    Digraph c3 = cycle(3);
    Digraph s = induced(c3, {"0", "1"});
    CHECK(s.num_vertices() == 2);
    CHECK(s.num_arrows() == 1);
    CHECK(induced(c3, {"0", "1", "2"}) == c3);
    CHECK(induced(c3, {}).num_vertices() == 0);
    CHECK_THROWS_AS(induced(c3, {"zzz"}), std::invalid_argument);

    // subobject property: distances only grow after restriction
    testutil::Rng rng(0x1d0);
    for (int trial = 0; trial < 20; ++trial) {
        Digraph x = testutil::random_digraph(rng, 6, 40);
        std::vector<int> w;
        for (int v = 0; v < x.num_vertices(); ++v)
            if (rng.chance(1, 2)) w.push_back(v);
        Digraph s2 = induced_by_index(x, w);
        DistanceMatrix dx(x), ds(s2);
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t j = 0; j < w.size(); ++j)
                CHECK(ds(static_cast<int>(i), static_cast<int>(j)) >= dx(w[i], w[j]));
    }
}

TEST_CASE("check_morphism: examples and the distance criterion") {
    // x mod 3 from the line -6..6 onto the cyclic triangle
    Digraph ln = line(-6, 6);
    Digraph c3 = cycle(3);
    std::vector<int> f;
    for (int v = -6; v <= 6; ++v) f.push_back(((v % 3) + 3) % 3);
    CHECK(check_morphism(f, ln, c3).ok);

    Digraph pt = Digraph::make({"p"}, {});
    CHECK(check_morphism(std::vector<int>(13, 0), ln, pt).ok);

    Digraph i1 = line(0, 1);
    auto bad = check_morphism({1, 0}, i1, i1);
    CHECK_FALSE(bad.ok);
    CHECK(bad.violating_arrow == std::make_pair(0, 1));
}

TEST_CASE("check_morphism agrees with the dist(f(x),f(x')) <= dist(x,x') criterion") {
    testutil::Rng rng(0x30f);
    for (int trial = 0; trial < 60; ++trial) {
        Digraph x = testutil::random_digraph(rng, 5, 40);
        Digraph y = testutil::random_digraph(rng, 5, 40);
        std::vector<int> f(x.num_vertices());
        for (auto& v : f) v = rng.below(y.num_vertices());
        CHECK(check_morphism(f, x, y).ok == check_morphism_via_distances(f, x, y));
    }
}

TEST_CASE("morphism_distance") {
    Digraph c3 = cycle(3);
    auto id = identity_morphism(c3);
    CHECK(morphism_distance(id, id) == ExtDist(0));

    DigraphMorphism rot{&c3, &c3, {1, 2, 0}};
    CHECK(morphism_distance(id, rot) == ExtDist(1));

    Digraph iso = Digraph::make({"u", "v"}, {});
    auto idi = identity_morphism(iso);
    DigraphMorphism swap{&iso, &iso, {1, 0}};
    CHECK(morphism_distance(idi, swap) == ExtDist::infinity());
}

TEST_CASE("is_homotopy") {
    Digraph c3 = cycle(3);
    auto id = identity_morphism(c3);
    DigraphMorphism rot{&c3, &c3, {1, 2, 0}};

    std::vector<DigraphMorphism> constant{id, id};
    CHECK(is_homotopy(constant).ok);

    std::vector<DigraphMorphism> step{id, rot};
    CHECK(is_homotopy(step).ok);  // dist(id, rot) = 1

    // reversed orientation must also be accepted (either direction counts)
    std::vector<DigraphMorphism> rev{rot, id};
    CHECK(is_homotopy(rev).ok);

    Digraph iso = Digraph::make({"u", "v"}, {});
    auto idi = identity_morphism(iso);
    DigraphMorphism swap{&iso, &iso, {1, 0}};
    std::vector<DigraphMorphism> far{idi, swap};
    auto chk = is_homotopy(far);
    CHECK_FALSE(chk.ok);
    CHECK(chk.bad_index == 0);
}

TEST_CASE("floor-halving against doubling on Cay(Z,{1,2}) balls is a homotopy pair") {
    // vertices -8..8 with arrows +1 and +2; f(x)=2x into -16..16? kept inside
    // one shared ball by composing through the window -8..8
    std::vector<std::string> names;
    for (int i = -8; i <= 8; ++i) names.push_back(std::to_string(i));
    std::vector<std::pair<int, int>> arrows;
    auto at = [&](int v) { return v + 8; };
    for (int v = -8; v <= 8; ++v) {
        if (v + 1 <= 8) arrows.emplace_back(at(v), at(v + 1));
        if (v + 2 <= 8) arrows.emplace_back(at(v), at(v + 2));
    }
    Digraph ball = Digraph::make_indexed(names, arrows);

    std::vector<int> fg(ball.num_vertices());
    for (int v = -8; v <= 8; ++v) {
        int img = 2 * static_cast<int>(std::floor(v / 2.0));
        fg[at(v)] = at(img);
    }
    DigraphMorphism m{&ball, &ball, fg};
    REQUIRE(check_morphism(fg, ball, ball).ok);
    auto id = identity_morphism(ball);
    std::vector<DigraphMorphism> h{m, id};
    CHECK(is_homotopy(h).ok);
}

TEST_CASE("digraph JSON echo") {
    auto r = parse_digraph("b -> a\nvertices: z");
    CHECK(digraph_to_json(r.digraph) ==
          R"({"vertices":["b","a","z"],"arrows":[["b","a"]]})");
}
