#include <doctest.h>

#include "pathhom/fundamental.hpp"
#include "pathhom/path_homology.hpp"
#include "testutil.hpp"

#include <set>

using namespace pathhom;
using testutil::cycle;
using testutil::square;
using testutil::triangle_chord;

TEST_CASE("pi^2 of the cyclic triangle is free of rank 1 after the tree dies") {
    Digraph c3 = cycle(3);
    auto p = pi_l_presentation(c3, 0, 2);
    CHECK(p.generators.size() == 3);
    // two tree relators, no path-pair relators (all <= 2 paths are unique)
    CHECK(p.relators.size() == 2);
    for (const auto& r : p.relators) CHECK(r.size() == 1);
    auto inv = abelianization(p);
    CHECK(inv.rank == 1);
    CHECK(inv.torsion.empty());
}

TEST_CASE("pi^2 of the square and the chorded triangle are trivial") {
    auto ps = pi_l_presentation(square(), 0, 2);
    bool has_square_relator = false;
    for (const auto& r : ps.relators) has_square_relator |= r.size() == 4;
    CHECK(has_square_relator);
    auto invs = abelianization(ps);
    CHECK(invs.rank == 0);
    CHECK(invs.torsion.empty());

    auto pt = pi_l_presentation(triangle_chord(), 0, 2);
    bool has_triangle_relator = false;
    for (const auto& r : pt.relators) has_triangle_relator |= r.size() == 3;
    CHECK(has_triangle_relator);
    auto invt = abelianization(pt);
    CHECK(invt.rank == 0);
    CHECK(invt.torsion.empty());
}

TEST_CASE("pi^2 of the mod-4 double cycle abelianizes to Z") {
    Digraph x = testutil::double_cycle(4);
    auto inv = abelianization(pi_l_presentation(x, 0, 2));
    CHECK(inv.rank == 1);
    CHECK(inv.torsion.empty());
}

TEST_CASE("free presentation and free rank formula") {
    GroupPresentation free3{{"a", "b", "c"}, {}};
    auto inv = abelianization(free3);
    CHECK(inv.rank == 3);
    CHECK(inv.torsion.empty());

    CHECK(pi1_free_rank(cycle(3)) == 1);
    CHECK(pi1_free_rank(square()) == 1);
    Digraph tree = Digraph::make({"r", "a", "b"}, {{"r", "a"}, {"r", "b"}});
    CHECK(pi1_free_rank(tree) == 0);
    Digraph disc = Digraph::make({"u", "v"}, {});
    CHECK_THROWS_AS(pi1_free_rank(disc), std::invalid_argument);
    CHECK_THROWS_AS(pi_l_presentation(disc, 0, 2), std::invalid_argument);
}

TEST_CASE("tietze substitution removes exactly the killed generators") {
    Digraph c3 = cycle(3);
    auto p = pi_l_presentation(c3, 0, 2);
    auto s = tietze_substitute(p);
    CHECK(s.generators.size() == 1);
    CHECK(s.relators.empty());
    CHECK(abelianization(s) == abelianization(p));
}

TEST_CASE("relator sets grow with the level") {
    testutil::Rng rng(0x9e1);
    for (int t = 0; t < 8; ++t) {
        Digraph x = testutil::random_digraph(rng, 5, 45);
        if (!x.connected()) continue;
        auto p2 = pi_l_presentation(x, 0, 2);
        auto p3 = pi_l_presentation(x, 0, 3);
        std::set<std::vector<int>> r3(p3.relators.begin(), p3.relators.end());
        for (const auto& r : p2.relators) CHECK(r3.count(r) == 1);
    }
}

TEST_CASE("level 1 presentations are free of the Euler rank") {
    testutil::Rng rng(0x9e4);
    int done = 0;
    while (done < 8) {
        Digraph x = testutil::random_digraph(rng, 5, 45);
        if (!x.connected()) continue;
        ++done;
        auto inv = abelianization(pi_l_presentation(x, 0, 1));
        CHECK(inv.rank == pi1_free_rank(x));
        CHECK(inv.torsion.empty());
    }
}

TEST_CASE("abelianization is basepoint independent") {
    testutil::Rng rng(0x9e2);
    for (int t = 0; t < 6; ++t) {
        Digraph x = testutil::random_digraph(rng, 5, 45);
        if (!x.connected()) continue;
        auto base = abelianization(pi_l_presentation(x, 0, 2));
        for (int b = 1; b < x.num_vertices(); ++b)
            CHECK(abelianization(pi_l_presentation(x, b, 2)) == base);
    }
}

TEST_CASE("pi^2 abelianization matches integral PH_1") {
    std::vector<Digraph> corpus{cycle(3), cycle(4), cycle(6), square(), triangle_chord(),
                                testutil::double_cycle(4)};
    testutil::Rng rng(0x9e3);
    while (corpus.size() < 12) {
        Digraph x = testutil::random_digraph(rng, 5, 40);
        if (x.connected() && x.num_vertices() > 1) corpus.push_back(std::move(x));
    }
    std::vector<Ring> rings{Ring::z()};
    for (const Digraph& x : corpus) {
        auto inv = abelianization(pi_l_presentation(x, 0, 2));
        auto h = ph(x, rings, 2);
        CHECK(inv.rank == h.degrees[1].free_rank);
        CHECK(inv.torsion == h.degrees[1].torsion);
    }
}

TEST_CASE("check_voltage: pinned examples") {
    Digraph c3 = cycle(3);
    VoltageLabeling ones{VoltageGroup::abelian(parse_abelian_group("Z")),
                         {{{1}, -1}, {{1}, -1}, {{1}, -1}}};
    CHECK(check_voltage(c3, 2, ones).ok);

    // square with arrows (0,1),(1,3) -> 1 and (0,2),(2,3) -> 0 breaks at l=2
    Digraph sq = square();
    VoltageGroup z = VoltageGroup::abelian(parse_abelian_group("Z"));
    VoltageLabeling bad{z, std::vector<VoltageGroup::Elem>(4)};
    // arrows sorted: (0,1), (0,2), (1,3), (2,3)
    bad.arrow_values[0] = {{1}, -1};
    bad.arrow_values[1] = {{0}, -1};
    bad.arrow_values[2] = {{0}, -1};
    bad.arrow_values[3] = {{0}, -1};
    auto chk = check_voltage(sq, 2, bad);
    CHECK_FALSE(chk.ok);
    CHECK(chk.violation.find("0") != std::string::npos);
    CHECK(check_voltage(sq, 1, bad).ok);  // no relations at l = 1
}

TEST_CASE("voltage file parsing, including a finite table group") {
    Digraph c3 = cycle(3);
    auto v = parse_voltage_file(c3,
                                "group Z^1\n"
                                "arrow 0 1 = (1)\n"
                                "arrow 1 2 = (1)\n"
                                "arrow 2 0 = (1)\n");
    CHECK(check_voltage(c3, 2, v).ok);
    CHECK(v.group.str(v.arrow_values[0]) == "(1)");

    auto t = parse_voltage_file(c3,
                                "group table\n"
                                "elements: e g\n"
                                "mult: e e = e\n"
                                "mult: e g = g\n"
                                "mult: g e = g\n"
                                "mult: g g = e\n"
                                "arrow 0 1 = g\n"
                                "arrow 1 2 = g\n"
                                "arrow 2 0 = g\n");
    CHECK(check_voltage(c3, 2, t).ok);
    CHECK(t.group.str(t.group.mul(t.arrow_values[0], t.arrow_values[1])) == "e");

    CHECK_THROWS_AS(parse_voltage_file(c3, "group Z^1\narrow 0 1 = (1)\n"),
                    std::invalid_argument);
}
