#include "support/corpus.hpp"
#include "support/formulas.hpp"

#include <rainbow/reductions.hpp>
#include <rainbow/solve.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace rainbow;

namespace {

void check_metadata(const ReducedInstance &inst, const std::set<std::string> &earlier, const std::string &stage)
{
    const Graph &g = inst.graph;
    REQUIRE(inst.roles.size() == static_cast<std::size_t>(g.num_vertices()));
    REQUIRE(inst.provenance.size() == static_cast<std::size_t>(g.num_vertices()));
    std::set<std::string> labels(g.labels().begin(), g.labels().end());
    CHECK(labels.size() == g.labels().size());
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        CHECK(g.label(v).find('|') == std::string::npos);
        CHECK_FALSE(inst.roles[v].empty());
        if (earlier.count(g.label(v)))
            continue;
        CHECK(inst.provenance[v].stage == stage);
        for (const auto &anchor : inst.provenance[v].anchors)
            CHECK(labels.count(anchor) == 1);
    }
}

std::set<std::string> label_set(const Graph &g)
{
    return {g.labels().begin(), g.labels().end()};
}

int count_role(const ReducedInstance &inst, const std::string &role)
{
    return static_cast<int>(std::count(inst.roles.begin(), inst.roles.end(), role));
}

// A coloring of P3 = a-b-c that serves the pair {a,c}.
TotalColoring path3_witness(const Graph &g)
{
    TotalColoring c(g, 3);
    c.vertex_colors = {0, 2, 0};
    c.edge_colors = {0, 1};
    return c;
}

} // namespace

TEST_CASE("clique 2-coloring")
{
    for (int k = 1; k <= 4; ++k) {
        CliqueColoring cc = two_color_clique(k);
        const Graph &g = cc.graph;
        CHECK(g.num_vertices() == (k + 1) * (k + 1));
        CHECK(is_complete(g));
        CHECK(cc.coloring.palette == 2);
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            int zero = 0;
            for (EdgeId e : g.incident_edges(v))
                zero += cc.coloring.edge(e) == 0;
            CHECK(zero == 2 * k);
            CHECK(g.degree(v) - zero == k * k);
        }
        CHECK(is_rainbow_k_connected(g, cc.coloring, k, ColoringMode::EdgeOnly));
        for (int a = 0; a < g.num_vertices(); ++a)
            for (int b = a + 1; b < g.num_vertices(); ++b)
                CHECK(clique_pair_color(k, a, b) == clique_pair_color(k, b, a));
    }
    CHECK(two_color_clique(1).graph.label(0) == "v(1,1)");
}

TEST_CASE("P2 -> P1 on the three-vertex path")
{
    Graph g = corpus::path_graph(3);
    PairList p{VertexPair(0, 2)};
    P2ToP1Reduction r = reduce_p2_to_p1(g, p, 1);
    CHECK(r.target.graph.num_vertices() == 23);
    CHECK(r.target.graph.num_edges() == 220);
    CHECK(r.layout.vertex_gadgets.size() == 3);
    CHECK(r.layout.pair_gadgets.size() == 2);
    CHECK(count_role(r.target, role::vertex_gadget) == 12);
    CHECK(count_role(r.target, role::pair_gadget) == 8);
    CHECK(r.target.pairs.empty());
    check_metadata(r.target, label_set(g), "p1");

    TotalColoring lifted = lift_coloring_p2_to_p1(r, path3_witness(g));
    CHECK(is_rainbow_k_connected(r.target.graph, lifted, 1, ColoringMode::Total));
    CHECK(restrict_coloring_p1_to_p2(r, lifted) == path3_witness(g));

    TotalColoring bad = path3_witness(g);
    bad.vertex_colors[1] = 0;
    CHECK_THROWS_AS(lift_coloring_p2_to_p1(r, bad), InvalidInput);
    CHECK_THROWS_AS(reduce_p2_to_p1(g, PairList{}, 1), InvalidInput);
    CHECK_THROWS_AS(reduce_p2_to_p1(g, PairList{VertexPair(0, 1)}, 1), InvalidInput);
}

TEST_CASE("P2 -> P1 lifts at k = 2")
{
    // C4 with both diagonals required; every pair of C4 has two disjoint paths.
    Graph g = corpus::cycle_graph(4);
    PairList p{VertexPair(0, 2), VertexPair(1, 3)};
    auto witness = decide_subset_trc3(g, p, 2);
    REQUIRE(witness.status == SearchStatus::Found);
    P2ToP1Reduction r = reduce_p2_to_p1(g, p, 2);
    TotalColoring lifted = lift_coloring_p2_to_p1(r, *witness.coloring);
    CHECK(is_rainbow_k_connected(r.target.graph, lifted, 2, ColoringMode::Total));
    CHECK(restrict_coloring_p1_to_p2(r, lifted) == *witness.coloring);
}

TEST_CASE("SAT -> P3 gadget")
{
    SatReduction one = reduce_sat_to_p3(corpus::single_clause(), 1);
    CHECK(one.target.graph.num_vertices() == 5);
    CHECK(one.target.pairs.size() == 1);
    CHECK(one.target.partial.class1.size() == 3);
    CHECK(one.target.partial.class2.empty());
    for (const auto &oe : one.target.partial.class1)
        CHECK(one.target.roles[oe.first] == role::variable);
    check_metadata(one.target, {}, "p3");

    SatReduction two = reduce_sat_to_p3(corpus::single_clause(), 2);
    CHECK(two.target.graph.num_vertices() == 6);
    CHECK(count_role(two.target, role::clause_helper) == 1);

    SatReduction dup = reduce_sat_to_p3(corpus::contradiction(), 1);
    CHECK(dup.target.partial.class1.size() == 1);
    CHECK(dup.target.partial.class2.size() == 1);

    CHECK_THROWS_AS(reduce_sat_to_p3(parse_dimacs("p cnf 2 1\n1 -1 2 0\n"), 1), InvalidInput);
}

TEST_CASE("P3 -> P2 counts on one clause")
{
    SatReduction sat = reduce_sat_to_p3(corpus::single_clause(), 1);
    P3ToP2Reduction r = reduce_p3_to_p2(sat.target);
    CHECK(r.target.graph.num_vertices() == 26);
    CHECK(r.target.pairs.size() == 32);
    CHECK(r.layout.helpers.empty());
    check_metadata(r.target, label_set(sat.target.graph), "p2");

    SatReduction sat2 = reduce_sat_to_p3(corpus::single_clause(), 2);
    P3ToP2Reduction r2 = reduce_p3_to_p2(sat2.target);
    CHECK(count_role(r2.target, role::pair_helper) == 31);
    CHECK(r2.target.graph.num_vertices() == 27 + 31);
}

TEST_CASE("forward and backward witnesses")
{
    std::mt19937_64 rng(21);
    int checked = 0;
    for (int i = 0; i < 60; ++i) {
        CnfFormula phi = corpus::random_clean_formula(3, 2, rng);
        const int k = 1 + i % 2;
        SatReduction sat = reduce_sat_to_p3(phi, k);
        const ReducedInstance &p3 = sat.target;
        for (unsigned mask = 0; mask < 8; ++mask) {
            Assignment a{{bool(mask & 1U), bool(mask & 2U), bool(mask & 4U)}, {false, false, false}};
            if (!evaluate(phi, a)) {
                CHECK_THROWS_AS(assignment_to_coloring(sat, a), InvalidInput);
                continue;
            }
            ++checked;
            TotalColoring chi = assignment_to_coloring(sat, a);
            CHECK(satisfies_problem3(p3.graph, p3.pairs, p3.partial, chi, k));
            Assignment back = coloring_to_assignment(sat, chi);
            CHECK(evaluate(phi, back));
            for (int x = 0; x < 3; ++x)
                if (!back.unconstrained[x])
                    CHECK(back.values[x] == a.values[x]);

            // Renaming the colors does not change what is read off.
            Assignment renamed = coloring_to_assignment(sat, permute_colors(chi, {1, 0, 2}));
            if (!p3.partial.class1.empty() && !p3.partial.class2.empty())
                CHECK(renamed.values == back.values);
            CHECK(evaluate(phi, renamed));

            P3ToP2Reduction r = reduce_p3_to_p2(p3);
            TotalColoring lifted = lift_coloring_p3_to_p2(r, chi);
            CHECK(is_rainbow_k_connected(r.target.graph, lifted, k, ColoringMode::Total, r.target.pairs));
            RestrictedP3Coloring restricted = restrict_coloring_p2_to_p3(r, lifted);
            CHECK(restricted.normalized == chi);
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("solver witnesses extract to satisfying assignments")
{
    std::mt19937_64 rng(22);
    for (int i = 0; i < 40; ++i) {
        CnfFormula phi = corpus::random_clean_formula(3, 2, rng);
        const int k = 1 + i % 2;
        SatReduction sat = reduce_sat_to_p3(phi, k);
        auto outcome = decide_extension(sat.target.graph, sat.target.pairs, sat.target.partial, k);
        CHECK((outcome.status == SearchStatus::Found) == solve_by_truth_table(phi).has_value());
        if (outcome.coloring)
            CHECK(evaluate(phi, coloring_to_assignment(sat, *outcome.coloring)));
    }
}

TEST_CASE("restriction follows whichever colors play the class roles")
{
    CnfFormula phi = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 2 3 0\n");
    SatReduction sat = reduce_sat_to_p3(phi, 1);
    TotalColoring chi = assignment_to_coloring(sat, *solve_by_truth_table(phi));
    P3ToP2Reduction r = reduce_p3_to_p2(sat.target);
    TotalColoring lifted = lift_coloring_p3_to_p2(r, chi);

    RestrictedP3Coloring plain = restrict_coloring_p2_to_p3(r, lifted);
    CHECK(plain.class1_color == 0);
    CHECK(plain.class2_color == 1);

    RestrictedP3Coloring swapped = restrict_coloring_p2_to_p3(r, permute_colors(lifted, {2, 0, 1}));
    CHECK(swapped.class1_color == 2);
    CHECK(swapped.class2_color == 0);
    CHECK(swapped.normalized == chi);
    CHECK(evaluate(phi, coloring_to_assignment(sat, swapped.coloring)));
}

TEST_CASE("shortcut-freeness on random instances")
{
    std::mt19937_64 rng(23);
    for (int i = 0; i < 30; ++i) {
        CnfFormula phi = corpus::random_clean_formula(4, 3, rng);
        const int k = 1 + i % 3;
        SatReduction sat = reduce_sat_to_p3(phi, k);
        P3ToP2Reduction r = reduce_p3_to_p2(sat.target);
        const int base = sat.target.graph.num_vertices();
        for (auto q : sat.target.pairs)
            CHECK(outside_common_neighbors(r.target.graph, q, base).empty());
        // Helper detours touch exactly their own pair.
        for (const auto &h : r.layout.helpers) {
            CHECK(h.members.size() == static_cast<std::size_t>(k - 1));
            for (VertexId g : h.members) {
                CHECK(r.target.graph.degree(g) == 2);
                CHECK(r.target.graph.adjacent(g, h.pair.u));
                CHECK(r.target.graph.adjacent(g, h.pair.v));
            }
        }
    }
}

TEST_CASE("composed chain on one clause")
{
    ComposedReduction chain = reduce_sat_to_trc3(corpus::single_clause(), 1);
    const int n2 = chain.p2.target.graph.num_vertices();
    const int pairs = static_cast<int>(chain.p2.target.pairs.size());
    const int non_pairs = n2 * (n2 - 1) / 2 - pairs;
    CHECK(chain.target().graph.num_vertices() == n2 + 4 * (n2 + non_pairs));
    CHECK(chain.target().stage == Stage::P1);
}

TEST_CASE("P3 -> P2 with nothing pre-colored")
{
    ReducedInstance p3 = make_instance(Stage::P3, corpus::path_graph(3), PairList{VertexPair(0, 2)}, {}, 1);
    P3ToP2Reduction r = reduce_p3_to_p2(p3);
    CHECK(r.target.graph.num_vertices() == 6);
    REQUIRE(r.target.pairs.size() == 2);
    CHECK(r.target.pairs[0] == VertexPair(0, 2));
    CHECK(r.target.pairs[1] == VertexPair(r.layout.b1, r.layout.b2));
}

TEST_CASE("reference gadget shapes")
{
    SatReduction one = reduce_sat_to_p3(corpus::single_clause(), 1);
    CHECK(one.target.graph.num_edges() == 6);
    CHECK(one.target.graph.label(one.target.pairs[0].u) == "c1");
    CHECK(one.target.graph.label(one.target.pairs[0].v) == "s");

    SatReduction mixed = reduce_sat_to_p3(parse_dimacs("p cnf 3 1\n1 -2 3 0\n"), 2);
    const Graph &g = mixed.target.graph;
    VertexId helper = g.vertex("c1^2");
    CHECK(g.adjacent(helper, g.vertex("s")));
    CHECK(g.adjacent(helper, g.vertex("c1")));
    REQUIRE(mixed.target.partial.class2.size() == 1);
    CHECK(g.edge_key(mixed.target.partial.class2[0].edge) == "c1|x2");
}

TEST_CASE("forward coloring for x1 = true")
{
    SatReduction sat = reduce_sat_to_p3(corpus::single_clause(), 1);
    const Graph &g = sat.target.graph;
    TotalColoring chi = assignment_to_coloring(sat, Assignment{{true, false, false}, {false, false, false}});
    VertexId s = g.vertex("s");
    CHECK(chi.edge(*g.find_edge(s, g.vertex("x1"))) == 1);
    CHECK(chi.edge(*g.find_edge(s, g.vertex("x2"))) == 0);
    CHECK(chi.edge(*g.find_edge(s, g.vertex("x3"))) == 0);
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        CHECK(chi.vertex(v) == 2);

    auto paths = enumerate_rainbow_paths(g, chi, s, g.vertex("c1"), ColoringMode::Total, 2);
    REQUIRE(paths.size() == 1);
    CHECK(describe(g, paths[0]) == "s-x1-c1");

    Assignment back = coloring_to_assignment(sat, chi);
    CHECK(back.values == std::vector<bool>{true, false, false});
    CHECK_THROWS_AS(assignment_to_coloring(sat, Assignment{{false, false, false}, {false, false, false}}),
                    InvalidInput);
}

TEST_CASE("extraction defaults")
{
    // x2 is in no clause.
    CnfFormula phi = parse_dimacs("p cnf 2 1\n1 1 1 0\n");
    SatReduction sat = reduce_sat_to_p3(phi, 1);
    TotalColoring chi = assignment_to_coloring(sat, Assignment{{true, true}, {false, false}});
    Assignment a = coloring_to_assignment(sat, chi);
    CHECK(a.values == std::vector<bool>{true, false});
    CHECK(a.unconstrained == std::vector<bool>{false, true});

    // x2 sits only in a positive literal; s-x2 = 0 and x2 = 1 leaves it undetermined.
    CnfFormula two = parse_dimacs("p cnf 2 1\n1 2 2 0\n");
    SatReduction sat2 = reduce_sat_to_p3(two, 1);
    const Graph &g = sat2.target.graph;
    TotalColoring open = assignment_to_coloring(sat2, Assignment{{true, false}, {false, false}});
    open.vertex_colors[g.vertex("x2")] = 1;
    REQUIRE(satisfies_problem3(g, sat2.target.pairs, sat2.target.partial, open, 1));
    Assignment b = coloring_to_assignment(sat2, open);
    CHECK(b.values == std::vector<bool>{true, false});
    CHECK(b.unconstrained == std::vector<bool>{false, true});
}

TEST_CASE("lift preconditions")
{
    SatReduction sat = reduce_sat_to_p3(corpus::single_clause(), 1);
    P3ToP2Reduction r = reduce_p3_to_p2(sat.target);
    TotalColoring chi = assignment_to_coloring(sat, Assignment{{true, false, false}, {false, false, false}});
    TotalColoring clash = chi;
    const Graph &g = sat.target.graph;
    clash.vertex_colors[g.vertex("x2")] = 0;
    CHECK_THROWS_AS(lift_coloring_p3_to_p2(r, clash), InvalidInput);

    TotalColoring lifted = lift_coloring_p3_to_p2(r, chi);
    TotalColoring same_hub = lifted;
    const Graph &big = r.target.graph;
    same_hub.edge_colors[*big.find_edge(r.layout.b1, r.layout.hub)] =
        same_hub.edge(*big.find_edge(r.layout.b2, r.layout.hub));
    CHECK_THROWS(restrict_coloring_p2_to_p3(r, same_hub));

    P2ToP1Reduction p1 = reduce_p2_to_p1(r.target);
    TotalColoring broken = lift_coloring_p2_to_p1(p1, lifted);
    broken.vertex_colors.assign(broken.vertex_colors.size(), 0);
    broken.edge_colors.assign(broken.edge_colors.size(), 0);
    CHECK_THROWS_AS(restrict_coloring_p1_to_p2(p1, broken), InvalidInput);
}
