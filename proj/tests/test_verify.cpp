#include "support/corpus.hpp"
#include "support/oracle.hpp"

#include <rainbow/verify.hpp>

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace rainbow;

namespace {

constexpr ColoringMode all_modes[] = {ColoringMode::EdgeOnly, ColoringMode::VertexOnly, ColoringMode::Total};

TotalColoring random_coloring(const Graph &g, int palette, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> color(0, palette - 1);
    TotalColoring c(g, palette);
    for (auto &x : c.vertex_colors)
        x = color(rng);
    for (auto &x : c.edge_colors)
        x = color(rng);
    return c;
}

std::vector<Graph> small_corpus(int max_n)
{
    std::vector<Graph> out;
    for (int n = 2; n <= max_n; ++n)
        for (auto &g : corpus::connected_graphs(n))
            out.push_back(std::move(g));
    return out;
}

bool internally_disjoint(const std::vector<Path> &paths)
{
    std::vector<VertexId> inner;
    for (const auto &p : paths)
        inner.insert(inner.end(), p.vertices.begin() + 1, p.vertices.end() - 1);
    std::sort(inner.begin(), inner.end());
    return std::adjacent_find(inner.begin(), inner.end()) == inner.end();
}

} // namespace

TEST_CASE("rainbow path length caps")
{
    CHECK(max_rainbow_path_length(3, ColoringMode::Total) == 2);
    CHECK(max_rainbow_path_length(4, ColoringMode::Total) == 2);
    CHECK(max_rainbow_path_length(5, ColoringMode::Total) == 3);
    CHECK(max_rainbow_path_length(1, ColoringMode::Total) == 1);
    CHECK(max_rainbow_path_length(4, ColoringMode::EdgeOnly) == 4);
    CHECK(max_rainbow_path_length(4, ColoringMode::VertexOnly) == std::nullopt);
    Graph p5 = corpus::path_graph(5);
    CHECK(path_length_cap(p5, 2, ColoringMode::VertexOnly) == 3);
    CHECK(path_length_cap(p5, 9, ColoringMode::EdgeOnly) == 4);
}

TEST_CASE("single path checks")
{
    Graph g = corpus::path_graph(3);
    TotalColoring c(g, 3);
    c.vertex_colors = {0, 2, 0};
    c.edge_colors = {0, 1};
    CHECK(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::Total));
    c.vertex_colors[1] = 1;
    CHECK_FALSE(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::Total));
    CHECK(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::EdgeOnly));
    CHECK(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::VertexOnly));
    // Endpoint colors are ignored.
    c.vertex_colors = {0, 2, 1};
    CHECK(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::Total));
    CHECK_THROWS_AS(is_rainbow_path(g, c, Path{{0, 2}}, ColoringMode::Total), InvalidInput);
}

TEST_CASE("enumeration matches brute-force path listing")
{
    std::mt19937_64 rng(11);
    for (const Graph &g : small_corpus(5))
        for (auto mode : all_modes)
            for (int t = 1; t <= 4; ++t) {
                TotalColoring c = random_coloring(g, t, rng);
                int n = g.num_vertices();
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        std::vector<std::vector<int>> expected;
                        for (auto &p : oracle::simple_paths(g, u, v))
                            if (oracle::rainbow(g, c, p, mode))
                                expected.push_back(p);
                        std::sort(expected.begin(), expected.end());
                        std::vector<std::vector<int>> got;
                        for (auto &p : enumerate_rainbow_paths(g, c, u, v, mode, n - 1))
                            got.push_back(p.vertices);
                        CHECK(got == expected);
                    }
            }
}

TEST_CASE("k-connectivity verdicts match the brute-force oracle")
{
    std::mt19937_64 rng(12);
    int positives = 0;
    for (const Graph &g : small_corpus(5))
        for (auto mode : all_modes)
            for (int k = 1; k <= 3; ++k)
                for (int t = 1; t <= 5; ++t)
                    for (int rep = 0; rep < 3; ++rep) {
                        TotalColoring c = random_coloring(g, t, rng);
                        bool expected = oracle::connected(g, c, k, mode);
                        positives += expected;
                        CHECK(is_rainbow_k_connected(g, c, k, mode) == expected);
                    }
    // The sample must exercise both answers.
    CHECK(positives > 50);
}

TEST_CASE("witness paths are valid, rainbow and disjoint")
{
    std::mt19937_64 rng(13);
    for (const Graph &g : small_corpus(5))
        for (auto mode : all_modes)
            for (int k = 1; k <= 2; ++k) {
                TotalColoring c = random_coloring(g, 4, rng);
                for (auto pair : all_pairs(g)) {
                    auto found = find_disjoint_rainbow_paths(g, c, pair.u, pair.v, k, mode);
                    if (!found.found)
                        continue;
                    CHECK(found.witness.size() == static_cast<std::size_t>(k));
                    for (const auto &p : found.witness) {
                        CHECK(is_valid_path(g, p));
                        CHECK(p.vertices.front() == pair.u);
                        CHECK(p.vertices.back() == pair.v);
                        CHECK(is_rainbow_path(g, c, p, mode));
                    }
                    CHECK(internally_disjoint(found.witness));
                }
            }
}

TEST_CASE("first failing pair is reported deterministically")
{
    Graph g = corpus::path_graph(3);
    TotalColoring c(g, 2);
    c.vertex_colors = {0, 1, 0};
    c.edge_colors = {0, 0};
    auto verdict = check_rainbow_k_connected(g, c, 1, ColoringMode::Total);
    CHECK_FALSE(verdict.connected);
    CHECK(verdict.first_failure == VertexPair(0, 2));

    std::mt19937_64 rng(14);
    Graph big = corpus::cycle_graph(9);
    for (int rep = 0; rep < 20; ++rep) {
        TotalColoring r = random_coloring(big, 5, rng);
        VerifyOptions serial;
        VerifyOptions parallel;
        parallel.workers = 4;
        auto a = check_rainbow_k_connected(big, r, 1, ColoringMode::Total, serial);
        auto b = check_rainbow_k_connected(big, r, 1, ColoringMode::Total, parallel);
        CHECK(a.connected == b.connected);
        CHECK(a.first_failure == b.first_failure);
    }
}

TEST_CASE("C4 with a three-color witness")
{
    // a-b-c-d-a; a-c is served through b and b-d through a.
    Graph g = corpus::cycle_graph(4);
    TotalColoring c(g, 3);
    c.vertex_colors = {1, 1, 0, 0};
    c.edge_colors = {0, 2, 0, 2};
    CHECK(is_rainbow_k_connected(g, c, 1, ColoringMode::Total));
    CHECK(oracle::connected(g, c, 1, ColoringMode::Total));
    c.vertex_colors[0] = 0;
    CHECK_FALSE(is_rainbow_k_connected(g, c, 1, ColoringMode::Total));
}

TEST_CASE("pair subsets")
{
    Graph g = corpus::path_graph(4);
    TotalColoring c(g, 3);
    c.vertex_colors = {0, 2, 2, 0};
    c.edge_colors = {0, 1, 0};
    PairList ac{VertexPair(0, 2)};
    CHECK(is_rainbow_k_connected(g, c, 1, ColoringMode::Total, ac));
    CHECK_FALSE(is_rainbow_k_connected(g, c, 1, ColoringMode::Total));
}

TEST_CASE("extension conditions")
{
    // a-b-c with ab in E1 and bc in E2; Q = {a,c}.
    Graph g = corpus::path_graph(3);
    PartialEdgeColoring partial{{OrientedEdge{0, 0, 1}}, {OrientedEdge{1, 2, 1}}};
    PairList q{VertexPair(0, 2)};
    TotalColoring chi(g, 3);
    chi.vertex_colors = {2, 2, 2};
    chi.edge_colors = {0, 1};
    CHECK(check_problem3(g, q, partial, chi, 1).ok);

    // Either color may play the E1 role.
    TotalColoring swapped = chi;
    swapped.edge_colors = {1, 0};
    CHECK(satisfies_problem3(g, q, partial, swapped, 1));

    TotalColoring mono = chi;
    mono.edge_colors = {0, 0};
    CHECK_FALSE(satisfies_problem3(g, q, partial, mono, 1));

    TotalColoring endpoint_clash = chi;
    endpoint_clash.vertex_colors = {0, 2, 2};
    auto verdict = check_problem3(g, q, partial, endpoint_clash, 1);
    CHECK_FALSE(verdict.ok);
    CHECK_FALSE(verdict.reason.empty());

    CHECK_THROWS_AS(check_problem3(g, PairList{VertexPair(0, 1)}, partial, chi, 1), InvalidInput);
}

TEST_CASE("reference path verdicts")
{
    Graph edge = corpus::path_graph(2);
    CHECK(is_rainbow_path(edge, TotalColoring(edge, 1), Path{{0, 1}}, ColoringMode::Total));

    Graph g = corpus::path_graph(3);
    TotalColoring c(g, 3);
    c.vertex_colors = {0, 0, 0};
    c.edge_colors = {0, 1};
    CHECK_FALSE(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::Total));
    CHECK(is_rainbow_path(g, c, Path{{0, 1, 2}}, ColoringMode::VertexOnly));

    TotalColoring same(g, 1);
    CHECK(enumerate_rainbow_paths(g, same, 0, 2, ColoringMode::EdgeOnly, 2).empty());
}

TEST_CASE("enumeration on C4 with distinct colors")
{
    Graph g = corpus::cycle_graph(4);
    TotalColoring c(g, 8);
    c.vertex_colors = {0, 1, 2, 3};
    c.edge_colors = {4, 5, 6, 7};
    auto paths = enumerate_rainbow_paths(g, c, 0, 2, ColoringMode::Total, 2);
    REQUIRE(paths.size() == 2);
    CHECK(describe(g, paths[0]) == "a-b-c");
    CHECK(describe(g, paths[1]) == "a-d-c");
}

TEST_CASE("two disjoint paths on C4 and none through a star centre")
{
    Graph g = corpus::cycle_graph(4);
    TotalColoring c(g, 3, 2);
    c.edge_colors = {0, 1, 0, 1};
    CHECK(has_k_disjoint_rainbow_paths(g, c, 0, 2, 2, ColoringMode::Total));
    CHECK(is_rainbow_k_connected(g, c, 1, ColoringMode::Total));

    Graph star = corpus::star_graph(3);
    TotalColoring any(star, 5);
    any.edge_colors = {0, 1, 3};
    any.vertex_colors = {2, 0, 0, 0};
    CHECK_FALSE(has_k_disjoint_rainbow_paths(star, any, 1, 2, 2, ColoringMode::Total));

    // An adjacent pair always has its direct edge.
    for (auto pair : all_pairs(g))
        if (g.adjacent(pair.u, pair.v))
            CHECK(has_k_disjoint_rainbow_paths(g, TotalColoring(g, 1), pair.u, pair.v, 1, ColoringMode::Total));
}

TEST_CASE("all-pairs reference verdicts")
{
    for (int n = 2; n <= 6; ++n) {
        Graph kn = corpus::complete_graph(n);
        CHECK(is_rainbow_k_connected(kn, TotalColoring(kn, 1), 1, ColoringMode::Total));
    }
    Graph p3 = corpus::path_graph(3);
    std::mt19937_64 rng(15);
    for (int rep = 0; rep < 30; ++rep)
        CHECK_FALSE(is_rainbow_k_connected(p3, random_coloring(p3, 2, rng), 1, ColoringMode::Total));
}

TEST_CASE("vacuous extension instance")
{
    Graph g = corpus::path_graph(3);
    TotalColoring c(g, 3);
    CHECK(satisfies_problem3(g, PairList{}, PartialEdgeColoring{}, c, 1));
}
