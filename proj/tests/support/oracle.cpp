#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace oracle {

using rainbow::ColoringMode;

std::vector<VertexPath> simple_paths(const rainbow::Graph &g, int u, int v)
{
    std::vector<VertexPath> out;
    VertexPath current{u};
    std::vector<bool> used(g.num_vertices(), false);
    used[u] = true;
    std::function<void(int)> walk = [&](int x) {
        if (x == v) {
            out.push_back(current);
            return;
        }
        for (int y = 0; y < g.num_vertices(); ++y) {
            if (used[y] || !g.adjacent(x, y))
                continue;
            used[y] = true;
            current.push_back(y);
            walk(y);
            current.pop_back();
            used[y] = false;
        }
    };
    walk(u);
    return out;
}

bool rainbow(const rainbow::Graph &g, const rainbow::TotalColoring &c, const VertexPath &p, ColoringMode mode)
{
    std::multiset<int> seen;
    if (mode != ColoringMode::VertexOnly)
        for (std::size_t i = 0; i + 1 < p.size(); ++i)
            seen.insert(c.edge(*g.find_edge(p[i], p[i + 1])));
    if (mode != ColoringMode::EdgeOnly)
        for (std::size_t i = 1; i + 1 < p.size(); ++i)
            seen.insert(c.vertex(p[i]));
    return std::set<int>(seen.begin(), seen.end()).size() == seen.size();
}

namespace {

bool disjoint(const VertexPath &a, const VertexPath &b)
{
    for (std::size_t i = 1; i + 1 < a.size(); ++i)
        if (std::find(b.begin() + 1, b.end() - 1, a[i]) != b.end() - 1)
            return false;
    // Two copies of the direct edge are the same path.
    return !(a.size() == 2 && b.size() == 2);
}

bool choose(const std::vector<VertexPath> &paths, std::size_t from, int need, std::vector<const VertexPath *> &chosen)
{
    if (need == 0)
        return true;
    for (std::size_t i = from; i < paths.size(); ++i) {
        bool ok = std::all_of(chosen.begin(), chosen.end(), [&](const VertexPath *q) { return disjoint(paths[i], *q); });
        if (!ok)
            continue;
        chosen.push_back(&paths[i]);
        if (choose(paths, i + 1, need - 1, chosen))
            return true;
        chosen.pop_back();
    }
    return false;
}

} // namespace

bool pair_ok(const rainbow::Graph &g, const rainbow::TotalColoring &c, int u, int v, int k, ColoringMode mode)
{
    std::vector<VertexPath> good;
    for (auto &p : simple_paths(g, u, v))
        if (rainbow(g, c, p, mode))
            good.push_back(std::move(p));
    std::vector<const VertexPath *> chosen;
    return choose(good, 0, k, chosen);
}

bool connected(const rainbow::Graph &g, const rainbow::TotalColoring &c, int k, ColoringMode mode,
               const std::optional<rainbow::PairList> &pairs)
{
    if (pairs) {
        for (auto p : *pairs)
            if (!pair_ok(g, c, p.u, p.v, k, mode))
                return false;
        return true;
    }
    for (int u = 0; u < g.num_vertices(); ++u)
        for (int v = u + 1; v < g.num_vertices(); ++v)
            if (!pair_ok(g, c, u, v, k, mode))
                return false;
    return true;
}

std::optional<rainbow::TotalColoring> exists_coloring(const rainbow::Graph &g, int t, int k, ColoringMode mode,
                                                      const std::optional<rainbow::PairList> &pairs)
{
    const int n = g.num_vertices();
    const int m = g.num_edges();
    std::vector<int *> slots;
    rainbow::TotalColoring c(g, t, 0);
    if (mode != ColoringMode::EdgeOnly)
        for (int v = 0; v < n; ++v)
            slots.push_back(&c.vertex_colors[v]);
    if (mode != ColoringMode::VertexOnly)
        for (int e = 0; e < m; ++e)
            slots.push_back(&c.edge_colors[e]);
    while (true) {
        if (connected(g, c, k, mode, pairs))
            return c;
        std::size_t i = 0;
        while (i < slots.size() && *slots[i] == t - 1)
            *slots[i++] = 0;
        if (i == slots.size())
            return std::nullopt;
        ++*slots[i];
    }
}

std::optional<int> connection_number(const rainbow::Graph &g, int k, ColoringMode mode, int max_palette)
{
    for (int t = 1; t <= max_palette; ++t)
        if (exists_coloring(g, t, k, mode))
            return t;
    return std::nullopt;
}

} // namespace oracle
