#include <rainbow/coloring.hpp>

#include <algorithm>
#include <unordered_set>

namespace rainbow {

std::string to_string(ColoringMode mode)
{
    switch (mode) {
    case ColoringMode::EdgeOnly:
        return "edge";
    case ColoringMode::VertexOnly:
        return "vertex";
    case ColoringMode::Total:
        return "total";
    }
    return "total";
}

ColoringMode parse_mode(std::string_view text)
{
    if (text == "edge")
        return ColoringMode::EdgeOnly;
    if (text == "vertex")
        return ColoringMode::VertexOnly;
    if (text == "total")
        return ColoringMode::Total;
    throw InvalidInput("unknown coloring mode '" + std::string(text) + "'");
}

int element_index(const Graph &g, const Element &element)
{
    if (const auto *v = std::get_if<VertexRef>(&element)) {
        if (v->vertex < 0 || v->vertex >= g.num_vertices())
            throw InvalidInput("vertex element outside the graph");
        return v->vertex;
    }
    const auto &e = std::get<EdgeRef>(element);
    auto id = g.find_edge(e.a, e.b);
    if (!id)
        throw InvalidInput("edge element outside the graph");
    return g.num_vertices() + *id;
}

std::string element_name(const Graph &g, int index)
{
    if (index < g.num_vertices())
        return g.label(index);
    return g.edge_key(index - g.num_vertices());
}

TotalColoring::TotalColoring(const Graph &g, int palette_size, Color fill)
    : palette(palette_size),
      vertex_colors(static_cast<std::size_t>(g.num_vertices()), fill),
      edge_colors(static_cast<std::size_t>(g.num_edges()), fill)
{
}

void validate_coloring(const Graph &g, const TotalColoring &c)
{
    if (c.palette < 1)
        throw InvalidInput("palette size must be at least 1");
    if (c.vertex_colors.size() != static_cast<std::size_t>(g.num_vertices()) ||
        c.edge_colors.size() != static_cast<std::size_t>(g.num_edges()))
        throw InvalidInput("coloring does not cover the graph's elements");
    auto bad = [&](Color x) { return x < 0 || x >= c.palette; };
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        if (bad(c.vertex(v)))
            throw InvalidInput("vertex '" + g.label(v) + "' has color outside the palette");
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (bad(c.edge(e)))
            throw InvalidInput("edge '" + g.edge_key(e) + "' has color outside the palette");
}

TotalColoring permute_colors(const TotalColoring &c, const std::vector<Color> &perm)
{
    TotalColoring out = c;
    for (auto &x : out.vertex_colors)
        x = perm.at(static_cast<std::size_t>(x));
    for (auto &x : out.edge_colors)
        x = perm.at(static_cast<std::size_t>(x));
    return out;
}

bool is_valid_path(const Graph &g, const Path &p)
{
    if (p.vertices.size() < 2)
        return false;
    std::unordered_set<VertexId> seen;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        auto v = p.vertices[i];
        if (v < 0 || v >= g.num_vertices() || !seen.insert(v).second)
            return false;
        if (i > 0 && !g.adjacent(p.vertices[i - 1], v))
            return false;
    }
    return true;
}

std::string describe(const Graph &g, const Path &p)
{
    std::string out;
    for (std::size_t i = 0; i < p.vertices.size(); ++i) {
        if (i)
            out += '-';
        out += g.label(p.vertices[i]);
    }
    return out;
}

void validate_partial(const Graph &g, const PartialEdgeColoring &partial)
{
    std::unordered_set<EdgeId> seen;
    auto check = [&](const OrientedEdge &oe) {
        if (oe.edge < 0 || oe.edge >= g.num_edges())
            throw InvalidInput("pre-colored edge is not in the graph");
        auto [a, b] = g.endpoints(oe.edge);
        if (!((oe.first == a && oe.second == b) || (oe.first == b && oe.second == a)))
            throw InvalidInput("endpoint labeling of '" + g.edge_key(oe.edge) + "' does not match the edge");
        if (!seen.insert(oe.edge).second)
            throw InvalidInput("edge '" + g.edge_key(oe.edge) + "' is pre-colored twice");
    };
    std::for_each(partial.class1.begin(), partial.class1.end(), check);
    std::for_each(partial.class2.begin(), partial.class2.end(), check);
}

} // namespace rainbow
