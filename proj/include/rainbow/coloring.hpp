#pragma once

#include <rainbow/graph.hpp>

#include <string>
#include <variant>
#include <vector>

namespace rainbow {

using Color = int;

/// Which elements of a path must carry distinct colors.
enum class ColoringMode {
    EdgeOnly,   // rainbow path: edges only
    VertexOnly, // vertex-rainbow path: internal vertices only
    Total,      // total-rainbow path: edges and internal vertices together
};

std::string to_string(ColoringMode mode);
ColoringMode parse_mode(std::string_view text);

struct VertexRef {
    VertexId vertex;
};

/// Edge reference by endpoints, kept in id order.
struct EdgeRef {
    VertexId a;
    VertexId b;

    EdgeRef(VertexId x, VertexId y) : a(x < y ? x : y), b(x < y ? y : x) {}
};

using Element = std::variant<VertexRef, EdgeRef>;

/// Flat index of an element: vertices occupy [0, n), edges [n, n + m).
/// Throws InvalidInput when the element does not exist in g.
int element_index(const Graph &g, const Element &element);
std::string element_name(const Graph &g, int index);

/// A color for every vertex and edge of a host graph, palette {0, ..., palette-1}.
struct TotalColoring {
    int palette = 1;
    std::vector<Color> vertex_colors;
    std::vector<Color> edge_colors;

    TotalColoring() = default;
    TotalColoring(const Graph &g, int palette, Color fill = 0);

    [[nodiscard]] Color vertex(VertexId v) const { return vertex_colors[static_cast<std::size_t>(v)]; }
    [[nodiscard]] Color edge(EdgeId e) const { return edge_colors[static_cast<std::size_t>(e)]; }

    friend bool operator==(const TotalColoring &, const TotalColoring &) = default;
};

/// Throws InvalidInput unless c covers exactly g's elements with colors below its palette.
void validate_coloring(const Graph &g, const TotalColoring &c);

/// Applies a color permutation (perm[old] = new). The palette is unchanged.
TotalColoring permute_colors(const TotalColoring &c, const std::vector<Color> &perm);

/// A sequence of distinct vertices with consecutive ones adjacent.
struct Path {
    std::vector<VertexId> vertices;

    [[nodiscard]] int length() const { return static_cast<int>(vertices.size()) - 1; }
    friend bool operator==(const Path &, const Path &) = default;
};

bool is_valid_path(const Graph &g, const Path &p);
std::string describe(const Graph &g, const Path &p);

/// Edge e = e^1 e^2 with its endpoint labeling fixed.
struct OrientedEdge {
    EdgeId edge;
    VertexId first;
    VertexId second;

    friend bool operator==(const OrientedEdge &, const OrientedEdge &) = default;
};

/// Ordered partition (E1, E2) of a pre-colored edge subset.
struct PartialEdgeColoring {
    std::vector<OrientedEdge> class1;
    std::vector<OrientedEdge> class2;

    [[nodiscard]] bool empty() const { return class1.empty() && class2.empty(); }
    [[nodiscard]] std::size_t size() const { return class1.size() + class2.size(); }

    friend bool operator==(const PartialEdgeColoring &, const PartialEdgeColoring &) = default;
};

/// Throws InvalidInput when classes overlap or an edge/endpoint labeling does not match g.
void validate_partial(const Graph &g, const PartialEdgeColoring &partial);

} // namespace rainbow
