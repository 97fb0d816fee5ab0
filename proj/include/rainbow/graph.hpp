#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace rainbow {

using VertexId = int;
using EdgeId = int;

/// Raised for malformed inputs: bad labels, unknown vertices, invalid pair sets, and so on.
class InvalidInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An unordered pair of distinct vertices, stored with u < v (by id).
struct VertexPair {
    VertexId u;
    VertexId v;

    VertexPair() = default;
    VertexPair(VertexId a, VertexId b) : u(a < b ? a : b), v(a < b ? b : a) {}

    friend bool operator==(const VertexPair &, const VertexPair &) = default;
    friend auto operator<=>(const VertexPair &, const VertexPair &) = default;
};

using PairList = std::vector<VertexPair>;

/// Undirected simple graph with string labels.
///
/// Vertex ids follow declaration order. Edge ids follow insertion order and
/// each edge stores its endpoints label-sorted. Adjacency lists are sorted by
/// vertex id, with the incident edge id kept alongside each neighbour.
/// Immutable once built.
class Graph {
public:
    class Builder {
    public:
        VertexId add_vertex(std::string label);
        EdgeId add_edge(VertexId a, VertexId b);
        EdgeId add_edge(std::string_view a, std::string_view b);

        [[nodiscard]] bool has_vertex(std::string_view label) const;
        [[nodiscard]] std::size_t num_vertices() const { return labels_.size(); }

        /// Validates (no duplicate edges) and freezes the graph.
        Graph finish() &&;

    private:
        std::vector<std::string> labels_;
        std::unordered_map<std::string, VertexId> index_;
        std::vector<std::pair<VertexId, VertexId>> edges_;
    };

    Graph() = default;

    [[nodiscard]] int num_vertices() const { return static_cast<int>(labels_.size()); }
    [[nodiscard]] int num_edges() const { return static_cast<int>(endpoints_.size()); }

    [[nodiscard]] const std::string &label(VertexId v) const { return labels_.at(v); }
    [[nodiscard]] const std::vector<std::string> &labels() const { return labels_; }
    [[nodiscard]] std::optional<VertexId> find_vertex(std::string_view label) const;
    /// Like find_vertex, but throws InvalidInput for an unknown label.
    [[nodiscard]] VertexId vertex(std::string_view label) const;

    /// Endpoints of an edge, ordered so that label(first) < label(second).
    [[nodiscard]] std::pair<VertexId, VertexId> endpoints(EdgeId e) const { return endpoints_.at(e); }

    [[nodiscard]] std::span<const VertexId> neighbors(VertexId v) const;
    /// Edge ids parallel to neighbors(v).
    [[nodiscard]] std::span<const EdgeId> incident_edges(VertexId v) const;
    [[nodiscard]] int degree(VertexId v) const { return static_cast<int>(neighbors(v).size()); }

    [[nodiscard]] std::optional<EdgeId> find_edge(VertexId a, VertexId b) const;
    [[nodiscard]] bool adjacent(VertexId a, VertexId b) const { return find_edge(a, b).has_value(); }

    /// "u|v" with endpoints label-sorted; the key used by the JSON coloring format.
    [[nodiscard]] std::string edge_key(EdgeId e) const;

private:
    std::vector<std::string> labels_;
    std::unordered_map<std::string, VertexId> index_;
    std::vector<std::pair<VertexId, VertexId>> endpoints_;
    std::vector<std::size_t> offsets_;
    std::vector<VertexId> adjacency_;
    std::vector<EdgeId> adjacency_edges_;
};

/// Builds a graph from labels and label pairs. Throws InvalidInput on a
/// duplicate label, self-loop, unknown endpoint, or duplicate edge.
Graph build_graph(const std::vector<std::string> &vertices,
                  const std::vector<std::pair<std::string, std::string>> &edges);

/// Number of edges on a longest shortest path; nullopt when disconnected.
std::optional<int> diameter(const Graph &g);
/// BFS distances from a source; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const Graph &g, VertexId source);
bool is_connected(const Graph &g);
bool is_complete(const Graph &g);

/// Maximum number of internally disjoint u-v paths (u, v nonadjacent), via unit-capacity max-flow.
int local_vertex_connectivity(const Graph &g, VertexId u, VertexId v);
/// Minimum vertex cut size, n-1 for complete graphs. Throws InvalidInput when
/// the graph is disconnected or has fewer than two vertices.
int vertex_connectivity(const Graph &g);

/// Normalizes and validates a pair set: distinct endpoints, no duplicates.
/// With require_nonadjacent, adjacent pairs are rejected.
PairList make_pair_list(const Graph &g, const std::vector<std::pair<std::string, std::string>> &pairs,
                        bool require_nonadjacent);
void validate_pairs(const Graph &g, const PairList &pairs, bool require_nonadjacent);

/// All unordered pairs of distinct vertices in (i < j) order.
PairList all_pairs(const Graph &g);

/// Vertices adjacent to both a and b.
std::vector<VertexId> common_neighbors(const Graph &g, VertexId a, VertexId b);

} // namespace rainbow
