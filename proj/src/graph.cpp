#include <rainbow/graph.hpp>

#include <algorithm>
#include <deque>
#include <numeric>

namespace rainbow {

namespace {

void check_label(std::string_view label)
{
    if (label.empty())
        throw InvalidInput("empty vertex label");
    if (label.find('|') != std::string_view::npos)
        throw InvalidInput("vertex label '" + std::string(label) + "' contains reserved character '|'");
}

} // namespace

VertexId Graph::Builder::add_vertex(std::string label)
{
    check_label(label);
    auto id = static_cast<VertexId>(labels_.size());
    auto [it, inserted] = index_.emplace(label, id);
    if (!inserted)
        throw InvalidInput("duplicate vertex label '" + label + "'");
    labels_.push_back(std::move(label));
    return id;
}

EdgeId Graph::Builder::add_edge(VertexId a, VertexId b)
{
    auto n = static_cast<VertexId>(labels_.size());
    if (a < 0 || b < 0 || a >= n || b >= n)
        throw InvalidInput("edge endpoint out of range");
    if (a == b)
        throw InvalidInput("self-loop at '" + labels_[a] + "'");
    if (labels_[b] < labels_[a])
        std::swap(a, b);
    edges_.emplace_back(a, b);
    return static_cast<EdgeId>(edges_.size() - 1);
}

EdgeId Graph::Builder::add_edge(std::string_view a, std::string_view b)
{
    auto find = [&](std::string_view l) {
        auto it = index_.find(std::string(l));
        if (it == index_.end())
            throw InvalidInput("edge endpoint '" + std::string(l) + "' is not a declared vertex");
        return it->second;
    };
    return add_edge(find(a), find(b));
}

bool Graph::Builder::has_vertex(std::string_view label) const
{
    return index_.contains(std::string(label));
}

Graph Graph::Builder::finish() &&
{
    Graph g;
    g.labels_ = std::move(labels_);
    g.index_ = std::move(index_);
    g.endpoints_ = std::move(edges_);

    auto n = g.labels_.size();
    std::vector<std::size_t> degree(n + 1, 0);
    for (auto [a, b] : g.endpoints_) {
        ++degree[a];
        ++degree[b];
    }
    g.offsets_.assign(n + 1, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.offsets_[v + 1] = g.offsets_[v] + degree[v];

    std::vector<std::pair<VertexId, EdgeId>> slots(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (EdgeId e = 0; e < static_cast<EdgeId>(g.endpoints_.size()); ++e) {
        auto [a, b] = g.endpoints_[e];
        slots[fill[a]++] = {b, e};
        slots[fill[b]++] = {a, e};
    }
    g.adjacency_.resize(slots.size());
    g.adjacency_edges_.resize(slots.size());
    for (std::size_t v = 0; v < n; ++v) {
        auto first = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
        auto last = slots.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
        std::sort(first, last);
        for (auto it = first; it != last; ++it) {
            if (it != first && std::prev(it)->first == it->first)
                throw InvalidInput("duplicate edge " + g.labels_[v] + "-" + g.labels_[it->first]);
            auto pos = static_cast<std::size_t>(it - slots.begin());
            g.adjacency_[pos] = it->first;
            g.adjacency_edges_[pos] = it->second;
        }
    }
    return g;
}

std::optional<VertexId> Graph::find_vertex(std::string_view label) const
{
    auto it = index_.find(std::string(label));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

VertexId Graph::vertex(std::string_view label) const
{
    auto v = find_vertex(label);
    if (!v)
        throw InvalidInput("unknown vertex '" + std::string(label) + "'");
    return *v;
}

std::span<const VertexId> Graph::neighbors(VertexId v) const
{
    return {adjacency_.data() + offsets_.at(v), offsets_.at(v + 1) - offsets_.at(v)};
}

std::span<const EdgeId> Graph::incident_edges(VertexId v) const
{
    return {adjacency_edges_.data() + offsets_.at(v), offsets_.at(v + 1) - offsets_.at(v)};
}

std::optional<EdgeId> Graph::find_edge(VertexId a, VertexId b) const
{
    if (a < 0 || b < 0 || a >= num_vertices() || b >= num_vertices() || a == b)
        return std::nullopt;
    if (degree(a) > degree(b))
        std::swap(a, b);
    auto nbrs = neighbors(a);
    auto it = std::lower_bound(nbrs.begin(), nbrs.end(), b);
    if (it == nbrs.end() || *it != b)
        return std::nullopt;
    return incident_edges(a)[static_cast<std::size_t>(it - nbrs.begin())];
}

std::string Graph::edge_key(EdgeId e) const
{
    auto [a, b] = endpoints(e);
    return labels_[a] + "|" + labels_[b];
}

Graph build_graph(const std::vector<std::string> &vertices,
                  const std::vector<std::pair<std::string, std::string>> &edges)
{
    Graph::Builder builder;
    for (const auto &v : vertices)
        builder.add_vertex(v);
    for (const auto &[a, b] : edges)
        builder.add_edge(a, b);
    return std::move(builder).finish();
}

std::vector<int> bfs_distances(const Graph &g, VertexId source)
{
    std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
    std::deque<VertexId> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        auto v = queue.front();
        queue.pop_front();
        for (auto w : g.neighbors(v))
            if (dist[w] < 0) {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

std::optional<int> diameter(const Graph &g)
{
    int best = 0;
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        auto dist = bfs_distances(g, v);
        for (int d : dist) {
            if (d < 0)
                return std::nullopt;
            best = std::max(best, d);
        }
    }
    return best;
}

bool is_connected(const Graph &g)
{
    if (g.num_vertices() == 0)
        return true;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

bool is_complete(const Graph &g)
{
    auto n = static_cast<long long>(g.num_vertices());
    return static_cast<long long>(g.num_edges()) == n * (n - 1) / 2;
}

int local_vertex_connectivity(const Graph &g, VertexId u, VertexId v)
{
    // Split every vertex x into x_in = 2x and x_out = 2x+1 joined by a unit arc;
    // the endpoints get unbounded internal capacity.
    const int n = g.num_vertices();
    const int big = n + 1;
    struct Arc {
        int to;
        int cap;
    };
    std::vector<Arc> arcs;
    std::vector<std::vector<int>> out(static_cast<std::size_t>(2 * n));
    auto add_arc = [&](int a, int b, int cap) {
        out[a].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({b, cap});
        out[b].push_back(static_cast<int>(arcs.size()));
        arcs.push_back({a, 0});
    };
    for (VertexId x = 0; x < n; ++x)
        add_arc(2 * x, 2 * x + 1, (x == u || x == v) ? big : 1);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.endpoints(e);
        add_arc(2 * a + 1, 2 * b, 1);
        add_arc(2 * b + 1, 2 * a, 1);
    }

    const int source = 2 * u + 1;
    const int sink = 2 * v;
    int flow = 0;
    while (true) {
        std::vector<int> via(static_cast<std::size_t>(2 * n), -1);
        std::deque<int> queue{source};
        via[source] = -2;
        while (!queue.empty() && via[sink] == -1) {
            int x = queue.front();
            queue.pop_front();
            for (int a : out[x])
                if (arcs[a].cap > 0 && via[arcs[a].to] == -1) {
                    via[arcs[a].to] = a;
                    queue.push_back(arcs[a].to);
                }
        }
        if (via[sink] == -1)
            break;
        for (int x = sink; x != source;) {
            int a = via[x];
            arcs[a].cap -= 1;
            arcs[a ^ 1].cap += 1;
            x = arcs[a ^ 1].to;
        }
        ++flow;
    }
    return flow;
}

int vertex_connectivity(const Graph &g)
{
    if (g.num_vertices() < 2)
        throw InvalidInput("vertex connectivity needs at least two vertices");
    if (!is_connected(g))
        throw InvalidInput("vertex connectivity of a disconnected graph");
    if (is_complete(g))
        return g.num_vertices() - 1;
    int best = g.num_vertices() - 1;
    for (VertexId u = 0; u < g.num_vertices(); ++u)
        for (VertexId v = u + 1; v < g.num_vertices(); ++v)
            if (!g.adjacent(u, v))
                best = std::min(best, local_vertex_connectivity(g, u, v));
    return best;
}

void validate_pairs(const Graph &g, const PairList &pairs, bool require_nonadjacent)
{
    PairList sorted;
    sorted.reserve(pairs.size());
    for (auto p : pairs) {
        if (p.u < 0 || p.v >= g.num_vertices())
            throw InvalidInput("pair refers to a vertex outside the graph");
        if (p.u == p.v)
            throw InvalidInput("pair {" + g.label(p.u) + "," + g.label(p.v) + "} has equal endpoints");
        if (require_nonadjacent && g.adjacent(p.u, p.v))
            throw InvalidInput("pair {" + g.label(p.u) + "," + g.label(p.v) + "} is adjacent");
        sorted.push_back(p);
    }
    std::sort(sorted.begin(), sorted.end());
    auto dup = std::adjacent_find(sorted.begin(), sorted.end());
    if (dup != sorted.end())
        throw InvalidInput("duplicate pair {" + g.label(dup->u) + "," + g.label(dup->v) + "}");
}

PairList make_pair_list(const Graph &g, const std::vector<std::pair<std::string, std::string>> &pairs,
                        bool require_nonadjacent)
{
    PairList out;
    out.reserve(pairs.size());
    for (const auto &[a, b] : pairs) {
        auto u = g.vertex(a);
        auto v = g.vertex(b);
        if (u == v)
            throw InvalidInput("pair {" + a + "," + b + "} has equal endpoints");
        out.emplace_back(u, v);
    }
    validate_pairs(g, out, require_nonadjacent);
    return out;
}

PairList all_pairs(const Graph &g)
{
    PairList out;
    auto n = g.num_vertices();
    out.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2);
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v)
            out.emplace_back(u, v);
    return out;
}

std::vector<VertexId> common_neighbors(const Graph &g, VertexId a, VertexId b)
{
    auto na = g.neighbors(a);
    auto nb = g.neighbors(b);
    std::vector<VertexId> out;
    std::set_intersection(na.begin(), na.end(), nb.begin(), nb.end(), std::back_inserter(out));
    return out;
}

} // namespace rainbow
