#include <rainbow/verify.hpp>

#include "packing.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace rainbow {

namespace {

bool counts_edges(ColoringMode mode) { return mode != ColoringMode::VertexOnly; }
bool counts_vertices(ColoringMode mode) { return mode != ColoringMode::EdgeOnly; }

void check_endpoint(const Graph &g, VertexId x)
{
    if (x < 0 || x >= g.num_vertices())
        throw InvalidInput("vertex id outside the graph");
}

// Depth-first enumeration of rainbow u-v paths, pruning as soon as a prefix repeats a color.
class RainbowPathWalker {
public:
    RainbowPathWalker(const Graph &g, const TotalColoring &c, VertexId target, ColoringMode mode, int max_len)
        : g_(g), c_(c), target_(target), mode_(mode), max_len_(max_len),
          on_path_(static_cast<std::size_t>(g.num_vertices()), 0), count_(static_cast<std::size_t>(c.palette), 0)
    {
    }

    std::vector<Path> run(VertexId source)
    {
        out_.clear();
        path_.assign(1, source);
        on_path_[source] = 1;
        extend(source);
        on_path_[source] = 0;
        return std::move(out_);
    }

private:
    bool take(Color x)
    {
        return count_[static_cast<std::size_t>(x)]++ == 0;
    }
    void give_back(Color x) { --count_[static_cast<std::size_t>(x)]; }

    void extend(VertexId at)
    {
        auto nbrs = g_.neighbors(at);
        auto edges = g_.incident_edges(at);
        const int len = static_cast<int>(path_.size());
        for (std::size_t i = 0; i < nbrs.size(); ++i) {
            VertexId w = nbrs[i];
            if (on_path_[w])
                continue;
            if (w != target_ && len >= max_len_)
                continue;
            bool ok = true;
            if (counts_edges(mode_))
                ok = take(c_.edge(edges[i])) && ok;
            if (w == target_) {
                if (ok) {
                    path_.push_back(w);
                    out_.push_back(Path{path_});
                    path_.pop_back();
                }
            }
            else {
                if (counts_vertices(mode_))
                    ok = take(c_.vertex(w)) && ok;
                if (ok) {
                    on_path_[w] = 1;
                    path_.push_back(w);
                    extend(w);
                    path_.pop_back();
                    on_path_[w] = 0;
                }
                if (counts_vertices(mode_))
                    give_back(c_.vertex(w));
            }
            if (counts_edges(mode_))
                give_back(c_.edge(edges[i]));
        }
    }

    const Graph &g_;
    const TotalColoring &c_;
    VertexId target_;
    ColoringMode mode_;
    int max_len_;
    std::vector<char> on_path_;
    std::vector<int> count_;
    std::vector<VertexId> path_;
    std::vector<Path> out_;
};

bool two_path_is_rainbow(const TotalColoring &c, EdgeId first, VertexId middle, EdgeId second, ColoringMode mode)
{
    switch (mode) {
    case ColoringMode::EdgeOnly:
        return c.edge(first) != c.edge(second);
    case ColoringMode::VertexOnly:
        return true;
    case ColoringMode::Total:
        return c.edge(first) != c.edge(second) && c.edge(first) != c.vertex(middle) &&
               c.edge(second) != c.vertex(middle);
    }
    return false;
}

// Paths of at most two edges are pairwise internally disjoint, so counting suffices.
DisjointPaths short_disjoint_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v, int k,
                                   ColoringMode mode)
{
    DisjointPaths result;
    if (auto direct = g.find_edge(u, v)) {
        result.witness.push_back(Path{{u, v}});
        if (static_cast<int>(result.witness.size()) >= k) {
            result.found = true;
            return result;
        }
    }
    VertexId small = u;
    VertexId large = v;
    if (g.degree(small) > g.degree(large))
        std::swap(small, large);
    auto nbrs = g.neighbors(small);
    auto edges = g.incident_edges(small);
    auto other = g.neighbors(large);
    auto other_edges = g.incident_edges(large);
    auto cursor = other.begin();
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
        VertexId w = nbrs[i];
        cursor = std::lower_bound(cursor, other.end(), w);
        if (cursor == other.end())
            break;
        if (*cursor != w)
            continue;
        EdgeId e_small = edges[i];
        EdgeId e_large = other_edges[static_cast<std::size_t>(cursor - other.begin())];
        if (!two_path_is_rainbow(c, e_small, w, e_large, mode))
            continue;
        result.witness.push_back(Path{{u, w, v}});
        if (static_cast<int>(result.witness.size()) >= k) {
            result.found = true;
            return result;
        }
    }
    return result;
}

template <typename PairAt>
ConnectivityVerdict check_pairs(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                                std::size_t count, PairAt pair_at, const VerifyOptions &options)
{
    validate_coloring(g, c);
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    auto ok = [&](VertexPair p) { return has_k_disjoint_rainbow_paths(g, c, p.u, p.v, k, mode, options); };

    ConnectivityVerdict verdict;
    const int workers = std::max(1, options.workers);
    if (workers == 1 || count < 1024) {
        for (std::size_t i = 0; i < count; ++i) {
            auto p = pair_at(i);
            if (!ok(p)) {
                verdict.connected = false;
                verdict.first_failure = p;
                return verdict;
            }
        }
        return verdict;
    }

    constexpr std::size_t chunk = 256;
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> first_bad{count};
    auto work = [&] {
        while (true) {
            std::size_t begin = next.fetch_add(chunk);
            if (begin >= count || begin >= first_bad.load())
                return;
            std::size_t end = std::min(count, begin + chunk);
            for (std::size_t i = begin; i < end && i < first_bad.load(); ++i)
                if (!ok(pair_at(i))) {
                    auto seen = first_bad.load();
                    while (i < seen && !first_bad.compare_exchange_weak(seen, i)) {
                    }
                    break;
                }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();
    if (first_bad.load() < count) {
        verdict.connected = false;
        verdict.first_failure = pair_at(first_bad.load());
    }
    return verdict;
}

} // namespace

std::optional<int> max_rainbow_path_length(int t, ColoringMode mode)
{
    if (t < 1)
        throw InvalidInput("palette size must be at least 1");
    switch (mode) {
    case ColoringMode::Total:
        return (t + 1) / 2;
    case ColoringMode::EdgeOnly:
        return t;
    case ColoringMode::VertexOnly:
        return std::nullopt;
    }
    return std::nullopt;
}

int path_length_cap(const Graph &g, int t, ColoringMode mode)
{
    auto bound = max_rainbow_path_length(t, mode).value_or(t + 1);
    return std::max(1, std::min(bound, g.num_vertices() - 1));
}

bool is_rainbow_path(const Graph &g, const TotalColoring &c, const Path &p, ColoringMode mode)
{
    if (!is_valid_path(g, p))
        throw InvalidInput("not a path of the graph: " + std::string(p.vertices.empty() ? "<empty>" : describe(g, p)));
    std::vector<Color> colors;
    for (std::size_t i = 0; i + 1 < p.vertices.size(); ++i) {
        if (counts_edges(mode))
            colors.push_back(c.edge(*g.find_edge(p.vertices[i], p.vertices[i + 1])));
        if (counts_vertices(mode) && i > 0)
            colors.push_back(c.vertex(p.vertices[i]));
    }
    std::sort(colors.begin(), colors.end());
    return std::adjacent_find(colors.begin(), colors.end()) == colors.end();
}

std::vector<Path> enumerate_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v,
                                          ColoringMode mode, int max_len)
{
    check_endpoint(g, u);
    check_endpoint(g, v);
    if (u == v)
        throw InvalidInput("path endpoints must differ");
    if (max_len < 1)
        return {};
    return RainbowPathWalker(g, c, v, mode, max_len).run(u);
}

DisjointPaths find_disjoint_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v, int k,
                                          ColoringMode mode, const VerifyOptions &options)
{
    check_endpoint(g, u);
    check_endpoint(g, v);
    if (u == v)
        throw InvalidInput("path endpoints must differ");
    if (k < 1)
        throw InvalidInput("k must be at least 1");

    if (k == 1 && g.adjacent(u, v))
        return {true, {Path{{u, v}}}};

    int cap = options.max_len ? *options.max_len : path_length_cap(g, c.palette, mode);
    if (cap <= 2) {
        if (cap < 2) {
            if (g.adjacent(u, v) && k == 1)
                return {true, {Path{{u, v}}}};
            return {};
        }
        return short_disjoint_paths(g, c, u, v, k, mode);
    }

    auto paths = enumerate_rainbow_paths(g, c, u, v, mode, cap);
    std::vector<std::vector<VertexId>> internals;
    internals.reserve(paths.size());
    for (const auto &p : paths)
        internals.emplace_back(p.vertices.begin() + 1, p.vertices.end() - 1);
    std::vector<const std::vector<VertexId> *> refs;
    for (const auto &x : internals)
        refs.push_back(&x);
    std::vector<int> chosen;
    detail::DisjointPacker packer(g.num_vertices());
    DisjointPaths result;
    if (packer.pack(refs, k, &chosen)) {
        result.found = true;
        std::sort(chosen.begin(), chosen.end());
        for (int i : chosen)
            result.witness.push_back(paths[static_cast<std::size_t>(i)]);
    }
    return result;
}

bool has_k_disjoint_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v, int k,
                                  ColoringMode mode, const VerifyOptions &options)
{
    return find_disjoint_rainbow_paths(g, c, u, v, k, mode, options).found;
}

ConnectivityVerdict check_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                                              const VerifyOptions &options)
{
    const auto n = static_cast<std::size_t>(g.num_vertices());
    // Row starts for the (u < v) pair order.
    std::vector<std::size_t> row_start(n + 1, 0);
    for (std::size_t u = 0; u < n; ++u)
        row_start[u + 1] = row_start[u] + (n - u - 1);
    auto pair_at = [&](std::size_t i) {
        auto row = static_cast<std::size_t>(std::upper_bound(row_start.begin(), row_start.end(), i) -
                                            row_start.begin()) - 1;
        auto col = row + 1 + (i - row_start[row]);
        return VertexPair(static_cast<VertexId>(row), static_cast<VertexId>(col));
    };
    return check_pairs(g, c, k, mode, row_start[n], pair_at, options);
}

ConnectivityVerdict check_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                                              const PairList &pairs, const VerifyOptions &options)
{
    validate_pairs(g, pairs, false);
    return check_pairs(
        g, c, k, mode, pairs.size(), [&](std::size_t i) { return pairs[i]; }, options);
}

bool is_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                            const VerifyOptions &options)
{
    return check_rainbow_k_connected(g, c, k, mode, options).connected;
}

bool is_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode, const PairList &pairs,
                            const VerifyOptions &options)
{
    return check_rainbow_k_connected(g, c, k, mode, pairs, options).connected;
}

Problem3Verdict check_problem3(const Graph &g, const PairList &q, const PartialEdgeColoring &partial,
                               const TotalColoring &chi, int k, const VerifyOptions &options)
{
    validate_partial(g, partial);
    validate_pairs(g, q, true);
    validate_coloring(g, chi);

    // Color shared by a class; nullopt for an empty class, -1 when mixed.
    auto class_color = [&](const std::vector<OrientedEdge> &cls) -> std::optional<Color> {
        std::optional<Color> color;
        for (const auto &oe : cls) {
            if (color && *color != chi.edge(oe.edge))
                return -1;
            color = chi.edge(oe.edge);
        }
        return color;
    };
    auto c1 = class_color(partial.class1);
    auto c2 = class_color(partial.class2);
    if (c1 == -1)
        return {false, "pre-colored class E1 is not monochromatic"};
    if (c2 == -1)
        return {false, "pre-colored class E2 is not monochromatic"};
    if (c1 && c2 && *c1 == *c2)
        return {false, "classes E1 and E2 share a color"};

    for (const auto *cls : {&partial.class1, &partial.class2})
        for (const auto &oe : *cls) {
            auto [a, b] = g.endpoints(oe.edge);
            if (chi.edge(oe.edge) == chi.vertex(a) || chi.edge(oe.edge) == chi.vertex(b))
                return {false, "edge '" + g.edge_key(oe.edge) + "' repeats an endpoint color"};
        }

    auto verdict = check_rainbow_k_connected(g, chi, k, ColoringMode::Total, q, options);
    if (!verdict.connected) {
        auto p = *verdict.first_failure;
        return {false, "pair {" + g.label(p.u) + "," + g.label(p.v) + "} is not total-rainbow " +
                           std::to_string(k) + "-connected"};
    }
    return {};
}

bool satisfies_problem3(const Graph &g, const PairList &q, const PartialEdgeColoring &partial,
                        const TotalColoring &chi, int k, const VerifyOptions &options)
{
    return check_problem3(g, q, partial, chi, k, options).ok;
}

} // namespace rainbow
