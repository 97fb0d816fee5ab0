#include <rainbow/solve.hpp>

#include "packing.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace rainbow {

namespace {

using Clock = std::chrono::steady_clock;

bool counts_edges(ColoringMode mode) { return mode != ColoringMode::VertexOnly; }
bool counts_vertices(ColoringMode mode) { return mode != ColoringMode::EdgeOnly; }

struct Candidate {
    int pair;
    std::vector<int> elements;
    std::vector<VertexId> internal;
};

// Static description of one search problem; shared read-only by all workers.
struct Model {
    const Graph *graph = nullptr;
    int k = 1;
    int palette = 1;
    int num_elements = 0;
    ColoringMode mode = ColoringMode::Total;
    PairList pairs;
    std::vector<Candidate> paths;
    std::vector<std::vector<int>> pair_paths;
    std::vector<std::vector<int>> element_paths;
    std::vector<std::vector<int>> differ;
    std::vector<Color> frozen;
    // Branching order over unfrozen, constrained elements.
    std::vector<int> order;
    bool symmetry_breaking = true;
};

// Simple u-v paths of at most max_len edges, in lexicographic order.
void collect_paths(const Graph &g, VertexId u, VertexId v, int max_len,
                   const std::function<void(const std::vector<VertexId> &)> &emit)
{
    std::vector<char> on_path(static_cast<std::size_t>(g.num_vertices()), 0);
    std::vector<VertexId> path{u};
    on_path[u] = 1;
    std::function<void(VertexId)> extend = [&](VertexId at) {
        for (auto w : g.neighbors(at)) {
            if (on_path[w])
                continue;
            if (w == v) {
                path.push_back(w);
                emit(path);
                path.pop_back();
            }
            else if (static_cast<int>(path.size()) < max_len) {
                on_path[w] = 1;
                path.push_back(w);
                extend(w);
                path.pop_back();
                on_path[w] = 0;
            }
        }
    };
    extend(u);
}

Model build_model(const Graph &g, const ColoringProblem &problem, const SearchOptions &options)
{
    if (problem.k < 1)
        throw InvalidInput("k must be at least 1");
    if (problem.palette < 1)
        throw InvalidInput("palette size must be at least 1");
    if (g.num_vertices() < 2)
        throw InvalidInput("a coloring question needs at least two vertices");

    Model m;
    m.graph = &g;
    m.k = problem.k;
    m.palette = problem.palette;
    m.mode = problem.mode;
    m.symmetry_breaking = options.symmetry_breaking;
    const int n = g.num_vertices();
    m.num_elements = n + g.num_edges();

    if (problem.pairs) {
        validate_pairs(g, *problem.pairs, false);
        m.pairs = *problem.pairs;
    }
    else {
        m.pairs = all_pairs(g);
    }

    m.frozen.assign(static_cast<std::size_t>(m.num_elements), -1);
    for (const auto &[element, color] : problem.frozen) {
        int x = element_index(g, element);
        if (color < 0 || color >= m.palette)
            throw InvalidInput("frozen color outside the palette at '" + element_name(g, x) + "'");
        if (m.frozen[x] >= 0 && m.frozen[x] != color)
            throw InvalidInput("conflicting frozen colors at '" + element_name(g, x) + "'");
        m.frozen[x] = color;
    }
    m.differ.resize(static_cast<std::size_t>(m.num_elements));
    for (const auto &[a, b] : problem.must_differ) {
        int x = element_index(g, a);
        int y = element_index(g, b);
        if (x == y)
            throw InvalidInput("an element cannot differ from itself");
        m.differ[x].push_back(y);
        m.differ[y].push_back(x);
    }

    const int cap = options.max_len ? *options.max_len : path_length_cap(g, m.palette, m.mode);
    m.pair_paths.resize(m.pairs.size());
    m.element_paths.resize(static_cast<std::size_t>(m.num_elements));
    for (std::size_t pi = 0; pi < m.pairs.size(); ++pi) {
        auto [u, v] = m.pairs[pi];
        collect_paths(g, u, v, cap, [&](const std::vector<VertexId> &path) {
            Candidate cand;
            cand.pair = static_cast<int>(pi);
            for (std::size_t i = 0; i + 1 < path.size(); ++i) {
                if (counts_edges(m.mode))
                    cand.elements.push_back(n + *g.find_edge(path[i], path[i + 1]));
                if (i > 0) {
                    cand.internal.push_back(path[i]);
                    if (counts_vertices(m.mode))
                        cand.elements.push_back(path[i]);
                }
            }
            // A path with more elements than colors can never be rainbow.
            if (static_cast<int>(cand.elements.size()) > m.palette)
                return;
            int id = static_cast<int>(m.paths.size());
            for (int x : cand.elements)
                m.element_paths[x].push_back(id);
            m.pair_paths[pi].push_back(id);
            m.paths.push_back(std::move(cand));
        });
    }

    for (int x = 0; x < m.num_elements; ++x)
        if (m.frozen[x] < 0 && (!m.element_paths[x].empty() || !m.differ[x].empty()))
            m.order.push_back(x);
    std::stable_sort(m.order.begin(), m.order.end(), [&](int a, int b) {
        return m.element_paths[a].size() > m.element_paths[b].size();
    });
    return m;
}

struct Shared {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> stop{false};
    std::optional<std::uint64_t> max_nodes;
    std::optional<Clock::time_point> deadline;
    std::atomic<bool> exhausted{false};
};

class Search {
public:
    Search(const Model &m, Shared &shared)
        : m_(m), shared_(shared), packer_(m.graph->num_vertices()),
          color_(static_cast<std::size_t>(m.num_elements), -1),
          counts_(m.paths.size() * static_cast<std::size_t>(m.palette), 0), clash_(m.paths.size(), 0),
          used_(static_cast<std::size_t>(m.palette), 0)
    {
        for (const auto &pp : m.pair_paths)
            alive_.push_back(static_cast<int>(pp.size()));
    }

    // Applies frozen colors and checks every pair against its full candidate set.
    bool initialise()
    {
        for (std::size_t i = 0; i < m_.pairs.size(); ++i)
            if (!pair_feasible(static_cast<int>(i)))
                return false;
        bool ok = true;
        for (int x = 0; x < m_.num_elements; ++x)
            if (m_.frozen[x] >= 0)
                ok = assign(x, m_.frozen[x]) && ok;
        return ok;
    }

    // Replays a prefix of branching decisions; false if it is inconsistent.
    // Either way undo_prefix() restores the previous state.
    bool replay(const std::vector<Color> &prefix)
    {
        replayed_ = 0;
        for (std::size_t d = 0; d < prefix.size(); ++d) {
            ++replayed_;
            if (!assign(m_.order[d], prefix[d]))
                return false;
        }
        return true;
    }

    void undo_prefix()
    {
        for (std::size_t d = replayed_; d-- > 0;)
            unassign(m_.order[d]);
        replayed_ = 0;
    }

    // Depth-first search from the given depth. True when a full coloring was found.
    bool dfs(std::size_t depth)
    {
        if (shared_.stop.load(std::memory_order_relaxed))
            return false;
        if (!tick())
            return false;
        if (depth == m_.order.size())
            return true;
        int x = m_.order[depth];
        for (Color c : candidate_colors(x)) {
            bool ok = assign(x, c);
            if (ok && dfs(depth + 1))
                return true;
            unassign(x);
            if (shared_.stop.load(std::memory_order_relaxed))
                return false;
        }
        return false;
    }

    // Consistent prefixes of the given depth, in search order.
    void collect_prefixes(std::size_t depth, std::vector<Color> &prefix,
                          std::vector<std::vector<Color>> &out)
    {
        if (prefix.size() == depth || prefix.size() == m_.order.size()) {
            out.push_back(prefix);
            return;
        }
        int x = m_.order[prefix.size()];
        for (Color c : candidate_colors(x)) {
            bool ok = assign(x, c);
            if (ok) {
                prefix.push_back(c);
                collect_prefixes(depth, prefix, out);
                prefix.pop_back();
            }
            unassign(x);
        }
    }

    TotalColoring coloring() const
    {
        const Graph &g = *m_.graph;
        TotalColoring c(g, m_.palette, 0);
        for (int x = 0; x < m_.num_elements; ++x) {
            Color col = color_[x] >= 0 ? color_[x] : 0;
            if (x < g.num_vertices())
                c.vertex_colors[x] = col;
            else
                c.edge_colors[x - g.num_vertices()] = col;
        }
        return c;
    }

    std::uint64_t local_nodes() const { return nodes_; }

private:
    bool tick()
    {
        ++nodes_;
        auto total = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
        if (shared_.max_nodes && total > *shared_.max_nodes) {
            shared_.exhausted = true;
            shared_.stop = true;
            return false;
        }
        if (shared_.deadline && (nodes_ & 255) == 0 && Clock::now() > *shared_.deadline) {
            shared_.exhausted = true;
            shared_.stop = true;
            return false;
        }
        return true;
    }

    std::vector<Color> candidate_colors(int x) const
    {
        std::vector<Color> allowed;
        bool opened_new = false;
        for (Color c = 0; c < m_.palette; ++c) {
            if (used_[c] > 0 || !m_.symmetry_breaking) {
                allowed.push_back(c);
            }
            else if (!opened_new) {
                allowed.push_back(c);
                opened_new = true;
            }
        }
        // Prefer colors that kill the fewest live candidate paths.
        std::vector<std::pair<int, Color>> scored;
        for (Color c : allowed) {
            bool clash = false;
            for (int y : m_.differ[x])
                clash = clash || color_[y] == c;
            if (clash)
                continue;
            int score = 0;
            for (int p : m_.element_paths[x])
                if (clash_[p] == 0 && counts_[index(p, c)] > 0)
                    ++score;
            scored.emplace_back(score, c);
        }
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<Color> out;
        out.reserve(scored.size());
        for (auto [score, c] : scored)
            out.push_back(c);
        return out;
    }

    std::size_t index(int path, Color c) const
    {
        return static_cast<std::size_t>(path) * static_cast<std::size_t>(m_.palette) + static_cast<std::size_t>(c);
    }

    bool pair_feasible(int pair)
    {
        if (alive_[pair] < m_.k)
            return false;
        if (m_.k == 1)
            return true;
        std::vector<const std::vector<VertexId> *> live;
        for (int p : m_.pair_paths[pair])
            if (clash_[p] == 0)
                live.push_back(&m_.paths[p].internal);
        return packer_.pack(live, m_.k);
    }

    // Always fully applied, so unassign can mirror it regardless of the result.
    bool assign(int x, Color c)
    {
        color_[x] = c;
        ++used_[c];
        touched_.clear();
        for (int p : m_.element_paths[x])
            if (counts_[index(p, c)]++ > 0 && clash_[p]++ == 0) {
                --alive_[m_.paths[p].pair];
                touched_.push_back(m_.paths[p].pair);
            }
        for (int y : m_.differ[x])
            if (color_[y] == c)
                return false;
        std::sort(touched_.begin(), touched_.end());
        touched_.erase(std::unique(touched_.begin(), touched_.end()), touched_.end());
        for (int pair : touched_)
            if (!pair_feasible(pair))
                return false;
        return true;
    }

    void unassign(int x)
    {
        Color c = color_[x];
        for (int p : m_.element_paths[x])
            if (--counts_[index(p, c)] > 0 && --clash_[p] == 0)
                ++alive_[m_.paths[p].pair];
        --used_[c];
        color_[x] = -1;
    }

    const Model &m_;
    Shared &shared_;
    detail::DisjointPacker packer_;
    std::vector<Color> color_;
    std::vector<int> counts_;
    std::vector<int> clash_;
    std::vector<int> alive_;
    std::vector<int> used_;
    std::vector<int> touched_;
    std::uint64_t nodes_ = 0;
    std::size_t replayed_ = 0;
};

void verify_found(const Graph &g, const ColoringProblem &problem, const SearchOptions &options,
                  const TotalColoring &c)
{
    VerifyOptions vo;
    vo.max_len = options.max_len;
    bool ok = problem.pairs ? is_rainbow_k_connected(g, c, problem.k, problem.mode, *problem.pairs, vo)
                            : is_rainbow_k_connected(g, c, problem.k, problem.mode, vo);
    for (const auto &[element, color] : problem.frozen) {
        int x = element_index(g, element);
        Color got = x < g.num_vertices() ? c.vertex(x) : c.edge(x - g.num_vertices());
        ok = ok && got == color;
    }
    for (const auto &[a, b] : problem.must_differ) {
        int x = element_index(g, a);
        int y = element_index(g, b);
        auto at = [&](int e) { return e < g.num_vertices() ? c.vertex(e) : c.edge(e - g.num_vertices()); };
        ok = ok && at(x) != at(y);
    }
    if (!ok)
        throw std::logic_error("solver produced a coloring the verifier rejects");
}

} // namespace

std::string to_string(SearchStatus status)
{
    switch (status) {
    case SearchStatus::Found:
        return "found";
    case SearchStatus::Impossible:
        return "impossible";
    case SearchStatus::Exhausted:
        return "exhausted";
    }
    return "impossible";
}

SearchOutcome decide_colorable(const Graph &g, const ColoringProblem &problem, const SearchOptions &options)
{
    auto start = Clock::now();
    Model model = build_model(g, problem, options);

    Shared shared;
    shared.max_nodes = options.budget.max_nodes;
    if (options.budget.max_time)
        shared.deadline = start + *options.budget.max_time;

    SearchOutcome outcome;
    auto finish = [&](SearchStatus status, std::optional<TotalColoring> coloring) {
        outcome.status = status;
        outcome.coloring = std::move(coloring);
        outcome.nodes = shared.nodes.load();
        outcome.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        if (outcome.coloring)
            verify_found(g, problem, options, *outcome.coloring);
        return outcome;
    };

    Search root(model, shared);
    if (!root.initialise())
        return finish(SearchStatus::Impossible, std::nullopt);

    const int workers = std::max(1, options.workers);
    if (workers == 1) {
        if (root.dfs(0))
            return finish(SearchStatus::Found, root.coloring());
        return finish(shared.exhausted ? SearchStatus::Exhausted : SearchStatus::Impossible, std::nullopt);
    }

    // Split the tree at the shallowest depth that yields enough subproblems.
    std::vector<std::vector<Color>> prefixes;
    const std::size_t target = static_cast<std::size_t>(workers) * 8;
    for (std::size_t depth = 1;; ++depth) {
        prefixes.clear();
        std::vector<Color> prefix;
        root.collect_prefixes(depth, prefix, prefixes);
        if (prefixes.size() >= target || depth >= model.order.size() || prefixes.empty())
            break;
    }
    if (prefixes.empty())
        return finish(SearchStatus::Impossible, std::nullopt);

    std::atomic<std::size_t> next{0};
    std::mutex found_mutex;
    std::optional<TotalColoring> found;
    auto work = [&] {
        Search local(model, shared);
        if (!local.initialise())
            return;
        while (!shared.stop.load()) {
            std::size_t i = next.fetch_add(1);
            if (i >= prefixes.size())
                return;
            const auto &prefix = prefixes[i];
            if (local.replay(prefix) && local.dfs(prefix.size())) {
                std::lock_guard lock(found_mutex);
                if (!found)
                    found = local.coloring();
                shared.stop = true;
                return;
            }
            local.undo_prefix();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
        pool.emplace_back(work);
    for (auto &t : pool)
        t.join();

    if (found)
        return finish(SearchStatus::Found, std::move(found));
    return finish(shared.exhausted ? SearchStatus::Exhausted : SearchStatus::Impossible, std::nullopt);
}

SearchOutcome decide_subset_trc3(const Graph &g, const PairList &p, int k, const SearchOptions &options)
{
    validate_pairs(g, p, true);
    ColoringProblem problem;
    problem.k = k;
    problem.palette = 3;
    problem.mode = ColoringMode::Total;
    problem.pairs = p;
    return decide_colorable(g, problem, options);
}

SearchOutcome decide_extension(const Graph &g, const PairList &q, const PartialEdgeColoring &partial, int k,
                               const SearchOptions &options)
{
    validate_partial(g, partial);
    validate_pairs(g, q, true);
    ColoringProblem problem;
    problem.k = k;
    problem.palette = 3;
    problem.mode = ColoringMode::Total;
    problem.pairs = q;
    auto add = [&](const std::vector<OrientedEdge> &cls, Color color) {
        for (const auto &oe : cls) {
            EdgeRef edge(oe.first, oe.second);
            problem.frozen.emplace_back(edge, color);
            problem.must_differ.emplace_back(edge, VertexRef{oe.first});
            problem.must_differ.emplace_back(edge, VertexRef{oe.second});
        }
    };
    add(partial.class1, 0);
    add(partial.class2, 1);
    auto outcome = decide_colorable(g, problem, options);
    if (outcome.coloring && !satisfies_problem3(g, q, partial, *outcome.coloring, k))
        throw std::logic_error("extension search produced a coloring that fails the Problem 3 check");
    return outcome;
}

std::string to_string(Parameter p)
{
    switch (p) {
    case Parameter::Trc:
        return "trc";
    case Parameter::Rc:
        return "rc";
    case Parameter::Rvc:
        return "rvc";
    }
    return "trc";
}

ColoringMode mode_of(Parameter p)
{
    switch (p) {
    case Parameter::Trc:
        return ColoringMode::Total;
    case Parameter::Rc:
        return ColoringMode::EdgeOnly;
    case Parameter::Rvc:
        return ColoringMode::VertexOnly;
    }
    return ColoringMode::Total;
}

ParameterResult connection_number(const Graph &g, int k, Parameter parameter, const SolveOptions &options)
{
    if (g.num_vertices() < 2)
        throw InvalidInput("connection numbers need at least two vertices");
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    int connectivity = vertex_connectivity(g);
    if (k > connectivity)
        throw InvalidInput("k = " + std::to_string(k) + " exceeds the vertex connectivity " +
                           std::to_string(connectivity));

    const int diam = *diameter(g);
    int lower = 1;
    int ceiling = 1;
    switch (parameter) {
    case Parameter::Trc:
        ceiling = g.num_vertices() + g.num_edges();
        if (options.start_from_lower_bound)
            lower = std::max({1, 2 * diam - 1, (k == 1 && !is_complete(g)) ? 3 : 1});
        break;
    case Parameter::Rc:
        ceiling = g.num_edges();
        if (options.start_from_lower_bound)
            lower = diam;
        break;
    case Parameter::Rvc:
        ceiling = g.num_vertices();
        if (options.start_from_lower_bound)
            lower = std::max(1, diam - 1);
        break;
    }

    ParameterResult result;
    result.parameter = parameter;
    result.k = k;
    result.lower = lower;

    auto start = Clock::now();
    SearchOptions search = options.search;
    for (int t = lower; t <= ceiling; ++t) {
        if (options.search.budget.max_time) {
            auto spent = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
            search.budget.max_time = std::max(std::chrono::milliseconds(0), *options.search.budget.max_time - spent);
        }
        if (options.search.budget.max_nodes)
            search.budget.max_nodes = *options.search.budget.max_nodes - std::min(result.nodes,
                                                                                    *options.search.budget.max_nodes);
        ColoringProblem problem;
        problem.k = k;
        problem.palette = t;
        problem.mode = mode_of(parameter);
        auto outcome = decide_colorable(g, problem, search);
        result.nodes += outcome.nodes;
        if (outcome.status == SearchStatus::Found) {
            result.exact = true;
            result.lower = t;
            result.upper = t;
            result.witness = std::move(outcome.coloring);
            break;
        }
        if (outcome.status == SearchStatus::Exhausted) {
            result.lower = t;
            result.upper = ceiling;
            break;
        }
        result.lower = t + 1;
    }
    result.elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
    return result;
}

ParameterResult trc_k(const Graph &g, int k, const SolveOptions &options)
{
    return connection_number(g, k, Parameter::Trc, options);
}

ParameterResult rc_k(const Graph &g, int k, const SolveOptions &options)
{
    return connection_number(g, k, Parameter::Rc, options);
}

ParameterResult rvc_k(const Graph &g, int k, const SolveOptions &options)
{
    return connection_number(g, k, Parameter::Rvc, options);
}

BoundsReport bounds_report(const Graph &g, int k, bool compute_rc_rvc, const SolveOptions &options)
{
    if (g.num_vertices() < 2)
        throw InvalidInput("bounds need at least two vertices");
    auto diam = diameter(g);
    if (!diam)
        throw InvalidInput("bounds need a connected graph");

    BoundsReport report;
    report.k = k;
    report.diameter = *diam;
    report.complete = is_complete(g);
    report.lb_diameter = 2 * *diam - 1;
    if (!report.complete && k == 1)
        report.lb_noncomplete = 3;
    if (k >= 2)
        report.lb_multi_path = 3;
    report.combined = std::max(report.lb_diameter, report.lb_noncomplete.value_or(1));

    if (compute_rc_rvc) {
        report.rc = rc_k(g, k, options);
        report.rvc = rvc_k(g, k, options);
        if (report.rvc->lower >= 2)
            report.lb_rvc = 5;
        report.combined = std::max({report.combined, report.rc->lower, report.rvc->lower, report.lb_rvc.value_or(1)});
        if (report.rc->exact && report.rc->value() == 2)
            report.pinned = 3;
    }
    return report;
}

} // namespace rainbow
