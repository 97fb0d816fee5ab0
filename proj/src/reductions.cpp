#include <rainbow/reductions.hpp>

#include <algorithm>
#include <set>
#include <unordered_map>

namespace rainbow {

namespace {

// Builds a later-stage graph on top of an earlier instance. The earlier
// vertices and edges keep their ids, order, roles and provenance.
class StageBuilder {
public:
    StageBuilder(const ReducedInstance &source, std::string stage) : stage_(std::move(stage))
    {
        const Graph &g = source.graph;
        for (VertexId v = 0; v < g.num_vertices(); ++v) {
            builder_.add_vertex(g.label(v));
            labels_.push_back(g.label(v));
            roles_.push_back(source.roles[v]);
            provenance_.push_back(source.provenance[v]);
        }
        for (EdgeId e = 0; e < g.num_edges(); ++e) {
            auto [a, b] = g.endpoints(e);
            builder_.add_edge(a, b);
        }
    }

    VertexId add(std::string label, const char *role, std::vector<std::string> anchors)
    {
        while (builder_.has_vertex(label))
            label += '\'';
        roles_.emplace_back(role);
        provenance_.push_back(Provenance{stage_, std::move(anchors)});
        labels_.push_back(label);
        return builder_.add_vertex(std::move(label));
    }

    [[nodiscard]] const std::string &label(VertexId v) const { return labels_[v]; }

    void connect(VertexId a, VertexId b) { builder_.add_edge(a, b); }

    ReducedInstance finish(Stage stage, int k, PairList pairs) &&
    {
        ReducedInstance inst;
        inst.stage = stage;
        inst.k = k;
        inst.graph = std::move(builder_).finish();
        inst.pairs = std::move(pairs);
        inst.roles = std::move(roles_);
        inst.provenance = std::move(provenance_);
        return inst;
    }

private:
    std::string stage_;
    Graph::Builder builder_;
    std::vector<std::string> labels_;
    std::vector<std::string> roles_;
    std::vector<Provenance> provenance_;
};

void require_stage(const ReducedInstance &inst, Stage stage)
{
    if (inst.stage != stage)
        throw InvalidInput("expected a " + to_string(stage) + " instance, got " + to_string(inst.stage));
}

std::string pair_name(const Graph &g, VertexPair p)
{
    return "{" + g.label(p.u) + "," + g.label(p.v) + "}";
}

// Color a coloring of a prefix-extended graph inherits from its source.
TotalColoring copy_prefix(const Graph &target, const TotalColoring &chi, int palette)
{
    TotalColoring out(target, palette, 0);
    std::copy(chi.vertex_colors.begin(), chi.vertex_colors.end(), out.vertex_colors.begin());
    std::copy(chi.edge_colors.begin(), chi.edge_colors.end(), out.edge_colors.begin());
    return out;
}

TotalColoring restrict_prefix(const Graph &source, const TotalColoring &chi)
{
    TotalColoring out(source, chi.palette, 0);
    std::copy_n(chi.vertex_colors.begin(), source.num_vertices(), out.vertex_colors.begin());
    std::copy_n(chi.edge_colors.begin(), source.num_edges(), out.edge_colors.begin());
    return out;
}

void require_three_colors(const Graph &g, const TotalColoring &chi)
{
    validate_coloring(g, chi);
    if (chi.palette != 3)
        throw InvalidInput("expected a 3-coloring, got palette " + std::to_string(chi.palette));
}

// Permutation of {0,1,2} sending the given colors to 0 and 1; the rest fill in ascending order.
std::vector<Color> role_permutation(std::optional<Color> to_zero, std::optional<Color> to_one)
{
    std::vector<Color> perm(3, -1);
    std::vector<bool> taken(3, false);
    if (to_zero) {
        perm[*to_zero] = 0;
        taken[0] = true;
    }
    if (to_one) {
        perm[*to_one] = 1;
        taken[1] = true;
    }
    Color next = 0;
    for (Color c = 0; c < 3; ++c) {
        if (perm[c] >= 0)
            continue;
        while (taken[next])
            ++next;
        perm[c] = next;
        taken[next] = true;
    }
    return perm;
}

std::optional<Color> class_color(const TotalColoring &chi, const std::vector<OrientedEdge> &cls)
{
    if (cls.empty())
        return std::nullopt;
    return chi.edge(cls.front().edge);
}

} // namespace

std::string to_string(Stage stage)
{
    switch (stage) {
    case Stage::P3:
        return "p3";
    case Stage::P2:
        return "p2";
    case Stage::P1:
        return "p1";
    }
    return "p3";
}

Stage parse_stage(std::string_view text)
{
    if (text == "p3")
        return Stage::P3;
    if (text == "p2")
        return Stage::P2;
    if (text == "p1")
        return Stage::P1;
    throw InvalidInput("unknown stage '" + std::string(text) + "'");
}

void validate_instance(const ReducedInstance &inst)
{
    const auto n = static_cast<std::size_t>(inst.graph.num_vertices());
    if (inst.k < 1)
        throw InvalidInput("k must be at least 1");
    if (inst.roles.size() != n || inst.provenance.size() != n)
        throw InvalidInput("role map or provenance does not cover every vertex");
    validate_pairs(inst.graph, inst.pairs, inst.stage != Stage::P1);
    validate_partial(inst.graph, inst.partial);
    if (inst.stage == Stage::P1 && !inst.pairs.empty())
        throw InvalidInput("a p1 instance carries no pair set");
    if (inst.stage != Stage::P3 && !inst.partial.empty())
        throw InvalidInput("only p3 instances carry a partial coloring");
}

ReducedInstance make_instance(Stage stage, Graph g, PairList pairs, PartialEdgeColoring partial, int k)
{
    ReducedInstance inst;
    inst.stage = stage;
    inst.k = k;
    inst.roles.assign(static_cast<std::size_t>(g.num_vertices()), role::original);
    inst.provenance.assign(static_cast<std::size_t>(g.num_vertices()), Provenance{"input", {}});
    inst.graph = std::move(g);
    inst.pairs = std::move(pairs);
    inst.partial = std::move(partial);
    validate_instance(inst);
    return inst;
}

// ---------------------------------------------------------------------------

Color clique_pair_color(int k, int a, int b)
{
    const int side = k + 1;
    bool same_block = a / side == b / side;
    bool same_column = a % side == b % side;
    return (same_block || same_column) ? 0 : 1;
}

CliqueColoring two_color_clique(int k)
{
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    const int side = k + 1;
    Graph::Builder builder;
    for (int i = 1; i <= side; ++i)
        for (int l = 1; l <= side; ++l)
            builder.add_vertex("v(" + std::to_string(i) + "," + std::to_string(l) + ")");
    const int n = side * side;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            builder.add_edge(a, b);

    CliqueColoring out;
    out.graph = std::move(builder).finish();
    out.coloring = TotalColoring(out.graph, 2, 0);
    for (EdgeId e = 0; e < out.graph.num_edges(); ++e) {
        auto [a, b] = out.graph.endpoints(e);
        out.coloring.edge_colors[e] = clique_pair_color(k, a, b);
    }
    return out;
}

// ---------------------------------------------------------------------------

P2ToP1Reduction reduce_p2_to_p1(const ReducedInstance &p2)
{
    require_stage(p2, Stage::P2);
    validate_instance(p2);
    const Graph &g = p2.graph;
    if (g.num_vertices() < 2)
        throw InvalidInput("Problem 2 instances need at least two vertices");
    if (p2.pairs.empty())
        throw InvalidInput("Problem 2 instances need a nonempty pair set");

    const int k = p2.k;
    const int block = (k + 1) * (k + 1);
    const int n = g.num_vertices();

    P2ToP1Reduction r;
    r.source = p2;
    r.layout.source_vertices = n;
    r.layout.source_edges = g.num_edges();

    StageBuilder sb(p2, "p1");
    r.layout.vertex_gadgets.resize(static_cast<std::size_t>(n));
    for (VertexId v = 0; v < n; ++v)
        for (int i = 1; i <= block; ++i)
            r.layout.vertex_gadgets[v].push_back(
                sb.add("x(" + g.label(v) + "," + std::to_string(i) + ")", role::vertex_gadget, {g.label(v)}));

    std::set<VertexPair> in_p(p2.pairs.begin(), p2.pairs.end());
    for (VertexId u = 0; u < n; ++u)
        for (VertexId v = u + 1; v < n; ++v) {
            VertexPair pair(u, v);
            if (in_p.contains(pair))
                continue;
            P2ToP1Layout::PairGadget gadget;
            gadget.pair = pair;
            gadget.first = g.label(u) < g.label(v) ? u : v;
            gadget.second = gadget.first == u ? v : u;
            const auto &a = g.label(gadget.first);
            const auto &b = g.label(gadget.second);
            for (int i = 1; i <= block; ++i)
                gadget.members.push_back(
                    sb.add("x(" + a + "," + b + "," + std::to_string(i) + ")", role::pair_gadget, {a, b}));
            r.layout.pair_gadgets.push_back(std::move(gadget));
        }

    for (VertexId v = 0; v < n; ++v)
        for (auto x : r.layout.vertex_gadgets[v])
            sb.connect(v, x);
    for (const auto &gadget : r.layout.pair_gadgets)
        for (auto x : gadget.members) {
            sb.connect(gadget.first, x);
            sb.connect(gadget.second, x);
        }
    const int total = n + block * (n + static_cast<int>(r.layout.pair_gadgets.size()));
    for (VertexId x = n; x < total; ++x)
        for (VertexId y = x + 1; y < total; ++y)
            sb.connect(x, y);

    r.target = std::move(sb).finish(Stage::P1, k, {});
    return r;
}

P2ToP1Reduction reduce_p2_to_p1(const Graph &g, const PairList &p, int k)
{
    return reduce_p2_to_p1(make_instance(Stage::P2, g, p, {}, k));
}

TotalColoring lift_coloring_p2_to_p1(const P2ToP1Reduction &r, const TotalColoring &chi, const VerifyOptions &options)
{
    const Graph &g = r.source.graph;
    const Graph &big = r.target.graph;
    require_three_colors(g, chi);
    auto pre = check_rainbow_k_connected(g, chi, r.source.k, ColoringMode::Total, r.source.pairs, options);
    if (!pre.connected)
        throw InvalidInput("coloring leaves pair " + pair_name(g, *pre.first_failure) +
                           " without k disjoint total-rainbow paths");

    const int n = r.layout.source_vertices;
    const int k = r.source.k;
    // Gadget index and member position per new vertex; vertex gadgets first.
    std::vector<int> gadget(static_cast<std::size_t>(big.num_vertices()), -1);
    std::vector<int> member(static_cast<std::size_t>(big.num_vertices()), -1);
    for (VertexId v = 0; v < n; ++v)
        for (std::size_t i = 0; i < r.layout.vertex_gadgets[v].size(); ++i) {
            gadget[r.layout.vertex_gadgets[v][i]] = v;
            member[r.layout.vertex_gadgets[v][i]] = static_cast<int>(i);
        }
    for (std::size_t pg = 0; pg < r.layout.pair_gadgets.size(); ++pg)
        for (std::size_t i = 0; i < r.layout.pair_gadgets[pg].members.size(); ++i) {
            auto x = r.layout.pair_gadgets[pg].members[i];
            gadget[x] = n + static_cast<int>(pg);
            member[x] = static_cast<int>(i);
        }

    TotalColoring out = copy_prefix(big, chi, 3);
    for (VertexId x = n; x < big.num_vertices(); ++x)
        out.vertex_colors[x] = 2;
    for (EdgeId e = r.layout.source_edges; e < big.num_edges(); ++e) {
        auto [a, b] = big.endpoints(e);
        if (a >= n && b >= n) {
            out.edge_colors[e] = gadget[a] == gadget[b] ? clique_pair_color(k, member[a], member[b]) : 0;
            continue;
        }
        VertexId orig = a < n ? a : b;
        VertexId x = a < n ? b : a;
        if (gadget[x] < n) {
            out.edge_colors[e] = 1;
        }
        else {
            const auto &pg = r.layout.pair_gadgets[gadget[x] - n];
            out.edge_colors[e] = orig == pg.first ? 0 : 1;
        }
    }

    auto post = check_rainbow_k_connected(big, out, k, ColoringMode::Total, options);
    if (!post.connected)
        throw ReductionFalsified("lifted Problem 1 coloring fails at pair " + pair_name(big, *post.first_failure));
    return out;
}

TotalColoring restrict_coloring_p1_to_p2(const P2ToP1Reduction &r, const TotalColoring &chi_prime,
                                         const VerifyOptions &options)
{
    const Graph &big = r.target.graph;
    require_three_colors(big, chi_prime);
    auto pre = check_rainbow_k_connected(big, chi_prime, r.target.k, ColoringMode::Total, options);
    if (!pre.connected)
        throw InvalidInput("coloring of G' fails at pair " + pair_name(big, *pre.first_failure));

    TotalColoring out = restrict_prefix(r.source.graph, chi_prime);
    auto post = check_rainbow_k_connected(r.source.graph, out, r.source.k, ColoringMode::Total, r.source.pairs,
                                          options);
    if (!post.connected)
        throw ReductionFalsified("restricted coloring fails pair " +
                                 pair_name(r.source.graph, *post.first_failure) + " of P");
    return out;
}

// ---------------------------------------------------------------------------

P3ToP2Reduction reduce_p3_to_p2(const ReducedInstance &p3)
{
    require_stage(p3, Stage::P3);
    validate_instance(p3);
    const Graph &g = p3.graph;
    const int k = p3.k;

    P3ToP2Reduction r;
    r.source = p3;
    r.layout.source_vertices = g.num_vertices();
    r.layout.source_edges = g.num_edges();

    StageBuilder sb(p3, "p2");
    r.layout.hub = sb.add("c", role::hub, {});
    r.layout.b1 = sb.add("b1", role::b1, {});
    r.layout.b2 = sb.add("b2", role::b2, {});

    auto add_gadgets = [&](const std::vector<OrientedEdge> &cls, int which) {
        for (const auto &oe : cls) {
            P3ToP2Layout::EdgeGadget eg{};
            eg.edge = oe;
            eg.cls = which;
            const auto &e1 = g.label(oe.first);
            const auto &e2 = g.label(oe.second);
            const std::string tag = "[" + e1 + "~" + e2 + "]";
            for (int j = 0; j < 2; ++j) {
                const std::string sup = "^" + std::to_string(j + 1);
                eg.c[j] = sb.add("c" + sup + tag, role::edge_c, {e1, e2});
                eg.d[j] = sb.add("d" + sup + tag, role::edge_d, {e1, e2});
                eg.f[j] = sb.add("f" + sup + tag, role::edge_f, {e1, e2});
            }
            r.layout.edge_gadgets.push_back(eg);
        }
    };
    add_gadgets(p3.partial.class1, 1);
    add_gadgets(p3.partial.class2, 2);

    sb.connect(r.layout.b1, r.layout.hub);
    sb.connect(r.layout.b2, r.layout.hub);
    for (const auto &eg : r.layout.edge_gadgets) {
        const std::array<VertexId, 2> ends{eg.edge.first, eg.edge.second};
        for (int j = 0; j < 2; ++j) {
            sb.connect(r.layout.hub, eg.c[j]);
            sb.connect(eg.c[j], eg.f[j]);
            sb.connect(eg.c[j], ends[j]);
            sb.connect(eg.d[j], ends[j]);
        }
    }

    PairList pairs = p3.pairs;
    pairs.emplace_back(r.layout.b1, r.layout.b2);
    for (const auto &eg : r.layout.edge_gadgets) {
        const VertexId b = eg.cls == 1 ? r.layout.b1 : r.layout.b2;
        for (int j = 0; j < 2; ++j)
            pairs.emplace_back(b, eg.c[j]);
    }
    for (const auto &eg : r.layout.edge_gadgets) {
        const std::array<VertexId, 2> ends{eg.edge.first, eg.edge.second};
        for (int j = 0; j < 2; ++j) {
            pairs.emplace_back(eg.f[j], r.layout.hub);
            pairs.emplace_back(eg.f[j], ends[j]);
            pairs.emplace_back(eg.d[j], eg.c[j]);
            pairs.emplace_back(eg.d[j], ends[1 - j]);
        }
    }

    // Length-two detours g(u,v,t), 2 <= t <= k, for every pair added on top of Q.
    for (std::size_t i = p3.pairs.size(); k >= 2 && i < pairs.size(); ++i) {
        P3ToP2Layout::Helper h;
        h.pair = pairs[i];
        h.first = sb.label(h.pair.u) < sb.label(h.pair.v) ? h.pair.u : h.pair.v;
        h.second = h.first == h.pair.u ? h.pair.v : h.pair.u;
        const std::string fa = sb.label(h.first);
        const std::string fb = sb.label(h.second);
        for (int t = 2; t <= k; ++t) {
            VertexId x = sb.add("g(" + fa + "," + fb + "," + std::to_string(t) + ")", role::pair_helper, {fa, fb});
            h.members.push_back(x);
            sb.connect(h.first, x);
            sb.connect(x, h.second);
        }
        r.layout.helpers.push_back(std::move(h));
    }

    r.target = std::move(sb).finish(Stage::P2, k, std::move(pairs));
    validate_pairs(r.target.graph, r.target.pairs, true);
    return r;
}

TotalColoring lift_coloring_p3_to_p2(const P3ToP2Reduction &r, const TotalColoring &chi, const VerifyOptions &options)
{
    const Graph &g = r.source.graph;
    const Graph &big = r.target.graph;
    require_three_colors(g, chi);
    auto pre = check_problem3(g, r.source.pairs, r.source.partial, chi, r.source.k, options);
    if (!pre.ok)
        throw InvalidInput("coloring fails the Problem 3 check: " + pre.reason);

    auto perm = role_permutation(class_color(chi, r.source.partial.class1), class_color(chi, r.source.partial.class2));
    TotalColoring base = permute_colors(chi, perm);
    TotalColoring out = copy_prefix(big, base, 3);
    for (VertexId x = r.layout.source_vertices; x < big.num_vertices(); ++x)
        out.vertex_colors[x] = 2;
    auto set = [&](VertexId a, VertexId b, Color c) { out.edge_colors[*big.find_edge(a, b)] = c; };

    set(r.layout.b1, r.layout.hub, 1);
    set(r.layout.b2, r.layout.hub, 0);
    for (const auto &eg : r.layout.edge_gadgets) {
        const Color own = eg.cls == 1 ? 0 : 1;
        const std::array<VertexId, 2> ends{eg.edge.first, eg.edge.second};
        for (int j = 0; j < 2; ++j) {
            set(r.layout.hub, eg.c[j], own);
            set(eg.c[j], ends[j], own);
            set(eg.c[j], eg.f[j], 1 - own);
            // Smallest color keeping d - e^j - e^{3-j} and d - e^j - c^j rainbow.
            Color d = 0;
            while (d == base.vertex(ends[j]) || d == own || d == base.edge(eg.edge.edge))
                ++d;
            set(eg.d[j], ends[j], d);
        }
    }
    for (const auto &h : r.layout.helpers)
        for (auto x : h.members) {
            set(h.first, x, 0);
            set(x, h.second, 1);
        }

    auto post = check_rainbow_k_connected(big, out, r.target.k, ColoringMode::Total, r.target.pairs, options);
    if (!post.connected)
        throw ReductionFalsified("lifted Problem 2 coloring fails at pair " + pair_name(big, *post.first_failure));
    return out;
}

RestrictedP3Coloring restrict_coloring_p2_to_p3(const P3ToP2Reduction &r, const TotalColoring &chi_prime,
                                                const VerifyOptions &options)
{
    const Graph &big = r.target.graph;
    require_three_colors(big, chi_prime);
    auto pre = check_rainbow_k_connected(big, chi_prime, r.target.k, ColoringMode::Total, r.target.pairs, options);
    if (!pre.connected)
        throw InvalidInput("coloring of G' fails pair " + pair_name(big, *pre.first_failure) + " of P");

    RestrictedP3Coloring out;
    out.class1_color = chi_prime.edge(*big.find_edge(r.layout.b2, r.layout.hub));
    out.class2_color = chi_prime.edge(*big.find_edge(r.layout.b1, r.layout.hub));
    if (out.class1_color == out.class2_color)
        throw ReductionFalsified("b1c and b2c share a color although {b1,b2} is served");
    out.coloring = restrict_prefix(r.source.graph, chi_prime);
    out.normalized = permute_colors(out.coloring, role_permutation(out.class1_color, out.class2_color));

    auto post = check_problem3(r.source.graph, r.source.pairs, r.source.partial, out.normalized, r.source.k, options);
    if (!post.ok)
        throw ReductionFalsified("restricted coloring fails the Problem 3 check: " + post.reason);
    for (const auto &oe : r.source.partial.class1)
        if (out.normalized.edge(oe.edge) != 0)
            throw ReductionFalsified("E1 edge '" + r.source.graph.edge_key(oe.edge) + "' does not carry chi'(b2c)");
    for (const auto &oe : r.source.partial.class2)
        if (out.normalized.edge(oe.edge) != 1)
            throw ReductionFalsified("E2 edge '" + r.source.graph.edge_key(oe.edge) + "' does not carry chi'(b1c)");
    return out;
}

// ---------------------------------------------------------------------------

SatReduction reduce_sat_to_p3(const CnfFormula &phi, int k)
{
    validate_formula(phi);
    if (k < 1)
        throw InvalidInput("k must be at least 1");
    const int m = static_cast<int>(phi.clauses.size());
    const int n = phi.num_variables;

    SatReduction r;
    r.phi = phi;
    Graph::Builder builder;
    std::vector<std::string> roles;
    std::vector<Provenance> provenance;
    auto add = [&](std::string label, const char *role, std::vector<std::string> anchors) {
        roles.emplace_back(role);
        provenance.push_back(Provenance{"p3", std::move(anchors)});
        return builder.add_vertex(std::move(label));
    };

    for (int t = 1; t <= m; ++t)
        r.layout.clauses.push_back(add("c" + std::to_string(t), role::clause, {}));
    r.layout.clause_helpers.resize(static_cast<std::size_t>(m));
    for (int t = 1; t <= m; ++t)
        for (int j = 2; j <= k; ++j)
            r.layout.clause_helpers[t - 1].push_back(
                add("c" + std::to_string(t) + "^" + std::to_string(j), role::clause_helper, {"c" + std::to_string(t)}));
    for (int i = 1; i <= n; ++i)
        r.layout.variables.push_back(add("x" + std::to_string(i), role::variable, {}));
    r.layout.s = add("s", role::source, {});

    // Clause edges first, deduplicated; sign conflicts on one edge are rejected.
    struct ClauseEdge {
        VertexId clause;
        VertexId variable;
        bool positive;
    };
    std::vector<ClauseEdge> clause_edges;
    for (int t = 0; t < m; ++t)
        for (const auto &lit : phi.clauses[t]) {
            VertexId x = r.layout.variables[lit.variable - 1];
            VertexId c = r.layout.clauses[t];
            auto it = std::find_if(clause_edges.begin(), clause_edges.end(),
                                   [&](const ClauseEdge &ce) { return ce.clause == c && ce.variable == x; });
            if (it == clause_edges.end()) {
                clause_edges.push_back({c, x, lit.positive});
            }
            else if (it->positive != lit.positive) {
                throw InvalidInput("clause " + std::to_string(t + 1) + " contains x" + std::to_string(lit.variable) +
                                   " with both signs");
            }
        }
    for (const auto &ce : clause_edges)
        builder.add_edge(ce.clause, ce.variable);
    for (auto x : r.layout.variables)
        builder.add_edge(r.layout.s, x);
    for (int t = 0; t < m; ++t)
        for (auto h : r.layout.clause_helpers[t]) {
            builder.add_edge(r.layout.s, h);
            builder.add_edge(h, r.layout.clauses[t]);
        }

    ReducedInstance inst;
    inst.stage = Stage::P3;
    inst.k = k;
    inst.graph = std::move(builder).finish();
    for (std::size_t i = 0; i < clause_edges.size(); ++i) {
        OrientedEdge oe{static_cast<EdgeId>(i), clause_edges[i].variable, clause_edges[i].clause};
        (clause_edges[i].positive ? inst.partial.class1 : inst.partial.class2).push_back(oe);
    }
    for (auto c : r.layout.clauses)
        inst.pairs.emplace_back(r.layout.s, c);
    inst.roles = std::move(roles);
    inst.provenance = std::move(provenance);
    validate_instance(inst);
    r.target = std::move(inst);
    return r;
}

TotalColoring assignment_to_coloring(const SatReduction &r, const Assignment &a)
{
    if (a.values.size() != static_cast<std::size_t>(r.phi.num_variables))
        throw InvalidInput("assignment does not cover every variable");
    if (!evaluate(r.phi, a))
        throw InvalidInput("assignment does not satisfy the formula");

    const Graph &g = r.target.graph;
    TotalColoring chi(g, 3, 2);
    for (const auto &oe : r.target.partial.class1)
        chi.edge_colors[oe.edge] = 0;
    for (const auto &oe : r.target.partial.class2)
        chi.edge_colors[oe.edge] = 1;
    for (std::size_t t = 0; t < r.layout.clauses.size(); ++t)
        for (auto h : r.layout.clause_helpers[t]) {
            chi.edge_colors[*g.find_edge(r.layout.s, h)] = 0;
            chi.edge_colors[*g.find_edge(h, r.layout.clauses[t])] = 1;
        }
    for (std::size_t i = 0; i < r.layout.variables.size(); ++i)
        chi.edge_colors[*g.find_edge(r.layout.s, r.layout.variables[i])] = a.values[i] ? 1 : 0;

    auto verdict = check_problem3(g, r.target.pairs, r.target.partial, chi, r.target.k);
    if (!verdict.ok)
        throw ReductionFalsified("forward SAT coloring fails the Problem 3 check: " + verdict.reason);
    return chi;
}

Assignment coloring_to_assignment(const SatReduction &r, const TotalColoring &chi)
{
    const Graph &g = r.target.graph;
    require_three_colors(g, chi);
    auto verdict = check_problem3(g, r.target.pairs, r.target.partial, chi, r.target.k);
    if (!verdict.ok)
        throw InvalidInput("coloring fails the Problem 3 check: " + verdict.reason);

    // Rename colors so that E1 reads 0 and E2 reads 1.
    auto perm = role_permutation(class_color(chi, r.target.partial.class1), class_color(chi, r.target.partial.class2));
    const int n = r.phi.num_variables;
    Assignment a;
    a.values.assign(static_cast<std::size_t>(n), false);
    a.unconstrained.assign(static_cast<std::size_t>(n), false);
    for (int i = 0; i < n; ++i) {
        VertexId x = r.layout.variables[i];
        // Only s reaches a variable that no clause mentions.
        if (g.degree(x) == 1) {
            a.unconstrained[i] = true;
            continue;
        }
        Color edge = perm[chi.edge(*g.find_edge(r.layout.s, x))];
        Color vertex = perm[chi.vertex(x)];
        std::set<Color> binary;
        for (Color c : {edge, vertex})
            if (c != 2)
                binary.insert(c);
        if (binary.size() == 1)
            a.values[i] = *binary.begin() == 1;
        else
            a.unconstrained[i] = true;
    }
    if (!evaluate(r.phi, a))
        throw ReductionFalsified("assignment extracted from a valid coloring does not satisfy the formula");
    return a;
}

ComposedReduction reduce_sat_to_trc3(const CnfFormula &phi, int k)
{
    ComposedReduction out;
    out.sat = reduce_sat_to_p3(phi, k);
    out.p2 = reduce_p3_to_p2(out.sat.target);
    out.p1 = reduce_p2_to_p1(out.p2.target);
    return out;
}

std::vector<VertexId> outside_common_neighbors(const Graph &g, VertexPair pair, int limit)
{
    auto common = common_neighbors(g, pair.u, pair.v);
    std::erase_if(common, [&](VertexId w) { return w < limit; });
    return common;
}

} // namespace rainbow
