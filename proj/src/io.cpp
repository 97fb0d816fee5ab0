#include <rainbow/io.hpp>

#include <fstream>
#include <sstream>

namespace rainbow::io {

namespace {

// nlohmann throws its own exception types on shape errors; surface them as input errors.
template <typename F>
auto guarded(const char *what, F &&f) -> decltype(f())
{
    try {
        return f();
    }
    catch (const json::exception &e) {
        throw InvalidInput(std::string("malformed ") + what + ": " + e.what());
    }
}

std::pair<std::string, std::string> label_pair(const json &j)
{
    if (!j.is_array() || j.size() != 2)
        throw InvalidInput("expected a two-element label array, got " + j.dump());
    return {j[0].get<std::string>(), j[1].get<std::string>()};
}

EdgeId edge_by_labels(const Graph &g, const std::string &a, const std::string &b)
{
    auto e = g.find_edge(g.vertex(a), g.vertex(b));
    if (!e)
        throw InvalidInput("'" + a + "|" + b + "' is not an edge");
    return *e;
}

} // namespace

json to_json(const Graph &g)
{
    json edges = json::array();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
        auto [a, b] = g.endpoints(e);
        edges.push_back({g.label(a), g.label(b)});
    }
    return {{"vertices", g.labels()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const json &j)
{
    return guarded("graph", [&] {
        std::vector<std::string> vertices = j.at("vertices").get<std::vector<std::string>>();
        std::vector<std::pair<std::string, std::string>> edges;
        for (const auto &e : j.at("edges"))
            edges.push_back(label_pair(e));
        return build_graph(vertices, edges);
    });
}

json to_json(const Graph &g, const TotalColoring &c)
{
    json vertex_colors = json::object();
    for (VertexId v = 0; v < g.num_vertices(); ++v)
        vertex_colors[g.label(v)] = c.vertex(v);
    json edge_colors = json::object();
    for (EdgeId e = 0; e < g.num_edges(); ++e)
        edge_colors[g.edge_key(e)] = c.edge(e);
    return {{"palette", c.palette}, {"vertex_colors", std::move(vertex_colors)},
            {"edge_colors", std::move(edge_colors)}};
}

TotalColoring coloring_from_json(const Graph &g, const json &j)
{
    return guarded("coloring", [&] {
        TotalColoring c(g, j.at("palette").get<int>(), -1);
        const auto &vc = j.at("vertex_colors");
        const auto &ec = j.at("edge_colors");
        for (auto it = vc.begin(); it != vc.end(); ++it)
            c.vertex_colors[g.vertex(it.key())] = it.value().get<int>();
        for (auto it = ec.begin(); it != ec.end(); ++it) {
            const std::string &key = it.key();
            auto bar = key.find('|');
            if (bar == std::string::npos)
                throw InvalidInput("edge key '" + key + "' lacks a '|' separator");
            c.edge_colors[edge_by_labels(g, key.substr(0, bar), key.substr(bar + 1))] = it.value().get<int>();
        }
        for (VertexId v = 0; v < g.num_vertices(); ++v)
            if (c.vertex(v) < 0)
                throw InvalidInput("vertex '" + g.label(v) + "' has no color");
        for (EdgeId e = 0; e < g.num_edges(); ++e)
            if (c.edge(e) < 0)
                throw InvalidInput("edge '" + g.edge_key(e) + "' has no color");
        validate_coloring(g, c);
        return c;
    });
}

json pairs_to_json(const Graph &g, const PairList &pairs)
{
    json out = json::array();
    for (auto p : pairs) {
        const auto &a = g.label(p.u);
        const auto &b = g.label(p.v);
        out.push_back(a < b ? json{a, b} : json{b, a});
    }
    return out;
}

PairList pairs_from_json(const Graph &g, const json &j, bool require_nonadjacent)
{
    return guarded("pair list", [&] {
        std::vector<std::pair<std::string, std::string>> raw;
        for (const auto &p : j)
            raw.push_back(label_pair(p));
        return make_pair_list(g, raw, require_nonadjacent);
    });
}

json to_json(const Graph &g, const PartialEdgeColoring &partial)
{
    json order = json::object();
    auto side = [&](const std::vector<OrientedEdge> &cls) {
        json out = json::array();
        for (const auto &oe : cls) {
            auto [a, b] = g.endpoints(oe.edge);
            out.push_back({g.label(a), g.label(b)});
            order[g.edge_key(oe.edge)] = {g.label(oe.first), g.label(oe.second)};
        }
        return out;
    };
    json e1 = side(partial.class1);
    json e2 = side(partial.class2);
    return {{"E1", std::move(e1)}, {"E2", std::move(e2)}, {"endpoint_order", std::move(order)}};
}

PartialEdgeColoring partial_from_json(const Graph &g, const json &j)
{
    return guarded("partial coloring", [&] {
        PartialEdgeColoring partial;
        const json empty = json::object();
        const json &order = j.contains("endpoint_order") ? j.at("endpoint_order") : empty;
        auto side = [&](const json &arr, std::vector<OrientedEdge> &cls) {
            for (const auto &item : arr) {
                auto [a, b] = label_pair(item);
                EdgeId e = edge_by_labels(g, a, b);
                auto key = g.edge_key(e);
                if (!order.contains(key))
                    throw InvalidInput("pre-colored edge '" + key + "' has no endpoint order");
                auto [first, second] = label_pair(order.at(key));
                cls.push_back(OrientedEdge{e, g.vertex(first), g.vertex(second)});
            }
        };
        side(j.at("E1"), partial.class1);
        side(j.at("E2"), partial.class2);
        validate_partial(g, partial);
        return partial;
    });
}

json to_json(const ReducedInstance &inst)
{
    const Graph &g = inst.graph;
    json roles = json::object();
    json provenance = json::object();
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
        roles[g.label(v)] = inst.roles[v];
        provenance[g.label(v)] = {{"stage", inst.provenance[v].stage}, {"anchors", inst.provenance[v].anchors}};
    }
    return {{"stage", to_string(inst.stage)},
            {"k", inst.k},
            {"graph", to_json(g)},
            {"pairs", pairs_to_json(g, inst.pairs)},
            {"partial", to_json(g, inst.partial)},
            {"roles", std::move(roles)},
            {"provenance", std::move(provenance)}};
}

ReducedInstance instance_from_json(const json &j)
{
    return guarded("instance bundle", [&] {
        ReducedInstance inst;
        inst.stage = parse_stage(j.at("stage").get<std::string>());
        inst.k = j.at("k").get<int>();
        inst.graph = graph_from_json(j.at("graph"));
        const Graph &g = inst.graph;
        inst.pairs = pairs_from_json(g, j.value("pairs", json::array()), inst.stage != Stage::P1);
        if (j.contains("partial"))
            inst.partial = partial_from_json(g, j.at("partial"));
        inst.roles.assign(static_cast<std::size_t>(g.num_vertices()), role::original);
        inst.provenance.assign(static_cast<std::size_t>(g.num_vertices()), Provenance{"input", {}});
        if (j.contains("roles"))
            for (auto it = j.at("roles").begin(); it != j.at("roles").end(); ++it)
                inst.roles[g.vertex(it.key())] = it.value().get<std::string>();
        if (j.contains("provenance"))
            for (auto it = j.at("provenance").begin(); it != j.at("provenance").end(); ++it)
                inst.provenance[g.vertex(it.key())] =
                    Provenance{it.value().at("stage").get<std::string>(),
                               it.value().at("anchors").get<std::vector<std::string>>()};
        validate_instance(inst);
        return inst;
    });
}

json to_json(const Assignment &a)
{
    json values = json::object();
    json unconstrained = json::array();
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        values["x" + std::to_string(i + 1)] = static_cast<bool>(a.values[i]);
        if (i < a.unconstrained.size() && a.unconstrained[i])
            unconstrained.push_back("x" + std::to_string(i + 1));
    }
    return {{"values", std::move(values)}, {"unconstrained", std::move(unconstrained)}};
}

Assignment assignment_from_json(const json &j)
{
    return guarded("assignment", [&] {
        const auto &values = j.at("values");
        Assignment a;
        a.values.assign(values.size(), false);
        a.unconstrained.assign(values.size(), false);
        for (auto it = values.begin(); it != values.end(); ++it) {
            const auto &key = it.key();
            std::size_t index = 0;
            try {
                if (key.size() < 2 || key[0] != 'x')
                    throw std::invalid_argument(key);
                index = std::stoul(key.substr(1));
            }
            catch (const std::exception &) {
                throw InvalidInput("assignment key '" + key + "' is not of the form x<i>");
            }
            if (index < 1 || index > a.values.size())
                throw InvalidInput("assignment key '" + key + "' out of range");
            a.values[index - 1] = it.value().get<bool>();
        }
        for (const auto &name : j.value("unconstrained", json::array())) {
            auto index = std::stoul(name.get<std::string>().substr(1));
            if (index >= 1 && index <= a.unconstrained.size())
                a.unconstrained[index - 1] = true;
        }
        return a;
    });
}

json to_json(const BoundsReport &report)
{
    json out = {{"k", report.k},
                {"diameter", report.diameter},
                {"complete", report.complete},
                {"lb_diameter", report.lb_diameter},
                {"combined", report.combined}};
    if (report.lb_noncomplete)
        out["lb_noncomplete"] = *report.lb_noncomplete;
    if (report.lb_multi_path)
        out["lb_multi_path"] = *report.lb_multi_path;
    auto param = [](const ParameterResult &r) {
        json p = {{"exact", r.exact}, {"lower", r.lower}};
        if (r.upper)
            p["upper"] = *r.upper;
        return p;
    };
    if (report.rc)
        out["rc"] = param(*report.rc);
    if (report.rvc)
        out["rvc"] = param(*report.rvc);
    if (report.lb_rvc)
        out["lb_rvc"] = *report.lb_rvc;
    if (report.pinned)
        out["pinned_trc"] = *report.pinned;
    return out;
}

json to_json(const Graph &g, const ParameterResult &result)
{
    json out = {{"parameter", to_string(result.parameter)},
                {"k", result.k},
                {"status", result.exact ? "found" : "exhausted"},
                {"lower", result.lower},
                {"nodes", result.nodes}};
    if (result.upper)
        out["upper"] = *result.upper;
    if (result.exact)
        out["value"] = result.value();
    if (result.witness)
        out["coloring"] = to_json(g, *result.witness);
    return out;
}

json to_json(const Graph &g, const SearchOutcome &outcome, bool with_timing)
{
    json out = {{"status", to_string(outcome.status)}, {"nodes", outcome.nodes}};
    if (outcome.coloring)
        out["coloring"] = to_json(g, *outcome.coloring);
    if (with_timing)
        out["elapsed_ms"] = outcome.elapsed_ms;
    return out;
}

std::string read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InvalidInput("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string &path, const std::string &content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InvalidInput("cannot write '" + path + "'");
    out << content;
}

json read_json_file(const std::string &path)
{
    auto text = read_file(path);
    try {
        return json::parse(text);
    }
    catch (const json::parse_error &e) {
        throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
    }
}

} // namespace rainbow::io
