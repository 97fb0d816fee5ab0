#pragma once

#include <rainbow/cnf.hpp>
#include <rainbow/coloring.hpp>
#include <rainbow/graph.hpp>
#include <rainbow/reductions.hpp>
#include <rainbow/solve.hpp>

#include <json.hpp>

#include <string>

namespace rainbow::io {

using nlohmann::json;

/// {"vertices":[...],"edges":[["a","b"],...]}, edges label-sorted.
json to_json(const Graph &g);
Graph graph_from_json(const json &j);

/// {"palette":t,"vertex_colors":{"a":0,...},"edge_colors":{"a|b":2,...}}.
json to_json(const Graph &g, const TotalColoring &c);
/// Every vertex and edge must be present. Throws InvalidInput otherwise.
TotalColoring coloring_from_json(const Graph &g, const json &j);

/// [["a","b"],...] with each pair label-sorted.
json pairs_to_json(const Graph &g, const PairList &pairs);
PairList pairs_from_json(const Graph &g, const json &j, bool require_nonadjacent);

/// {"E1":[...],"E2":[...],"endpoint_order":{"a|b":["e1","e2"],...}}.
json to_json(const Graph &g, const PartialEdgeColoring &partial);
PartialEdgeColoring partial_from_json(const Graph &g, const json &j);

/// The reduced-instance bundle with graph, pairs, partial, roles, k, stage and provenance.
json to_json(const ReducedInstance &inst);
ReducedInstance instance_from_json(const json &j);

json to_json(const Assignment &a);
Assignment assignment_from_json(const json &j);

json to_json(const BoundsReport &report);
json to_json(const Graph &g, const ParameterResult &result);
/// Solver outcome; elapsed time is included only when with_timing is set.
json to_json(const Graph &g, const SearchOutcome &outcome, bool with_timing);

std::string read_file(const std::string &path);
void write_file(const std::string &path, const std::string &content);
json read_json_file(const std::string &path);

} // namespace rainbow::io
