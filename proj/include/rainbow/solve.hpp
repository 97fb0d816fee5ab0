#pragma once

#include <rainbow/coloring.hpp>
#include <rainbow/graph.hpp>
#include <rainbow/verify.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace rainbow {

/// Limits on one search. Hitting either gives SearchStatus::Exhausted.
struct SearchBudget {
    std::optional<std::chrono::milliseconds> max_time;
    std::optional<std::uint64_t> max_nodes;
};

enum class SearchStatus { Found, Impossible, Exhausted };

std::string to_string(SearchStatus status);

struct SearchOutcome {
    SearchStatus status = SearchStatus::Impossible;
    std::optional<TotalColoring> coloring;
    std::uint64_t nodes = 0;
    double elapsed_ms = 0.0;
};

struct SearchOptions {
    SearchBudget budget;
    /// Color j may appear only after every unfrozen-palette color below it.
    bool symmetry_breaking = true;
    /// Worker threads splitting the top of the search tree. The decision does
    /// not depend on this; the witness coloring is deterministic only with one worker.
    int workers = 1;
    /// Overrides the palette-derived cap on candidate path length.
    std::optional<int> max_len;
};

/// A coloring question: is there a t-coloring making the required pairs
/// rainbow k-connected under mode, honoring frozen colors and side constraints?
struct ColoringProblem {
    int k = 1;
    int palette = 3;
    ColoringMode mode = ColoringMode::Total;
    /// nullopt means every pair of distinct vertices.
    std::optional<PairList> pairs;
    std::vector<std::pair<Element, Color>> frozen;
    /// Element pairs that must receive different colors.
    std::vector<std::pair<Element, Element>> must_differ;
};

/// Exact backtracking search. Found colorings are re-checked by the verifier
/// before being returned.
SearchOutcome decide_colorable(const Graph &g, const ColoringProblem &problem, const SearchOptions &options = {});

/// Problem 2 with a palette of 3: a total coloring making every pair of p
/// total-rainbow k-connected. Pairs of p must be nonadjacent.
SearchOutcome decide_subset_trc3(const Graph &g, const PairList &p, int k, const SearchOptions &options = {});

/// Problem 3: extend the pre-coloring (E1 -> 0, E2 -> 1) to a 3-total-coloring
/// that keeps each pre-colored edge apart from its endpoint colors and makes
/// the pairs of q total-rainbow k-connected.
SearchOutcome decide_extension(const Graph &g, const PairList &q, const PartialEdgeColoring &partial, int k,
                               const SearchOptions &options = {});

enum class Parameter { Trc, Rc, Rvc };

std::string to_string(Parameter p);
ColoringMode mode_of(Parameter p);

struct ParameterResult {
    Parameter parameter = Parameter::Trc;
    int k = 1;
    /// True when [lower, upper] collapsed to a single proven value.
    bool exact = false;
    int lower = 1;
    /// nullopt when no coloring was found before the budget ran out.
    std::optional<int> upper;
    std::optional<TotalColoring> witness;
    std::uint64_t nodes = 0;
    double elapsed_ms = 0.0;

    [[nodiscard]] int value() const { return *upper; }
};

struct SolveOptions {
    SearchOptions search;
    /// Start the palette scan at the cheap structural lower bound rather than at 1.
    bool start_from_lower_bound = true;
};

/// Smallest palette making g rainbow k-connected in the parameter's mode.
/// Throws InvalidInput when k exceeds the vertex connectivity or g is trivial.
ParameterResult connection_number(const Graph &g, int k, Parameter parameter, const SolveOptions &options = {});

ParameterResult trc_k(const Graph &g, int k, const SolveOptions &options = {});
ParameterResult rc_k(const Graph &g, int k, const SolveOptions &options = {});
ParameterResult rvc_k(const Graph &g, int k, const SolveOptions &options = {});

struct BoundsReport {
    int k = 1;
    int diameter = 0;
    bool complete = false;
    /// 2 diam - 1.
    int lb_diameter = 1;
    /// 3 for non-complete graphs with k = 1, otherwise absent.
    std::optional<int> lb_noncomplete;
    /// 3 for k >= 2. Reported for comparison only; it does not enter `combined`.
    std::optional<int> lb_multi_path;
    std::optional<ParameterResult> rc;
    std::optional<ParameterResult> rvc;
    /// 5 when rvc_k >= 2 was established.
    std::optional<int> lb_rvc;
    /// Max of the applicable lower bounds.
    int combined = 1;
    /// trc_k when rc_k = 2 pins it to 3.
    std::optional<int> pinned;
};

/// Structural lower bounds on trc_k, optionally with exact rc_k and rvc_k.
/// Throws InvalidInput for a disconnected or single-vertex graph.
BoundsReport bounds_report(const Graph &g, int k, bool compute_rc_rvc, const SolveOptions &options = {});

} // namespace rainbow
