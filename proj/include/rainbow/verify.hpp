#pragma once

#include <rainbow/coloring.hpp>
#include <rainbow/graph.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rainbow {

/// Longest path (in edges) that can be rainbow under a palette of t colors:
/// Total floor((t+1)/2), EdgeOnly t. VertexOnly has no edge-count bound of
/// its own and yields nullopt (internal vertices alone are limited to t).
std::optional<int> max_rainbow_path_length(int t, ColoringMode mode);

/// max_rainbow_path_length resolved against g: VertexOnly becomes t+1, and
/// everything is clipped at n-1.
int path_length_cap(const Graph &g, int t, ColoringMode mode);

/// Endpoint colors never take part. Throws InvalidInput when p is not a path of g.
bool is_rainbow_path(const Graph &g, const TotalColoring &c, const Path &p, ColoringMode mode);

/// Every simple u-v path with at most max_len edges that is rainbow under
/// mode, in lexicographic order of vertex ids.
std::vector<Path> enumerate_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v,
                                          ColoringMode mode, int max_len);

struct VerifyOptions {
    /// Overrides the palette-derived path length cap.
    std::optional<int> max_len;
    int workers = 1;
};

struct DisjointPaths {
    bool found = false;
    std::vector<Path> witness;
};

/// Searches for k internally vertex-disjoint rainbow u-v paths.
DisjointPaths find_disjoint_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v, int k,
                                          ColoringMode mode, const VerifyOptions &options = {});

bool has_k_disjoint_rainbow_paths(const Graph &g, const TotalColoring &c, VertexId u, VertexId v, int k,
                                  ColoringMode mode, const VerifyOptions &options = {});

struct ConnectivityVerdict {
    bool connected = true;
    /// Smallest failing pair in (u, v) order, independent of worker count.
    std::optional<VertexPair> first_failure;
};

/// Checks every unordered pair of distinct vertices.
ConnectivityVerdict check_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                                              const VerifyOptions &options = {});
/// Checks only the given pairs.
ConnectivityVerdict check_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                                              const PairList &pairs, const VerifyOptions &options = {});

bool is_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode,
                            const VerifyOptions &options = {});
bool is_rainbow_k_connected(const Graph &g, const TotalColoring &c, int k, ColoringMode mode, const PairList &pairs,
                            const VerifyOptions &options = {});

struct Problem3Verdict {
    bool ok = true;
    std::string reason;
};

/// The three extension conditions: the pre-colored classes are each
/// monochromatic with distinct colors (either color may play either role),
/// chi(e) differs from both endpoint colors on every pre-colored edge, and the
/// pairs of q are total-rainbow k-connected.
///
/// Throws InvalidInput when a pre-colored edge is not in g or a pair of q is adjacent.
Problem3Verdict check_problem3(const Graph &g, const PairList &q, const PartialEdgeColoring &partial,
                               const TotalColoring &chi, int k, const VerifyOptions &options = {});

bool satisfies_problem3(const Graph &g, const PairList &q, const PartialEdgeColoring &partial,
                        const TotalColoring &chi, int k, const VerifyOptions &options = {});

} // namespace rainbow
