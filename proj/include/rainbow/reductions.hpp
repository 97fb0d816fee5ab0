#pragma once

#include <rainbow/cnf.hpp>
#include <rainbow/coloring.hpp>
#include <rainbow/graph.hpp>
#include <rainbow/verify.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace rainbow {

/// A lifted or restricted witness failed its check. Under a correct reduction
/// this cannot happen, so it is never reported as an ordinary "no".
class ReductionFalsified : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class Stage { P3, P2, P1 };

std::string to_string(Stage stage);
Stage parse_stage(std::string_view text);

namespace role {
inline constexpr const char *original = "original";
inline constexpr const char *source = "s";
inline constexpr const char *clause = "clause";
inline constexpr const char *clause_helper = "clause-helper";
inline constexpr const char *variable = "variable";
inline constexpr const char *hub = "hub";
inline constexpr const char *b1 = "b1";
inline constexpr const char *b2 = "b2";
inline constexpr const char *edge_c = "c_e";
inline constexpr const char *edge_d = "d_e";
inline constexpr const char *edge_f = "f_e";
inline constexpr const char *pair_helper = "pair-helper";
inline constexpr const char *vertex_gadget = "vertex-gadget";
inline constexpr const char *pair_gadget = "pair-gadget";
} // namespace role

/// Where a vertex came from: the stage that introduced it and the labels of
/// the earlier vertices its gadget hangs off (empty for free-standing vertices).
struct Provenance {
    std::string stage;
    std::vector<std::string> anchors;

    friend bool operator==(const Provenance &, const Provenance &) = default;
};

/// An instance of one of the three decision problems, with per-vertex roles.
///   P3: pairs = Q, partial = the pre-coloring.
///   P2: pairs = P, partial empty.
///   P1: pairs empty (every pair is required), partial empty.
struct ReducedInstance {
    Stage stage = Stage::P3;
    int k = 1;
    Graph graph;
    PairList pairs;
    PartialEdgeColoring partial;
    std::vector<std::string> roles;
    std::vector<Provenance> provenance;
};

/// Throws InvalidInput when the instance's parts disagree with each other.
void validate_instance(const ReducedInstance &inst);

/// Wraps a plain graph as an instance whose vertices are all "original".
ReducedInstance make_instance(Stage stage, Graph g, PairList pairs, PartialEdgeColoring partial, int k);

// ---------------------------------------------------------------------------
// Two-colored complete graph on (k+1)^2 vertices

/// K_{(k+1)^2} on vertices v(i,l), 1 <= i,l <= k+1. Edges inside a block i, or
/// joining v(i,l) and v(j,l), get color 0; all others get color 1. Vertices are
/// colored 0 and the palette is 2.
struct CliqueColoring {
    Graph graph;
    TotalColoring coloring;
};

CliqueColoring two_color_clique(int k);

/// Edge color between members a and b (0-based indices) of a (k+1)^2 block.
Color clique_pair_color(int k, int a, int b);

// ---------------------------------------------------------------------------
// Problem 2 -> Problem 1

struct P2ToP1Layout {
    int source_vertices = 0;
    int source_edges = 0;
    /// (k+1)^2 attached vertices per source vertex.
    std::vector<std::vector<VertexId>> vertex_gadgets;
    struct PairGadget {
        VertexPair pair;
        /// Endpoint whose gadget edges get color 0 (label-smaller one).
        VertexId first;
        VertexId second;
        std::vector<VertexId> members;
    };
    /// One per unordered pair outside P, adjacent pairs included.
    std::vector<PairGadget> pair_gadgets;
};

struct P2ToP1Reduction {
    ReducedInstance source;
    ReducedInstance target;
    P2ToP1Layout layout;
};

P2ToP1Reduction reduce_p2_to_p1(const ReducedInstance &p2);
P2ToP1Reduction reduce_p2_to_p1(const Graph &g, const PairList &p, int k);

/// Extends a 3-coloring of the source graph that serves every pair of P to
/// all of G'. The result is checked against all pairs of G'.
TotalColoring lift_coloring_p2_to_p1(const P2ToP1Reduction &r, const TotalColoring &chi,
                                     const VerifyOptions &options = {});

/// Restriction of a total-rainbow k-connecting 3-coloring of G' to the source
/// graph, checked against P.
TotalColoring restrict_coloring_p1_to_p2(const P2ToP1Reduction &r, const TotalColoring &chi_prime,
                                         const VerifyOptions &options = {});

// ---------------------------------------------------------------------------
// Problem 3 -> Problem 2

struct P3ToP2Layout {
    int source_vertices = 0;
    int source_edges = 0;
    VertexId hub = -1;
    VertexId b1 = -1;
    VertexId b2 = -1;
    struct EdgeGadget {
        OrientedEdge edge;
        int cls; // 1 or 2
        std::array<VertexId, 2> c;
        std::array<VertexId, 2> d;
        std::array<VertexId, 2> f;
    };
    std::vector<EdgeGadget> edge_gadgets;
    struct Helper {
        VertexPair pair;
        VertexId first;
        VertexId second;
        std::vector<VertexId> members;
    };
    /// k-1 length-two detours per pair of P outside Q (only for k >= 2).
    std::vector<Helper> helpers;
};

struct P3ToP2Reduction {
    ReducedInstance source;
    ReducedInstance target;
    P3ToP2Layout layout;
};

P3ToP2Reduction reduce_p3_to_p2(const ReducedInstance &p3);

/// Lifts a coloring that passes the Problem 3 check. Colors are first renamed
/// so that E1 carries 0 and E2 carries 1.
TotalColoring lift_coloring_p3_to_p2(const P3ToP2Reduction &r, const TotalColoring &chi,
                                     const VerifyOptions &options = {});

struct RestrictedP3Coloring {
    /// chi' restricted to the source graph, colors untouched.
    TotalColoring coloring;
    /// Colors playing the E1 and E2 roles: chi'(b2 c) and chi'(b1 c).
    Color class1_color = 0;
    Color class2_color = 1;
    /// The restriction renamed so that E1 -> 0, E2 -> 1, third color -> 2.
    TotalColoring normalized;
};

RestrictedP3Coloring restrict_coloring_p2_to_p3(const P3ToP2Reduction &r, const TotalColoring &chi_prime,
                                                const VerifyOptions &options = {});

// ---------------------------------------------------------------------------
// 3-SAT -> Problem 3

struct SatLayout {
    VertexId s = -1;
    std::vector<VertexId> clauses;
    /// clause_helpers[t] holds c^2_t .. c^k_t.
    std::vector<std::vector<VertexId>> clause_helpers;
    std::vector<VertexId> variables;
};

struct SatReduction {
    CnfFormula phi;
    ReducedInstance target;
    SatLayout layout;
};

/// Throws InvalidInput when a clause holds a variable with both signs.
SatReduction reduce_sat_to_p3(const CnfFormula &phi, int k);

/// The forward witness for a satisfying assignment, checked with satisfies_problem3.
TotalColoring assignment_to_coloring(const SatReduction &r, const Assignment &a);

/// Reads an assignment off a coloring that passes the Problem 3 check.
/// Variables not pinned by the coloring default to false and are flagged.
Assignment coloring_to_assignment(const SatReduction &r, const TotalColoring &chi);

struct ComposedReduction {
    SatReduction sat;
    P3ToP2Reduction p2;
    P2ToP1Reduction p1;

    [[nodiscard]] const ReducedInstance &target() const { return p1.target; }
};

/// 3-SAT -> Problem 3 -> Problem 2 -> Problem 1.
ComposedReduction reduce_sat_to_trc3(const CnfFormula &phi, int k);

/// Vertices adjacent to both ends of a pair that lie outside the first `limit` vertex ids.
std::vector<VertexId> outside_common_neighbors(const Graph &g, VertexPair pair, int limit);

} // namespace rainbow
