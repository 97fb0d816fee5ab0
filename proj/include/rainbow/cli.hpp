#pragma once

#include <rainbow/cnf.hpp>
#include <rainbow/solve.hpp>

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

namespace rainbow::cli {

enum ExitCode { ExitPass = 0, ExitFail = 1, ExitInput = 2, ExitExhausted = 3 };

struct RoundtripOptions {
    SearchOptions search;
    /// Skip the composed P1 lift when the predicted vertex count is larger.
    std::size_t p1_vertex_limit = 4000;
};

struct RoundtripReport {
    int k = 1;
    std::optional<Assignment> truth_table;
    SearchOutcome extension;
    bool inconclusive = false;
    bool agreement = false;
    std::optional<Assignment> extracted;
    std::optional<bool> extracted_satisfies;
    /// Lifted-witness checks; nullopt when the formula is unsatisfiable or the stage was skipped.
    std::optional<bool> p2_verified;
    std::optional<bool> p1_verified;
    std::size_t p1_vertices = 0;
    std::string failure;

    [[nodiscard]] bool ok() const;
};

/// Truth table versus the extension solver on the reduced instance, plus
/// witness extraction and forward lifts to the later stages.
RoundtripReport run_roundtrip(const CnfFormula &phi, int k, const RoundtripOptions &options = {});

nlohmann::json to_json(const RoundtripReport &report);

/// Predicted vertex count of the P1 instance built from a P2 instance.
std::size_t p1_vertex_count(std::size_t vertices, std::size_t pairs, int k);

/// Entry point shared by the executable and the tests. argv[0] is the program name.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace rainbow::cli
