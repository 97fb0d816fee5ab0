#pragma once

#include <array>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

namespace rainbow {

struct Literal {
    int variable; // 1-based
    bool positive;

    friend bool operator==(const Literal &, const Literal &) = default;
};

using Clause = std::array<Literal, 3>;

/// A 3-CNF formula over variables x_1..x_n. Repeated literals within a clause are allowed.
struct CnfFormula {
    int num_variables = 0;
    std::vector<Clause> clauses;

    friend bool operator==(const CnfFormula &, const CnfFormula &) = default;
};

/// Throws InvalidInput when a variable index is out of range or there are no clauses.
void validate_formula(const CnfFormula &phi);

struct Assignment {
    /// values[i] is the truth value of x_{i+1}.
    std::vector<bool> values;
    /// Variables whose value was defaulted rather than determined.
    std::vector<bool> unconstrained;

    [[nodiscard]] bool value(int variable) const { return values.at(static_cast<std::size_t>(variable - 1)); }
};

bool evaluate(const CnfFormula &phi, const Assignment &a);

/// First satisfying assignment in truth-table order (x_1 least significant), if any.
std::optional<Assignment> solve_by_truth_table(const CnfFormula &phi);

/// Parses "p cnf n m" DIMACS with exactly three literals per clause.
CnfFormula parse_dimacs(std::string_view text);
std::string to_dimacs(const CnfFormula &phi);

/// Uniform random 3-CNF with the given shape; literals may repeat.
CnfFormula random_formula(int num_variables, int num_clauses, std::mt19937_64 &rng);

} // namespace rainbow
