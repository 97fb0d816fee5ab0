#include <rainbow/cnf.hpp>
#include <rainbow/graph.hpp>

#include <sstream>

namespace rainbow {

void validate_formula(const CnfFormula &phi)
{
    if (phi.num_variables < 1)
        throw InvalidInput("formula needs at least one variable");
    if (phi.clauses.empty())
        throw InvalidInput("formula needs at least one clause");
    for (const auto &clause : phi.clauses)
        for (const auto &lit : clause)
            if (lit.variable < 1 || lit.variable > phi.num_variables)
                throw InvalidInput("literal refers to variable " + std::to_string(lit.variable) +
                                   " outside 1.." + std::to_string(phi.num_variables));
}

bool evaluate(const CnfFormula &phi, const Assignment &a)
{
    for (const auto &clause : phi.clauses) {
        bool sat = false;
        for (const auto &lit : clause)
            sat = sat || a.value(lit.variable) == lit.positive;
        if (!sat)
            return false;
    }
    return true;
}

std::optional<Assignment> solve_by_truth_table(const CnfFormula &phi)
{
    const int n = phi.num_variables;
    if (n > 24)
        throw InvalidInput("truth-table evaluation is limited to 24 variables");
    Assignment a;
    a.unconstrained.assign(static_cast<std::size_t>(n), false);
    for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
        a.values.assign(static_cast<std::size_t>(n), false);
        for (int i = 0; i < n; ++i)
            a.values[static_cast<std::size_t>(i)] = (mask >> i) & 1U;
        if (evaluate(phi, a))
            return a;
    }
    return std::nullopt;
}

CnfFormula parse_dimacs(std::string_view text)
{
    std::istringstream in{std::string(text)};
    std::string line;
    CnfFormula phi;
    int declared_clauses = -1;
    std::vector<int> pending;
    int line_no = 0;

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream words(line);
        std::string first;
        if (!(words >> first) || first[0] == 'c' || first[0] == '%')
            continue;
        if (first == "p") {
            std::string kind;
            if (declared_clauses >= 0)
                throw InvalidInput("duplicate DIMACS header on line " + std::to_string(line_no));
            if (!(words >> kind >> phi.num_variables >> declared_clauses) || kind != "cnf" ||
                phi.num_variables < 1 || declared_clauses < 1)
                throw InvalidInput("malformed DIMACS header on line " + std::to_string(line_no));
            continue;
        }
        if (declared_clauses < 0)
            throw InvalidInput("clause before the DIMACS header on line " + std::to_string(line_no));

        std::istringstream literals(line);
        std::string token;
        while (literals >> token) {
            int lit = 0;
            try {
                std::size_t used = 0;
                lit = std::stoi(token, &used);
                if (used != token.size())
                    throw std::invalid_argument(token);
            }
            catch (const std::exception &) {
                throw InvalidInput("bad literal '" + token + "' on line " + std::to_string(line_no));
            }
            if (lit != 0) {
                if (std::abs(lit) > phi.num_variables)
                    throw InvalidInput("variable index " + std::to_string(std::abs(lit)) + " out of range on line " +
                                       std::to_string(line_no));
                pending.push_back(lit);
                continue;
            }
            if (pending.size() != 3)
                throw InvalidInput("clause with " + std::to_string(pending.size()) +
                                   " literals (exactly 3 required) on line " + std::to_string(line_no));
            Clause clause{};
            for (std::size_t i = 0; i < 3; ++i)
                clause[i] = Literal{std::abs(pending[i]), pending[i] > 0};
            phi.clauses.push_back(clause);
            pending.clear();
        }
    }
    if (declared_clauses < 0)
        throw InvalidInput("missing DIMACS header");
    if (!pending.empty())
        throw InvalidInput("unterminated final clause");
    if (static_cast<int>(phi.clauses.size()) != declared_clauses)
        throw InvalidInput("header declares " + std::to_string(declared_clauses) + " clauses but " +
                           std::to_string(phi.clauses.size()) + " were read");
    return phi;
}

std::string to_dimacs(const CnfFormula &phi)
{
    std::ostringstream out;
    out << "p cnf " << phi.num_variables << ' ' << phi.clauses.size() << '\n';
    for (const auto &clause : phi.clauses) {
        for (const auto &lit : clause)
            out << (lit.positive ? lit.variable : -lit.variable) << ' ';
        out << "0\n";
    }
    return out.str();
}

CnfFormula random_formula(int num_variables, int num_clauses, std::mt19937_64 &rng)
{
    std::uniform_int_distribution<int> var(1, num_variables);
    std::bernoulli_distribution sign(0.5);
    CnfFormula phi;
    phi.num_variables = num_variables;
    for (int i = 0; i < num_clauses; ++i) {
        Clause clause{};
        for (auto &lit : clause)
            lit = Literal{var(rng), sign(rng)};
        phi.clauses.push_back(clause);
    }
    return phi;
}

} // namespace rainbow
