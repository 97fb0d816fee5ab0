#include "support/formulas.hpp"

#include <rainbow/cnf.hpp>
#include <rainbow/graph.hpp>

#include <doctest.h>

using namespace rainbow;

TEST_CASE("DIMACS parsing")
{
    CnfFormula phi = parse_dimacs("c comment\np cnf 3 1\n1 2 3 0\n");
    CHECK(phi.num_variables == 3);
    REQUIRE(phi.clauses.size() == 1);
    CHECK(phi.clauses[0][0] == Literal{1, true});
    CHECK(phi.clauses[0][2] == Literal{3, true});

    CnfFormula two = parse_dimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0");
    REQUIRE(two.clauses.size() == 2);
    CHECK(two.clauses[1][0] == Literal{1, false});

    // A clause may span lines.
    CHECK(parse_dimacs("p cnf 3 1\n1 2\n3 0\n") == phi);
}

TEST_CASE("DIMACS errors")
{
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 2 3 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p dnf 3 1\n1 2 3 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\np cnf 3 1\n1 2 3 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 x 0\n"), InvalidInput);
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3\n"), InvalidInput);
}

TEST_CASE("serialization round trip")
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 50; ++i) {
        CnfFormula phi = random_formula(4, 5, rng);
        CHECK(parse_dimacs(to_dimacs(phi)) == phi);
    }
}

TEST_CASE("truth table")
{
    auto a = solve_by_truth_table(corpus::single_clause());
    REQUIRE(a);
    CHECK(a->values == std::vector<bool>{true, false, false});
    CHECK_FALSE(solve_by_truth_table(corpus::contradiction()));

    CnfFormula neg = parse_dimacs("p cnf 2 1\n-1 -1 -2 0\n");
    auto b = solve_by_truth_table(neg);
    REQUIRE(b);
    CHECK(b->values == std::vector<bool>{false, false});
    CHECK(evaluate(neg, *b));
}

TEST_CASE("clean random formulas never hold a two-signed variable")
{
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        CnfFormula phi = corpus::random_clean_formula(2, 3, rng);
        CHECK_NOTHROW(validate_formula(phi));
        for (const auto &c : phi.clauses)
            for (const auto &x : c)
                for (const auto &y : c)
                    CHECK(!(x.variable == y.variable && x.positive != y.positive));
    }
}

TEST_CASE("formula validation")
{
    CnfFormula empty;
    empty.num_variables = 2;
    CHECK_THROWS_AS(validate_formula(empty), InvalidInput);
    CnfFormula out_of_range{1, {Clause{Literal{1, true}, Literal{2, true}, Literal{1, false}}}};
    CHECK_THROWS_AS(validate_formula(out_of_range), InvalidInput);
}
