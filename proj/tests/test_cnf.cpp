#include <doctest.h>

#include <set>
#include <sstream>

#include "satq/cnf.hpp"

using namespace satq;

TEST_CASE("parse_dimacs: minimal instance") {
    const CnfFormula f = parse_dimacs("p cnf 3 1\n1 -2 3 0");
    CHECK(f.num_vars == 3);
    CHECK(f.num_clauses() == 1);
    REQUIRE(f.clauses[0].size() == 3);
    CHECK(f.clauses[0][0] == Literal{1, +1});
    CHECK(f.clauses[0][1] == Literal{2, -1});
    CHECK(f.clauses[0][2] == Literal{3, +1});
}

TEST_CASE("parse_dimacs: comments, multi-line clauses, SATLIB tail") {
    const CnfFormula f = parse_dimacs("c comment\nc more\np cnf 3 2\n1 -2\n3 0\n-1 2 -3 0\n",
                                      ParseMode::strict3sat);
    CHECK(f.num_vars == 3);
    CHECK(f.num_clauses() == 2);
    CHECK(f.clauses[0][2] == Literal{3, +1});

    // SATLIB files end with "%\n0\n"
    const CnfFormula g = parse_dimacs("p cnf 3 1\n1 2 3 0\n%\n0\n");
    CHECK(g.num_clauses() == 1);
}

TEST_CASE("parse_dimacs: lenient accepts short clauses, strict rejects") {
    const std::string text = "p cnf 2 2\n1 0\n-1 -2 0\n";
    const CnfFormula f = parse_dimacs(text, ParseMode::lenient);
    CHECK(f.num_clauses() == 2);
    CHECK(f.clauses[0].size() == 1);
    CHECK(!f.is_strict_3sat());
    CHECK_THROWS_AS(parse_dimacs(text), ParseError);
}

TEST_CASE("parse_dimacs: malformed inputs") {
    CHECK_THROWS_AS(parse_dimacs("1 2 3 0\n"), ParseError);                  // no header
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\np cnf 3 1\n1 2 3 0"), ParseError); // dup header
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 4 0"), ParseError);         // var > N
    CHECK_THROWS_AS(parse_dimacs("p cnf 4 1\n1 2 3 4 0"), ParseError);       // too long
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 -1 2 0"), ParseError);        // dup var
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0"), ParseError);         // count
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3"), ParseError);           // unterminated
    CHECK_THROWS_AS(parse_dimacs("p cnf 0 0\n"), ParseError);                // N < 1
    CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 x 0"), ParseError);         // junk token
}

TEST_CASE("write_dimacs: exact bytes and round trip") {
    CnfFormula f;
    f.num_vars = 3;
    f.clauses = {{{1, +1}, {2, -1}, {3, +1}}};
    CHECK(write_dimacs(f) == "p cnf 3 1\n1 -2 3 0\n");

    CnfFormula empty;
    empty.num_vars = 1;
    CHECK(write_dimacs(empty) == "p cnf 1 0\n");

    const CnfFormula g = generate_random_3sat(20, 85, 7);
    CHECK(parse_dimacs(write_dimacs(g)) == g);
}

TEST_CASE("generate_random_3sat: shape and determinism") {
    const CnfFormula f = generate_random_3sat(3, 1, 12345);
    std::set<int> vars;
    for (const auto& l : f.clauses[0])
        vars.insert(l.var);
    CHECK(vars == std::set<int>{1, 2, 3});

    CHECK(generate_random_3sat(50, 218, 9) == generate_random_3sat(50, 218, 9));
    CHECK(write_dimacs(generate_random_3sat(50, 218, 9)) ==
          write_dimacs(generate_random_3sat(50, 218, 9)));
    CHECK(generate_random_3sat(50, 218, 9) != generate_random_3sat(50, 218, 10));

    const CnfFormula sweep = generate_random_3sat(70, 280, 7);
    CHECK(sweep.density() == doctest::Approx(4.0));

    CHECK_THROWS_AS(generate_random_3sat(2, 1, 0), InvalidParam);
}

TEST_CASE("generate_random_3sat: no duplicate variables in 10^4 clauses") {
    const CnfFormula f = generate_random_3sat(10, 10000, 4);
    for (const auto& c : f.clauses) {
        REQUIRE(c.size() == 3);
        CHECK(c[0].var != c[1].var);
        CHECK(c[0].var != c[2].var);
        CHECK(c[1].var != c[2].var);
    }
}

TEST_CASE("generate_random_3sat: negation frequency near 1/2") {
    const CnfFormula f = generate_random_3sat(50, 10000, 1);
    long long negs = 0;
    for (const auto& c : f.clauses)
        for (const auto& l : c)
            negs += l.sign < 0;
    const double freq = static_cast<double>(negs) / (3.0 * f.num_clauses());
    CHECK(freq > 0.49);
    CHECK(freq < 0.51);
}

TEST_CASE("evaluate_cnf") {
    const CnfFormula f1 = parse_dimacs("p cnf 3 1\n1 2 3 0");
    CHECK(evaluate_cnf(f1, {1, 0, 0}).satisfied == 1);
    CHECK(evaluate_cnf(f1, {1, 0, 0}).violated == 0);
    CHECK(evaluate_cnf(f1, {0, 0, 0}).satisfied == 0);
    CHECK(evaluate_cnf(f1, {0, 0, 0}).violated == 1);

    const CnfFormula f2 = parse_dimacs("p cnf 3 2\n1 2 3 0\n-1 -2 -3 0");
    const EvalCounts c = evaluate_cnf(f2, {1, 1, 1});
    CHECK(c.satisfied == 1);
    CHECK(c.violated == 1);

    CHECK_THROWS_AS(evaluate_cnf(f1, {1, 0}), LengthMismatch);
}

TEST_CASE("density") {
    const CnfFormula f = generate_random_3sat(50, 218, 2);
    CHECK(f.density() == doctest::Approx(4.36));
}
