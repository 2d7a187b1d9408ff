#include "doctest.h"

#include "pjrp/dimacs.hpp"
#include "pjrp/errors.hpp"

using namespace pjrp;
using namespace pjrp::reduction;

TEST_CASE("parse a single clause") {
  auto cnf = parse_dimacs("p cnf 3 1\n1 -2 3 0");
  CHECK(cnf.num_vars == 3);
  REQUIRE(cnf.clauses.size() == 1);
  CHECK(cnf.clauses[0] == Clause{{Literal{1, true}, Literal{2, false}, Literal{3, true}}});
}

TEST_CASE("malformed formulas are rejected") {
  CHECK_THROWS_AS(parse_dimacs("p cnf 2 1\n1 1 2 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 4 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 -2 -2 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p dnf 3 1\n1 2 3 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf x 1\n1 2 3 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("1 2 3 0\np cnf 3 1"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 2\n1 2 3 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\n1 2 3"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("p cnf 3 1\np cnf 3 1\n1 2 3 0"), ValidationError);
  CHECK_THROWS_AS(parse_dimacs("c only a comment\n"), ValidationError);
}

TEST_CASE("comments, split clauses and the percent terminator") {
  auto cnf = parse_dimacs("c header follows\np cnf 4 2\n1 2\n -3 0 -1 -2 4 0\n%\n0\n");
  REQUIRE(cnf.clauses.size() == 2);
  CHECK(cnf.clauses[1].literals[2] == Literal{4, true});
  auto empty = parse_dimacs("p cnf 3 0\n");
  CHECK(empty.clauses.empty());
  CHECK(empty.num_vars == 3);
}

TEST_CASE("round trip through text") {
  auto cnf = parse_dimacs("p cnf 5 3\n1 -2 3 0\n-1 -4 5 0\n2 3 -5 0\n");
  CHECK(parse_dimacs(to_dimacs(cnf)) == cnf);
}

TEST_CASE("clause satisfaction") {
  auto cnf = parse_dimacs("p cnf 3 1\n1 -2 3 0");
  TruthAssignment all_false{{false, false, false}};
  TruthAssignment only_two{{false, true, false}};
  CHECK(satisfies(cnf, all_false));
  CHECK_FALSE(satisfies(cnf, only_two));
  CHECK(satisfies(CnfFormula{3, {}}, only_two));
}
