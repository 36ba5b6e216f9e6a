#include <doctest.h>

#include <schedalod/validation.hpp>

using namespace schedalod;

TEST_SUITE("validation") {

TEST_CASE("empty graph is clean") {
  rdf::Graph g;
  CHECK(validation::validate(g).clean());
}

} // TEST_SUITE
